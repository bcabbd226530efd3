#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aisclass {

/// Ship types broadcast in AIS static data. `unknown` catches anything outside
/// the eighteen named categories.
enum class ShipType : std::uint8_t {
  anti_pollution,
  cargo,
  dredging,
  fishing,
  hsc,
  pilot,
  port_tender,
  military,
  passenger,
  law_enforcement,
  pleasure,
  medical,
  reserved,
  sailing,
  sar,
  tanker,
  towing,
  tug,
  unknown,
};

inline constexpr int kNamedShipTypes = 18;

enum class MobileClass : std::uint8_t { ship, base_station, other };

enum class BinaryClass : std::uint8_t { non_fishing, fishing, unlabeled };

/// Training label. Positive class is `fishing`.
enum class Label : std::uint8_t { non_fishing = 0, fishing = 1 };

/// AIS navigational status codes (ITU-R M.1371).
namespace nav_status {
inline constexpr int under_way_engine = 0;
inline constexpr int at_anchor = 1;
inline constexpr int moored = 5;
inline constexpr int engaged_in_fishing = 7;
inline constexpr int undefined = 15;
}  // namespace nav_status

struct AisRecord {
  std::int64_t timestamp = 0;  // UTC seconds
  std::uint32_t mmsi = 0;
  double lat = 0.0;
  double lon = 0.0;
  std::optional<double> sog;  // knots
  std::optional<double> cog;  // degrees, [0, 360)
  std::optional<int> nav_status;
  std::optional<ShipType> ship_type;
  std::optional<double> length;  // meters
  std::optional<double> width;   // meters
  MobileClass mobile_class = MobileClass::ship;

  friend bool operator==(const AisRecord&, const AisRecord&) = default;
};

std::string_view to_string(ShipType type);
std::string_view to_string(MobileClass mc);
std::string_view to_string(BinaryClass bc);
std::string_view to_string(Label label);

/// Case-insensitive match against the AIS ship type names ("Fishing", "Port
/// tender", "SAR", ...). Unrecognised text maps to `unknown`.
ShipType parse_ship_type(std::string_view text);
std::optional<Label> parse_label(std::string_view text);
MobileClass parse_mobile_class(std::string_view text);

/// Accepts a numeric code 0..15 or the descriptive status text used by
/// common AIS exports. Unrecognised text maps to `nav_status::undefined`.
int parse_nav_status(std::string_view text);
std::string_view nav_status_name(int code);

BinaryClass to_binary_class(std::optional<ShipType> type);

/// Base stations use MMSI prefix 00, i.e. values below 10^7.
MobileClass mobile_class_from_mmsi(std::uint32_t mmsi);

}  // namespace aisclass
