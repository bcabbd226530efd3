#include "aisclass/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <utility>

namespace aisclass {
namespace {

constexpr std::array<std::string_view, kNamedShipTypes + 1> kShipTypeNames = {
    "Anti-pollution", "Cargo",    "Dredging",  "Fishing",  "HSC",
    "Pilot",          "Port tender", "Military", "Passenger", "Law enforcement",
    "Pleasure",       "Medical",  "Reserved",  "Sailing",  "SAR",
    "Tanker",         "Towing",   "Tug",       "Unknown",
};

constexpr std::array<std::string_view, 16> kNavStatusNames = {
    "Under way using engine",
    "At anchor",
    "Not under command",
    "Restricted maneuverability",
    "Constrained by her draught",
    "Moored",
    "Aground",
    "Engaged in fishing",
    "Under way sailing",
    "Reserved for future amendment [HSC]",
    "Reserved for future amendment [WIG]",
    "Power-driven vessel towing astern",
    "Power-driven vessel pushing ahead or towing alongside",
    "Reserved for future use",
    "AIS-SART",
    "Unknown value",
};

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) out.push_back(static_cast<char>(std::tolower(uc)));
  }
  return out;
}

}  // namespace

std::string_view to_string(ShipType type) {
  return kShipTypeNames[static_cast<std::size_t>(type)];
}

std::string_view to_string(MobileClass mc) {
  switch (mc) {
    case MobileClass::ship: return "ship";
    case MobileClass::base_station: return "base_station";
    case MobileClass::other: return "other";
  }
  return "other";
}

std::string_view to_string(BinaryClass bc) {
  switch (bc) {
    case BinaryClass::fishing: return "fishing";
    case BinaryClass::non_fishing: return "non_fishing";
    case BinaryClass::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::string_view to_string(Label label) {
  return label == Label::fishing ? "fishing" : "non_fishing";
}

ShipType parse_ship_type(std::string_view text) {
  const std::string key = normalize(text);
  for (std::size_t i = 0; i < kNamedShipTypes; ++i) {
    if (normalize(kShipTypeNames[i]) == key) return static_cast<ShipType>(i);
  }
  // Aliases seen in exports.
  if (key == "towinglongwide") return ShipType::towing;
  if (key == "highspeedcraft") return ShipType::hsc;
  if (key == "searchandrescue") return ShipType::sar;
  return ShipType::unknown;
}

std::optional<Label> parse_label(std::string_view text) {
  const std::string key = normalize(text);
  if (key == "fishing" || key == "1") return Label::fishing;
  if (key == "nonfishing" || key == "0") return Label::non_fishing;
  return std::nullopt;
}

MobileClass parse_mobile_class(std::string_view text) {
  const std::string key = normalize(text);
  if (key == "ship" || key == "classa" || key == "classb") return MobileClass::ship;
  if (key == "basestation" || key == "base") return MobileClass::base_station;
  return MobileClass::other;
}

int parse_nav_status(std::string_view text) {
  int code = -1;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, code);
  if (ec == std::errc{} && ptr == last) {
    return (code >= 0 && code <= 15) ? code : nav_status::undefined;
  }
  const std::string key = normalize(text);
  for (std::size_t i = 0; i < kNavStatusNames.size(); ++i) {
    if (normalize(kNavStatusNames[i]) == key) return static_cast<int>(i);
  }
  if (key == "restrictedmanoeuvrability") return 3;
  if (key == "undefined" || key == "unknown") return nav_status::undefined;
  return nav_status::undefined;
}

std::string_view nav_status_name(int code) {
  if (code < 0 || code > 15) return kNavStatusNames[nav_status::undefined];
  return kNavStatusNames[static_cast<std::size_t>(code)];
}

BinaryClass to_binary_class(std::optional<ShipType> type) {
  if (!type || *type == ShipType::unknown) return BinaryClass::unlabeled;
  return *type == ShipType::fishing ? BinaryClass::fishing : BinaryClass::non_fishing;
}

MobileClass mobile_class_from_mmsi(std::uint32_t mmsi) {
  return mmsi < 10'000'000U ? MobileClass::base_station : MobileClass::ship;
}

}  // namespace aisclass
