#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "aisclass/types.hpp"

namespace aisclass {

/// Source column per AisRecord field. An empty column name means the field is
/// not present in the export. timestamp, mmsi, lat and lon must be mapped.
struct ColumnMapping {
  std::string timestamp = "timestamp";
  std::string mmsi = "mmsi";
  std::string lat = "lat";
  std::string lon = "lon";
  std::string sog = "sog";
  std::string cog = "cog";
  std::string nav_status = "nav_status";
  std::string ship_type = "ship_type";
  std::string length = "length";
  std::string width = "width";
  std::string mobile_class = "mobile_class";

  /// strftime/strptime-style pattern, or "unix" for integer epoch seconds.
  std::string timestamp_format = "%Y-%m-%dT%H:%M:%SZ";
  char decimal_separator = '.';

  /// Column names used by the Danish Maritime Authority daily CSV dumps.
  static ColumnMapping dma();

  /// Parses `{"columns": {...}, "timestamp_format": ..., "decimal_separator": ...}`.
  /// Keys not present keep their defaults. Throws ConfigError.
  static ColumnMapping from_json(std::string_view json_text);

  /// Throws ConfigError when a required field is unmapped.
  void validate() const;
};

namespace reject_reason {
inline constexpr std::string_view field_count = "wrong field count";
inline constexpr std::string_view missing_required = "missing required field";
inline constexpr std::string_view bad_number = "unparseable number";
inline constexpr std::string_view bad_timestamp = "unparseable timestamp";
inline constexpr std::string_view coordinate_range = "coordinate out of range";
inline constexpr std::string_view field_range = "field out of range";
}  // namespace reject_reason

struct RowReject {
  std::size_t row = 0;  // 1-based data row (header excluded)
  std::string reason;
};

struct ParseResult {
  std::vector<AisRecord> records;
  std::vector<RowReject> rejects;
  std::size_t data_rows = 0;

  std::map<std::string, std::size_t> reject_counts() const;
};

/// Parses an AIS contact log. Per-row defects land in `rejects`; an unreadable
/// stream or a mapped column missing from the header throws DataError.
ParseResult parse_csv(std::istream& in, const ColumnMapping& mapping);
ParseResult parse_csv_file(const std::filesystem::path& path, const ColumnMapping& mapping);

/// Writes records with one column per mapped field, in mapping field order.
void write_csv(std::ostream& out, const std::vector<AisRecord>& records,
               const ColumnMapping& mapping);

void write_reject_log(std::ostream& out, const std::vector<RowReject>& rejects);

std::optional<std::int64_t> parse_timestamp(std::string_view text, std::string_view format);
std::string format_timestamp(std::int64_t seconds, std::string_view format);

}  // namespace aisclass
