#include "aisclass/ingest.hpp"

#include <array>
#include <chrono>
#include <limits>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "aisclass/csv.hpp"
#include "aisclass/errors.hpp"

namespace aisclass {
namespace {

struct FieldSlot {
  std::string_view name;
  std::string ColumnMapping::*column;
  bool required;
};

constexpr FieldSlot kFields[] = {
    {"timestamp", &ColumnMapping::timestamp, true},
    {"mmsi", &ColumnMapping::mmsi, true},
    {"lat", &ColumnMapping::lat, true},
    {"lon", &ColumnMapping::lon, true},
    {"sog", &ColumnMapping::sog, false},
    {"cog", &ColumnMapping::cog, false},
    {"nav_status", &ColumnMapping::nav_status, false},
    {"ship_type", &ColumnMapping::ship_type, false},
    {"length", &ColumnMapping::length, false},
    {"width", &ColumnMapping::width, false},
    {"mobile_class", &ColumnMapping::mobile_class, false},
};
constexpr std::size_t kFieldCount = std::size(kFields);
constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

enum FieldIndex : std::size_t {
  f_timestamp, f_mmsi, f_lat, f_lon, f_sog, f_cog, f_nav, f_type, f_length, f_width, f_mobile
};

std::string strip_bom(std::string s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
      static_cast<unsigned char>(s[1]) == 0xBB && static_cast<unsigned char>(s[2]) == 0xBF) {
    s.erase(0, 3);
  }
  return s;
}

bool blank_row(const std::vector<std::string>& fields) {
  return fields.size() == 1 && csv::trim(fields[0]).empty();
}

std::string format_number(double v, char decimal_separator) {
  std::string s = csv::format_double(v);
  if (decimal_separator != '.') {
    for (char& c : s) {
      if (c == '.') c = decimal_separator;
    }
  }
  return s;
}

}  // namespace

ColumnMapping ColumnMapping::dma() {
  ColumnMapping m;
  m.timestamp = "# Timestamp";
  m.mmsi = "MMSI";
  m.lat = "Latitude";
  m.lon = "Longitude";
  m.sog = "SOG";
  m.cog = "COG";
  m.nav_status = "Navigational status";
  m.ship_type = "Ship type";
  m.length = "Length";
  m.width = "Width";
  m.mobile_class = "Type of mobile";
  m.timestamp_format = "%d/%m/%Y %H:%M:%S";
  return m;
}

ColumnMapping ColumnMapping::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mapping is not valid JSON: ") + e.what());
  }
  ColumnMapping m;
  if (doc.contains("preset")) {
    if (doc["preset"] == "dma") {
      m = dma();
    } else if (doc["preset"] != "default") {
      throw ConfigError("unknown mapping preset");
    }
  }
  try {
    if (doc.contains("columns")) {
      for (const auto& [key, value] : doc["columns"].items()) {
        bool known = false;
        for (const auto& slot : kFields) {
          if (slot.name == key) {
            m.*slot.column = value.is_null() ? std::string{} : value.get<std::string>();
            known = true;
          }
        }
        if (!known) throw ConfigError("unknown mapping field: " + key);
      }
    }
    if (doc.contains("timestamp_format")) {
      m.timestamp_format = doc["timestamp_format"].get<std::string>();
    }
    if (doc.contains("decimal_separator")) {
      const auto sep = doc["decimal_separator"].get<std::string>();
      if (sep.size() != 1) throw ConfigError("decimal_separator must be one character");
      m.decimal_separator = sep[0];
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mapping has wrong value type: ") + e.what());
  }
  m.validate();
  return m;
}

void ColumnMapping::validate() const {
  for (const auto& slot : kFields) {
    if (slot.required && (this->*slot.column).empty()) {
      throw ConfigError("required field '" + std::string(slot.name) + "' has no mapped column");
    }
  }
  if (timestamp_format.empty()) throw ConfigError("timestamp_format is empty");
}

std::map<std::string, std::size_t> ParseResult::reject_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : rejects) ++counts[r.reason];
  return counts;
}

std::optional<std::int64_t> parse_timestamp(std::string_view text, std::string_view format) {
  text = csv::trim(text);
  if (text.empty()) return std::nullopt;
  if (format == "unix") {
    auto v = csv::parse_int(text);
    if (!v) return std::nullopt;
    return static_cast<std::int64_t>(*v);
  }
  std::tm tm{};
  std::istringstream in{std::string(text)};
  in >> std::get_time(&tm, std::string(format).c_str());
  if (in.fail()) return std::nullopt;
  in >> std::ws;
  if (!in.eof()) return std::nullopt;

  using namespace std::chrono;
  const year_month_day ymd{year{tm.tm_year + 1900}, month{static_cast<unsigned>(tm.tm_mon + 1)},
                           day{static_cast<unsigned>(tm.tm_mday)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + tm.tm_hour * 3600 + tm.tm_min * 60 + tm.tm_sec;
}

std::string format_timestamp(std::int64_t seconds, std::string_view format) {
  if (format == "unix") return std::to_string(seconds);
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, std::string(format).c_str());
  return out.str();
}

ParseResult parse_csv(std::istream& in, const ColumnMapping& mapping) {
  mapping.validate();
  if (!in.good()) throw DataError("input stream is not readable");

  csv::Reader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw DataError("input has no header row");
  if (!header.empty()) header[0] = strip_bom(header[0]);
  for (auto& h : header) h = std::string(csv::trim(h));

  std::array<std::size_t, kFieldCount> column_of{};
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    const std::string& name = mapping.*kFields[f].column;
    column_of[f] = kUnmapped;
    if (name.empty()) continue;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) {
        column_of[f] = c;
        break;
      }
    }
    if (column_of[f] == kUnmapped) {
      throw DataError("mapped column '" + name + "' for field '" +
                      std::string(kFields[f].name) + "' not found in header");
    }
  }

  ParseResult result;
  std::vector<std::string> fields;
  const char sep = mapping.decimal_separator;

  while (reader.next(fields)) {
    if (in.bad()) throw DataError("read error in input stream");
    if (blank_row(fields)) continue;
    const std::size_t row = ++result.data_rows;
    auto reject = [&](std::string_view reason) {
      result.rejects.push_back({row, std::string(reason)});
    };
    if (fields.size() != header.size()) {
      reject(reject_reason::field_count);
      continue;
    }
    auto cell = [&](std::size_t f) -> std::string_view {
      return column_of[f] == kUnmapped ? std::string_view{} : csv::trim(fields[column_of[f]]);
    };

    if (cell(f_timestamp).empty() || cell(f_mmsi).empty() || cell(f_lat).empty() ||
        cell(f_lon).empty()) {
      reject(reject_reason::missing_required);
      continue;
    }

    AisRecord rec;
    const auto ts = parse_timestamp(cell(f_timestamp), mapping.timestamp_format);
    if (!ts) {
      reject(reject_reason::bad_timestamp);
      continue;
    }
    if (*ts < 0) {
      reject(reject_reason::field_range);
      continue;
    }
    rec.timestamp = *ts;

    const auto mmsi = csv::parse_int(cell(f_mmsi));
    const auto lat = csv::parse_double(cell(f_lat), sep);
    const auto lon = csv::parse_double(cell(f_lon), sep);
    if (!mmsi || !lat || !lon) {
      reject(reject_reason::bad_number);
      continue;
    }
    if (*mmsi < 0 || *mmsi > 999'999'999) {
      reject(reject_reason::field_range);
      continue;
    }
    if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
      reject(reject_reason::coordinate_range);
      continue;
    }
    rec.mmsi = static_cast<std::uint32_t>(*mmsi);
    rec.lat = *lat;
    rec.lon = *lon;

    // Optional numeric fields: empty means absent, garbage means reject.
    bool bad = false;
    std::string_view range_fail;
    auto optional_number = [&](std::size_t f, double lo, double hi_exclusive,
                               std::optional<double>& out) {
      const auto text = cell(f);
      if (text.empty()) return;
      const auto v = csv::parse_double(text, sep);
      if (!v) {
        bad = true;
        return;
      }
      if (*v < lo || *v >= hi_exclusive) {
        range_fail = reject_reason::field_range;
        return;
      }
      out = *v;
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    optional_number(f_sog, 0.0, inf, rec.sog);
    optional_number(f_cog, 0.0, 360.0, rec.cog);
    optional_number(f_length, 0.0, inf, rec.length);
    optional_number(f_width, 0.0, inf, rec.width);
    if (bad) {
      reject(reject_reason::bad_number);
      continue;
    }
    if (!range_fail.empty()) {
      reject(range_fail);
      continue;
    }

    if (!cell(f_nav).empty()) rec.nav_status = parse_nav_status(cell(f_nav));
    if (!cell(f_type).empty()) rec.ship_type = parse_ship_type(cell(f_type));
    rec.mobile_class = cell(f_mobile).empty() ? mobile_class_from_mmsi(rec.mmsi)
                                              : parse_mobile_class(cell(f_mobile));
    result.records.push_back(rec);
  }
  if (in.bad()) throw DataError("read error in input stream");
  return result;
}

ParseResult parse_csv_file(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_csv(in, mapping);
}

void write_csv(std::ostream& out, const std::vector<AisRecord>& records,
               const ColumnMapping& mapping) {
  mapping.validate();
  std::vector<std::size_t> present;
  std::vector<std::string> row;
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    if (!(mapping.*kFields[f].column).empty()) {
      present.push_back(f);
      row.push_back(mapping.*kFields[f].column);
    }
  }
  csv::write_row(out, row);

  const char sep = mapping.decimal_separator;
  auto opt = [&](const std::optional<double>& v) {
    return v ? format_number(*v, sep) : std::string{};
  };
  for (const auto& r : records) {
    row.clear();
    for (std::size_t f : present) {
      switch (f) {
        case f_timestamp: row.push_back(format_timestamp(r.timestamp, mapping.timestamp_format)); break;
        case f_mmsi: row.push_back(std::to_string(r.mmsi)); break;
        case f_lat: row.push_back(format_number(r.lat, sep)); break;
        case f_lon: row.push_back(format_number(r.lon, sep)); break;
        case f_sog: row.push_back(opt(r.sog)); break;
        case f_cog: row.push_back(opt(r.cog)); break;
        case f_nav: row.push_back(r.nav_status ? std::to_string(*r.nav_status) : std::string{}); break;
        case f_type: row.push_back(r.ship_type ? std::string(to_string(*r.ship_type)) : std::string{}); break;
        case f_length: row.push_back(opt(r.length)); break;
        case f_width: row.push_back(opt(r.width)); break;
        case f_mobile: row.push_back(std::string(to_string(r.mobile_class))); break;
        default: break;
      }
    }
    csv::write_row(out, row);
  }
}

void write_reject_log(std::ostream& out, const std::vector<RowReject>& rejects) {
  csv::write_row(out, {"row", "reason"});
  for (const auto& r : rejects) csv::write_row(out, {std::to_string(r.row), r.reason});
}

}  // namespace aisclass
