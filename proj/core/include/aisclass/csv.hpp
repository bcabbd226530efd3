#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace aisclass::csv {

/// Minimal RFC 4180 reader: comma separated, double-quote quoting, embedded
/// quotes doubled, CRLF or LF line endings. Quoted fields may span lines.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  /// 1-based physical line number where the last record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

/// Quotes `field` only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

/// Strict full-field parse; surrounding whitespace is allowed.
std::optional<double> parse_double(std::string_view text, char decimal_separator = '.');
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace aisclass::csv
