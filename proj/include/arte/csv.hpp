#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace arte::csv {

// One parsed record and the physical line on which it started (1-based).
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF, embedded newlines.
// A leading UTF-8 byte-order mark is dropped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next record; blank lines are skipped. nullopt at end of input.
  std::optional<Row> next();

  // Starting line of the record most recently attempted.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool started_ = false;
};

// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Expects the exact header; throws ParseError naming `what` otherwise.
void require_header(Reader& reader, const std::vector<std::string>& expected,
                    std::string_view what);

std::optional<double> parse_double(std::string_view text);
std::optional<long> parse_long(std::string_view text);

std::string trim(std::string_view text);

}  // namespace arte::csv
