#include "arte/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "arte/error.hpp"

namespace arte::csv {

std::optional<Row> Reader::next() {
  while (true) {
    if (!started_) {
      started_ = true;
      if (in_.peek() == 0xEF) {
        char bom[3];
        in_.read(bom, 3);
        if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
              static_cast<unsigned char>(bom[2]) == 0xBF)) {
          throw ParseError("unsupported byte sequence at start of CSV");
        }
      }
    }
    if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

    Row row;
    row.line = record_line_ = line_;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    bool any = false;
    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      const char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == '"' && field.empty() && !field_was_quoted) {
        quoted = true;
        field_was_quoted = true;
        any = true;
      } else if (ch == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        any = true;
      } else if (ch == '\r') {
        if (in_.peek() != '\n') field.push_back(ch);
      } else if (ch == '\n') {
        ++line_;
        break;
      } else {
        field.push_back(ch);
        any = true;
      }
    }
    if (quoted) throw ParseError(fmt::format("unterminated quoted field starting on line {}", row.line));
    if (!any && field.empty()) continue;  // blank line
    row.fields.push_back(std::move(field));
    return row;
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

void require_header(Reader& reader, const std::vector<std::string>& expected,
                    std::string_view what) {
  auto header = reader.next();
  if (!header) throw ParseError(fmt::format("{}: empty input, expected a header row", what));
  std::vector<std::string> got;
  for (const auto& f : header->fields) got.push_back(trim(f));
  if (got != expected) {
    throw ParseError(fmt::format("{}: malformed header '{}', expected '{}'", what,
                                 fmt::join(got, ","), fmt::join(expected, ",")));
  }
}

std::optional<double> parse_double(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<long> parse_long(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

}  // namespace arte::csv
