#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arte/backtest.hpp"
#include "arte/index.hpp"
#include "arte/ingest.hpp"

namespace arte {

// Flat key-value text:
//
//   line    := blank | comment | entry
//   comment := '#' to end of line (leading whitespace allowed)
//   entry   := key '=' value      (whitespace around both trimmed)
//   key     := [A-Za-z0-9_.-]+
//
// A key may appear more than once; every value is kept in file order.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, std::string_view source_name);
  static KeyValueFile load(const std::filesystem::path& path);

  std::optional<std::string> last(std::string_view key) const;
  std::vector<std::string> all(std::string_view key) const;
  std::vector<std::string> keys() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct RunConfig {
  FilterConfig filter;
  IndexConfig index;
  BacktestConfig backtest;
  std::filesystem::path input;
  std::filesystem::path benchmark;
  std::filesystem::path out_dir;
  std::optional<int> start_year;
  std::optional<int> end_year;
  std::optional<std::uint64_t> seed;

  void validate() const;
};

// Applies recognised keys; unknown keys or unparsable values throw ParseError.
void apply(const KeyValueFile& file, RunConfig& config);

}  // namespace arte
