#include "arte/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>

#include <fmt/format.h>

#include "arte/csv.hpp"
#include "arte/error.hpp"

namespace arte {

KeyValueFile KeyValueFile::parse(std::istream& in, std::string_view source_name) {
  KeyValueFile file;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = csv::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(fmt::format("{}:{}: expected 'key = value'", source_name, number));
    }
    std::string key = csv::trim(std::string_view(text).substr(0, eq));
    std::string value = csv::trim(std::string_view(text).substr(eq + 1));
    const bool valid_key = !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
      return std::isalnum(c) || c == '_' || c == '.' || c == '-';
    });
    if (!valid_key) throw ParseError(fmt::format("{}:{}: invalid key '{}'", source_name, number, key));
    file.entries_.emplace_back(std::move(key), std::move(value));
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open config file '{}'", path.string()));
  return parse(in, path.string());
}

std::optional<std::string> KeyValueFile::last(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

std::vector<std::string> KeyValueFile::all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k == key) out.push_back(v);
  }
  return out;
}

std::vector<std::string> KeyValueFile::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

void RunConfig::validate() const {
  filter.validate();
  index.validate();
  backtest.validate();
}

namespace {

double to_double(std::string_view key, const std::string& value) {
  auto v = csv::parse_double(value);
  if (!v) throw ParseError(fmt::format("config: {} = '{}' is not a number", key, value));
  return *v;
}

long to_long(std::string_view key, const std::string& value) {
  auto v = csv::parse_long(value);
  if (!v) throw ParseError(fmt::format("config: {} = '{}' is not an integer", key, value));
  return *v;
}

std::size_t to_count(std::string_view key, const std::string& value) {
  const long v = to_long(key, value);
  if (v < 0) throw ParseError(fmt::format("config: {} must not be negative", key));
  return static_cast<std::size_t>(v);
}

Date to_date(std::string_view key, const std::string& value) {
  auto d = Date::parse(value);
  if (!d) throw ParseError(fmt::format("config: {} = '{}' is not a YYYY-MM-DD date", key, value));
  return *d;
}

}  // namespace

void apply(const KeyValueFile& file, RunConfig& config) {
  using Setter = std::function<void(const std::string&)>;
  const std::vector<std::pair<std::string_view, Setter>> setters{
      {"allowed_mediums",
       [&](const std::string& v) {
         std::set<Medium> mediums;
         std::size_t start = 0;
         while (start <= v.size()) {
           const auto comma = v.find(',', start);
           const auto name = csv::trim(std::string_view(v).substr(start, comma - start));
           auto m = medium_from_name(name);
           if (!m) throw ParseError(fmt::format("config: unknown medium '{}'", name));
           mediums.insert(*m);
           if (comma == std::string::npos) break;
           start = comma + 1;
         }
         config.filter.allowed_mediums = std::move(mediums);
       }},
      {"min_history_years",
       [&](const std::string& v) { config.filter.min_history_years = static_cast<int>(to_long("min_history_years", v)); }},
      {"min_avg_price", [&](const std::string& v) { config.filter.min_avg_price = to_double("min_avg_price", v); }},
      {"period_start", [&](const std::string& v) { config.filter.period_start = to_date("period_start", v); }},
      {"period_end", [&](const std::string& v) { config.filter.period_end = to_date("period_end", v); }},
      {"cap", [&](const std::string& v) { config.index.cap = to_count("cap", v); }},
      {"lookback", [&](const std::string& v) { config.index.lookback_years = static_cast<int>(to_long("lookback", v)); }},
      {"base_year", [&](const std::string& v) { config.index.base_year = static_cast<int>(to_long("base_year", v)); }},
      {"index_end_year", [&](const std::string& v) { config.index.end_year = static_cast<int>(to_long("index_end_year", v)); }},
      {"allocation", [&](const std::string& v) { config.backtest.art_allocation = to_double("allocation", v); }},
      {"window", [&](const std::string& v) { config.backtest.smoothing_window = to_count("window", v); }},
      {"rebalance_policy",
       [&](const std::string& v) {
         if (v == "buy_and_hold") {
           config.backtest.rebalance_policy = RebalancePolicy::BuyAndHold;
         } else if (v == "periodic_to_target") {
           config.backtest.rebalance_policy = RebalancePolicy::PeriodicToTarget;
         } else {
           throw ParseError(fmt::format("config: rebalance_policy '{}' is not buy_and_hold or periodic_to_target", v));
         }
       }},
      {"rebalance_interval", [&](const std::string& v) { config.backtest.rebalance_interval = to_count("rebalance_interval", v); }},
      {"risk_free", [&](const std::string& v) { config.backtest.risk_free_rate = to_double("risk_free", v); }},
      {"periods_per_year", [&](const std::string& v) { config.backtest.periods_per_year = to_double("periods_per_year", v); }},
      {"grid_step", [&](const std::string& v) { config.backtest.grid_step = to_double("grid_step", v); }},
      {"input", [&](const std::string& v) { config.input = v; }},
      {"benchmark", [&](const std::string& v) { config.benchmark = v; }},
      {"out_dir", [&](const std::string& v) { config.out_dir = v; }},
      {"start_year", [&](const std::string& v) { config.start_year = static_cast<int>(to_long("start_year", v)); }},
      {"end_year", [&](const std::string& v) { config.end_year = static_cast<int>(to_long("end_year", v)); }},
      {"seed",
       [&](const std::string& v) {
         std::uint64_t seed = 0;
         auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
         if (ec != std::errc{} || ptr != v.data() + v.size()) {
           throw ParseError(fmt::format("config: seed = '{}' is not an unsigned integer", v));
         }
         config.seed = seed;
       }},
  };

  for (const auto& key : file.keys()) {
    auto it = std::find_if(setters.begin(), setters.end(), [&](const auto& s) { return s.first == key; });
    if (it == setters.end()) throw ParseError(fmt::format("config: unknown key '{}'", key));
    it->second(*file.last(key));
  }
}

}  // namespace arte
