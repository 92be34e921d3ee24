#include "arte/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "arte/csv.hpp"
#include "arte/error.hpp"

namespace arte {

namespace {

// Per-artist stats sorted by year.
using PriceTable = std::map<std::string, std::vector<const ArtistYearStat*>, std::less<>>;

PriceTable make_table(const std::vector<ArtistYearStat>& stats) {
  PriceTable table;
  for (const auto& s : stats) table[s.artist].push_back(&s);
  for (auto& [artist, rows] : table) {
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->year < b->year; });
  }
  return table;
}

// est_actual_price at `year`, or at the latest earlier year with data.
std::optional<double> price_at_or_before(const std::vector<const ArtistYearStat*>& rows, int year) {
  auto it = std::upper_bound(rows.begin(), rows.end(), year,
                             [](int y, const ArtistYearStat* s) { return y < s->year; });
  if (it == rows.begin()) return std::nullopt;
  return (*std::prev(it))->est_actual_price;
}

std::vector<std::string> rank_in(const PriceTable& table, int as_of_year, int lookback_years) {
  if (lookback_years < 1) throw DomainError("lookback_years must be >= 1");
  struct Entry {
    std::string artist;
    double ratio;
    std::size_t count;
  };
  const int lo = as_of_year - lookback_years;
  std::vector<Entry> entries;
  for (const auto& [artist, rows] : table) {
    const ArtistYearStat* first = nullptr;
    const ArtistYearStat* last = nullptr;
    std::size_t count = 0;
    for (const auto* s : rows) {
      if (s->year < lo || s->year > as_of_year) continue;
      if (!first) first = s;
      last = s;
      count += s->n_transactions;
    }
    if (!first) continue;
    entries.push_back({artist, last->est_actual_price / first->est_actual_price, count});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.count != b.count) return a.count > b.count;
    return a.artist < b.artist;
  });
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.push_back(std::move(e.artist));
  return out;
}

RebalanceSnapshot weights_in(const PriceTable& table, const std::vector<std::string>& constituents,
                             int year, int lookback_years) {
  if (constituents.empty()) throw DomainError("no eligible constituents");
  std::vector<double> prices;
  prices.reserve(constituents.size());
  double total = 0.0;
  for (const auto& artist : constituents) {
    auto it = table.find(artist);
    auto p = it == table.end() ? std::nullopt : price_at_or_before(it->second, year);
    if (!p) throw DomainError(fmt::format("no price for {} at or before {}", artist, year));
    prices.push_back(*p);
    total += *p;
  }
  RebalanceSnapshot snap;
  snap.year = year;
  snap.lookback_years = lookback_years;
  for (std::size_t i = 0; i < constituents.size(); ++i) {
    snap.constituents.push_back({constituents[i], prices[i] / total});
  }
  return snap;
}

}  // namespace

void IndexConfig::validate() const {
  if (cap < 1) throw DomainError("index cap must be >= 1");
  if (lookback_years < 1) throw DomainError("lookback_years must be >= 1");
  if (base_year && end_year && *end_year <= *base_year) {
    throw DomainError("index end year must follow the base year");
  }
}

std::vector<std::string> rank_artists(const std::vector<ArtistYearStat>& stats, int as_of_year,
                                      int lookback_years) {
  return rank_in(make_table(stats), as_of_year, lookback_years);
}

std::vector<std::string> select_constituents(const std::vector<std::string>& ranked,
                                             std::size_t cap) {
  if (cap < 1) throw DomainError("cap must be >= 1");
  if (ranked.empty()) throw DomainError("no eligible constituents");
  const auto n = std::min(cap, ranked.size());
  return {ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n)};
}

RebalanceSnapshot compute_weights(const std::vector<ArtistYearStat>& stats,
                                  const std::vector<std::string>& constituents, int year,
                                  int lookback_years) {
  return weights_in(make_table(stats), constituents, year, lookback_years);
}

IndexSeries build_index(const std::vector<ArtistYearStat>& stats, const IndexConfig& config) {
  config.validate();
  if (stats.empty()) throw DomainError("build_index: no stats");
  const auto [lo, hi] = std::minmax_element(stats.begin(), stats.end(),
                                            [](const auto& a, const auto& b) { return a.year < b.year; });
  const int base = config.base_year.value_or(lo->year);
  const int end = config.end_year.value_or(hi->year);
  if (end - base < 1) throw DomainError("build_index: need at least 2 years of data");

  const PriceTable table = make_table(stats);
  IndexSeries series;
  for (int y = base; y <= end; ++y) {
    auto ranked = rank_in(table, y, config.lookback_years);
    if (ranked.empty() && !series.snapshots.empty()) {
      // Nothing traded inside the lookback window: keep last year's basket.
      RebalanceSnapshot carried = series.snapshots.back();
      carried.year = y;
      series.snapshots.push_back(std::move(carried));
      continue;
    }
    series.snapshots.push_back(
        weights_in(table, select_constituents(ranked, config.cap), y, config.lookback_years));
  }

  series.dates.push_back(first_weekday_of_year(base));
  series.levels.push_back(kIndexBaseLevel);
  for (int y = base + 1; y <= end; ++y) {
    const auto& snap = series.snapshots[static_cast<std::size_t>(y - 1 - base)];
    double ret = 0.0;
    for (const auto& c : snap.constituents) {
      const auto& rows = table.find(c.artist)->second;
      const double prev = *price_at_or_before(rows, y - 1);
      const double cur = *price_at_or_before(rows, y);
      ret += c.weight * (cur / prev - 1.0);
    }
    series.dates.push_back(first_weekday_of_year(y));
    series.levels.push_back(series.levels.back() * (1.0 + ret));
  }
  return series;
}

ReturnSeries to_daily(const IndexSeries& series, const std::vector<Date>& calendar) {
  if (calendar.size() < 2) throw DomainError("to_daily: calendar needs at least 2 dates");
  if (series.dates.size() < 2 || series.levels.size() != series.dates.size()) {
    throw DomainError("to_daily: index needs at least 2 annual points");
  }
  if (series.dates.front() < calendar.front()) {
    throw DomainError("to_daily: calendar starts after the index");
  }
  std::vector<std::size_t> pos;
  for (const Date& d : series.dates) {
    auto it = std::lower_bound(calendar.begin(), calendar.end(), d);
    if (it == calendar.end()) throw DomainError("to_daily: calendar ends before the index");
    const auto p = static_cast<std::size_t>(it - calendar.begin());
    if (!pos.empty() && p <= pos.back()) {
      throw DomainError("to_daily: two index points fall on the same trading date");
    }
    pos.push_back(p);
  }

  std::vector<Date> dates(calendar.begin() + static_cast<std::ptrdiff_t>(pos.front()),
                          calendar.begin() + static_cast<std::ptrdiff_t>(pos.back()) + 1);
  std::vector<double> values;
  values.reserve(dates.size());
  for (std::size_t k = 0; k + 1 < pos.size(); ++k) {
    const double from = series.levels[k];
    const double growth = series.levels[k + 1] / from;
    const double span = static_cast<double>(pos[k + 1] - pos[k]);
    for (std::size_t t = pos[k]; t < pos[k + 1]; ++t) {
      values.push_back(from * std::pow(growth, static_cast<double>(t - pos[k]) / span));
    }
  }
  values.push_back(series.levels.back());
  return ReturnSeries(std::move(dates), std::move(values));
}

void write_index_csv(std::ostream& out, const ReturnSeries& levels) {
  csv::write_row(out, {"date", "level"});
  for (std::size_t i = 0; i < levels.size(); ++i) {
    csv::write_row(out, {levels.dates()[i].iso(), fmt::format("{}", levels.values()[i])});
  }
}

void write_index_csv(std::ostream& out, const IndexSeries& series) {
  write_index_csv(out, ReturnSeries(series.dates, series.levels));
}

void write_snapshots_csv(std::ostream& out, const std::vector<RebalanceSnapshot>& snapshots) {
  csv::write_row(out, {"year", "artist", "weight_pct"});
  for (const auto& snap : snapshots) {
    for (const auto& c : snap.constituents) {
      csv::write_row(out, {std::to_string(snap.year), c.artist,
                           fmt::format("{:.2f}", c.weight * 100.0)});
    }
  }
}

ReturnSeries read_level_csv(std::istream& in, std::string_view what) {
  csv::Reader reader(in);
  csv::require_header(reader, {"date", "level"}, what);
  std::vector<Date> dates;
  std::vector<double> levels;
  while (auto row = reader.next()) {
    if (row->fields.size() != 2) {
      throw ParseError(fmt::format("{}: expected 2 fields on line {}", what, row->line));
    }
    auto d = Date::parse(csv::trim(row->fields[0]));
    auto v = csv::parse_double(row->fields[1]);
    if (!d || !v || !(*v > 0.0)) {
      throw ParseError(fmt::format("{}: malformed row on line {}", what, row->line));
    }
    if (!dates.empty() && !(dates.back() < *d)) {
      throw ParseError(fmt::format("{}: dates not strictly increasing on line {}", what, row->line));
    }
    dates.push_back(*d);
    levels.push_back(*v);
  }
  return ReturnSeries(std::move(dates), std::move(levels));
}

IndexSeries index_from_levels(const ReturnSeries& levels) {
  IndexSeries series;
  series.dates = levels.dates();
  series.levels = levels.values();
  return series;
}

}  // namespace arte
