#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "arte/artist_stats.hpp"
#include "arte/date.hpp"
#include "arte/metrics.hpp"

namespace arte {

struct Constituent {
  std::string artist;
  double weight = 0.0;
};

struct RebalanceSnapshot {
  int year = 0;
  std::vector<Constituent> constituents;
  int lookback_years = 5;
};

struct IndexConfig {
  std::size_t cap = 100;
  int lookback_years = 5;
  std::optional<int> base_year;  // defaults to the first year with stats
  std::optional<int> end_year;   // defaults to the last year with stats

  void validate() const;
};

// Annual index levels dated at the first weekday of each year, base 100.
struct IndexSeries {
  std::vector<Date> dates;
  std::vector<double> levels;
  std::vector<RebalanceSnapshot> snapshots;

  int first_year() const { return dates.front().year(); }
  int last_year() const { return dates.back().year(); }
};

inline constexpr double kIndexBaseLevel = 100.0;

// Artists with data inside [as_of_year - lookback_years, as_of_year], ordered
// by descending price ratio over that window (endpoints snapped inward), then
// descending transaction count in the window, then name.
std::vector<std::string> rank_artists(const std::vector<ArtistYearStat>& stats,
                                      int as_of_year, int lookback_years);

// Throws DomainError("no eligible constituents") on an empty ranking.
std::vector<std::string> select_constituents(const std::vector<std::string>& ranked,
                                             std::size_t cap = 100);

// Price-share weights using each constituent's est_actual_price at `year`,
// or at its latest earlier year with data.
RebalanceSnapshot compute_weights(const std::vector<ArtistYearStat>& stats,
                                  const std::vector<std::string>& constituents, int year,
                                  int lookback_years = 5);

// Chains weighted price relatives year over year. The snapshot taken at year
// y-1 holds fixed through year y; missing prices are carried forward.
IndexSeries build_index(const std::vector<ArtistYearStat>& stats, const IndexConfig& config);

// Log-linear interpolation of the annual levels onto a trading calendar. Each
// annual point is pinned to the first calendar date on or after it; the output
// spans the first to the last pinned date.
ReturnSeries to_daily(const IndexSeries& series, const std::vector<Date>& calendar);

void write_index_csv(std::ostream& out, const ReturnSeries& levels);
void write_index_csv(std::ostream& out, const IndexSeries& series);
void write_snapshots_csv(std::ostream& out, const std::vector<RebalanceSnapshot>& snapshots);

// `date,level` files; used for both index and benchmark inputs.
ReturnSeries read_level_csv(std::istream& in, std::string_view what);

// Rebuilds an annual IndexSeries (no snapshots) from a `date,level` file.
IndexSeries index_from_levels(const ReturnSeries& levels);

}  // namespace arte
