#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "arte/ingest.hpp"

namespace arte {

struct ArtistYearStat {
  std::string artist;
  int year = 0;
  double avg_norm_price = 0.0;    // USD per cm^2
  double avg_area = 0.0;          // cm^2
  double est_actual_price = 0.0;  // avg_norm_price * avg_area
  std::size_t n_transactions = 0;

  friend bool operator==(const ArtistYearStat&, const ArtistYearStat&) = default;
};

struct YearlyStats {
  std::vector<ArtistYearStat> stats;  // sorted by (artist, year)
  std::size_t skipped_rows = 0;       // records lacking a dimension
};

struct PeriodEndpoints {
  double initial = 0.0;
  double final = 0.0;
  int initial_year = 0;
  int final_year = 0;
};

// price / (height * width), or nullopt when either dimension is missing.
std::optional<double> normalize_price(const AuctionRecord& record);

// Per (artist, year): mean price per cm^2 and mean area, recombined into an
// estimated actual price. Summation within a group runs in ascending
// sale_date, then input order, so the result is independent of threading.
YearlyStats yearly_stats(const std::vector<AuctionRecord>& records);

// Initial value from the first year >= start_year with data, final value from
// the last year <= end_year with data.
std::optional<PeriodEndpoints> period_endpoints(const std::vector<ArtistYearStat>& stats,
                                                std::string_view artist, int start_year,
                                                int end_year);

inline const std::vector<std::string> kStatsColumns{
    "artist", "year", "avg_norm_price", "avg_area", "est_actual_price", "n_transactions"};

void write_stats_csv(std::ostream& out, const std::vector<ArtistYearStat>& stats);
std::vector<ArtistYearStat> read_stats_csv(std::istream& in);

}  // namespace arte
