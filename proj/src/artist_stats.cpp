#include "arte/artist_stats.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "arte/csv.hpp"
#include "arte/error.hpp"
#include "arte/kernels.hpp"

namespace arte {

std::optional<double> normalize_price(const AuctionRecord& record) {
  if (!record.height_cm || !record.width_cm) return std::nullopt;
  return record.price_usd / (*record.height_cm * *record.width_cm);
}

YearlyStats yearly_stats(const std::vector<AuctionRecord>& records) {
  YearlyStats result;
  std::vector<std::size_t> usable;
  usable.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].height_cm && records[i].width_cm) {
      usable.push_back(i);
    } else {
      ++result.skipped_rows;
    }
  }
  std::stable_sort(usable.begin(), usable.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    if (ra.artist != rb.artist) return ra.artist < rb.artist;
    return ra.sale_date < rb.sale_date;
  });

  std::vector<double> norm(usable.size());
  std::vector<double> area(usable.size());
  std::vector<std::size_t> offsets;
  for (std::size_t k = 0; k < usable.size(); ++k) {
    const auto& r = records[usable[k]];
    area[k] = *r.height_cm * *r.width_cm;
    norm[k] = r.price_usd / area[k];
    if (k == 0 || r.artist != records[usable[k - 1]].artist ||
        r.sale_date.year() != records[usable[k - 1]].sale_date.year()) {
      offsets.push_back(k);
    }
  }
  offsets.push_back(usable.size());
  if (usable.empty()) return result;

  const auto norm_means = kernels::parallel::group_means(norm, offsets);
  const auto area_means = kernels::parallel::group_means(area, offsets);

  result.stats.reserve(norm_means.size());
  for (std::size_t g = 0; g < norm_means.size(); ++g) {
    const auto& first = records[usable[offsets[g]]];
    ArtistYearStat s;
    s.artist = first.artist;
    s.year = first.sale_date.year();
    s.avg_norm_price = norm_means[g];
    s.avg_area = area_means[g];
    s.est_actual_price = norm_means[g] * area_means[g];
    s.n_transactions = offsets[g + 1] - offsets[g];
    result.stats.push_back(std::move(s));
  }
  return result;
}

std::optional<PeriodEndpoints> period_endpoints(const std::vector<ArtistYearStat>& stats,
                                                std::string_view artist, int start_year,
                                                int end_year) {
  if (start_year > end_year) throw DomainError("period_endpoints: start_year > end_year");
  const ArtistYearStat* first = nullptr;
  const ArtistYearStat* last = nullptr;
  for (const auto& s : stats) {
    if (s.artist != artist || s.year < start_year || s.year > end_year) continue;
    if (!first || s.year < first->year) first = &s;
    if (!last || s.year > last->year) last = &s;
  }
  if (!first || !last) return std::nullopt;
  return PeriodEndpoints{first->est_actual_price, last->est_actual_price, first->year, last->year};
}

void write_stats_csv(std::ostream& out, const std::vector<ArtistYearStat>& stats) {
  csv::write_row(out, kStatsColumns);
  for (const auto& s : stats) {
    csv::write_row(out, {s.artist, std::to_string(s.year), fmt::format("{}", s.avg_norm_price),
                         fmt::format("{}", s.avg_area), fmt::format("{}", s.est_actual_price),
                         std::to_string(s.n_transactions)});
  }
}

std::vector<ArtistYearStat> read_stats_csv(std::istream& in) {
  csv::Reader reader(in);
  csv::require_header(reader, kStatsColumns, "stats");
  std::vector<ArtistYearStat> out;
  while (auto row = reader.next()) {
    const auto& f = row->fields;
    auto fail = [&] { return ParseError(fmt::format("stats: malformed row on line {}", row->line)); };
    if (f.size() != kStatsColumns.size()) throw fail();
    auto year = csv::parse_long(f[1]);
    auto norm = csv::parse_double(f[2]);
    auto area = csv::parse_double(f[3]);
    auto est = csv::parse_double(f[4]);
    auto n = csv::parse_long(f[5]);
    if (!year || !norm || !area || !est || !n || *n < 1 || *norm <= 0 || *area <= 0) throw fail();
    out.push_back({canonical_artist(f[0]), static_cast<int>(*year), *norm, *area, *est,
                   static_cast<std::size_t>(*n)});
  }
  return out;
}

}  // namespace arte
