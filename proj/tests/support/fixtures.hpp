#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arte/artist_stats.hpp"
#include "arte/date.hpp"
#include "arte/ingest.hpp"
#include "arte/metrics.hpp"

namespace arte::fixture {

inline AuctionRecord record(std::string artist, Date date, double price,
                            std::optional<double> height = 100.0,
                            std::optional<double> width = 100.0,
                            Medium medium = Medium::Painting) {
  AuctionRecord r;
  r.artist = std::move(artist);
  r.title = "Untitled";
  r.medium = medium;
  r.auction_house = "Test House";
  r.sale_date = date;
  r.height_cm = height;
  r.width_cm = width;
  r.price_usd = price;
  return r;
}

inline ArtistYearStat stat(std::string artist, int year, double est_price, std::size_t n = 1) {
  // Unit area keeps est_actual_price == avg_norm_price * avg_area exact.
  return {std::move(artist), year, est_price, 1.0, est_price, n};
}

inline std::string header() {
  return "artist,title,medium,auction_house,sale_date,height_cm,width_cm,price_usd,"
         "low_estimate_usd,high_estimate_usd\n";
}

// Weekday series starting at `first` with the given levels.
inline ReturnSeries series(const std::vector<double>& levels, Date first = Date{2020, 1, 6}) {
  std::vector<Date> dates;
  Date d = first;
  while (dates.size() < levels.size()) {
    if (d.is_weekday()) dates.push_back(d);
    d = d.plus_days(1);
  }
  return ReturnSeries(dates, levels);
}

// Random walk of positive levels.
inline std::vector<double> random_levels(std::mt19937_64& rng, std::size_t n, double vol = 0.02,
                                         double drift = 0.0) {
  std::normal_distribution<double> z(drift, vol);
  std::vector<double> v{100.0};
  while (v.size() < n) v.push_back(v.back() * std::exp(z(rng)));
  return v;
}

}  // namespace arte::fixture
