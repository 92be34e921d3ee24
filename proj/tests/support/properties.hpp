#pragma once

// Randomised invariant checks shared by the unit suite and the acceptance
// binary. Each check draws `instances` cases from a seeded mt19937_64 and
// reports how many violated the invariant.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "arte/artist_stats.hpp"
#include "arte/backtest.hpp"
#include "arte/index.hpp"
#include "arte/ingest.hpp"
#include "arte/kernels.hpp"
#include "arte/metrics.hpp"
#include "fixtures.hpp"

namespace arte::props {

struct Outcome {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && instances > 0; }
};

using Check = std::function<std::string(std::mt19937_64&)>;  // empty string = holds

inline Outcome run(std::string name, int instances, std::uint64_t seed, const Check& check) {
  Outcome o{std::move(name), instances, 0, {}};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < instances; ++i) {
    std::string msg = check(rng);
    if (!msg.empty() && o.failures++ == 0) o.first_failure = fmt::format("instance {}: {}", i, msg);
  }
  return o;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Sparse random panel: artists trade in the first and last year and drop out
// in between; prices span several decades.
inline std::vector<ArtistYearStat> random_stats(std::mt19937_64& rng, int first_year = 2000) {
  std::vector<ArtistYearStat> stats;
  const int artists = uniform_int(rng, 1, 25);
  const int years = uniform_int(rng, 2, 15);
  for (int a = 0; a < artists; ++a) {
    double price = std::exp(uniform_real(rng, std::log(1e3), std::log(1e8)));
    const std::string name = fmt::format("Artist {:03d}", a);
    for (int y = first_year; y < first_year + years; ++y) {
      price *= std::exp(uniform_real(rng, -0.4, 0.5));
      const bool edge = y == first_year || y == first_year + years - 1;
      if (!edge && uniform_real(rng, 0.0, 1.0) < 0.3) continue;
      stats.push_back(fixture::stat(name, y, price, static_cast<std::size_t>(uniform_int(rng, 1, 9))));
    }
  }
  return stats;
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

inline Outcome weight_normalization(int instances = 200) {
  return run("index weights are non-negative and sum to 1", instances, 101, [](auto& rng) {
    const auto stats = random_stats(rng);
    IndexConfig config;
    config.cap = static_cast<std::size_t>(uniform_int(rng, 1, 30));
    config.lookback_years = uniform_int(rng, 1, 6);
    const auto idx = build_index(stats, config);
    for (const auto& snap : idx.snapshots) {
      double total = 0.0;
      for (const auto& c : snap.constituents) {
        if (!(c.weight >= 0.0)) return fmt::format("negative weight in {}", snap.year);
        total += c.weight;
      }
      if (std::abs(total - 1.0) > 1e-12) return fmt::format("sum {} in {}", total, snap.year);
      if (snap.constituents.size() > config.cap) return std::string("cap exceeded");
    }
    return std::string{};
  });
}

inline Outcome irr_moic_identity(int instances = 1000) {
  return run("(1 + IRR)^years equals MOIC", instances, 102, [](auto& rng) {
    const double initial = std::exp(uniform_real(rng, std::log(1.0), std::log(1e7)));
    const double final = initial * std::exp(uniform_real(rng, -3.0, 6.0));
    const int start = uniform_int(rng, 1990, 2020);
    const int end = start + uniform_int(rng, 1, 30);
    const auto r = make_report("X", start, end, initial, final);
    const double lhs = std::pow(1.0 + r.irr, end - start);
    if (std::abs(lhs / r.moic - 1.0) > 1e-9) return fmt::format("{} vs {}", lhs, r.moic);
    return std::string{};
  });
}

inline Outcome rolling_average_bounds(int instances = 200) {
  return run("rolling average stays within window bounds; window 1 is identity", instances, 103,
             [](auto& rng) {
               const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 400));
               std::vector<double> levels;
               for (double z : random_values(rng, n)) levels.push_back(std::exp(z));
               const auto s = fixture::series(levels);
               const auto window = static_cast<std::size_t>(uniform_int(rng, 1, 700));
               const auto avg = rolling_average(s, window).values();
               for (std::size_t t = 0; t < n; ++t) {
                 const std::size_t lo = t + 1 >= window ? t + 1 - window : 0;
                 const auto [mn, mx] = std::minmax_element(levels.begin() + lo, levels.begin() + t + 1);
                 const double slack = 1e-12 * *mx;
                 if (avg[t] < *mn - slack || avg[t] > *mx + slack) return fmt::format("t={}", t);
               }
               if (rolling_average(s, 1).values() != levels) return std::string("window 1 changed values");
               return std::string{};
             });
}

inline Outcome correlation_bounds(int instances = 200) {
  return run("correlations lie in [-1, 1]; corr(x, x) = 1", instances, 104, [](auto& rng) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 3, 200));
    auto a = random_values(rng, n);
    auto b = random_values(rng, n);
    const double mix = uniform_real(rng, -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) b[i] = mix * a[i] + (1.0 - std::abs(mix)) * b[i];
    const double r = kernels::pearson(a, b);
    if (!(r >= -1.0 && r <= 1.0)) return fmt::format("corr {}", r);
    if (std::abs(kernels::pearson(a, a) - 1.0) > 1e-12) return std::string("corr(x, x) != 1");
    const auto window = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<int>(n)));
    for (double w : kernels::parallel::rolling_pearson(a, b, window)) {
      if (!std::isnan(w) && !(w >= -1.0 && w <= 1.0)) return fmt::format("rolling corr {}", w);
    }
    return std::string{};
  });
}

inline Outcome index_scale_invariance(int instances = 200) {
  return run("index levels ignore a global price rescale", instances, 105, [](auto& rng) {
    const auto stats = random_stats(rng);
    const double k = std::exp(uniform_real(rng, -10.0, 10.0));
    auto scaled = stats;
    for (auto& s : scaled) {
      s.avg_norm_price *= k;
      s.est_actual_price *= k;
    }
    const auto a = build_index(stats, {});
    const auto b = build_index(scaled, {});
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      if (std::abs(a.levels[i] - b.levels[i]) > 1e-9 * a.levels[i]) {
        return fmt::format("level {}: {} vs {}", i, a.levels[i], b.levels[i]);
      }
    }
    return std::string{};
  });
}

inline Outcome filter_monotonicity(int instances = 200) {
  return run("tightening eligibility thresholds never adds artists", instances, 106, [](auto& rng) {
    std::vector<AuctionRecord> records;
    const int artists = uniform_int(rng, 1, 20);
    for (int a = 0; a < artists; ++a) {
      const int first = uniform_int(rng, 1990, 2020);
      const int last = uniform_int(rng, first, 2024);
      const int sales = uniform_int(rng, 1, 12);
      for (int s = 0; s < sales; ++s) {
        const int y = uniform_int(rng, first, last);
        records.push_back(fixture::record(fmt::format("A{}", a), Date(y, 6, 1),
                                          std::exp(uniform_real(rng, 10.0, 16.0))));
      }
    }
    FilterConfig loose;
    loose.min_history_years = uniform_int(rng, 1, 20);
    loose.min_avg_price = uniform_real(rng, 0.0, 2e6);
    FilterConfig tight = loose;
    tight.min_history_years += uniform_int(rng, 0, 10);
    tight.min_avg_price += uniform_real(rng, 0.0, 2e6);
    std::set<std::string> broad;
    for (const auto& e : filter_eligible_artists(records, loose).artists) broad.insert(e.artist);
    for (const auto& e : filter_eligible_artists(records, tight).artists) {
      if (!broad.contains(e.artist)) return fmt::format("{} appeared", e.artist);
    }
    return std::string{};
  });
}

inline Outcome blend_bounds(int instances = 200) {
  return run("buy-and-hold blend stays between its two assets", instances, 107, [](auto& rng) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 300));
    const auto art = fixture::series(fixture::random_levels(rng, n, 0.02));
    const auto bench = fixture::series(fixture::random_levels(rng, n, 0.02));
    BacktestConfig c;
    c.art_allocation = uniform_real(rng, 0.0, 1.0);
    const auto p = blend_portfolio(art, bench, c).portfolio.values();
    for (std::size_t t = 0; t < n; ++t) {
      const double x = art.values()[t] / art.values()[0];
      const double y = bench.values()[t] / bench.values()[0];
      const double lo = std::min(x, y) * (1.0 - 1e-12);
      const double hi = std::max(x, y) * (1.0 + 1e-12);
      if (p[t] < lo || p[t] > hi) return fmt::format("t={}: {} outside [{}, {}]", t, p[t], lo, hi);
    }
    return std::string{};
  });
}

inline Outcome kernel_agreement(int instances = 100) {
  return run("parallel kernels match the serial reference bit for bit", instances, 108,
             [](auto& rng) {
               const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 2000));
               const auto a = random_values(rng, n);
               const auto b = random_values(rng, n);
               const auto w = static_cast<std::size_t>(uniform_int(rng, 1, 100));
               if (kernels::serial::rolling_mean(a, w) != kernels::parallel::rolling_mean(a, w)) {
                 return std::string("rolling_mean");
               }
               if (w >= 2 && n >= w) {
                 const auto s = kernels::serial::rolling_pearson(a, b, w);
                 const auto p = kernels::parallel::rolling_pearson(a, b, w);
                 for (std::size_t i = 0; i < s.size(); ++i) {
                   if (!(s[i] == p[i] || (std::isnan(s[i]) && std::isnan(p[i])))) {
                     return std::string("rolling_pearson");
                   }
                 }
               }
               std::vector<std::size_t> offsets{0};
               while (offsets.back() < n) {
                 offsets.push_back(std::min(n, offsets.back() + static_cast<std::size_t>(uniform_int(rng, 1, 50))));
               }
               if (kernels::serial::group_means(a, offsets) != kernels::parallel::group_means(a, offsets)) {
                 return std::string("group_means");
               }
               return std::string{};
             });
}

inline std::vector<Outcome> all() {
  return {weight_normalization(), irr_moic_identity(),     rolling_average_bounds(),
          correlation_bounds(),   index_scale_invariance(), filter_monotonicity(),
          blend_bounds(),         kernel_agreement()};
}

}  // namespace arte::props
