#pragma once

#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "arte/ingest.hpp"
#include "arte/metrics.hpp"

namespace arte::synth {

// Counter-based generator: every draw is a pure function of (seed, key).
//
//   mix(z)  = SplitMix64 finalizer:
//             z += 0x9E3779B97F4A7C15
//             z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//             z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
//             z ^ (z >> 31)
//   bits(k) = h := mix(seed); for each key word w: h := mix(h ^ w); h
//   uniform = ((bits >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
//   normal  = Box-Muller cosine branch on uniforms with key words
//             (..., 0) and (..., 1) appended
//
// No draw depends on a previous one, so output is independent of iteration
// or thread order and can be reproduced in any language.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::initializer_list<std::uint64_t> key) const;
  double uniform(std::initializer_list<std::uint64_t> key) const;
  double normal(std::initializer_list<std::uint64_t> key) const;

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t bits(std::span<const std::uint64_t> key) const;
  static double to_unit(std::uint64_t b) { return (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53; }

  std::uint64_t seed_;
};

struct SynthArtist {
  std::string name;
  double base_price = 0.0;     // USD in the start year
  double annual_growth = 0.0;  // fraction
  double noise_sd = 0.0;       // lognormal sigma of the price multiplier
  int sales_per_year = 1;
  double mean_area = 10'000.0;  // cm^2
};

struct SynthSpec {
  std::uint64_t seed = 0;
  int start_year = 1990;
  int end_year = 2024;
  std::vector<SynthArtist> artists;
  double area_spread = 0.5;  // areas uniform in mean_area * [1 - s, 1 + s]
  // Daily weekday benchmark (geometric Brownian motion) written alongside.
  double benchmark_start_level = 1000.0;
  double benchmark_drift = 0.07;
  double benchmark_vol = 0.18;

  void validate() const;
};

struct TruePrice {
  std::string artist;
  int year = 0;
  double true_price = 0.0;
};

struct SynthData {
  std::vector<AuctionRecord> records;  // ordered by artist, year, sale counter
  std::vector<TruePrice> truth;
  ReturnSeries benchmark;
};

// Price of each sale: true_price * exp(noise_sd * z) * area / (mean area of
// that artist-year), so price per cm^2 is flat within an artist-year and a
// zero-noise spec is recovered exactly by yearly_stats.
SynthData generate(const SynthSpec& spec);

SynthSpec demo_spec();

// Flat key-value grammar (see config.hpp); `artist` lines carry
// `name | base_price | growth | noise_sd | sales_per_year | mean_area`.
SynthSpec read_spec(std::istream& in);

void write_truth_csv(std::ostream& out, const std::vector<TruePrice>& truth);

}  // namespace arte::synth
