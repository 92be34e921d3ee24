#include "arte/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "arte/config.hpp"
#include "arte/csv.hpp"
#include "arte/error.hpp"

namespace arte::synth {

namespace {

// Stream tags keep the draws for different purposes independent.
enum Stream : std::uint64_t { kArea = 1, kAspect, kNoise, kMonth, kDay, kMedium, kHouse, kBenchmark };

constexpr std::array kHouses{"Christie's New York", "Sotheby's London", "Phillips New York",
                             "Christie's Hong Kong", "Sotheby's Paris", "Bonhams London",
                             "Dorotheum Vienna", "Ketterer Kunst Munich"};

double round_tenth(double x) { return std::max(0.1, std::round(x * 10.0) / 10.0); }

}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::span<const std::uint64_t> key) const {
  std::uint64_t h = mix(seed_);
  for (auto w : key) h = mix(h ^ w);
  return h;
}

std::uint64_t CounterRng::bits(std::initializer_list<std::uint64_t> key) const {
  return bits(std::span<const std::uint64_t>(key.begin(), key.size()));
}

double CounterRng::uniform(std::initializer_list<std::uint64_t> key) const {
  return to_unit(bits(key));
}

double CounterRng::normal(std::initializer_list<std::uint64_t> key) const {
  std::vector<std::uint64_t> words(key);
  words.push_back(0);
  const double u1 = to_unit(bits(words));
  words.back() = 1;
  const double u2 = to_unit(bits(words));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SynthSpec::validate() const {
  if (!(start_year < end_year)) throw DomainError("synth: start_year must precede end_year");
  if (artists.empty()) throw DomainError("synth: no artists");
  if (!(area_spread >= 0.0 && area_spread < 1.0)) throw DomainError("synth: area_spread must be in [0, 1)");
  if (!(benchmark_start_level > 0.0) || benchmark_vol < 0.0) {
    throw DomainError("synth: invalid benchmark parameters");
  }
  for (const auto& a : artists) {
    if (canonical_artist(a.name).empty()) throw DomainError("synth: empty artist name");
    if (!(a.base_price > 0.0)) throw DomainError(fmt::format("synth: {}: base_price must be > 0", a.name));
    if (a.sales_per_year < 1) throw DomainError(fmt::format("synth: {}: sales_per_year must be >= 1", a.name));
    if (a.noise_sd < 0.0) throw DomainError(fmt::format("synth: {}: noise_sd must be >= 0", a.name));
    if (!(a.mean_area > 0.0)) throw DomainError(fmt::format("synth: {}: mean_area must be > 0", a.name));
    if (!(a.annual_growth > -1.0)) throw DomainError(fmt::format("synth: {}: growth must be > -1", a.name));
  }
}

SynthData generate(const SynthSpec& spec) {
  spec.validate();
  const CounterRng rng(spec.seed);
  SynthData data;

  for (std::size_t ai = 0; ai < spec.artists.size(); ++ai) {
    const auto& artist = spec.artists[ai];
    const std::string name = canonical_artist(artist.name);
    for (int year = spec.start_year; year <= spec.end_year; ++year) {
      const auto uy = static_cast<std::uint64_t>(year);
      const double true_price =
          artist.base_price * std::pow(1.0 + artist.annual_growth, year - spec.start_year);
      data.truth.push_back({name, year, true_price});

      const auto sales = static_cast<std::size_t>(artist.sales_per_year);
      std::vector<double> heights(sales), widths(sales);
      double area_sum = 0.0;
      for (std::size_t s = 0; s < sales; ++s) {
        const double u = rng.uniform({kArea, ai, uy, s});
        const double area = artist.mean_area * (1.0 - spec.area_spread + 2.0 * spec.area_spread * u);
        const double aspect = 0.6 + rng.uniform({kAspect, ai, uy, s});
        heights[s] = round_tenth(std::sqrt(area * aspect));
        widths[s] = round_tenth(area / heights[s]);
        area_sum += heights[s] * widths[s];
      }
      const double mean_area = area_sum / static_cast<double>(sales);

      for (std::size_t s = 0; s < sales; ++s) {
        const double area = heights[s] * widths[s];
        const double fair = true_price * area / mean_area;
        const double noise = std::exp(artist.noise_sd * rng.normal({kNoise, ai, uy, s}));
        AuctionRecord rec;
        rec.artist = name;
        rec.title = fmt::format("Untitled {}-{}", year, s + 1);
        rec.medium = rng.uniform({kMedium, ai, uy, s}) < 0.7 ? Medium::Painting : Medium::Sculpture;
        rec.auction_house = kHouses[rng.bits({kHouse, ai, uy, s}) % kHouses.size()];
        const auto month = 1 + static_cast<unsigned>(rng.uniform({kMonth, ai, uy, s}) * 12.0);
        const auto day = 1 + static_cast<unsigned>(rng.uniform({kDay, ai, uy, s}) * 28.0);
        rec.sale_date = Date{year, month, day};
        rec.height_cm = heights[s];
        rec.width_cm = widths[s];
        rec.price_usd = fair * noise;
        rec.low_estimate_usd = std::round(fair * 0.8);
        rec.high_estimate_usd = std::round(fair * 1.2);
        data.records.push_back(std::move(rec));
      }
    }
  }

  const auto calendar = weekday_calendar(Date{spec.start_year, 1, 1}, Date{spec.end_year, 12, 31});
  std::vector<double> levels(calendar.size());
  const double dt = 1.0 / 252.0;
  const double drift = (spec.benchmark_drift - 0.5 * spec.benchmark_vol * spec.benchmark_vol) * dt;
  const double diffusion = spec.benchmark_vol * std::sqrt(dt);
  levels[0] = spec.benchmark_start_level;
  for (std::size_t t = 1; t < calendar.size(); ++t) {
    levels[t] = levels[t - 1] * std::exp(drift + diffusion * rng.normal({kBenchmark, t}));
  }
  data.benchmark = ReturnSeries(calendar, std::move(levels));
  return data;
}

SynthSpec demo_spec() {
  SynthSpec spec;
  spec.seed = 20240101;
  spec.start_year = 1990;
  spec.end_year = 2024;
  for (int k = 0; k < 40; ++k) {
    SynthArtist a;
    a.name = fmt::format("Demo Artist {:02d}", k + 1);
    a.base_price = 150'000.0 + 90'000.0 * ((k * 37) % 50);
    a.annual_growth = -0.02 + 0.005 * ((k * 7) % 30);
    a.noise_sd = 0.15 + 0.01 * (k % 20);
    a.sales_per_year = 4 + (k % 9);
    a.mean_area = 4'000.0 + 750.0 * (k % 20);
    spec.artists.push_back(std::move(a));
  }
  return spec;
}

SynthSpec read_spec(std::istream& in) {
  const auto file = KeyValueFile::parse(in, "synth spec");
  SynthSpec spec;
  auto number = [&](std::string_view key, double& slot) {
    if (auto v = file.last(key)) {
      auto d = csv::parse_double(*v);
      if (!d) throw ParseError(fmt::format("synth spec: {} is not a number", key));
      slot = *d;
    }
  };
  auto integer = [&](std::string_view key, auto& slot) {
    if (auto v = file.last(key)) {
      auto d = csv::parse_long(*v);
      if (!d) throw ParseError(fmt::format("synth spec: {} is not an integer", key));
      slot = static_cast<std::remove_reference_t<decltype(slot)>>(*d);
    }
  };
  for (const auto& key : file.keys()) {
    static const std::array known{"seed", "start_year", "end_year", "area_spread",
                                  "benchmark_start_level", "benchmark_drift", "benchmark_vol",
                                  "artist"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(fmt::format("synth spec: unknown key '{}'", key));
    }
  }
  if (auto v = file.last("seed")) {
    std::uint64_t seed = 0;
    auto t = csv::trim(*v);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), seed);
    if (ec != std::errc{} || ptr != t.data() + t.size()) throw ParseError("synth spec: bad seed");
    spec.seed = seed;
  }
  integer("start_year", spec.start_year);
  integer("end_year", spec.end_year);
  number("area_spread", spec.area_spread);
  number("benchmark_start_level", spec.benchmark_start_level);
  number("benchmark_drift", spec.benchmark_drift);
  number("benchmark_vol", spec.benchmark_vol);

  for (const auto& line : file.all("artist")) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const auto bar = line.find('|', start);
      parts.push_back(csv::trim(std::string_view(line).substr(start, bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (parts.size() != 6) {
      throw ParseError(fmt::format("synth spec: artist line '{}' needs 6 '|'-separated fields", line));
    }
    SynthArtist a;
    a.name = parts[0];
    auto base = csv::parse_double(parts[1]);
    auto growth = csv::parse_double(parts[2]);
    auto noise = csv::parse_double(parts[3]);
    auto sales = csv::parse_long(parts[4]);
    auto area = csv::parse_double(parts[5]);
    if (!base || !growth || !noise || !sales || !area) {
      throw ParseError(fmt::format("synth spec: malformed artist line '{}'", line));
    }
    a.base_price = *base;
    a.annual_growth = *growth;
    a.noise_sd = *noise;
    a.sales_per_year = static_cast<int>(*sales);
    a.mean_area = *area;
    spec.artists.push_back(std::move(a));
  }
  return spec;
}

void write_truth_csv(std::ostream& out, const std::vector<TruePrice>& truth) {
  csv::write_row(out, {"artist", "year", "true_price"});
  for (const auto& t : truth) {
    csv::write_row(out, {t.artist, std::to_string(t.year), fmt::format("{}", t.true_price)});
  }
}

}  // namespace arte::synth
