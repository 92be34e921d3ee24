#include "arte/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "arte/artist_stats.hpp"
#include "arte/backtest.hpp"
#include "arte/config.hpp"
#include "arte/error.hpp"
#include "arte/index.hpp"
#include "arte/ingest.hpp"
#include "arte/metrics.hpp"
#include "arte/synth.hpp"

namespace arte::cli {

namespace fs = std::filesystem;

namespace {

// Bad flags, bad config values, unreadable inputs: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Values given on the command line; each overrides the config file.
struct Flags {
  std::optional<std::string> input;
  std::optional<std::string> benchmark;
  std::optional<std::string> out_dir;
  std::optional<int> start_year;
  std::optional<int> end_year;
  std::optional<double> allocation;
  std::optional<std::size_t> window;
  std::optional<std::size_t> cap;
  std::optional<int> lookback;
  std::optional<double> risk_free;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config;
};

enum Flag : unsigned {
  kInput = 1u << 0,
  kBenchmark = 1u << 1,
  kOutDir = 1u << 2,
  kYears = 1u << 3,
  kAllocation = 1u << 4,
  kWindow = 1u << 5,
  kCap = 1u << 6,
  kLookback = 1u << 7,
  kRiskFree = 1u << 8,
  kSeed = 1u << 9,
  kConfig = 1u << 10,
};

void add_flags(CLI::App& cmd, Flags& f, unsigned which, std::string_view input_help) {
  if (which & kInput) cmd.add_option("--input", f.input, std::string(input_help));
  if (which & kBenchmark) cmd.add_option("--benchmark", f.benchmark, "Benchmark levels CSV (date,level)");
  if (which & kOutDir) {
    cmd.add_option("--out-dir", f.out_dir, "Output directory (default: $ARTE_OUT_DIR, else .)");
  }
  if (which & kYears) {
    cmd.add_option("--start-year", f.start_year, "First year of the period");
    cmd.add_option("--end-year", f.end_year, "Last year of the period");
  }
  if (which & kAllocation) cmd.add_option("--allocation", f.allocation, "Art allocation in [0, 1] (default 0.20)");
  if (which & kWindow) cmd.add_option("--window", f.window, "Smoothing window in trading days (default 680)");
  if (which & kCap) cmd.add_option("--cap", f.cap, "Maximum index constituents (default 100)");
  if (which & kLookback) cmd.add_option("--lookback", f.lookback, "Ranking lookback in years (default 5)");
  if (which & kRiskFree) cmd.add_option("--risk-free", f.risk_free, "Annual risk-free rate as a fraction (default 0)");
  if (which & kSeed) cmd.add_option("--seed", f.seed, "Generator seed (overrides the spec)");
  if (which & kConfig) cmd.add_option("--config", f.config, "Key-value config file; flags override it");
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (f.config) apply(KeyValueFile::load(*f.config), c);
  if (f.input) c.input = *f.input;
  if (f.benchmark) c.benchmark = *f.benchmark;
  if (f.out_dir) c.out_dir = *f.out_dir;
  if (f.start_year) c.start_year = f.start_year;
  if (f.end_year) c.end_year = f.end_year;
  if (f.allocation) c.backtest.art_allocation = *f.allocation;
  if (f.window) c.backtest.smoothing_window = *f.window;
  if (f.cap) c.index.cap = *f.cap;
  if (f.lookback) c.index.lookback_years = *f.lookback;
  if (f.risk_free) c.backtest.risk_free_rate = *f.risk_free;
  if (f.seed) c.seed = f.seed;
  if (c.out_dir.empty()) {
    const char* env = std::getenv("ARTE_OUT_DIR");
    c.out_dir = env && *env ? fs::path(env) : fs::path(".");
  }
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return c;
}

void require_path(const fs::path& p, std::string_view flag) {
  if (p.empty()) throw UsageError(fmt::format("{} is required", flag));
}

std::ifstream open_input(const fs::path& p, std::string_view what) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot read {} '{}'", what, p.string()));
  return in;
}

void write_file(const fs::path& dir, std::string_view name,
                const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError(fmt::format("cannot write '{}'", path.string()));
  body(out);
  if (!out) throw UsageError(fmt::format("failed writing '{}'", path.string()));
}

struct Loaded {
  ParseResult parsed;
  std::size_t medium_kept = 0;
  EligibilityResult eligible;
};

Loaded load_transactions(const RunConfig& c) {
  require_path(c.input, "--input");
  auto in = open_input(c.input, "transactions");
  Loaded l;
  l.parsed = parse_transactions(in, c.filter);
  const auto by_medium = filter_medium(l.parsed.records, c.filter);
  l.medium_kept = by_medium.size();
  l.eligible = filter_eligible_artists(by_medium, c.filter);
  return l;
}

void ingest_stage(const RunConfig& c, const Loaded& l, std::ostream& out) {
  write_file(c.out_dir, "transactions.csv", [&](auto& o) { write_transactions_csv(o, l.eligible.records); });
  write_file(c.out_dir, "rejects.csv", [&](auto& o) { write_rejects_csv(o, l.parsed.rejects); });
  fmt::print(out, "ingest: {} accepted, {} rejected, {} kept by medium, {} eligible artists ({} records)\n",
             l.parsed.records.size(), l.parsed.rejects.size(), l.medium_kept,
             l.eligible.artists.size(), l.eligible.records.size());
}

std::vector<PerformanceReport> build_reports(const std::vector<ArtistYearStat>& stats, int start,
                                             int end) {
  if (end <= start) throw UsageError("--end-year must be greater than --start-year");
  std::vector<std::string> artists;
  for (const auto& s : stats) {
    if (artists.empty() || artists.back() != s.artist) artists.push_back(s.artist);
  }
  std::vector<PerformanceReport> reports;
  for (const auto& a : artists) {
    auto ends = period_endpoints(stats, a, start, end);
    if (!ends) continue;
    reports.push_back(make_report(a, start, end, ends->initial, ends->final));
  }
  if (reports.empty()) throw DomainError(fmt::format("no artist has data in {}-{}", start, end));
  std::stable_sort(reports.begin(), reports.end(), [](const auto& x, const auto& y) {
    if (x.irr != y.irr) return x.irr > y.irr;
    return x.artist < y.artist;
  });
  return reports;
}

void report_stage(const RunConfig& c, const YearlyStats& ys, int start, int end, std::ostream& out) {
  const auto reports = build_reports(ys.stats, start, end);
  write_file(c.out_dir, "report.csv", [&](auto& o) { write_report_csv(o, reports); });
  fmt::print(out, "report: {} artists over {}-{}\n", reports.size(), start, end);
}

IndexSeries index_stage(const RunConfig& c, const YearlyStats& ys, std::ostream& out) {
  IndexConfig ic = c.index;
  if (c.start_year) ic.base_year = c.start_year;
  if (c.end_year) ic.end_year = c.end_year;
  if (ys.stats.empty()) throw DomainError("no eligible constituents");
  const auto series = build_index(ys.stats, ic);
  write_file(c.out_dir, "stats.csv", [&](auto& o) { write_stats_csv(o, ys.stats); });
  write_file(c.out_dir, "index.csv", [&](auto& o) { write_index_csv(o, series); });
  write_file(c.out_dir, "weights.csv", [&](auto& o) { write_snapshots_csv(o, series.snapshots); });
  fmt::print(out, "index: {} annual levels {}-{}, final level {:.2f}\n", series.levels.size(),
             series.first_year(), series.last_year(), series.levels.back());
  return series;
}

void backtest_stage(const RunConfig& c, const IndexSeries& index, std::ostream& out) {
  require_path(c.benchmark, "--benchmark");
  auto bin = open_input(c.benchmark, "benchmark");
  ReturnSeries bench;
  try {
    bench = read_level_csv(bin, "benchmark");
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto result = run_experiment(index, bench, c.backtest);
  write_file(c.out_dir, "fig1_cumulative.csv", [&](auto& o) { write_fig1_csv(o, result); });
  write_file(c.out_dir, "fig2_annual.csv", [&](auto& o) { write_fig2_csv(o, result); });
  write_file(c.out_dir, "fig3_frontier.csv", [&](auto& o) { write_fig3_csv(o, result.frontier); });
  write_file(c.out_dir, "summary.txt", [&](auto& o) { write_summary(o, result, c.backtest); });
  write_summary(out, result, c.backtest);
}

int cmd_ingest(const Flags& f, std::ostream& out) {
  const auto c = resolve(f);
  ingest_stage(c, load_transactions(c), out);
  return kExitOk;
}

int cmd_report(const Flags& f, std::ostream& out) {
  const auto c = resolve(f);
  if (!c.start_year || !c.end_year) throw UsageError("--start-year and --end-year are required");
  const auto l = load_transactions(c);
  report_stage(c, yearly_stats(l.eligible.records), *c.start_year, *c.end_year, out);
  return kExitOk;
}

int cmd_index(const Flags& f, std::ostream& out) {
  const auto c = resolve(f);
  const auto l = load_transactions(c);
  index_stage(c, yearly_stats(l.eligible.records), out);
  return kExitOk;
}

int cmd_backtest(const Flags& f, std::ostream& out) {
  const auto c = resolve(f);
  require_path(c.input, "--input");
  auto in = open_input(c.input, "index");
  IndexSeries index;
  try {
    index = index_from_levels(read_level_csv(in, "index"));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  backtest_stage(c, index, out);
  return kExitOk;
}

int cmd_synth(const Flags& f, std::ostream& out) {
  const auto c = resolve(f);
  synth::SynthSpec spec;
  if (c.input.empty()) {
    spec = synth::demo_spec();
  } else {
    auto in = open_input(c.input, "synth spec");
    spec = synth::read_spec(in);
  }
  if (c.seed) spec.seed = *c.seed;
  synth::SynthData data;
  try {
    data = synth::generate(spec);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  write_file(c.out_dir, "synthetic_transactions.csv", [&](auto& o) { write_transactions_csv(o, data.records); });
  write_file(c.out_dir, "ground_truth.csv", [&](auto& o) { synth::write_truth_csv(o, data.truth); });
  write_file(c.out_dir, "benchmark.csv", [&](auto& o) { write_index_csv(o, data.benchmark); });
  fmt::print(out, "synth: {} transactions for {} artists, {} benchmark days (seed {})\n",
             data.records.size(), spec.artists.size(), data.benchmark.size(), spec.seed);
  return kExitOk;
}

int cmd_run_all(const Flags& f, std::ostream& out) {
  const auto c = resolve(f);
  const auto l = load_transactions(c);
  ingest_stage(c, l, out);
  const auto ys = yearly_stats(l.eligible.records);
  if (ys.stats.empty()) throw DomainError("no eligible artist has dimensioned sales");
  const auto [lo, hi] = std::minmax_element(ys.stats.begin(), ys.stats.end(),
                                            [](const auto& a, const auto& b) { return a.year < b.year; });
  report_stage(c, ys, c.start_year.value_or(lo->year), c.end_year.value_or(hi->year), out);
  const auto index = index_stage(c, ys, out);
  backtest_stage(c, index, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blue-chip art index construction and portfolio backtests", "arte"};
  app.require_subcommand(1, 1);

  Flags flags;
  using Handler = std::function<int(const Flags&, std::ostream&)>;
  std::map<const CLI::App*, Handler> handlers;

  auto add = [&](const char* name, const char* help, unsigned which, std::string_view input_help,
                 Handler h) {
    auto* cmd = app.add_subcommand(name, help);
    add_flags(*cmd, flags, which, input_help);
    handlers[cmd] = std::move(h);
  };
  add("ingest", "Validate and filter an auction-transaction CSV", kInput | kOutDir | kConfig,
      "Transactions CSV", cmd_ingest);
  add("report", "Per-artist IRR/MOIC report for a holding period",
      kInput | kOutDir | kYears | kConfig, "Transactions CSV", cmd_report);
  add("index", "Build the annually rebalanced index and weight snapshots",
      kInput | kOutDir | kYears | kCap | kLookback | kConfig, "Transactions CSV", cmd_index);
  add("backtest", "Smooth, blend with a benchmark and sweep the frontier",
      kInput | kBenchmark | kOutDir | kAllocation | kWindow | kRiskFree | kConfig,
      "Index levels CSV (date,level)", cmd_backtest);
  add("synth", "Generate a deterministic synthetic dataset", kInput | kOutDir | kSeed | kConfig,
      "Synth spec file (default: built-in demo spec)", cmd_synth);
  add("run-all", "ingest -> report -> index -> backtest",
      kInput | kBenchmark | kOutDir | kYears | kAllocation | kWindow | kCap | kLookback |
          kRiskFree | kConfig,
      "Transactions CSV", cmd_run_all);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* selected = app.get_subcommands().front();
  try {
    return handlers.at(selected)(flags, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitEmpty;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
}

}  // namespace arte::cli
