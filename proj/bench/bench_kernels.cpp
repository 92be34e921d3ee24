// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary the
// thread count.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "arte/backtest.hpp"
#include "arte/kernels.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

std::vector<double> walk(std::size_t n, std::uint64_t seed) {
  std::vector<double> v{100.0};
  for (double z : noise(n - 1, seed)) v.push_back(v.back() * (1.0 + 0.01 * z));
  return v;
}

template <auto Kernel>
void BM_RollingMean(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, 680));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_RollingPearson(benchmark::State& state) {
  const auto a = noise(static_cast<std::size_t>(state.range(0)), 2);
  const auto b = noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b, 252));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_GroupMeans(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 4);
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i <= n; i += 8) offsets.push_back(i);
  if (offsets.back() != n) offsets.push_back(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, offsets));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Frontier(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cal = arte::weekday_calendar(arte::Date(1990, 1, 1), arte::Date(2100, 1, 1));
  const std::vector<arte::Date> dates(cal.begin(), cal.begin() + static_cast<std::ptrdiff_t>(n));
  const arte::ReturnSeries art(dates, walk(n, 5));
  const arte::ReturnSeries bench(dates, walk(n, 6));
  for (auto _ : state) benchmark::DoNotOptimize(arte::efficient_frontier(art, bench, {}, 0.01));
}

namespace serial = arte::kernels::serial;
namespace parallel = arte::kernels::parallel;

BENCHMARK(BM_RollingMean<serial::rolling_mean>)->Name("rolling_mean/serial")->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_RollingMean<parallel::rolling_mean>)->Name("rolling_mean/parallel")->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_RollingPearson<serial::rolling_pearson>)->Name("rolling_pearson/serial")->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK(BM_RollingPearson<parallel::rolling_pearson>)->Name("rolling_pearson/parallel")->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK(BM_GroupMeans<serial::group_means>)->Name("group_means/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_GroupMeans<parallel::group_means>)->Name("group_means/parallel")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Frontier)->Name("efficient_frontier")->Arg(2520)->Arg(8820)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
