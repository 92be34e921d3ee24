#include "arte/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>

#include <fmt/format.h>

#include "arte/csv.hpp"
#include "arte/error.hpp"
#include "arte/kernels.hpp"

namespace arte {

namespace {

void require_same_dates(const ReturnSeries& a, const ReturnSeries& b) {
  if (a.dates() != b.dates()) throw DomainError("art and benchmark series must share dates");
  if (a.size() < 2) throw DomainError("series need at least 2 points");
}

// Portfolio value per unit of initial capital. Sleeve values are computed from
// level ratios since the last rebalance, not by compounding returns.
std::vector<double> blend_values(const std::vector<double>& a, const std::vector<double>& b,
                                 double w, RebalancePolicy policy, std::size_t interval) {
  std::vector<double> out(a.size());
  out[0] = 1.0;
  double sleeve_a = w;
  double sleeve_b = 1.0 - w;
  std::size_t anchor = 0;
  for (std::size_t t = 1; t < a.size(); ++t) {
    out[t] = sleeve_a * (a[t] / a[anchor]) + sleeve_b * (b[t] / b[anchor]);
    if (policy == RebalancePolicy::PeriodicToTarget && t % interval == 0) {
      sleeve_a = w * out[t];
      sleeve_b = (1.0 - w) * out[t];
      anchor = t;
    }
  }
  return out;
}

BacktestResult evaluate(const ReturnSeries& art, const ReturnSeries& benchmark,
                        const BacktestConfig& config, double w, bool with_correlation) {
  BacktestResult r;
  r.portfolio = ReturnSeries(art.dates(), blend_values(art.values(), benchmark.values(), w,
                                                       config.rebalance_policy,
                                                       config.rebalance_interval));
  const auto returns = period_returns(r.portfolio);
  r.cumulative_return = cumulative_return(r.portfolio);
  r.annual_returns = annual_returns(r.portfolio);
  r.annual_return = mean(returns) * config.periods_per_year;
  r.volatility = returns.size() >= 2 ? annualized_volatility(returns, config.periods_per_year) : 0.0;
  if (r.volatility > 0.0) {
    r.sharpe = (r.annual_return - config.risk_free_rate) / r.volatility;
  }
  if (with_correlation) r.correlation_by_year = correlation_by_year(art, benchmark);
  return r;
}

std::vector<double> allocation_grid(double step) {
  if (!(step > 0.0) || step > 0.5) throw DomainError("grid_step must be in (0, 0.5]");
  std::vector<double> grid;
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) < 1e-9) {
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k <= count; ++k) grid.push_back(static_cast<double>(k) / n);
  } else {
    for (std::size_t k = 0; static_cast<double>(k) * step < 1.0; ++k) {
      grid.push_back(static_cast<double>(k) * step);
    }
    grid.push_back(1.0);
  }
  return grid;
}

std::string pct(double x) { return fmt::format("{:.2f}", x * 100.0); }
std::string ratio(double x) { return fmt::format("{:.4f}", x); }

std::string_view policy_name(RebalancePolicy p) {
  return p == RebalancePolicy::BuyAndHold ? "buy_and_hold" : "periodic_to_target";
}

}  // namespace

void BacktestConfig::validate() const {
  if (!(art_allocation >= 0.0 && art_allocation <= 1.0)) {
    throw DomainError("art allocation must lie in [0, 1]");
  }
  if (smoothing_window < 1) throw DomainError("smoothing window must be >= 1");
  if (rebalance_interval < 1) throw DomainError("rebalance interval must be >= 1");
  if (!(periods_per_year > 0.0)) throw DomainError("periods_per_year must be > 0");
  if (!(grid_step > 0.0 && grid_step <= 0.5)) throw DomainError("grid_step must be in (0, 0.5]");
}

double BacktestResult::sharpe_or_throw() const {
  if (!sharpe) throw DomainError("undefined Sharpe");
  return *sharpe;
}

ReturnSeries rolling_average(const ReturnSeries& series, std::size_t window) {
  if (window < 1) throw DomainError("rolling_average: window must be >= 1");
  if (series.empty()) throw DomainError("rolling_average: empty series");
  return ReturnSeries(series.dates(), kernels::parallel::rolling_mean(series.values(), window));
}

std::vector<YearReturn> annual_returns(const ReturnSeries& portfolio) {
  std::vector<YearReturn> out;
  if (portfolio.empty()) return out;
  const auto& d = portfolio.dates();
  const auto& v = portfolio.values();
  double base = v.front();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool year_end = i + 1 == v.size() || d[i + 1].year() != d[i].year();
    if (!year_end) continue;
    out.push_back({d[i].year(), v[i] / base - 1.0});
    base = v[i];
  }
  return out;
}

BacktestResult blend_portfolio(const ReturnSeries& art, const ReturnSeries& benchmark,
                               const BacktestConfig& config) {
  config.validate();
  require_same_dates(art, benchmark);
  return evaluate(art, benchmark, config, config.art_allocation, true);
}

Frontier efficient_frontier(const ReturnSeries& art, const ReturnSeries& benchmark,
                            const BacktestConfig& config, double grid_step) {
  require_same_dates(art, benchmark);
  const auto grid = allocation_grid(grid_step);
  Frontier frontier;
  frontier.points.resize(grid.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    try {
      const auto uk = static_cast<std::size_t>(k);
      const auto r = evaluate(art, benchmark, config, grid[uk], false);
      frontier.points[uk] = {grid[uk], r.annual_return, r.volatility, r.sharpe};
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t best_vol = 0;
  std::optional<std::size_t> best_sharpe;
  for (std::size_t k = 0; k < frontier.points.size(); ++k) {
    const auto& p = frontier.points[k];
    if (p.volatility < frontier.points[best_vol].volatility) best_vol = k;
    if (p.sharpe && (!best_sharpe || *p.sharpe > *frontier.points[*best_sharpe].sharpe)) {
      best_sharpe = k;
    }
  }
  frontier.min_volatility_allocation = frontier.points[best_vol].art_allocation;
  if (best_sharpe) frontier.max_sharpe_allocation = frontier.points[*best_sharpe].art_allocation;
  return frontier;
}

ExperimentResult run_experiment(const IndexSeries& art_annual, const ReturnSeries& benchmark_daily,
                                const BacktestConfig& config) {
  config.validate();
  if (art_annual.dates.size() < 2) throw DomainError("art index needs at least 2 points");
  if (benchmark_daily.size() < 2) throw DomainError("benchmark needs at least 2 points");

  const auto calendar = weekday_calendar(art_annual.dates.front(), art_annual.dates.back());
  const ReturnSeries art_full = to_daily(art_annual, calendar);
  const ReturnSeries smoothed_full = rolling_average(art_full, config.smoothing_window);

  std::vector<Date> dates;
  std::vector<double> art_raw, art_smooth, bench;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& ad = art_full.dates();
  const auto& bd = benchmark_daily.dates();
  while (i < ad.size() && j < bd.size()) {
    if (ad[i] < bd[j]) {
      ++i;
    } else if (bd[j] < ad[i]) {
      ++j;
    } else {
      dates.push_back(ad[i]);
      art_raw.push_back(art_full.values()[i]);
      art_smooth.push_back(smoothed_full.values()[i]);
      bench.push_back(benchmark_daily.values()[j]);
      ++i;
      ++j;
    }
  }
  if (dates.size() < 2 || dates.back().serial() - dates.front().serial() < 2 * 365) {
    throw DomainError("index and benchmark overlap by less than 2 years");
  }

  ExperimentResult result;
  result.art_daily = ReturnSeries(dates, std::move(art_raw));
  result.art_smoothed = ReturnSeries(dates, std::move(art_smooth));
  result.benchmark = ReturnSeries(std::move(dates), std::move(bench));

  result.portfolio = blend_portfolio(result.art_smoothed, result.benchmark, config);
  BacktestConfig endpoint = config;
  endpoint.art_allocation = 0.0;
  result.benchmark_only = blend_portfolio(result.art_smoothed, result.benchmark, endpoint);
  endpoint.art_allocation = 1.0;
  result.art_only = blend_portfolio(result.art_smoothed, result.benchmark, endpoint);
  result.frontier = efficient_frontier(result.art_smoothed, result.benchmark, config, config.grid_step);
  return result;
}

void write_fig1_csv(std::ostream& out, const ExperimentResult& result) {
  csv::write_row(out, {"date", "portfolio", "benchmark", "art"});
  const auto& p = result.portfolio.portfolio.values();
  const auto& b = result.benchmark_only.portfolio.values();
  const auto& a = result.art_only.portfolio.values();
  const auto& dates = result.portfolio.portfolio.dates();
  for (std::size_t t = 0; t < dates.size(); ++t) {
    csv::write_row(out, {dates[t].iso(), pct(p[t] - 1.0), pct(b[t] - 1.0), pct(a[t] - 1.0)});
  }
}

void write_fig2_csv(std::ostream& out, const ExperimentResult& result) {
  csv::write_row(out, {"year", "portfolio_return", "benchmark_return", "art_return"});
  const auto& p = result.portfolio.annual_returns;
  const auto& b = result.benchmark_only.annual_returns;
  const auto& a = result.art_only.annual_returns;
  for (std::size_t k = 0; k < p.size(); ++k) {
    csv::write_row(out, {std::to_string(p[k].year), pct(p[k].value), pct(b[k].value), pct(a[k].value)});
  }
}

void write_fig3_csv(std::ostream& out, const Frontier& frontier) {
  csv::write_row(out, {"allocation", "annual_return", "volatility", "sharpe"});
  for (const auto& pt : frontier.points) {
    csv::write_row(out, {ratio(pt.art_allocation), pct(pt.annual_return), pct(pt.volatility),
                         pt.sharpe ? ratio(*pt.sharpe) : std::string{}});
  }
}

void write_summary(std::ostream& out, const ExperimentResult& result, const BacktestConfig& config) {
  const auto& dates = result.benchmark.dates();
  out << "start_date=" << dates.front().iso() << '\n';
  out << "end_date=" << dates.back().iso() << '\n';
  out << "allocation=" << ratio(config.art_allocation) << '\n';
  out << "smoothing_window=" << config.smoothing_window << '\n';
  out << "rebalance_policy=" << policy_name(config.rebalance_policy) << '\n';
  out << "risk_free_pct=" << pct(config.risk_free_rate) << '\n';
  auto block = [&](std::string_view name, const BacktestResult& r) {
    out << name << ".cumulative_return_pct=" << pct(r.cumulative_return) << '\n';
    out << name << ".annual_return_pct=" << pct(r.annual_return) << '\n';
    out << name << ".volatility_pct=" << pct(r.volatility) << '\n';
    out << name << ".sharpe=" << (r.sharpe ? ratio(*r.sharpe) : "undefined Sharpe") << '\n';
  };
  block("portfolio", result.portfolio);
  block("benchmark", result.benchmark_only);
  block("art", result.art_only);
  out << "frontier.min_volatility_allocation=" << ratio(result.frontier.min_volatility_allocation)
      << '\n';
  out << "frontier.max_sharpe_allocation="
      << (result.frontier.max_sharpe_allocation ? ratio(*result.frontier.max_sharpe_allocation)
                                                : "undefined Sharpe")
      << '\n';
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : result.portfolio.correlation_by_year) {
    if (c.value) {
      sum += *c.value;
      ++n;
    }
  }
  out << "correlation.mean=" << (n ? ratio(sum / static_cast<double>(n)) : "undefined") << '\n';
  for (const auto& c : result.portfolio.correlation_by_year) {
    out << "correlation." << c.year << '=' << (c.value ? ratio(*c.value) : "undefined") << '\n';
  }
}

}  // namespace arte
