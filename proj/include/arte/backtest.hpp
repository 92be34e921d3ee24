#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "arte/index.hpp"
#include "arte/metrics.hpp"

namespace arte {

enum class RebalancePolicy { BuyAndHold, PeriodicToTarget };

struct BacktestConfig {
  double art_allocation = 0.20;
  std::size_t smoothing_window = 680;  // trading days
  RebalancePolicy rebalance_policy = RebalancePolicy::BuyAndHold;
  std::size_t rebalance_interval = 252;
  double risk_free_rate = 0.0;
  double periods_per_year = 252.0;
  double grid_step = 0.01;

  void validate() const;
};

struct YearReturn {
  int year = 0;
  double value = 0.0;
};

struct BacktestResult {
  ReturnSeries portfolio;  // value of 1 unit of initial capital
  double cumulative_return = 0.0;
  std::vector<YearReturn> annual_returns;
  double annual_return = 0.0;  // mean period return * periods_per_year
  double volatility = 0.0;
  std::optional<double> sharpe;  // absent when volatility is zero
  std::vector<YearCorrelation> correlation_by_year;

  // Throws DomainError("undefined Sharpe") when absent.
  double sharpe_or_throw() const;
};

struct FrontierPoint {
  double art_allocation = 0.0;
  double annual_return = 0.0;
  double volatility = 0.0;
  std::optional<double> sharpe;
};

struct Frontier {
  std::vector<FrontierPoint> points;
  std::optional<double> max_sharpe_allocation;
  double min_volatility_allocation = 0.0;
};

struct ExperimentResult {
  ReturnSeries art_daily;     // interpolated, aligned with the benchmark
  ReturnSeries art_smoothed;  // after the rolling average
  ReturnSeries benchmark;     // aligned
  BacktestResult portfolio;
  BacktestResult benchmark_only;
  BacktestResult art_only;
  Frontier frontier;
};

// Trailing mean truncated at the start; dates unchanged.
ReturnSeries rolling_average(const ReturnSeries& series, std::size_t window);

// Per calendar year: last level of the year over last level of the previous
// year (the series' first level for the first year), minus one.
std::vector<YearReturn> annual_returns(const ReturnSeries& portfolio);

// Two-sleeve portfolio starting from capital 1 split (w, 1 - w).
BacktestResult blend_portfolio(const ReturnSeries& art, const ReturnSeries& benchmark,
                               const BacktestConfig& config);

// Allocation sweep over {0, step, ..., 1}; points are evaluated in parallel.
Frontier efficient_frontier(const ReturnSeries& art, const ReturnSeries& benchmark,
                            const BacktestConfig& config, double grid_step = 0.01);

// to_daily on weekdays -> align with benchmark -> smooth art -> blend -> frontier.
ExperimentResult run_experiment(const IndexSeries& art_annual, const ReturnSeries& benchmark_daily,
                                const BacktestConfig& config);

void write_fig1_csv(std::ostream& out, const ExperimentResult& result);
void write_fig2_csv(std::ostream& out, const ExperimentResult& result);
void write_fig3_csv(std::ostream& out, const Frontier& frontier);
void write_summary(std::ostream& out, const ExperimentResult& result, const BacktestConfig& config);

}  // namespace arte
