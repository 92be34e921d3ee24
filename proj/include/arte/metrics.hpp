#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arte/date.hpp"

namespace arte {

// Dated positive levels (index points or prices) on a strictly increasing calendar.
class ReturnSeries {
 public:
  ReturnSeries() = default;
  // Throws DomainError unless dates strictly increase, sizes match and values > 0.
  ReturnSeries(std::vector<Date> dates, std::vector<double> values);

  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

 private:
  std::vector<Date> dates_;
  std::vector<double> values_;
};

struct PerformanceReport {
  std::string artist;
  int period_start = 0;
  int period_end = 0;
  double initial = 0.0;
  double final = 0.0;
  double moic = 0.0;
  double irr = 0.0;
  double yearly_return = 0.0;  // geometric annual rate, same as irr
  double cash_on_cash = 0.0;   // unlevered single purchase and sale: equals moic
};

struct DatedCorrelation {
  Date date;
  std::optional<double> value;  // nullopt when a window has zero variance
};

struct YearCorrelation {
  int year = 0;
  std::optional<double> value;
};

double moic(double initial, double final);

// Two-cash-flow rate: (final / initial)^(1 / years) - 1.
double irr(double initial, double final, double years);

// Holding period is period_end - period_start years.
PerformanceReport make_report(std::string artist, int period_start, int period_end,
                              double initial, double final);

double cumulative_return(const ReturnSeries& series);
std::vector<double> period_returns(const ReturnSeries& series);

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator).
double sample_stddev(std::span<const double> xs);

double annualized_volatility(std::span<const double> returns, double periods_per_year);

// (mean * periods_per_year - risk_free_rate) / annualized volatility.
// Throws DomainError("undefined Sharpe") when volatility is zero.
double sharpe_ratio(std::span<const double> returns, double risk_free_rate,
                    double periods_per_year);

// Pearson correlation of period returns over each trailing window of `window`
// returns, dated at the window's last return.
std::vector<DatedCorrelation> rolling_correlation(const ReturnSeries& a, const ReturnSeries& b,
                                                  std::size_t window);

// Pearson correlation of the period returns falling in each calendar year.
std::vector<YearCorrelation> correlation_by_year(const ReturnSeries& a, const ReturnSeries& b);

inline const std::vector<std::string> kReportColumns{
    "artist", "avg_price_initial_k", "avg_price_final_k", "irr_pct", "avg_moic"};

// Rows are written in the order given.
void write_report_csv(std::ostream& out, const std::vector<PerformanceReport>& reports);

}  // namespace arte
