#include "arte/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "arte/csv.hpp"
#include "arte/error.hpp"
#include "arte/kernels.hpp"

namespace arte {

ReturnSeries::ReturnSeries(std::vector<Date> dates, std::vector<double> values)
    : dates_(std::move(dates)), values_(std::move(values)) {
  if (dates_.size() != values_.size()) throw DomainError("series: dates and values differ in length");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError(fmt::format("series: non-positive value at {}", dates_[i].iso()));
    }
    if (i > 0 && !(dates_[i - 1] < dates_[i])) {
      throw DomainError(fmt::format("series: dates not strictly increasing at {}", dates_[i].iso()));
    }
  }
}

double moic(double initial, double final) {
  if (!(initial > 0.0)) throw DomainError("moic: initial must be > 0");
  if (final < 0.0) throw DomainError("moic: final must be >= 0");
  return final / initial;
}

double irr(double initial, double final, double years) {
  if (!(initial > 0.0) || !(final > 0.0)) throw DomainError("irr: prices must be > 0");
  if (!(years > 0.0)) throw DomainError("irr: holding period must be > 0 years");
  return std::pow(final / initial, 1.0 / years) - 1.0;
}

PerformanceReport make_report(std::string artist, int period_start, int period_end,
                              double initial, double final) {
  PerformanceReport r;
  r.artist = std::move(artist);
  r.period_start = period_start;
  r.period_end = period_end;
  r.initial = initial;
  r.final = final;
  r.moic = moic(initial, final);
  r.irr = irr(initial, final, static_cast<double>(period_end - period_start));
  r.yearly_return = r.irr;
  r.cash_on_cash = r.moic;
  return r;
}

double cumulative_return(const ReturnSeries& series) {
  if (series.size() < 2) throw DomainError("cumulative_return: need at least 2 points");
  return series.values().back() / series.values().front() - 1.0;
}

std::vector<double> period_returns(const ReturnSeries& series) {
  if (series.size() < 2) throw DomainError("period_returns: need at least 2 points");
  const auto& v = series.values();
  std::vector<double> out(v.size() - 1);
  for (std::size_t t = 1; t < v.size(); ++t) out[t - 1] = v[t] / v[t - 1] - 1.0;
  return out;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean of empty sequence");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw DomainError("sample standard deviation needs at least 2 values");
  // A constant input must give exactly 0; the rounded mean would not.
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double annualized_volatility(std::span<const double> returns, double periods_per_year) {
  if (!(periods_per_year > 0.0)) throw DomainError("periods_per_year must be > 0");
  return sample_stddev(returns) * std::sqrt(periods_per_year);
}

double sharpe_ratio(std::span<const double> returns, double risk_free_rate,
                    double periods_per_year) {
  const double vol = annualized_volatility(returns, periods_per_year);
  if (!(vol > 0.0)) throw DomainError("undefined Sharpe");
  return (mean(returns) * periods_per_year - risk_free_rate) / vol;
}

std::vector<DatedCorrelation> rolling_correlation(const ReturnSeries& a, const ReturnSeries& b,
                                                  std::size_t window) {
  if (a.dates() != b.dates()) throw DomainError("rolling_correlation: date vectors differ");
  if (window < 2) throw DomainError("rolling_correlation: window must be >= 2");
  const auto ra = period_returns(a);
  const auto rb = period_returns(b);
  const auto corr = kernels::parallel::rolling_pearson(ra, rb, window);
  std::vector<DatedCorrelation> out;
  out.reserve(corr.size());
  for (std::size_t k = 0; k < corr.size(); ++k) {
    DatedCorrelation dc{a.dates()[k + window], std::nullopt};
    if (!std::isnan(corr[k])) dc.value = corr[k];
    out.push_back(dc);
  }
  return out;
}

std::vector<YearCorrelation> correlation_by_year(const ReturnSeries& a, const ReturnSeries& b) {
  if (a.dates() != b.dates()) throw DomainError("correlation_by_year: date vectors differ");
  const auto ra = period_returns(a);
  const auto rb = period_returns(b);
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_year;
  for (std::size_t j = 0; j < ra.size(); ++j) {
    auto& [xa, xb] = by_year[a.dates()[j + 1].year()];
    xa.push_back(ra[j]);
    xb.push_back(rb[j]);
  }
  std::vector<YearCorrelation> out;
  for (const auto& [year, pair] : by_year) {
    const double r = kernels::pearson(pair.first, pair.second);
    out.push_back({year, std::isnan(r) ? std::nullopt : std::optional<double>(r)});
  }
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<PerformanceReport>& reports) {
  csv::write_row(out, kReportColumns);
  for (const auto& r : reports) {
    csv::write_row(out, {r.artist, fmt::format("{:.2f}", r.initial / 1000.0),
                         fmt::format("{:.2f}", r.final / 1000.0),
                         fmt::format("{:.2f}", r.irr * 100.0), fmt::format("{:.4f}", r.moic)});
  }
}

}  // namespace arte
