#include <algorithm>
#include <cmath>
#include <limits>

#include "arte/error.hpp"
#include "arte/kernels.hpp"

namespace arte::kernels {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n != b.size() || n < 2) return kNaN;
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double ma = sa / static_cast<double>(n);
  const double mb = sb / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = a[i] - ma;
    const double dy = b[i] - mb;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return kNaN;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace serial {

std::vector<double> rolling_mean(std::span<const double> values, std::size_t window) {
  if (window < 1) throw DomainError("rolling window must be >= 1");
  std::vector<double> out(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    const std::size_t begin = t + 1 >= window ? t + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t i = begin; i <= t; ++i) sum += values[i];
    out[t] = sum / static_cast<double>(t + 1 - begin);
  }
  return out;
}

std::vector<double> rolling_pearson(std::span<const double> a, std::span<const double> b,
                                    std::size_t window) {
  if (a.size() != b.size()) throw DomainError("rolling_pearson: length mismatch");
  if (window < 2) throw DomainError("correlation window must be >= 2");
  if (a.size() < window) return {};
  std::vector<double> out(a.size() - window + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = pearson(a.subspan(k, window), b.subspan(k, window));
  }
  return out;
}

std::vector<double> group_means(std::span<const double> values,
                                std::span<const std::size_t> offsets) {
  if (offsets.empty()) return {};
  std::vector<double> out(offsets.size() - 1);
  for (std::size_t g = 0; g + 1 < offsets.size(); ++g) {
    const std::size_t b = offsets[g];
    const std::size_t e = offsets[g + 1];
    if (e <= b) {
      out[g] = kNaN;
      continue;
    }
    double sum = 0.0;
    for (std::size_t i = b; i < e; ++i) sum += values[i];
    out[g] = sum / static_cast<double>(e - b);
  }
  return out;
}

}  // namespace serial
}  // namespace arte::kernels
