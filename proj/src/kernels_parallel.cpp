#include <cstdint>
#include <limits>

#include "arte/error.hpp"
#include "arte/kernels.hpp"

// Same per-element arithmetic as kernels_serial.cpp; only the outer loop is
// distributed, so each output is bit-identical to the serial reference.
namespace arte::kernels::parallel {

std::vector<double> rolling_mean(std::span<const double> values, std::size_t window) {
  if (window < 1) throw DomainError("rolling window must be >= 1");
  const auto n = static_cast<std::int64_t>(values.size());
  std::vector<double> out(values.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    const auto ut = static_cast<std::size_t>(t);
    const std::size_t begin = ut + 1 >= window ? ut + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t i = begin; i <= ut; ++i) sum += values[i];
    out[ut] = sum / static_cast<double>(ut + 1 - begin);
  }
  return out;
}

std::vector<double> rolling_pearson(std::span<const double> a, std::span<const double> b,
                                    std::size_t window) {
  if (a.size() != b.size()) throw DomainError("rolling_pearson: length mismatch");
  if (window < 2) throw DomainError("correlation window must be >= 2");
  if (a.size() < window) return {};
  std::vector<double> out(a.size() - window + 1);
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out[uk] = pearson(a.subspan(uk, window), b.subspan(uk, window));
  }
  return out;
}

std::vector<double> group_means(std::span<const double> values,
                                std::span<const std::size_t> offsets) {
  if (offsets.empty()) return {};
  std::vector<double> out(offsets.size() - 1);
  const auto groups = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t g = 0; g < groups; ++g) {
    const auto ug = static_cast<std::size_t>(g);
    const std::size_t b = offsets[ug];
    const std::size_t e = offsets[ug + 1];
    if (e <= b) {
      out[ug] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double sum = 0.0;
    for (std::size_t i = b; i < e; ++i) sum += values[i];
    out[ug] = sum / static_cast<double>(e - b);
  }
  return out;
}

}  // namespace arte::kernels::parallel
