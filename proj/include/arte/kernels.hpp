#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops of the pipeline. Each kernel exists twice: a
// plain serial reference and an OpenMP version. Both evaluate every output
// element with the same summation order, so results are bit-identical and
// the serial versions serve as the test oracle for the parallel ones.
namespace arte::kernels {

namespace serial {

// out[t] = mean(values[max(0, t-window+1) .. t]).
std::vector<double> rolling_mean(std::span<const double> values, std::size_t window);

// Pearson correlation of a and b over each full trailing window; one output
// per window end t = window-1 .. n-1. NaN where either side has zero variance.
std::vector<double> rolling_pearson(std::span<const double> a, std::span<const double> b,
                                    std::size_t window);

// Means of consecutive groups: group g covers values[offsets[g] .. offsets[g+1]).
// offsets has one more entry than there are groups; empty groups yield NaN.
std::vector<double> group_means(std::span<const double> values,
                                std::span<const std::size_t> offsets);

}  // namespace serial

namespace parallel {

std::vector<double> rolling_mean(std::span<const double> values, std::size_t window);
std::vector<double> rolling_pearson(std::span<const double> a, std::span<const double> b,
                                    std::size_t window);
std::vector<double> group_means(std::span<const double> values,
                                std::span<const std::size_t> offsets);

}  // namespace parallel

// Single-window Pearson used by both variants (two-pass, clamped to [-1, 1]).
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace arte::kernels
