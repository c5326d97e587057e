#pragma once

#include <span>
#include <vector>

namespace mlob {

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double x) noexcept;

/// Two-sided Kolmogorov-Smirnov distance between the sample and N(0,1).
[[nodiscard]] double ks_distance_normal(std::vector<double> sample);

/// Quantile by linear interpolation between order statistics, q in [0,1].
[[nodiscard]] double quantile(std::vector<double> values, double q);

/// Least-squares slope of y on x.
[[nodiscard]] double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace mlob
