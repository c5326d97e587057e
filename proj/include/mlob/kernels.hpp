#pragma once

// Reduction kernels behind the covariation statistics and the diffusion-limit
// sums. Each kernel has a scalar reference and an AVX2/FMA variant; the
// dispatcher picks one at first use (MLOB_SIMD=scalar forces the reference).
// Variants differ only in summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace mlob::kernels {

struct CovariationSums {
  double cross = 0.0;      // sum_i x_i y_i
  double lead_sq = 0.0;    // sum_{i<n-1} (x_i y_{i+1})^2
  double own_sq = 0.0;     // sum_{i<n-1} (x_i y_i)^2
  double lag_cross = 0.0;  // sum_{i<n-1} x_i y_i x_{i+1} y_{i+1}
};

struct Moments {
  std::size_t n = 0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
};

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*abs_sum)(const double*, std::size_t);
  CovariationSums (*covariation)(const double*, const double*, std::size_t);
  Moments (*moments)(const double*, const double*, std::size_t);
};

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double abs_sum(const double* x, std::size_t n);
CovariationSums covariation(const double* x, const double* y, std::size_t n);
Moments moments(const double* x, const double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double abs_sum(const double* x, std::size_t n);
CovariationSums covariation(const double* x, const double* y, std::size_t n);
Moments moments(const double* x, const double* y, std::size_t n);
}  // namespace avx2

/// True when the AVX2 variants were compiled in and the CPU runs them.
[[nodiscard]] bool avx2_available() noexcept;

[[nodiscard]] const KernelTable& table(Isa isa);
[[nodiscard]] Isa active_isa() noexcept;
/// Overrides the dispatch choice; falls back to scalar if AVX2 is unavailable.
void set_active_isa(Isa isa) noexcept;
[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

// Dispatched entry points. x and y must have equal length.
[[nodiscard]] double dot(std::span<const double> x, std::span<const double> y);
[[nodiscard]] double abs_sum(std::span<const double> x);
[[nodiscard]] CovariationSums covariation(std::span<const double> x, std::span<const double> y);
[[nodiscard]] Moments moments(std::span<const double> x, std::span<const double> y);

}  // namespace mlob::kernels
