#pragma once

// Diffusion limit of the discrete clearing equation. Price and inventory are
// correlated Ito processes sampled on a grid of N steps; the spread scales as
// s * sqrt(dt) (vanishing with the tick size). As N grows the discrete wealth
//   dX^N = L dp +/- (s sqrt(dt) / 2)|dL| + dp dL
// converges to the continuous clearing equation
//   dX = L dp +/- s l / sqrt(2 pi) dt + d[L,p]     ('+' provider, '-' taker).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mlob {

struct DiffusionParams {
  double mu = 0.0;     // price drift
  double sigma = 1.0;  // price volatility
  double b = 0.0;      // inventory drift
  double l = 1.0;      // inventory volatility
  double rho = 0.0;    // correlation of the driving Brownian motions
  double s = 0.0;      // spread in price-change units
  double T = 1.0;
  double p0 = 0.0;
  double L0 = 0.0;
};

/// Throws Error{InvalidParams}.
void validate(const DiffusionParams& params);

struct DiffusionPair {
  DiffusionParams params;
  std::size_t N = 0;
  std::vector<double> p;  // N + 1 grid values, p[0] = p0
  std::vector<double> L;

  [[nodiscard]] double dt() const noexcept { return params.T / static_cast<double>(N); }
  /// Discretized spread s * sqrt(dt); equals s / sqrt(N) for T = 1.
  [[nodiscard]] double discrete_spread() const noexcept;
  [[nodiscard]] std::vector<double> dp() const;
  [[nodiscard]] std::vector<double> dL() const;
};

/// Euler-Maruyama with exact Gaussian increments; deterministic for a seed.
[[nodiscard]] DiffusionPair simulate_pair(const DiffusionParams& params, std::size_t N, std::uint64_t seed);

/// The same path observed on a coarser grid; N must divide pair.N.
[[nodiscard]] DiffusionPair subsample(const DiffusionPair& pair, std::size_t N);

enum class LiquidityRole { Provider, Taker };

/// Provider when rho < 0, otherwise taker (rho = 0 is read as a market order).
[[nodiscard]] constexpr LiquidityRole role_for(double rho) noexcept {
  return rho < 0.0 ? LiquidityRole::Provider : LiquidityRole::Taker;
}

/// Discrete wealth path X^N, N + 1 values starting at 0.
[[nodiscard]] std::vector<double> discrete_wealth(const DiffusionPair& pair, LiquidityRole role);
/// X^N_T only, through the reduction kernels.
[[nodiscard]] double discrete_wealth_terminal(const DiffusionPair& pair, LiquidityRole role);

/// X_T from the continuous equation: the Ito integral as a left-point sum on
/// the (fine) grid of `pair`, the dt terms by quadrature of constant coefficients.
[[nodiscard]] double continuous_wealth(const DiffusionPair& pair, LiquidityRole role);

/// Closed form of the dt terms: (rho sigma l +/- s l / sqrt(2 pi)) T.
[[nodiscard]] double continuous_drift_terms(const DiffusionParams& params, LiquidityRole role);

struct LlnResult {
  double discrete = 0.0;  // dt * sum F(dY / sqrt(dt))
  double limit = 0.0;     // T * integral F(y) phi_{sigma^2}(y) dy
  double error = 0.0;     // |discrete - limit|
};

/// Functional law of large numbers for Y = sigma_Y W on [0, T].
/// Throws Error{GrowthViolation} if F grows faster than quadratically.
[[nodiscard]] LlnResult verify_lln(const std::function<double(double)>& F, double sigma_Y, double T, std::size_t N,
                                   std::uint64_t seed);

/// integral F(y) phi_{sigma^2}(y) dy by composite Simpson on [-12 sigma, 12 sigma].
[[nodiscard]] double gaussian_expectation(const std::function<double(double)>& F, double sigma);

struct ConvergenceRow {
  std::size_t N = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double rate = 0.0;  // minus the log-log slope of median error against N
};

/// Each replication simulates one path on a grid `fine_factor` times finer
/// than the largest N (every N must divide it), takes X_T from the fine path
/// and X^N_T from its subsamples.
[[nodiscard]] ConvergenceStudy convergence_study(const DiffusionParams& params, std::span<const std::size_t> Ns,
                                                 std::size_t replications, std::uint64_t seed,
                                                 std::size_t fine_factor = 10, std::size_t threads = 1);

}  // namespace mlob
