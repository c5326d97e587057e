#include "mlob/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mlob/error.hpp"
#include "mlob/kernels.hpp"
#include "mlob/parallel.hpp"
#include "mlob/random.hpp"
#include "mlob/stats.hpp"

namespace mlob {

namespace {

double role_sign(LiquidityRole role) noexcept { return role == LiquidityRole::Provider ? 1.0 : -1.0; }

}  // namespace

void validate(const DiffusionParams& params) {
  if (!(params.rho >= -1.0 && params.rho <= 1.0)) fail(Errc::InvalidParams, "rho must lie in [-1, 1]");
  if (!(params.sigma >= 0.0) || !(params.l >= 0.0)) fail(Errc::InvalidParams, "volatilities must be non-negative");
  if (!(params.T > 0.0)) fail(Errc::InvalidParams, "horizon must be positive");
  if (!std::isfinite(params.mu) || !std::isfinite(params.b) || !std::isfinite(params.s))
    fail(Errc::InvalidParams, "non-finite coefficient");
}

double DiffusionPair::discrete_spread() const noexcept { return params.s * std::sqrt(dt()); }

std::vector<double> DiffusionPair::dp() const {
  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = p[i + 1] - p[i];
  return out;
}

std::vector<double> DiffusionPair::dL() const {
  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = L[i + 1] - L[i];
  return out;
}

DiffusionPair simulate_pair(const DiffusionParams& params, std::size_t N, std::uint64_t seed) {
  validate(params);
  if (N < 2) fail(Errc::InvalidParams, "need at least two steps");
  DiffusionPair pair;
  pair.params = params;
  pair.N = N;
  pair.p.resize(N + 1);
  pair.L.resize(N + 1);
  pair.p[0] = params.p0;
  pair.L[0] = params.L0;
  const double dt = pair.dt();
  const double sq = std::sqrt(dt);
  const double orth = std::sqrt(std::max(0.0, 1.0 - params.rho * params.rho));
  Rng rng(seed);
  for (std::size_t i = 0; i < N; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    pair.p[i + 1] = pair.p[i] + params.mu * dt + params.sigma * sq * z1;
    pair.L[i + 1] = pair.L[i] + params.b * dt + params.l * sq * (params.rho * z1 + orth * z2);
  }
  return pair;
}

DiffusionPair subsample(const DiffusionPair& pair, std::size_t N) {
  if (N == 0 || pair.N % N != 0) fail(Errc::InvalidParams, "coarse grid must divide the fine grid");
  const std::size_t stride = pair.N / N;
  DiffusionPair out;
  out.params = pair.params;
  out.N = N;
  out.p.resize(N + 1);
  out.L.resize(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    out.p[i] = pair.p[i * stride];
    out.L[i] = pair.L[i * stride];
  }
  return out;
}

std::vector<double> discrete_wealth(const DiffusionPair& pair, LiquidityRole role) {
  const double half_spread = role_sign(role) * pair.discrete_spread() / 2.0;
  std::vector<double> X(pair.N + 1, 0.0);
  for (std::size_t i = 0; i < pair.N; ++i) {
    const double dp = pair.p[i + 1] - pair.p[i];
    const double dL = pair.L[i + 1] - pair.L[i];
    X[i + 1] = X[i] + pair.L[i] * dp + half_spread * std::abs(dL) + dp * dL;
  }
  return X;
}

double discrete_wealth_terminal(const DiffusionPair& pair, LiquidityRole role) {
  const auto dp = pair.dp();
  const auto dL = pair.dL();
  const std::span<const double> L_left(pair.L.data(), pair.N);
  const double ito = kernels::dot(L_left, dp);
  const double friction = role_sign(role) * pair.discrete_spread() / 2.0 * kernels::abs_sum(dL);
  const double covariation = kernels::dot(dp, dL);
  return ito + friction + covariation;
}

double continuous_drift_terms(const DiffusionParams& params, LiquidityRole role) {
  const double spread_rate = params.s / std::sqrt(2.0 * std::numbers::pi);
  return (params.rho * params.sigma + role_sign(role) * spread_rate) * params.l * params.T;
}

double continuous_wealth(const DiffusionPair& pair, LiquidityRole role) {
  const auto dp = pair.dp();
  const double ito = kernels::dot(std::span<const double>(pair.L.data(), pair.N), dp);
  const auto& prm = pair.params;
  const double rate = (prm.rho * prm.sigma + role_sign(role) * prm.s / std::sqrt(2.0 * std::numbers::pi)) * prm.l;
  double drift = 0.0;
  const double dt = pair.dt();
  for (std::size_t i = 0; i < pair.N; ++i) drift += rate * dt;
  return ito + drift;
}

double gaussian_expectation(const std::function<double(double)>& F, double sigma) {
  if (sigma == 0.0) return F(0.0);
  constexpr std::size_t intervals = 24000;  // even, so y = 0 is a node
  const double a = -12.0 * sigma;
  const double h = 24.0 * sigma / static_cast<double>(intervals);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  const auto g = [&](double y) { return F(y) * norm * std::exp(-0.5 * (y / sigma) * (y / sigma)); };
  double sum = g(a) + g(-a);
  for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * g(a + h * static_cast<double>(i));
  return sum * h / 3.0;
}

LlnResult verify_lln(const std::function<double(double)>& F, double sigma_Y, double T, std::size_t N,
                     std::uint64_t seed) {
  if (N < 2 || !(sigma_Y >= 0.0) || !(T > 0.0)) fail(Errc::InvalidParams, "LLN needs N >= 2, sigma >= 0, T > 0");
  // |F(y)| <= C (1 + y^2): a ratio that keeps growing over decades rules F out.
  const auto ratio = [&](double y) { return std::max(std::abs(F(y)), std::abs(F(-y))) / (1.0 + y * y); };
  const double r_small = ratio(1e2);
  const double r_large = ratio(1e4);
  if (!std::isfinite(r_large) || (r_large > 1e-12 && r_large > 10.0 * r_small))
    fail(Errc::GrowthViolation, "F grows faster than y^2");

  const double dt = T / static_cast<double>(N);
  const double sq = std::sqrt(dt);
  Rng rng(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double dY = sigma_Y * sq * rng.normal();
    sum += F(dY / sq);
  }
  LlnResult r;
  r.discrete = dt * sum;
  r.limit = T * gaussian_expectation(F, sigma_Y);
  r.error = std::abs(r.discrete - r.limit);
  return r;
}

ConvergenceStudy convergence_study(const DiffusionParams& params, std::span<const std::size_t> Ns,
                                   std::size_t replications, std::uint64_t seed, std::size_t fine_factor,
                                   std::size_t threads) {
  if (Ns.empty() || replications == 0 || fine_factor == 0)
    fail(Errc::InvalidParams, "convergence study needs grid sizes and replications");
  const std::size_t n_max = *std::max_element(Ns.begin(), Ns.end());
  const std::size_t fine = n_max * fine_factor;
  for (std::size_t N : Ns)
    if (N < 2 || fine % N != 0) fail(Errc::InvalidParams, "every N must divide the fine grid");

  const LiquidityRole role = role_for(params.rho);
  std::vector<std::vector<double>> errors(Ns.size(), std::vector<double>(replications));
  parallel_for(
      replications,
      [&](std::size_t r) {
        const auto path = simulate_pair(params, fine, stream_seed(seed, r));
        const double x_limit = continuous_wealth(path, role);
        for (std::size_t k = 0; k < Ns.size(); ++k)
          errors[k][r] = std::abs(discrete_wealth_terminal(subsample(path, Ns[k]), role) - x_limit);
      },
      threads);

  ConvergenceStudy study;
  std::vector<double> log_n, log_err;
  for (std::size_t k = 0; k < Ns.size(); ++k) {
    ConvergenceRow row{Ns[k], quantile(errors[k], 0.5), quantile(errors[k], 0.25), quantile(errors[k], 0.75)};
    study.rows.push_back(row);
    if (row.median > 0.0) {
      log_n.push_back(std::log(static_cast<double>(row.N)));
      log_err.push_back(std::log(row.median));
    }
  }
  if (log_n.size() >= 2) study.rate = -ols_slope(log_n, log_err);
  return study;
}

}  // namespace mlob
