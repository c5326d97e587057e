#include "mlob/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mlob/error.hpp"
#include "mlob/parallel.hpp"
#include "mlob/random.hpp"
#include "mlob/stats.hpp"

namespace mlob {

namespace {

double normal_pdf(double x) noexcept { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

/// In-place Thomas algorithm; sub[0] and sup[n-1] are ignored.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
                       std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

double ill_posed_threshold() noexcept { return std::sqrt(std::numbers::pi / 2.0); }

double friction_factor(const MarketSpec& spec) noexcept {
  return std::sqrt(2.0 / std::numbers::pi) * spec.spread_coef - 1.0;
}

void require_well_posed(const MarketSpec& spec) {
  if (!(spec.sigma > 0.0) || !(spec.maturity > 0.0) || !std::isfinite(spec.rate))
    fail(Errc::InvalidParams, "need sigma > 0, maturity > 0, finite rate");
  if (!(friction_factor(spec) > 0.0)) {
    std::ostringstream msg;
    msg << "spread coefficient " << spec.spread_coef << " must exceed sqrt(pi/2) = " << ill_posed_threshold()
        << "; the diffusion coefficient sqrt(2/pi) s - 1 = " << friction_factor(spec) << " is not positive";
    fail(Errc::IllPosedRegime, msg.str());
  }
}

double effective_volatility(const MarketSpec& spec) {
  require_well_posed(spec);
  return spec.sigma * std::sqrt(friction_factor(spec));
}

Greeks black_scholes(OptionKind kind, double spot, double strike, double rate, double vol, double tau) {
  const bool call = kind == OptionKind::Call;
  if (tau <= 0.0 || vol <= 0.0 || spot <= 0.0) {
    const double disc = tau > 0.0 ? std::exp(-rate * tau) : 1.0;
    const double fwd_intrinsic = spot - strike * disc;
    Greeks g;
    if (call) {
      g.value = std::max(fwd_intrinsic, 0.0);
      g.delta = fwd_intrinsic > 0.0 ? 1.0 : 0.0;
    } else {
      g.value = std::max(-fwd_intrinsic, 0.0);
      g.delta = fwd_intrinsic < 0.0 ? -1.0 : 0.0;
    }
    return g;
  }
  const double sq = vol * std::sqrt(tau);
  const double d1 = (std::log(spot / strike) + (rate + 0.5 * vol * vol) * tau) / sq;
  const double d2 = d1 - sq;
  const double disc = std::exp(-rate * tau);
  Greeks g;
  g.gamma = normal_pdf(d1) / (spot * sq);
  if (call) {
    g.value = spot * normal_cdf(d1) - strike * disc * normal_cdf(d2);
    g.delta = normal_cdf(d1);
  } else {
    g.value = strike * disc * normal_cdf(-d2) - spot * normal_cdf(-d1);
    g.delta = normal_cdf(d1) - 1.0;
  }
  return g;
}

double price_closed_form(const MarketSpec& spec, OptionKind kind, double strike, double spot) {
  return black_scholes(kind, spot, strike, spec.rate, effective_volatility(spec), spec.maturity).value;
}

double Payoff::operator()(double p) const noexcept {
  switch (kind) {
    case Kind::Call: return quantity * std::max(p - strike, 0.0);
    case Kind::Put: return quantity * std::max(strike - p, 0.0);
    case Kind::Forward: return quantity * p;
    case Kind::Constant: return strike;
  }
  return 0.0;
}

Greeks Payoff::greeks(const MarketSpec& spec, double p, double tau) const {
  Greeks g;
  switch (kind) {
    case Kind::Call:
    case Kind::Put: {
      const auto opt = kind == Kind::Call ? OptionKind::Call : OptionKind::Put;
      g = black_scholes(opt, p, strike, spec.rate, effective_volatility(spec), tau);
      g.value *= quantity;
      g.delta *= quantity;
      g.gamma *= quantity;
      break;
    }
    case Kind::Forward:
      g = {quantity * p, quantity, 0.0};
      break;
    case Kind::Constant:
      g = {strike * std::exp(-spec.rate * std::max(tau, 0.0)), 0.0, 0.0};
      break;
  }
  return g;
}

ValueSurface::ValueSurface(std::vector<double> times, std::vector<double> prices, std::vector<double> values)
    : times_(std::move(times)), prices_(std::move(prices)), values_(std::move(values)) {}

double ValueSurface::delta_at(std::size_t it, std::size_t j) const noexcept {
  const std::size_t m = prices_.size() - 1;
  const double dp = prices_[1] - prices_[0];
  if (j == 0) return (at(it, 1) - at(it, 0)) / dp;
  if (j == m) return (at(it, m) - at(it, m - 1)) / dp;
  return (at(it, j + 1) - at(it, j - 1)) / (2.0 * dp);
}

double ValueSurface::gamma_at(std::size_t it, std::size_t j) const noexcept {
  const std::size_t m = prices_.size() - 1;
  const double dp = prices_[1] - prices_[0];
  j = std::clamp<std::size_t>(j, 1, m - 1);
  return (at(it, j + 1) - 2.0 * at(it, j) + at(it, j - 1)) / (dp * dp);
}

Greeks ValueSurface::greeks(double t, double p) const {
  const auto locate = [](const std::vector<double>& grid, double x) {
    x = std::clamp(x, grid.front(), grid.back());
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - grid.begin()), grid.size() - 1);
    std::size_t lo = hi == 0 ? 0 : hi - 1;
    if (hi == lo) return std::tuple{lo, hi, 0.0};
    return std::tuple{lo, hi, (x - grid[lo]) / (grid[hi] - grid[lo])};
  };
  const auto [t0, t1, wt] = locate(times_, t);
  const auto [j0, j1, wp] = locate(prices_, p);
  const auto blend = [&](auto&& f) {
    const double a = f(t0, j0) * (1.0 - wp) + f(t0, j1) * wp;
    const double b = f(t1, j0) * (1.0 - wp) + f(t1, j1) * wp;
    return a * (1.0 - wt) + b * wt;
  };
  Greeks g;
  g.value = blend([&](std::size_t i, std::size_t j) { return at(i, j); });
  g.delta = blend([&](std::size_t i, std::size_t j) { return delta_at(i, j); });
  g.gamma = blend([&](std::size_t i, std::size_t j) { return gamma_at(i, j); });
  return g;
}

ValueSurface solve_pde(const MarketSpec& spec, const std::function<double(double)>& payoff, double reference_price,
                       const GridSpec& grid) {
  const double vol = effective_volatility(spec);
  if (grid.space_nodes < 200) fail(Errc::GridTooCoarse, "need at least 200 space nodes");
  if (grid.time_steps < 1) fail(Errc::GridTooCoarse, "need at least one time step");
  if (grid.rannacher_half_steps % 2 != 0 || grid.rannacher_half_steps > 2 * grid.time_steps)
    fail(Errc::GridTooCoarse, "Rannacher start-up must be an even number of half steps within the horizon");
  if (!(reference_price > 0.0) && !(grid.p_max > 0.0)) fail(Errc::InvalidParams, "need a reference price or p_max");

  const double T = spec.maturity;
  const double r = spec.rate;
  const double p_max =
      grid.p_max > 0.0 ? grid.p_max : reference_price * std::max(4.0, std::exp(5.0 * vol * std::sqrt(T)));
  const std::size_t m = grid.space_nodes - 1;
  const double dp = p_max / static_cast<double>(m);

  std::vector<double> prices(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prices[j] = dp * static_cast<double>(j);

  // Spatial operator rows: (L v)_j = lo_j v_{j-1} + mid_j v_j + hi_j v_{j+1}.
  std::vector<double> lo(m + 1, 0.0), mid(m + 1, 0.0), hi(m + 1, 0.0);
  mid[0] = -r;
  for (std::size_t j = 1; j < m; ++j) {
    const double p = prices[j];
    const double diff = 0.5 * vol * vol * p * p / (dp * dp);
    const double conv = r * p / (2.0 * dp);
    lo[j] = diff - conv;
    mid[j] = -2.0 * diff - r;
    hi[j] = diff + conv;
  }
  lo[m] = -r * prices[m] / dp;
  mid[m] = r * prices[m] / dp - r;

  std::vector<double> v(m + 1);
  for (std::size_t j = 0; j <= m; ++j) v[j] = payoff(prices[j]);

  std::vector<double> levels;  // by tau, from maturity backwards
  levels.reserve((grid.time_steps + 1) * (m + 1));
  levels.insert(levels.end(), v.begin(), v.end());

  std::vector<double> a(m + 1), b(m + 1), c(m + 1), rhs(m + 1);
  const auto step = [&](double dtau, double theta) {
    for (std::size_t j = 0; j <= m; ++j) {
      double Lv = mid[j] * v[j];
      if (j > 0) Lv += lo[j] * v[j - 1];
      if (j < m) Lv += hi[j] * v[j + 1];
      rhs[j] = v[j] + (1.0 - theta) * dtau * Lv;
      a[j] = -theta * dtau * lo[j];
      b[j] = 1.0 - theta * dtau * mid[j];
      c[j] = -theta * dtau * hi[j];
    }
    solve_tridiagonal(a, b, c, rhs);
    v.swap(rhs);
  };

  const double dtau = T / static_cast<double>(grid.time_steps);
  const std::size_t startup_steps = grid.rannacher_half_steps / 2;
  for (std::size_t k = 0; k < grid.time_steps; ++k) {
    if (k < startup_steps) {
      step(0.5 * dtau, 1.0);
      step(0.5 * dtau, 1.0);
    } else {
      step(dtau, 0.5);
    }
    levels.insert(levels.end(), v.begin(), v.end());
  }

  // Reorder to ascending t = T - tau.
  const std::size_t n_levels = grid.time_steps + 1;
  std::vector<double> times(n_levels);
  std::vector<double> values(n_levels * (m + 1));
  for (std::size_t k = 0; k < n_levels; ++k) {
    const std::size_t it = n_levels - 1 - k;
    times[it] = T - dtau * static_cast<double>(k);
    std::copy_n(levels.begin() + static_cast<std::ptrdiff_t>(k * (m + 1)), m + 1,
                values.begin() + static_cast<std::ptrdiff_t>(it * (m + 1)));
  }
  times.front() = 0.0;
  return ValueSurface(std::move(times), std::move(prices), std::move(values));
}

GreeksFn closed_form_greeks(const MarketSpec& spec, const Payoff& payoff) {
  require_well_posed(spec);
  return [spec, payoff](double t, double p) { return payoff.greeks(spec, p, spec.maturity - t); };
}

GreeksFn surface_greeks(const ValueSurface& surface) {
  return [&surface](double t, double p) { return surface.greeks(t, p); };
}

HedgeSchedule hedge_schedule(const GreeksFn& greeks, const MarketSpec& spec, std::span<const double> times,
                             std::span<const double> path) {
  if (times.size() != path.size()) fail(Errc::InvalidParams, "times and path differ in length");
  HedgeSchedule schedule;
  schedule.steps.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Greeks g = greeks(times[i], path[i]);
    HedgeStep s;
    s.t = times[i];
    s.p = path[i];
    s.L = g.delta;
    s.gamma = g.gamma;
    s.l = spec.sigma * path[i] * g.gamma;
    s.kind = order_kind_for(s.l);
    schedule.steps.push_back(s);
  }
  return schedule;
}

HedgeSchedule hedge_schedule(const ValueSurface& surface, const MarketSpec& spec, std::span<const double> times,
                             std::span<const double> path) {
  return hedge_schedule(surface_greeks(surface), spec, times, path);
}

ReplicationResult replicate(const MarketSpec& spec, const Payoff& payoff, std::size_t N, std::uint64_t seed,
                            const ReplicationConfig& cfg) {
  require_well_posed(spec);
  if (N < 1) fail(Errc::InvalidParams, "need at least one rebalancing step");
  if (!(cfg.spot > 0.0)) fail(Errc::InvalidParams, "spot must be positive");
  const auto greeks = closed_form_greeks(spec, payoff);
  const double dt = spec.maturity / static_cast<double>(N);
  const double sq = std::sqrt(dt);
  const double growth = std::exp(spec.rate * dt);
  const double drift = (cfg.drift - 0.5 * spec.sigma * spec.sigma) * dt;
  Rng rng(seed);

  ReplicationResult res;
  double p = cfg.spot;
  Greeks g = greeks(0.0, p);
  double L = g.delta;
  double K = g.value - L * p;
  if (cfg.keep_schedule) res.schedule.steps.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double t = dt * static_cast<double>(n);
    const double l = spec.sigma * p * g.gamma;
    const OrderKind kind = order_kind_for(l);
    if (cfg.keep_schedule) res.schedule.steps.push_back({t, p, L, l, g.gamma, kind});

    const double p_next = p * std::exp(drift + spec.sigma * sq * rng.normal());
    const Greeks g_next = n + 1 == N ? Greeks{payoff(p_next), payoff.greeks(spec, p_next, 0.0).delta, 0.0}
                                     : greeks(t + dt, p_next);
    const double dL = g_next.delta - L;
    const double half_spread = 0.5 * spec.spread_coef * spec.sigma * p * sq;
    const double friction = (kind == OrderKind::Limit ? 1.0 : -1.0) * half_spread * std::abs(dL);
    K = (K - p * dL + friction) * growth;
    L = g_next.delta;
    p = p_next;
    g = g_next;
  }
  res.terminal_wealth = L * p + K;
  res.payoff = payoff(p);
  res.error = res.terminal_wealth - res.payoff;
  return res;
}

std::vector<ReplicationRow> replication_study(const MarketSpec& spec, const Payoff& payoff,
                                              std::span<const std::size_t> Ns, std::size_t paths,
                                              std::uint64_t seed, const ReplicationConfig& cfg,
                                              std::size_t threads) {
  if (paths == 0) fail(Errc::InvalidParams, "need at least one path");
  std::vector<ReplicationRow> rows;
  for (std::size_t N : Ns) {
    std::vector<double> sq_err(paths);
    parallel_for(
        paths,
        [&](std::size_t i) {
          const double e = replicate(spec, payoff, N, stream_seed(seed, i), cfg).error;
          sq_err[i] = e * e;
        },
        threads);
    double mean = 0.0;
    for (double e : sq_err) mean += e;
    rows.push_back({N, std::sqrt(mean / static_cast<double>(paths))});
  }
  return rows;
}

}  // namespace mlob
