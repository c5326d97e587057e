#pragma once

// European option pricing when hedging trades pay or earn the half spread and
// carry adverse selection. With spread s_t = s sigma p_t the pricing PDE is
//   v_t + (sigma^2 p^2 / 2)(sqrt(2/pi) s - 1) v_pp + r p v_p = r v,
// i.e. Black-Scholes at sigma_eff = sigma sqrt(sqrt(2/pi) s - 1). It is
// well posed only for s > sqrt(pi/2).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mlob/ledger.hpp"

namespace mlob {

struct MarketSpec {
  double sigma = 0.2;        // per sqrt(year)
  double rate = 0.0;         // per year
  double spread_coef = 2.5;  // s in s_t = s sigma p_t
  double maturity = 1.0;     // years
};

/// sqrt(pi/2): the spread coefficient at which the diffusion term vanishes.
[[nodiscard]] double ill_posed_threshold() noexcept;

/// sqrt(2/pi) s - 1; may be non-positive.
[[nodiscard]] double friction_factor(const MarketSpec& spec) noexcept;

/// Throws Error{InvalidParams | IllPosedRegime}.
void require_well_posed(const MarketSpec& spec);

/// sigma * sqrt(sqrt(2/pi) s - 1). Throws Error{IllPosedRegime}.
[[nodiscard]] double effective_volatility(const MarketSpec& spec);

enum class OptionKind { Call, Put };

struct Greeks {
  double value = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
};

/// Black-Scholes at an explicit volatility; tau <= 0 gives the payoff.
[[nodiscard]] Greeks black_scholes(OptionKind kind, double spot, double strike, double rate, double vol, double tau);

/// European price at time t = 0 with spot p.
[[nodiscard]] double price_closed_form(const MarketSpec& spec, OptionKind kind, double strike, double spot);

/// Payoffs with closed-form values under the effective volatility.
struct Payoff {
  enum class Kind { Call, Put, Forward, Constant };
  Kind kind = Kind::Call;
  double strike = 100.0;    // Constant: the constant value
  double quantity = 1.0;    // negative for a short position

  [[nodiscard]] double operator()(double p) const noexcept;
  /// Value and space derivatives at time-to-maturity tau.
  [[nodiscard]] Greeks greeks(const MarketSpec& spec, double p, double tau) const;

  static Payoff call(double k, double qty = 1.0) { return {Kind::Call, k, qty}; }
  static Payoff put(double k, double qty = 1.0) { return {Kind::Put, k, qty}; }
  static Payoff forward(double qty = 1.0) { return {Kind::Forward, 0.0, qty}; }
  static Payoff constant(double c) { return {Kind::Constant, c, 1.0}; }
};

struct GridSpec {
  std::size_t space_nodes = 400;
  std::size_t time_steps = 400;
  double p_max = 0.0;  // 0: chosen from the reference price and sigma_eff
  std::size_t rannacher_half_steps = 4;
};

/// Solution on a uniform price grid [0, p_max], stored for every time level.
class ValueSurface {
 public:
  ValueSurface(std::vector<double> times, std::vector<double> prices, std::vector<double> values);

  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] const std::vector<double>& prices() const noexcept { return prices_; }
  /// Node value at time level it (ascending in t) and price node j.
  [[nodiscard]] double at(std::size_t it, std::size_t j) const noexcept { return values_[it * prices_.size() + j]; }
  [[nodiscard]] double delta_at(std::size_t it, std::size_t j) const noexcept;
  [[nodiscard]] double gamma_at(std::size_t it, std::size_t j) const noexcept;

  /// Bilinear interpolation in (t, p).
  [[nodiscard]] Greeks greeks(double t, double p) const;
  [[nodiscard]] double value(double t, double p) const { return greeks(t, p).value; }

 private:
  std::vector<double> times_;
  std::vector<double> prices_;
  std::vector<double> values_;
};

/// Theta scheme (Crank-Nicolson with Rannacher start-up) backward from v(T,.) = f.
/// Boundaries: v_t = r v at p = 0, v_pp = 0 at p_max.
/// Throws Error{IllPosedRegime | GridTooCoarse}.
[[nodiscard]] ValueSurface solve_pde(const MarketSpec& spec, const std::function<double(double)>& payoff,
                                     double reference_price, const GridSpec& grid = {});

/// Source of delta/gamma along a hedge path.
using GreeksFn = std::function<Greeks(double t, double p)>;

[[nodiscard]] GreeksFn closed_form_greeks(const MarketSpec& spec, const Payoff& payoff);
[[nodiscard]] GreeksFn surface_greeks(const ValueSurface& surface);

struct HedgeStep {
  double t = 0.0;
  double p = 0.0;
  double L = 0.0;      // delta
  double l = 0.0;      // sigma p gamma
  double gamma = 0.0;
  OrderKind kind = OrderKind::Market;
};

/// Limit orders where l < 0 (negative gamma), market orders otherwise.
[[nodiscard]] constexpr OrderKind order_kind_for(double l) noexcept {
  return l < 0.0 ? OrderKind::Limit : OrderKind::Market;
}

struct HedgeSchedule {
  std::vector<HedgeStep> steps;
};

[[nodiscard]] HedgeSchedule hedge_schedule(const GreeksFn& greeks, const MarketSpec& spec,
                                           std::span<const double> times, std::span<const double> path);
[[nodiscard]] HedgeSchedule hedge_schedule(const ValueSurface& surface, const MarketSpec& spec,
                                           std::span<const double> times, std::span<const double> path);

struct ReplicationResult {
  double terminal_wealth = 0.0;
  double payoff = 0.0;
  double error = 0.0;  // X_N - f(p_N)
  HedgeSchedule schedule;  // filled when requested
};

struct ReplicationConfig {
  double spot = 100.0;
  double drift = 0.0;  // GBM drift of the simulated mid
  bool keep_schedule = false;
};

/// Delta hedge of one simulated GBM path with N rebalancing trades. Each trade
/// clears at p_n +/- s_n/2 with s_n = s sigma p_n sqrt(dt) and reaches the
/// delta at the next grid point; the order kind follows the sign of gamma.
[[nodiscard]] ReplicationResult replicate(const MarketSpec& spec, const Payoff& payoff, std::size_t N,
                                          std::uint64_t seed, const ReplicationConfig& cfg = {});

struct ReplicationRow {
  std::size_t N = 0;
  double rms_error = 0.0;
};

[[nodiscard]] std::vector<ReplicationRow> replication_study(const MarketSpec& spec, const Payoff& payoff,
                                                            std::span<const std::size_t> Ns, std::size_t paths,
                                                            std::uint64_t seed, const ReplicationConfig& cfg = {},
                                                            std::size_t threads = 1);

}  // namespace mlob
