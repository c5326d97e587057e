#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical code: each oracle re-derives its value from
// first principles with a different algorithm.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "mlob/tape.hpp"

namespace oracle {

__extension__ typedef __int128 i128;

/// Phi(x) by composite Simpson integration of the density from 0 to |x|.
inline double normal_cdf(double x) {
  const double a = std::abs(x);
  if (a > 40.0) return x > 0 ? 1.0 : 0.0;
  const int n = 20000;
  const double h = a / n;
  const auto f = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double s = f(0.0) + f(a);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  const double half = s * h / 3.0;
  return x >= 0 ? 0.5 + half : 0.5 - half;
}

/// Black-Scholes call from the Simpson CDF.
inline double bs_call(double S, double K, double r, double vol, double T) {
  const double sq = vol * std::sqrt(T);
  const double d1 = (std::log(S / K) + (r + 0.5 * vol * vol) * T) / sq;
  return S * normal_cdf(d1) - K * std::exp(-r * T) * normal_cdf(d1 - sq);
}

inline double bs_put(double S, double K, double r, double vol, double T) {
  return bs_call(S, K, r, vol, T) - S + K * std::exp(-r * T);
}

/// Replays a single-symbol message stream with a price-level-free book
/// (order id -> side, price, shares) and keeps the aggregate passive account
/// in 128-bit integers of half price units.
struct PassiveAccount {
  struct Order {
    mlob::Side side;
    std::uint32_t price;
    std::uint64_t shares;
  };
  std::unordered_map<std::uint64_t, Order> orders;
  i128 L = 0;
  i128 K = 0;
  std::vector<i128> mids;     // pre-trade mids, half units
  std::vector<i128> dLs;      // passive inventory changes
  std::vector<i128> halfs;    // half spread, half units
  std::size_t trades = 0;

  [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> best() const {
    std::uint32_t bid = 0, ask = 0;
    for (const auto& [id, o] : orders) {
      if (o.side == mlob::Side::Bid && o.price > bid) bid = o.price;
      if (o.side == mlob::Side::Ask && (ask == 0 || o.price < ask)) ask = o.price;
    }
    return {bid, ask};
  }

  void apply(const mlob::TapeMessage& m) {
    using K_ = mlob::MessageKind;
    switch (m.kind) {
      case K_::Add: orders[m.order_id] = {m.side, m.price, m.shares}; break;
      case K_::Cancel:
        orders[m.order_id].shares -= m.shares;
        if (orders[m.order_id].shares == 0) orders.erase(m.order_id);
        break;
      case K_::Delete: orders.erase(m.order_id); break;
      case K_::Execute: {
        const auto [bid, ask] = best();
        Order& o = orders[m.order_id];
        const bool at_best = o.side == mlob::Side::Bid ? o.price == bid : o.price == ask;
        if (bid != 0 && ask != 0 && at_best) {
          const i128 mid = static_cast<i128>(bid) + ask;
          const i128 dL = o.side == mlob::Side::Bid ? static_cast<i128>(m.shares) : -static_cast<i128>(m.shares);
          // Passive fill at its own price: cash moves by -price * dL (raw units, doubled).
          K -= 2 * static_cast<i128>(o.price) * dL;
          L += dL;
          mids.push_back(mid);
          dLs.push_back(dL);
          halfs.push_back(static_cast<i128>(ask) - bid);
          ++trades;
        }
        o.shares -= m.shares;
        if (o.shares == 0) orders.erase(m.order_id);
        break;
      }
      default: break;
    }
  }

  [[nodiscard]] i128 end_mid() const {
    const auto [bid, ask] = best();
    return static_cast<i128>(bid) + ask;
  }

  /// Wealth at the end-of-stream mid relative to X_1 = 0.
  [[nodiscard]] i128 wealth() const { return L * end_mid() + K; }
};

/// Ordinary least squares slope of log y on log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
