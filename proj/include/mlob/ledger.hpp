#pragma once

// Clearing equations and wealth bookkeeping on the trade clock.
//
// Per trade n, with pre-trade mid p_n, spread s_n and inventory change dL:
//   dK = -p_n dL +/- (s_n/2)|dL|          ('+' limit order, '-' market order)
//   dX = L_n dp +/- (s_n/2)|dL| + dp dL    (X = L p + K)
// The ledger runs in integer half units so these identities hold exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlob/trades.hpp"

namespace mlob {

enum class OrderKind { Limit, Market };
enum class Perspective { AggregatePassive, AggregateActive };
enum class ClearingCase { BuyMarket, SellMarket, BuyLimit, SellLimit, None };
enum class WealthModel { Frictionless, WithTransactionCosts, Complete };

/// Cash change for one of the five clearing cases. Throws Error{SignMismatch}
/// when the sign of dL disagrees with the case.
[[nodiscard]] double clearing_cash_delta(ClearingCase c, double mid, double spread, double dL);

/// L dp +/- (s/2)|dL| + dp dL.
[[nodiscard]] double wealth_delta_exact(double L, double dp, double spread, double dL, OrderKind kind);

/// Half-unit * share amounts to currency.
[[nodiscard]] constexpr double to_currency(std::int64_t half_unit_shares) noexcept {
  return static_cast<double>(half_unit_shares) * 5e-5;
}

struct LedgerRow {
  std::size_t n = 0;  // rows 1..N are pre-trade states, row N+1 is the closing state
  HalfPrice p;
  HalfPrice s;
  std::int64_t L = 0;
  std::int64_t K = 0;  // half units * shares
  std::int64_t X = 0;
  // Cumulative decomposition through trade n-1, so F + T + A == X - X_1.
  std::int64_t F = 0;
  std::int64_t T = 0;
  std::int64_t A = 0;
};

struct LedgerSeries {
  std::string symbol;
  Perspective perspective = Perspective::AggregatePassive;
  std::vector<LedgerRow> rows;
};

/// Aggregate ledger starting from L_1 = K_1 = 0. The passive side books every
/// fill as a limit order, the active side as a market order.
[[nodiscard]] LedgerSeries run_ledger(const SymbolTape& tape,
                                      Perspective perspective = Perspective::AggregatePassive);

struct WealthDecomposition {
  std::vector<std::int64_t> frictionless;       // F_n = sum L_k dp_k
  std::vector<std::int64_t> transaction_cost;   // T_n = sum +/- c_k
  std::vector<std::int64_t> adverse_selection;  // A_n = sum dp_k dL_k
};

/// Cumulative series of length N+1 starting at 0.
[[nodiscard]] WealthDecomposition decompose(const SymbolTape& tape,
                                            Perspective perspective = Perspective::AggregatePassive);

/// Cumulative wealth under one of the three models, length N+1 starting at 0.
/// Complete equals the exact ledger wealth X_n - X_1.
[[nodiscard]] std::vector<std::int64_t> wealth_model_series(
    const SymbolTape& tape, WealthModel model, Perspective perspective = Perspective::AggregatePassive);

struct Table2Metrics {
  /// |F_N - X_net| / |X_net| at day end; empty when X_net = 0.
  std::optional<double> relative_error;
  /// sup_n |F_n - (X_n - X_1)| / sup_n |X_n - X_1|.
  std::optional<double> relative_error_sup;
  /// |A_N| / T_N for the passive side; empty when T_N = 0.
  std::optional<double> friction_ratio;
  std::int64_t net_pnl = 0;  // half units * shares
};

[[nodiscard]] Table2Metrics table2_metrics(const SymbolTape& tape);

}  // namespace mlob
