#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlob/ledger.hpp"
#include "mlob/trades.hpp"

namespace mlob {

/// Trades partitioned by the sign of dp * dL.
struct ImpactCounts {
  std::size_t total = 0;
  std::size_t positive = 0;  // price impact
  std::size_t zero = 0;      // mid unchanged
  std::size_t negative = 0;  // reverse impact

  [[nodiscard]] double pct(std::size_t count) const noexcept {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
  }
};

struct ImpactOptions {
  /// Sign convention for dL; impact counts default to the liquidity taker.
  Perspective perspective = Perspective::AggregateActive;
  /// Skip the last trade, whose dp relies on the end-of-stream mid.
  bool drop_last_trade = false;
};

[[nodiscard]] ImpactCounts classify_trades(const SymbolTape& tape, const ImpactOptions& opts = {});

/// Running sum of dp * dL for the passive side, length N+1 starting at 0
/// (half units * shares); empty for a tape without trades.
[[nodiscard]] std::vector<std::int64_t> cumulative_adverse_selection(const SymbolTape& tape);

struct SymbolSpreadSplit {
  std::string symbol;
  double transaction_cost = 0.0;   // T_N in currency
  double adverse_selection = 0.0;  // A_N in currency, passive sign
};

struct SpreadSplit {
  std::vector<SymbolSpreadSplit> symbols;
  double slope = 0.0;               // least squares of |AS| on TC through the origin
  double effective_fraction = 0.0;  // 1 - slope
};

/// Pools (TC, |AS|) pairs. Throws Error{InsufficientData} for fewer than two
/// symbols or when every TC is zero.
[[nodiscard]] SpreadSplit spread_split(std::vector<SymbolSpreadSplit> pairs);
[[nodiscard]] SpreadSplit spread_split(std::span<const SymbolTape> tapes);

}  // namespace mlob
