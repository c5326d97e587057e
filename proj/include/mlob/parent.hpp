#pragma once

// Parent-order reconstruction: executions sharing a timestamp and direction,
// with no other message for the symbol in between, are children of one
// market order. Also the order-book transaction-cost function c(l).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mlob/book.hpp"
#include "mlob/ledger.hpp"
#include "mlob/trades.hpp"

namespace mlob {

struct ParentGroup {
  std::vector<std::size_t> children;  // 0-based indices into the child tape
  std::uint64_t timestamp_ns = 0;
  Side passive_side = Side::Bid;
  std::uint64_t volume = 0;
  double vwap = 0.0;        // raw price units
  std::int64_t cost = 0;    // half units * shares, relative to the pre-parent mid
};

/// Maximal runs of children; every trade lands in exactly one group.
[[nodiscard]] std::vector<ParentGroup> parent_groups(const SymbolTape& tape);

/// Collapses each group into one trade. The pre-trade mid/spread come from
/// the first child. Idempotent.
[[nodiscard]] SymbolTape group_parents(const SymbolTape& tape);
[[nodiscard]] TradeTape group_parents(const TradeTape& tape);

/// extract_trades followed by group_parents.
[[nodiscard]] Extraction reconstruct_parents(std::span<const TapeMessage> messages, std::size_t threads = 1);

/// Snapshot of the depth ladder; c(l) is the cost of consuming |l| shares
/// (l > 0 buys from the asks) measured against the mid, in half units * shares.
class CostFunction {
 public:
  /// Throws Error{InsufficientData} for a one-sided book.
  explicit CostFunction(const OrderBook& book);
  CostFunction(std::vector<Level> bids, std::vector<Level> asks);

  /// Throws Error{InsufficientDepth} when |l| exceeds the displayed depth.
  [[nodiscard]] std::int64_t operator()(std::int64_t l) const;

  [[nodiscard]] HalfPrice mid() const noexcept { return mid_; }
  [[nodiscard]] std::uint64_t best_depth(Side consumed_side) const noexcept;

 private:
  std::vector<Level> bids_;
  std::vector<Level> asks_;
  HalfPrice mid_;
};

[[nodiscard]] std::int64_t convex_cost(const OrderBook& book, std::int64_t l);

/// L dp +/- c(dL) + dp dL.
[[nodiscard]] double wealth_delta_general(double L, double dp, const std::function<double(double)>& cost, double dL,
                                          OrderKind kind);

}  // namespace mlob
