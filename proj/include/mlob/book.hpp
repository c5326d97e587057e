#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mlob/tape.hpp"

namespace mlob {

/// Raw tape price: 1e-4 currency units.
using Price = std::uint32_t;

/// A price in half units (5e-5 currency). Midprices and half spreads are
/// exact here, so wealth bookkeeping never leaves integer arithmetic.
struct HalfPrice {
  std::int64_t units = 0;

  static constexpr HalfPrice from_price(Price p) noexcept { return {2 * static_cast<std::int64_t>(p)}; }

  [[nodiscard]] constexpr double currency() const noexcept { return static_cast<double>(units) * 5e-5; }

  friend constexpr HalfPrice operator+(HalfPrice a, HalfPrice b) noexcept { return {a.units + b.units}; }
  friend constexpr HalfPrice operator-(HalfPrice a, HalfPrice b) noexcept { return {a.units - b.units}; }
  auto operator<=>(const HalfPrice&) const = default;
};

struct Quote {
  Price bid = 0;
  Price ask = 0;

  [[nodiscard]] HalfPrice mid() const noexcept { return {static_cast<std::int64_t>(bid) + ask}; }
  /// Full spread ask - bid, in half units.
  [[nodiscard]] HalfPrice spread() const noexcept { return {2 * (static_cast<std::int64_t>(ask) - bid)}; }
  /// Half spread s/2 in half units, equal to ask - bid in raw price units.
  [[nodiscard]] HalfPrice half_spread() const noexcept { return {static_cast<std::int64_t>(ask) - bid}; }
};

struct RestingOrder {
  Side side = Side::Bid;
  Price price = 0;
  std::uint64_t shares = 0;
};

struct Level {
  Price price = 0;
  std::uint64_t shares = 0;
};

struct Fill {
  Side side = Side::Bid;  // side of the resting (passive) order
  Price price = 0;
  std::uint64_t shares = 0;
  bool at_best = false;   // resting order sat at the best quote of its side
  std::optional<Quote> pre_quote;
};

/// Aggregated price levels plus an order index for one symbol.
class OrderBook {
 public:
  /// Throws Error{DuplicateOrder | CrossedBook}.
  void add(std::uint64_t order_id, Side side, std::uint64_t shares, Price price);
  /// Throws Error{UnknownOrder | OverExecution}.
  Fill execute(std::uint64_t order_id, std::uint64_t shares);
  void cancel(std::uint64_t order_id, std::uint64_t shares);
  void remove(std::uint64_t order_id);

  [[nodiscard]] std::optional<Price> best_bid() const;
  [[nodiscard]] std::optional<Price> best_ask() const;
  /// Defined only when both sides are non-empty.
  [[nodiscard]] std::optional<Quote> quote() const;

  /// Levels of one side, best first.
  [[nodiscard]] std::vector<Level> ladder(Side side) const;
  [[nodiscard]] std::uint64_t total_shares() const noexcept { return total_shares_; }
  [[nodiscard]] std::size_t order_count() const noexcept { return orders_.size(); }
  [[nodiscard]] const RestingOrder* find(std::uint64_t order_id) const;

  /// Checks the aggregate/index consistency invariants (test support; O(n log n)).
  [[nodiscard]] bool consistent() const;

 private:
  void reduce(std::unordered_map<std::uint64_t, RestingOrder>::iterator it, std::uint64_t shares);

  std::map<Price, std::uint64_t, std::greater<>> bids_;
  std::map<Price, std::uint64_t> asks_;
  std::unordered_map<std::uint64_t, RestingOrder> orders_;
  std::uint64_t total_shares_ = 0;
};

}  // namespace mlob
