#pragma once

// Book reconstruction and trade-tape extraction on the event clock.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlob/book.hpp"
#include "mlob/tape.hpp"

namespace mlob {

/// One execution (or, after parent regrouping, one parent order) on the
/// trade clock. Prices are snapshotted from the book before the trade.
struct TradeEvent {
  std::size_t n = 0;  // 1-based trade index
  std::uint64_t timestamp_ns = 0;
  Side passive_side = Side::Bid;
  std::uint64_t volume = 0;
  Price exec_price = 0;        // first child's price; the only price for a plain fill
  std::int64_t notional = 0;   // sum of price * shares over children, raw units
  HalfPrice pre_mid;
  HalfPrice pre_spread;
  /// Transaction-cost magnitude sum |exec - pre_mid| * shares in half units.
  /// Equals (s/2)|dL| whenever every child printed at the best quote.
  std::int64_t cost = 0;
  std::uint64_t first_seq = 0;  // per-symbol message ordinals of the first/last child
  std::uint64_t last_seq = 0;
  std::uint32_t children = 1;

  [[nodiscard]] std::int64_t delta_L_passive() const noexcept {
    return passive_side == Side::Bid ? static_cast<std::int64_t>(volume)
                                     : -static_cast<std::int64_t>(volume);
  }
  [[nodiscard]] std::int64_t delta_L_active() const noexcept { return -delta_L_passive(); }
  [[nodiscard]] double vwap() const noexcept {
    return static_cast<double>(notional) / static_cast<double>(volume);
  }

  bool operator==(const TradeEvent&) const = default;
};

struct SymbolTape {
  std::uint16_t locate = 0;
  std::string symbol;
  std::vector<TradeEvent> trades;
  /// Mid after the last trade: the end-of-stream mid, or the last defined one.
  std::optional<HalfPrice> end_mid;

  /// p_{n+1} - p_n for n = 1..N in half units; the last one uses end_mid.
  [[nodiscard]] std::vector<std::int64_t> mid_increments() const;
};

struct TradeTape {
  std::vector<SymbolTape> symbols;

  [[nodiscard]] std::size_t total_trades() const noexcept;
  [[nodiscard]] const SymbolTape* find(std::string_view symbol) const;
};

struct SymbolFilterStats {
  std::uint16_t locate = 0;
  std::string symbol;
  std::uint64_t messages = 0;
  std::uint64_t executions = 0;  // 'E' messages
  std::uint64_t visible_trades = 0;
  std::uint64_t cleaned = 0;     // 'E' away from the best quote or into a one-sided book
  std::uint64_t special = 0;     // 'C'
  std::uint64_t hidden = 0;      // 'P'

  [[nodiscard]] std::uint64_t trade_messages() const noexcept { return executions + special + hidden; }
  [[nodiscard]] double special_pct() const noexcept;
  [[nodiscard]] double hidden_pct() const noexcept;
};

struct FilterStats {
  std::vector<SymbolFilterStats> symbols;

  [[nodiscard]] std::uint64_t total_messages() const noexcept;
};

/// Reconstruction state for one symbol.
struct BookState {
  std::uint16_t locate = 0;
  std::string symbol;
  OrderBook book;
  SymbolFilterStats stats;
  std::uint64_t seq = 0;           // messages applied so far
  std::size_t trades = 0;          // trades emitted so far
  std::optional<HalfPrice> last_mid;
};

/// Applies one message. Returns a trade when an execution hits the best
/// quote of a two-sided book.
/// Throws Error{UnknownOrder | OverExecution | CrossedBook | DuplicateOrder}.
std::optional<TradeEvent> apply_message(BookState& state, const TapeMessage& msg);

struct Extraction {
  TradeTape tape;
  FilterStats stats;
};

/// Splits the stream by locate and reconstructs each symbol independently.
[[nodiscard]] Extraction extract_trades(std::span<const TapeMessage> messages, std::size_t threads = 1);

}  // namespace mlob
