#include "mlob/trades.hpp"

#include <algorithm>
#include <map>

#include "mlob/error.hpp"
#include "mlob/parallel.hpp"

namespace mlob {

std::vector<std::int64_t> SymbolTape::mid_increments() const {
  std::vector<std::int64_t> out(trades.size());
  for (std::size_t i = 0; i < trades.size(); ++i) {
    const HalfPrice next = i + 1 < trades.size() ? trades[i + 1].pre_mid : end_mid.value_or(trades[i].pre_mid);
    out[i] = (next - trades[i].pre_mid).units;
  }
  return out;
}

std::size_t TradeTape::total_trades() const noexcept {
  std::size_t n = 0;
  for (const auto& s : symbols) n += s.trades.size();
  return n;
}

const SymbolTape* TradeTape::find(std::string_view symbol) const {
  auto it = std::find_if(symbols.begin(), symbols.end(), [&](const SymbolTape& s) { return s.symbol == symbol; });
  return it == symbols.end() ? nullptr : &*it;
}

double SymbolFilterStats::special_pct() const noexcept {
  return trade_messages() == 0 ? 0.0 : 100.0 * static_cast<double>(special) / static_cast<double>(trade_messages());
}

double SymbolFilterStats::hidden_pct() const noexcept {
  return trade_messages() == 0 ? 0.0 : 100.0 * static_cast<double>(hidden) / static_cast<double>(trade_messages());
}

std::uint64_t FilterStats::total_messages() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : symbols) n += s.messages;
  return n;
}

std::optional<TradeEvent> apply_message(BookState& state, const TapeMessage& msg) {
  ++state.seq;
  ++state.stats.messages;
  std::optional<TradeEvent> trade;
  switch (msg.kind) {
    case MessageKind::Directory:
      state.symbol = symbol_name(msg.symbol);
      state.stats.symbol = state.symbol;
      break;
    case MessageKind::Timestamp:
      break;
    case MessageKind::Add:
      state.book.add(msg.order_id, msg.side, msg.shares, msg.price);
      break;
    case MessageKind::Cancel:
      state.book.cancel(msg.order_id, msg.shares);
      break;
    case MessageKind::Delete:
      state.book.remove(msg.order_id);
      break;
    case MessageKind::Execute: {
      ++state.stats.executions;
      const Fill fill = state.book.execute(msg.order_id, msg.shares);
      if (!fill.at_best || !fill.pre_quote) {
        ++state.stats.cleaned;
        break;
      }
      ++state.stats.visible_trades;
      const Quote q = *fill.pre_quote;
      TradeEvent ev;
      ev.n = ++state.trades;
      ev.timestamp_ns = msg.timestamp_ns;
      ev.passive_side = fill.side;
      ev.volume = fill.shares;
      ev.exec_price = fill.price;
      ev.notional = static_cast<std::int64_t>(fill.price) * static_cast<std::int64_t>(fill.shares);
      ev.pre_mid = q.mid();
      ev.pre_spread = q.spread();
      ev.cost = q.half_spread().units * static_cast<std::int64_t>(fill.shares);
      ev.first_seq = ev.last_seq = state.seq;
      trade = ev;
      break;
    }
    case MessageKind::SpecialDeal:
      ++state.stats.special;
      break;
    case MessageKind::HiddenExec:
      ++state.stats.hidden;
      break;
  }
  if (auto q = state.book.quote()) state.last_mid = q->mid();
  return trade;
}

Extraction extract_trades(std::span<const TapeMessage> messages, std::size_t threads) {
  std::map<std::uint16_t, std::vector<std::size_t>> by_locate;
  for (std::size_t i = 0; i < messages.size(); ++i) by_locate[messages[i].locate].push_back(i);

  std::vector<std::uint16_t> locates;
  for (const auto& [loc, idx] : by_locate) locates.push_back(loc);

  Extraction out;
  out.tape.symbols.resize(locates.size());
  out.stats.symbols.resize(locates.size());
  parallel_for(
      locates.size(),
      [&](std::size_t k) {
        const std::uint16_t loc = locates[k];
        BookState state;
        state.locate = loc;
        state.symbol = "LOC" + std::to_string(loc);
        state.stats.locate = loc;
        state.stats.symbol = state.symbol;
        SymbolTape tape;
        tape.locate = loc;
        for (std::size_t i : by_locate.at(loc)) {
          try {
            if (auto ev = apply_message(state, messages[i])) tape.trades.push_back(*ev);
          } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()) + " (message #" + std::to_string(i) + ")");
          }
        }
        tape.symbol = state.symbol;
        tape.end_mid = state.last_mid;
        out.tape.symbols[k] = std::move(tape);
        out.stats.symbols[k] = state.stats;
      },
      threads);
  return out;
}

}  // namespace mlob
