#include "mlob/parent.hpp"

#include <cstdlib>

#include "mlob/error.hpp"
#include "mlob/parallel.hpp"

namespace mlob {

namespace {

bool continues(const TradeEvent& prev, const TradeEvent& next) noexcept {
  return next.first_seq == prev.last_seq + 1 && next.timestamp_ns == prev.timestamp_ns &&
         next.passive_side == prev.passive_side;
}

std::int64_t cost_against(HalfPrice mid, Side passive_side, std::int64_t notional, std::uint64_t volume) {
  // Children walk away from the mid, so |2 exec - mid| keeps one sign per group.
  const std::int64_t doubled = 2 * notional - mid.units * static_cast<std::int64_t>(volume);
  return passive_side == Side::Ask ? doubled : -doubled;
}

}  // namespace

std::vector<ParentGroup> parent_groups(const SymbolTape& tape) {
  std::vector<ParentGroup> groups;
  const auto& trades = tape.trades;
  for (std::size_t i = 0; i < trades.size();) {
    std::size_t j = i + 1;
    while (j < trades.size() && continues(trades[j - 1], trades[j])) ++j;
    ParentGroup g;
    g.timestamp_ns = trades[i].timestamp_ns;
    g.passive_side = trades[i].passive_side;
    std::int64_t notional = 0;
    for (std::size_t k = i; k < j; ++k) {
      g.children.push_back(k);
      g.volume += trades[k].volume;
      notional += trades[k].notional;
    }
    g.vwap = static_cast<double>(notional) / static_cast<double>(g.volume);
    g.cost = j - i == 1 ? trades[i].cost : cost_against(trades[i].pre_mid, g.passive_side, notional, g.volume);
    groups.push_back(std::move(g));
    i = j;
  }
  return groups;
}

SymbolTape group_parents(const SymbolTape& tape) {
  SymbolTape out;
  out.locate = tape.locate;
  out.symbol = tape.symbol;
  out.end_mid = tape.end_mid;
  for (const auto& g : parent_groups(tape)) {
    const auto& first = tape.trades[g.children.front()];
    const auto& last = tape.trades[g.children.back()];
    TradeEvent ev = first;
    ev.n = out.trades.size() + 1;
    ev.volume = g.volume;
    ev.notional = 0;
    ev.children = 0;
    for (std::size_t k : g.children) {
      ev.notional += tape.trades[k].notional;
      ev.children += tape.trades[k].children;
    }
    ev.cost = g.cost;
    ev.last_seq = last.last_seq;
    out.trades.push_back(ev);
  }
  return out;
}

TradeTape group_parents(const TradeTape& tape) {
  TradeTape out;
  out.symbols.reserve(tape.symbols.size());
  for (const auto& s : tape.symbols) out.symbols.push_back(group_parents(s));
  return out;
}

Extraction reconstruct_parents(std::span<const TapeMessage> messages, std::size_t threads) {
  auto ex = extract_trades(messages, threads);
  ex.tape = group_parents(ex.tape);
  return ex;
}

CostFunction::CostFunction(const OrderBook& book)
    : CostFunction(book.ladder(Side::Bid), book.ladder(Side::Ask)) {}

CostFunction::CostFunction(std::vector<Level> bids, std::vector<Level> asks)
    : bids_(std::move(bids)), asks_(std::move(asks)) {
  if (bids_.empty() || asks_.empty()) fail(Errc::InsufficientData, "cost function needs a two-sided book");
  mid_ = Quote{bids_.front().price, asks_.front().price}.mid();
}

std::uint64_t CostFunction::best_depth(Side consumed_side) const noexcept {
  return consumed_side == Side::Bid ? bids_.front().shares : asks_.front().shares;
}

std::int64_t CostFunction::operator()(std::int64_t l) const {
  const auto& ladder = l > 0 ? asks_ : bids_;
  std::uint64_t remaining = static_cast<std::uint64_t>(std::llabs(l));
  std::int64_t cost = 0;
  for (const auto& level : ladder) {
    if (remaining == 0) break;
    const std::uint64_t take = std::min(remaining, level.shares);
    const std::int64_t distance = std::llabs(HalfPrice::from_price(level.price).units - mid_.units);
    cost += distance * static_cast<std::int64_t>(take);
    remaining -= take;
  }
  if (remaining != 0)
    fail(Errc::InsufficientDepth, std::to_string(std::llabs(l)) + " shares exceed the displayed depth");
  return cost;
}

std::int64_t convex_cost(const OrderBook& book, std::int64_t l) { return CostFunction(book)(l); }

double wealth_delta_general(double L, double dp, const std::function<double(double)>& cost, double dL,
                            OrderKind kind) {
  const double sign = kind == OrderKind::Limit ? 1.0 : -1.0;
  return L * dp + sign * cost(dL) + dp * dL;
}

}  // namespace mlob
