#include "mlob/impact.hpp"

#include <cmath>

#include "mlob/error.hpp"

namespace mlob {

ImpactCounts classify_trades(const SymbolTape& tape, const ImpactOptions& opts) {
  ImpactCounts c;
  const auto dps = tape.mid_increments();
  std::size_t n = tape.trades.size();
  if (opts.drop_last_trade && n > 0) --n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t dL = opts.perspective == Perspective::AggregateActive ? tape.trades[i].delta_L_active()
                                                                             : tape.trades[i].delta_L_passive();
    const std::int64_t prod = dps[i] * dL;
    if (prod > 0)
      ++c.positive;
    else if (prod < 0)
      ++c.negative;
    else
      ++c.zero;
  }
  c.total = n;
  return c;
}

std::vector<std::int64_t> cumulative_adverse_selection(const SymbolTape& tape) {
  if (tape.trades.empty()) return {};
  return decompose(tape, Perspective::AggregatePassive).adverse_selection;
}

SpreadSplit spread_split(std::vector<SymbolSpreadSplit> pairs) {
  if (pairs.size() < 2) fail(Errc::InsufficientData, "pooled regression needs at least two symbols");
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : pairs) {
    sxy += p.transaction_cost * std::abs(p.adverse_selection);
    sxx += p.transaction_cost * p.transaction_cost;
  }
  if (sxx == 0.0) fail(Errc::InsufficientData, "all transaction-cost totals are zero");
  SpreadSplit out;
  out.symbols = std::move(pairs);
  out.slope = sxy / sxx;
  out.effective_fraction = 1.0 - out.slope;
  return out;
}

SpreadSplit spread_split(std::span<const SymbolTape> tapes) {
  std::vector<SymbolSpreadSplit> pairs;
  pairs.reserve(tapes.size());
  for (const auto& tape : tapes) {
    const auto d = decompose(tape, Perspective::AggregatePassive);
    pairs.push_back({tape.symbol, to_currency(d.transaction_cost.back()), to_currency(d.adverse_selection.back())});
  }
  return spread_split(std::move(pairs));
}

}  // namespace mlob
