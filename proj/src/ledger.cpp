#include "mlob/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mlob/error.hpp"

namespace mlob {

double clearing_cash_delta(ClearingCase c, double mid, double spread, double dL) {
  const auto require = [&](bool ok, const char* what) {
    if (!ok) fail(Errc::SignMismatch, what);
  };
  switch (c) {
    case ClearingCase::BuyMarket:
      require(dL > 0, "market buy needs dL > 0");
      return -(mid + spread / 2) * dL;
    case ClearingCase::SellMarket:
      require(dL < 0, "market sell needs dL < 0");
      return -(mid - spread / 2) * dL;
    case ClearingCase::BuyLimit:
      require(dL > 0, "limit buy needs dL > 0");
      return -(mid - spread / 2) * dL;
    case ClearingCase::SellLimit:
      require(dL < 0, "limit sell needs dL < 0");
      return -(mid + spread / 2) * dL;
    case ClearingCase::None:
      require(dL == 0, "no trade needs dL = 0");
      return 0.0;
  }
  return 0.0;
}

double wealth_delta_exact(double L, double dp, double spread, double dL, OrderKind kind) {
  const double sign = kind == OrderKind::Limit ? 1.0 : -1.0;
  return L * dp + sign * (spread / 2) * std::abs(dL) + dp * dL;
}

namespace {

struct Step {
  std::int64_t dL;
  std::int64_t friction;  // signed transaction-cost term
};

Step step_for(const TradeEvent& t, Perspective perspective) {
  if (perspective == Perspective::AggregatePassive) return {t.delta_L_passive(), t.cost};
  return {t.delta_L_active(), -t.cost};
}

}  // namespace

LedgerSeries run_ledger(const SymbolTape& tape, Perspective perspective) {
  LedgerSeries out;
  out.symbol = tape.symbol;
  out.perspective = perspective;
  const std::size_t N = tape.trades.size();
  out.rows.reserve(N + 1);

  std::int64_t L = 0, K = 0, F = 0, T = 0, A = 0;
  const auto dps = tape.mid_increments();
  for (std::size_t i = 0; i < N; ++i) {
    const auto& tr = tape.trades[i];
    const std::int64_t p = tr.pre_mid.units;
    out.rows.push_back({i + 1, tr.pre_mid, tr.pre_spread, L, K, L * p + K, F, T, A});

    const auto [dL, friction] = step_for(tr, perspective);
    const std::int64_t dp = dps[i];
    F += L * dp;
    T += friction;
    A += dp * dL;
    K += -p * dL + friction;  // clearing condition
    L += dL;
  }
  if (N > 0) {
    const HalfPrice p_end = tape.end_mid.value_or(tape.trades.back().pre_mid);
    const HalfPrice s_end = tape.trades.back().pre_spread;
    out.rows.push_back({N + 1, p_end, s_end, L, K, L * p_end.units + K, F, T, A});
  }
  return out;
}

WealthDecomposition decompose(const SymbolTape& tape, Perspective perspective) {
  WealthDecomposition d;
  const std::size_t N = tape.trades.size();
  d.frictionless.assign(N + 1, 0);
  d.transaction_cost.assign(N + 1, 0);
  d.adverse_selection.assign(N + 1, 0);
  std::int64_t L = 0;
  const auto dps = tape.mid_increments();
  for (std::size_t i = 0; i < N; ++i) {
    const auto [dL, friction] = step_for(tape.trades[i], perspective);
    d.frictionless[i + 1] = d.frictionless[i] + L * dps[i];
    d.transaction_cost[i + 1] = d.transaction_cost[i] + friction;
    d.adverse_selection[i + 1] = d.adverse_selection[i] + dps[i] * dL;
    L += dL;
  }
  return d;
}

std::vector<std::int64_t> wealth_model_series(const SymbolTape& tape, WealthModel model,
                                              Perspective perspective) {
  const auto d = decompose(tape, perspective);
  std::vector<std::int64_t> out(d.frictionless);
  if (model == WealthModel::Frictionless) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += d.transaction_cost[i];
  if (model == WealthModel::WithTransactionCosts) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += d.adverse_selection[i];
  return out;
}

Table2Metrics table2_metrics(const SymbolTape& tape) {
  Table2Metrics m;
  const auto ledger = run_ledger(tape, Perspective::AggregatePassive);
  if (ledger.rows.empty()) return m;
  const auto& first = ledger.rows.front();
  const auto& last = ledger.rows.back();
  m.net_pnl = last.X - first.X;
  if (m.net_pnl != 0)
    m.relative_error = std::abs(static_cast<double>(last.F - m.net_pnl)) / std::abs(static_cast<double>(m.net_pnl));
  if (last.T != 0) m.friction_ratio = std::abs(static_cast<double>(last.A)) / static_cast<double>(last.T);

  std::int64_t sup_gap = 0, sup_x = 0;
  for (const auto& row : ledger.rows) {
    const std::int64_t x = row.X - first.X;
    sup_gap = std::max(sup_gap, std::abs(row.F - x));
    sup_x = std::max(sup_x, std::abs(x));
  }
  if (sup_x != 0) m.relative_error_sup = static_cast<double>(sup_gap) / static_cast<double>(sup_x);
  return m;
}

}  // namespace mlob
