#include <gtest/gtest.h>

#include "mlob/ledger.hpp"
#include "mlob/simgen.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mlob;
using support::code_of;
using oracle::i128;

namespace {

SymbolTape sim_tape(std::uint64_t seed, std::size_t n, double phi = 0.3, double q = 0.2) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_trades = n;
  cfg.informed_fraction = phi;
  cfg.noise_move_q = q;
  return extract_trades(generate_tape(cfg).messages).tape.symbols.at(0);
}

}  // namespace

TEST(Clearing, CashCases) {
  EXPECT_NEAR(clearing_cash_delta(ClearingCase::BuyMarket, 100, 0.02, 10), -1000.10, 1e-9);
  EXPECT_NEAR(clearing_cash_delta(ClearingCase::SellLimit, 100, 0.02, -10), 1000.10, 1e-9);
  EXPECT_NEAR(clearing_cash_delta(ClearingCase::SellMarket, 100, 0.02, -10), 999.90, 1e-9);
  EXPECT_NEAR(clearing_cash_delta(ClearingCase::BuyLimit, 100, 0.02, 10), -999.90, 1e-9);
  EXPECT_EQ(clearing_cash_delta(ClearingCase::None, 100, 0.02, 0), 0.0);
  EXPECT_EQ(code_of([] { (void)clearing_cash_delta(ClearingCase::BuyMarket, 100, 0.02, -1); }), Errc::SignMismatch);
}

TEST(Clearing, WealthDelta) {
  EXPECT_NEAR(wealth_delta_exact(5, 0.02, 0.02, 3, OrderKind::Limit), 0.19, 1e-12);
  EXPECT_NEAR(wealth_delta_exact(5, 0.02, 0.02, 3, OrderKind::Market), 0.13, 1e-12);
  EXPECT_NEAR(wealth_delta_exact(5, 0.02, 0.02, 0, OrderKind::Market), 0.10, 1e-12);
}

TEST(Ledger, SingleTradeBothSides) {
  auto msgs = support::two_sided(100.00, 500, 100.04, 300);
  msgs.push_back(TapeMessage::execute(1, 1, 1, 100, 1));
  const auto tape = extract_trades(msgs).tape.symbols[0];
  const auto passive = run_ledger(tape, Perspective::AggregatePassive);
  ASSERT_EQ(passive.rows.size(), 2u);
  EXPECT_EQ(passive.rows[1].L, 100);
  EXPECT_DOUBLE_EQ(to_currency(passive.rows[1].K), -10000.00);
  EXPECT_DOUBLE_EQ(to_currency(passive.rows[1].X), 2.00);
  const auto active = run_ledger(tape, Perspective::AggregateActive);
  EXPECT_DOUBLE_EQ(to_currency(active.rows[1].X), -2.00);
}

TEST(Ledger, IdentityAtEveryRow) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto tape = sim_tape(seed, 1000);
    for (auto persp : {Perspective::AggregatePassive, Perspective::AggregateActive}) {
      const auto led = run_ledger(tape, persp);
      const auto x1 = led.rows.front().X;
      for (const auto& r : led.rows) {
        ASSERT_EQ(r.X, r.L * r.p.units + r.K);
        ASSERT_EQ(r.X - x1, r.F + r.T + r.A);
      }
    }
  }
}

TEST(Ledger, MatchesIndependentReplay) {
  SimConfig cfg;
  cfg.seed = 21;
  cfg.n_trades = 3000;
  cfg.max_children = 3;
  const auto gen = generate_tape(cfg);
  oracle::PassiveAccount acct;
  for (const auto& m : gen.messages) acct.apply(m);
  const auto tape = extract_trades(gen.messages).tape.symbols[0];
  const auto led = run_ledger(tape);
  ASSERT_EQ(acct.trades, tape.trades.size());
  EXPECT_EQ(static_cast<i128>(led.rows.back().X), acct.wealth());
  EXPECT_EQ(static_cast<i128>(led.rows.back().L), acct.L);

  // F, T, A re-summed from the replayed series.
  i128 F = 0, T = 0, A = 0, L = 0;
  for (std::size_t i = 0; i < acct.trades; ++i) {
    const i128 next = i + 1 < acct.trades ? acct.mids[i + 1] : acct.end_mid();
    const i128 dp = next - acct.mids[i];
    F += L * dp;
    T += acct.halfs[i] * (acct.dLs[i] < 0 ? -acct.dLs[i] : acct.dLs[i]);
    A += dp * acct.dLs[i];
    L += acct.dLs[i];
  }
  EXPECT_EQ(static_cast<i128>(led.rows.back().F), F);
  EXPECT_EQ(static_cast<i128>(led.rows.back().T), T);
  EXPECT_EQ(static_cast<i128>(led.rows.back().A), A);
}

TEST(Ledger, ZeroSumBetweenSides) {
  const auto tape = sim_tape(4, 500);
  const auto p = run_ledger(tape, Perspective::AggregatePassive);
  const auto a = run_ledger(tape, Perspective::AggregateActive);
  for (std::size_t i = 0; i + 1 < p.rows.size(); ++i) {
    const auto dKp = p.rows[i + 1].K - p.rows[i].K;
    const auto dKa = a.rows[i + 1].K - a.rows[i].K;
    const auto dLp = p.rows[i + 1].L - p.rows[i].L;
    const auto dLa = a.rows[i + 1].L - a.rows[i].L;
    ASSERT_EQ(dKp + dKa, 0);
    ASSERT_EQ(dLp + dLa, 0);
  }
}

TEST(Ledger, VolumeScaling) {
  auto tape = sim_tape(8, 400);
  const auto base = decompose(tape);
  for (auto& t : tape.trades) {
    t.volume *= 3;
    t.notional *= 3;
    t.cost *= 3;
  }
  const auto scaled = decompose(tape);
  for (std::size_t i = 0; i < base.frictionless.size(); ++i) {
    ASSERT_EQ(scaled.frictionless[i], 3 * base.frictionless[i]);
    ASSERT_EQ(scaled.transaction_cost[i], 3 * base.transaction_cost[i]);
    ASSERT_EQ(scaled.adverse_selection[i], 3 * base.adverse_selection[i]);
  }
}

TEST(WealthModels, FlatMidHasNoFrictionlessGain) {
  const auto tape = sim_tape(2, 300, 0.0, 0.0);
  for (auto v : wealth_model_series(tape, WealthModel::Frictionless)) ASSERT_EQ(v, 0);
  const auto exact = wealth_model_series(tape, WealthModel::Complete);
  EXPECT_EQ(exact, wealth_model_series(tape, WealthModel::WithTransactionCosts));
}

TEST(WealthModels, OrderingOnAdverseTape) {
  const auto tape = sim_tape(5, 2000, 0.6, 0.2);
  const auto f = wealth_model_series(tape, WealthModel::Frictionless).back();
  const auto w = wealth_model_series(tape, WealthModel::WithTransactionCosts).back();
  const auto c = wealth_model_series(tape, WealthModel::Complete).back();
  const auto d = decompose(tape);
  ASSERT_LT(d.adverse_selection.back(), 0);
  ASSERT_GT(d.transaction_cost.back(), 0);
  EXPECT_EQ(c - f, d.transaction_cost.back() + d.adverse_selection.back());
  EXPECT_LT(c, w);
  // Informed flow at this rate costs the passive side more than it earns.
  EXPECT_LT(c, f);
  EXPECT_EQ(c, run_ledger(tape).rows.back().X);
}

TEST(Table2, Definitions) {
  EXPECT_FALSE(table2_metrics(SymbolTape{}).relative_error.has_value());
  EXPECT_FALSE(table2_metrics(SymbolTape{}).friction_ratio.has_value());

  const auto tape = sim_tape(6, 2000);
  const auto m = table2_metrics(tape);
  const auto led = run_ledger(tape);
  const auto& last = led.rows.back();
  ASSERT_TRUE(m.friction_ratio && m.relative_error);
  EXPECT_DOUBLE_EQ(*m.friction_ratio, std::abs(static_cast<double>(last.A)) / static_cast<double>(last.T));
  EXPECT_EQ(m.net_pnl, last.X);
  EXPECT_DOUBLE_EQ(*m.relative_error,
                   std::abs(static_cast<double>(last.F - last.X)) / std::abs(static_cast<double>(last.X)));
}

TEST(Table2, NoiseOnlyFrictionRatioIsSmall) {
  const auto tape = sim_tape(9, 20000, 0.0, 0.2);
  const auto m = table2_metrics(tape);
  ASSERT_TRUE(m.friction_ratio);
  EXPECT_LT(*m.friction_ratio, 0.05);
}
