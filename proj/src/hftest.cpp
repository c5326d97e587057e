#include "mlob/hftest.hpp"

#include <algorithm>
#include <cmath>

#include "mlob/error.hpp"
#include "mlob/kernels.hpp"
#include "mlob/ledger.hpp"
#include "mlob/stats.hpp"

namespace mlob {

Increments increments_of(const SymbolTape& tape, bool drop_last_trade) {
  const auto dps = tape.mid_increments();
  std::size_t n = tape.trades.size();
  if (drop_last_trade && n > 0) --n;
  Increments inc;
  inc.dp.resize(n);
  inc.dL.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inc.dp[i] = HalfPrice{dps[i]}.currency();
    inc.dL[i] = static_cast<double>(tape.trades[i].delta_L_passive());
  }
  return inc;
}

std::vector<BucketStats> bucket_stats(std::span<const double> dp, std::span<const double> dL,
                                      std::size_t buckets, VarianceForm form) {
  if (dp.size() != dL.size()) fail(Errc::InvalidParams, "increment series differ in length");
  if (buckets == 0) fail(Errc::InvalidParams, "bucket count must be positive");
  const std::size_t per = dp.size() / buckets;
  if (per < 3)
    fail(Errc::BucketTooSmall, std::to_string(dp.size()) + " increments cannot fill " + std::to_string(buckets) +
                                   " buckets of at least 3");
  std::vector<BucketStats> out(buckets);
  for (std::size_t k = 0; k < buckets; ++k) {
    auto& b = out[k];
    b.index = k;
    b.begin = k * per;
    b.end = k + 1 == buckets ? dp.size() : (k + 1) * per;
    b.N = b.increments() + 1;
    const auto sums = kernels::covariation(dp.subspan(b.begin, b.increments()), dL.subspan(b.begin, b.increments()));
    b.C = sums.cross;
    const double square = form == VarianceForm::AsPrinted ? sums.lead_sq : sums.own_sq;
    b.V = static_cast<double>(b.N) * (square + sums.lag_cross);
  }
  return out;
}

RejectionReport rejection_probabilities(std::span<const BucketStats> stats) {
  RejectionReport r;
  r.overall = 1.0;
  for (const auto& b : stats) {
    BucketTestResult t;
    t.index = b.index;
    t.C = b.C;
    t.V = b.V;
    if (!(b.V > 0.0)) {
      t.degenerate = true;
      t.Z = std::nan("");
      t.pi = std::nan("");
      ++r.excluded;
    } else {
      t.Z = b.C / std::sqrt(b.V / static_cast<double>(b.N));
      t.pi = normal_cdf(-t.Z);
      r.overall *= t.pi;
    }
    r.buckets.push_back(t);
  }
  if (r.excluded == stats.size()) fail(Errc::DegenerateVariance, "no bucket has a positive variance estimate");
  return r;
}

RejectionReport adverse_selection_test(std::span<const double> dp, std::span<const double> dL, std::size_t buckets,
                                       VarianceForm form) {
  const auto stats = bucket_stats(dp, dL, buckets, form);
  return rejection_probabilities(stats);
}

double sample_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) fail(Errc::InsufficientData, "correlation needs two paired points");
  const auto m = kernels::moments(x, y);
  const double n = static_cast<double>(m.n);
  const double cxx = m.sxx - m.sx * m.sx / n;
  const double cyy = m.syy - m.sy * m.sy / n;
  const double cxy = m.sxy - m.sx * m.sy / n;
  if (!(cxx > 0.0) || !(cyy > 0.0)) fail(Errc::ZeroVariance, "constant series");
  return std::clamp(cxy / std::sqrt(cxx * cyy), -1.0, 1.0);
}

}  // namespace mlob
