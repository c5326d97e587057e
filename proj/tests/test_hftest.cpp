#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mlob/hftest.hpp"
#include "mlob/limits.hpp"
#include "mlob/random.hpp"
#include "mlob/simgen.hpp"
#include "mlob/stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mlob;
using support::code_of;

namespace {

// V = N * sum over interior n of the printed (or symmetric) terms, evaluated directly.
double v_direct(const std::vector<double>& dp, const std::vector<double>& dL, bool printed) {
  double s = 0;
  for (std::size_t n = 0; n + 1 < dp.size(); ++n) {
    const double sq = printed ? dp[n] * dL[n + 1] : dp[n] * dL[n];
    s += sq * sq + dp[n] * dL[n] * dp[n + 1] * dL[n + 1];
  }
  return static_cast<double>(dp.size() + 1) * s;
}

Increments diffusion(double rho, std::size_t n, std::uint64_t seed) {
  SimConfig cfg;
  cfg.target_rho = rho;
  cfg.n_trades = n;
  cfg.seed = seed;
  return generate_diffusion_tape(cfg);
}

}  // namespace

TEST(Buckets, HandExample) {
  const std::vector<double> dp{1, -1, 1}, dL{-1, 1, -1};
  const auto b = bucket_stats(dp, dL, 1);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].N, 4u);
  EXPECT_DOUBLE_EQ(b[0].C, -3.0);
  EXPECT_DOUBLE_EQ(b[0].V, 16.0);
  const auto r = rejection_probabilities(b);
  EXPECT_DOUBLE_EQ(r.buckets[0].Z, -1.5);
  EXPECT_NEAR(r.buckets[0].pi, oracle::normal_cdf(1.5), 1e-12);
}

TEST(Buckets, DirectVarianceForms) {
  const auto inc = diffusion(-0.3, 300, 4);
  for (bool printed : {true, false}) {
    const auto b = bucket_stats(inc.dp, inc.dL, 1, printed ? VarianceForm::AsPrinted : VarianceForm::Symmetric);
    EXPECT_NEAR(b[0].V, v_direct(inc.dp, inc.dL, printed), 1e-9 * std::abs(b[0].V));
  }
}

TEST(Buckets, RemainderGoesToLastBucket) {
  std::vector<double> dp(26, 1.0), dL(26, 1.0);
  const auto b = bucket_stats(dp, dL, 4);
  EXPECT_EQ(b[0].increments(), 6u);
  EXPECT_EQ(b[3].increments(), 8u);
  EXPECT_EQ(b[3].end, 26u);
  EXPECT_EQ(code_of([&] { (void)bucket_stats(dp, dL, 9); }), Errc::BucketTooSmall);
}

TEST(Buckets, ZeroInventoryIsDegenerate) {
  std::vector<double> dp{1, 2, 3, 4}, dL(4, 0.0);
  const auto b = bucket_stats(dp, dL, 1);
  EXPECT_EQ(b[0].C, 0.0);
  EXPECT_EQ(b[0].V, 0.0);
  EXPECT_EQ(code_of([&] { (void)rejection_probabilities(b); }), Errc::DegenerateVariance);
}

TEST(Rejection, SymmetryAndProduct) {
  std::vector<BucketStats> zero{{0, 0, 3, 0.0, 1.0, 4}};
  EXPECT_DOUBLE_EQ(rejection_probabilities(zero).overall, 0.5);

  // C / sqrt(V / N) = -3 with V = N = 4, C = -3.
  std::vector<BucketStats> three(3, BucketStats{0, 0, 3, -3.0, 4.0, 4});
  const double expected = std::pow(oracle::normal_cdf(3.0), 3);
  EXPECT_NEAR(rejection_probabilities(three).overall, expected, 1e-10);
  EXPECT_NEAR(expected, 0.99596, 5e-6);
}

TEST(Rejection, DegenerateBucketExcluded) {
  std::vector<BucketStats> b{{0, 0, 3, -3.0, 4.0, 4}, {1, 3, 6, 0.0, 0.0, 4}};
  const auto r = rejection_probabilities(b);
  EXPECT_EQ(r.excluded, 1u);
  EXPECT_TRUE(r.buckets[1].degenerate);
  EXPECT_NEAR(r.overall, oracle::normal_cdf(3.0), 1e-10);
}

TEST(Rejection, MonotoneAndOrderInvariant) {
  std::vector<BucketStats> b;
  for (int k = 0; k < 6; ++k) b.push_back({static_cast<std::size_t>(k), 0, 3, -0.5 * k + 1.0, 4.0, 4});
  const auto r = rejection_probabilities(b);
  for (std::size_t k = 1; k < r.buckets.size(); ++k) EXPECT_GT(r.buckets[k].pi, r.buckets[k - 1].pi);
  std::reverse(b.begin(), b.end());
  EXPECT_NEAR(rejection_probabilities(b).overall, r.overall, 1e-15);
}

TEST(Correlation, ExactAndSampled) {
  std::vector<double> x{1, 2, -1, 4, 0.5}, y;
  for (double v : x) y.push_back(-v);
  EXPECT_DOUBLE_EQ(sample_correlation(x, y), -1.0);
  EXPECT_EQ(code_of([] { (void)sample_correlation(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}); }),
            Errc::ZeroVariance);

  const auto ind = diffusion(0.0, 10000, 5);
  EXPECT_LT(std::abs(sample_correlation(ind.dp, ind.dL)), 3.0 / std::sqrt(10000.0));
  const auto neg = diffusion(-0.3, 10000, 6);
  EXPECT_NEAR(sample_correlation(neg.dp, neg.dL), -0.3, 0.05);
}

TEST(Clt, NullStatisticRoughlyStandardNormal) {
  std::vector<double> z;
  for (std::uint64_t r = 0; r < 2000; ++r) {
    const auto inc = diffusion(0.0, 1024, stream_seed(99, r));
    z.push_back(rejection_probabilities(bucket_stats(inc.dp, inc.dL, 1)).buckets[0].Z);
  }
  EXPECT_LT(ks_distance_normal(z), 0.04);
}

TEST(Clt, NegativeCorrelationDrivesZDown) {
  double previous = 0.0;
  for (std::size_t n : {256, 1024, 4096}) {
    std::vector<double> z;
    for (std::uint64_t r = 0; r < 100; ++r) {
      const auto inc = diffusion(-0.3, n, stream_seed(n, r));
      z.push_back(rejection_probabilities(bucket_stats(inc.dp, inc.dL, 1)).buckets[0].Z);
    }
    const double med = quantile(z, 0.5);
    EXPECT_LT(med, previous);
    previous = med;
  }
}

TEST(Stats, KsAgainstOracleCdf) {
  EXPECT_NEAR(normal_cdf(1.0), oracle::normal_cdf(1.0), 1e-12);
  EXPECT_NEAR(normal_cdf(-2.5), oracle::normal_cdf(-2.5), 1e-12);
  // A degenerate sample at 0 sits half a unit from N(0,1).
  EXPECT_NEAR(ks_distance_normal(std::vector<double>(10, 0.0)), 0.5, 1e-12);
}
