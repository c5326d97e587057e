#pragma once

// Bucketed test for instantaneous adverse selection: the realized covariation
// of price and passive inventory increments, normalized by a
// quarticity-type variance estimator, is asymptotically standard normal.
// Large negative statistics reject "the correlation is positive somewhere".

#include <cstddef>
#include <span>
#include <vector>

#include "mlob/trades.hpp"

namespace mlob {

enum class VarianceForm {
  AsPrinted,  // sum (dp_n dL_{n+1})^2 + dp_n dL_n dp_{n+1} dL_{n+1}
  Symmetric,  // sum (dp_n dL_n)^2 + dp_n dL_n dp_{n+1} dL_{n+1}
};

struct Increments {
  std::vector<double> dp;  // mid increments, currency
  std::vector<double> dL;  // passive inventory increments, shares
};

/// (dp_n, dL_n) for n = 1..N of a trade tape, passive sign.
[[nodiscard]] Increments increments_of(const SymbolTape& tape, bool drop_last_trade = false);

struct BucketStats {
  std::size_t index = 0;
  std::size_t begin = 0;  // increment range [begin, end)
  std::size_t end = 0;
  double C = 0.0;
  double V = 0.0;
  /// Grid points spanned by the bucket (increments + 1); plays the role of N
  /// in V = N * sum(...).
  std::size_t N = 0;

  [[nodiscard]] std::size_t increments() const noexcept { return end - begin; }
};

/// Equal-count buckets on the trade clock; the remainder goes to the last one.
/// Throws Error{BucketTooSmall} if any bucket has fewer than 3 increments.
[[nodiscard]] std::vector<BucketStats> bucket_stats(std::span<const double> dp, std::span<const double> dL,
                                                    std::size_t buckets,
                                                    VarianceForm form = VarianceForm::AsPrinted);

struct BucketTestResult {
  std::size_t index = 0;
  double C = 0.0;
  double V = 0.0;
  double Z = 0.0;   // C / sqrt(V / N)
  double pi = 0.0;  // Phi(-Z)
  bool degenerate = false;
};

struct RejectionReport {
  std::vector<BucketTestResult> buckets;
  double overall = 0.0;  // product of pi over non-degenerate buckets
  std::size_t excluded = 0;
};

/// Throws Error{DegenerateVariance} when no bucket has V > 0.
[[nodiscard]] RejectionReport rejection_probabilities(std::span<const BucketStats> stats);

[[nodiscard]] RejectionReport adverse_selection_test(std::span<const double> dp, std::span<const double> dL,
                                                     std::size_t buckets,
                                                     VarianceForm form = VarianceForm::AsPrinted);

/// Pearson correlation. Throws Error{ZeroVariance | InsufficientData}.
[[nodiscard]] double sample_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace mlob
