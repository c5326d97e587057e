// Compiled with -mavx2 -mfma; only reached through the dispatcher after a CPU check.

#include <immintrin.h>

#include <cmath>

#include "mlob/kernels.hpp"

namespace mlob::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double abs_sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
    acc1 = _mm256_add_pd(acc1, abs_pd(_mm256_loadu_pd(x + i + 4)));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::abs(x[i]);
  return s;
}

CovariationSums covariation(const double* x, const double* y, std::size_t n) {
  __m256d cross = _mm256_setzero_pd();
  __m256d lead_sq = _mm256_setzero_pd();
  __m256d own_sq = _mm256_setzero_pd();
  __m256d lag = _mm256_setzero_pd();
  std::size_t i = 0;
  // Lanes i..i+3 need the successors i+1..i+4, all < n.
  for (; i + 5 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    const __m256d xn = _mm256_loadu_pd(x + i + 1);
    const __m256d yn = _mm256_loadu_pd(y + i + 1);
    const __m256d own = _mm256_mul_pd(xi, yi);
    const __m256d lead = _mm256_mul_pd(xi, yn);
    cross = _mm256_add_pd(cross, own);
    lead_sq = _mm256_fmadd_pd(lead, lead, lead_sq);
    own_sq = _mm256_fmadd_pd(own, own, own_sq);
    lag = _mm256_fmadd_pd(own, _mm256_mul_pd(xn, yn), lag);
  }
  CovariationSums c;
  c.cross = hsum(cross);
  c.lead_sq = hsum(lead_sq);
  c.own_sq = hsum(own_sq);
  c.lag_cross = hsum(lag);
  for (; i < n; ++i) {
    const double own = x[i] * y[i];
    c.cross += own;
    if (i + 1 < n) {
      const double lead = x[i] * y[i + 1];
      c.lead_sq += lead * lead;
      c.own_sq += own * own;
      c.lag_cross += own * (x[i + 1] * y[i + 1]);
    }
  }
  return c;
}

Moments moments(const double* x, const double* y, std::size_t n) {
  __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd();
  __m256d sxx = _mm256_setzero_pd(), syy = _mm256_setzero_pd(), sxy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    sx = _mm256_add_pd(sx, xv);
    sy = _mm256_add_pd(sy, yv);
    sxx = _mm256_fmadd_pd(xv, xv, sxx);
    syy = _mm256_fmadd_pd(yv, yv, syy);
    sxy = _mm256_fmadd_pd(xv, yv, sxy);
  }
  Moments m;
  m.n = n;
  m.sx = hsum(sx);
  m.sy = hsum(sy);
  m.sxx = hsum(sxx);
  m.syy = hsum(syy);
  m.sxy = hsum(sxy);
  for (; i < n; ++i) {
    m.sx += x[i];
    m.sy += y[i];
    m.sxx += x[i] * x[i];
    m.syy += y[i] * y[i];
    m.sxy += x[i] * y[i];
  }
  return m;
}

}  // namespace mlob::kernels::avx2
