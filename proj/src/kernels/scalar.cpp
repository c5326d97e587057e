#include <cmath>

#include "mlob/kernels.hpp"

namespace mlob::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double abs_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
  return s;
}

CovariationSums covariation(const double* x, const double* y, std::size_t n) {
  CovariationSums c;
  for (std::size_t i = 0; i < n; ++i) c.cross += x[i] * y[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lead = x[i] * y[i + 1];
    const double own = x[i] * y[i];
    c.lead_sq += lead * lead;
    c.own_sq += own * own;
    c.lag_cross += own * (x[i + 1] * y[i + 1]);
  }
  return c;
}

Moments moments(const double* x, const double* y, std::size_t n) {
  Moments m;
  m.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    m.sx += x[i];
    m.sy += y[i];
    m.sxx += x[i] * x[i];
    m.syy += y[i] * y[i];
    m.sxy += x[i] * y[i];
  }
  return m;
}

}  // namespace mlob::kernels::scalar
