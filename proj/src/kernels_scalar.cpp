// SPDX-License-Identifier: Apache-2.0
#include "tclaw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_common.hpp"

namespace tclaw::kernels {
namespace {

using detail::LaneAcc;
using detail::neumaier;

void lift_row_scalar(const double* u, std::size_t n, double lo, double hi,
                     double inv_dxi, bool positive, double* out) {
  if (positive) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = u[i];
      out[i] = (v >= hi) ? 1.0 : ((v <= lo) ? 0.0 : (v - lo) * inv_dxi);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = u[i];
      out[i] = (v <= lo) ? -1.0 : ((v >= hi) ? 0.0 : (v - hi) * inv_dxi);
    }
  }
}

void combine2_scalar(const double* p, const double* q, double a, double b,
                     std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * p[i] + b * q[i];
}

void acc_scaled_scalar(double* sum, double* carry, const double* row,
                       double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) neumaier(sum[i], carry[i], scale * row[i]);
}

void defect_step_scalar(const double* prev, const double* mf, const double* f,
                        double scale, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = prev[i] + scale * (mf[i] - f[i]);
}

double sum_scalar(const double* x, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (int k = 0; k < 4; ++k) neumaier(acc.s[k], acc.c[k], x[i + k]);
  return detail::finish(acc, x + n4, n - n4, detail::map_id);
}

double sum_abs_scalar(const double* x, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (int k = 0; k < 4; ++k) neumaier(acc.s[k], acc.c[k], std::abs(x[i + k]));
  return detail::finish(acc, x + n4, n - n4, detail::map_abs);
}

double sum_sq_scalar(const double* x, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (int k = 0; k < 4; ++k)
      neumaier(acc.s[k], acc.c[k], x[i + k] * x[i + k]);
  return detail::finish(acc, x + n4, n - n4, detail::map_sq);
}

double sum_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (int k = 0; k < 4; ++k)
      neumaier(acc.s[k], acc.c[k], std::abs(x[i + k] - y[i + k]));
  double st = 0.0, ct = 0.0;
  for (std::size_t i = n4; i < n; ++i) neumaier(st, ct, std::abs(x[i] - y[i]));
  const double S = (acc.s[0] + acc.s[1]) + (acc.s[2] + acc.s[3]);
  const double C = (acc.c[0] + acc.c[1]) + (acc.c[2] + acc.c[3]);
  return S + (C + (st + ct));
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (int k = 0; k < 4; ++k) m[k] = std::max(m[k], std::abs(x[i + k]));
  double r = std::max(std::max(m[0], m[1]), std::max(m[2], m[3]));
  for (std::size_t i = n4; i < n; ++i) r = std::max(r, std::abs(x[i]));
  return r;
}

void minmax_scalar(const double* x, std::size_t n, double* lo, double* hi) {
  double mn[4], mx[4];
  for (int k = 0; k < 4; ++k) {
    mn[k] = std::numeric_limits<double>::infinity();
    mx[k] = -std::numeric_limits<double>::infinity();
  }
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (int k = 0; k < 4; ++k) {
      mn[k] = std::min(mn[k], x[i + k]);
      mx[k] = std::max(mx[k], x[i + k]);
    }
  double lo_ = std::min(std::min(mn[0], mn[1]), std::min(mn[2], mn[3]));
  double hi_ = std::max(std::max(mx[0], mx[1]), std::max(mx[2], mx[3]));
  for (std::size_t i = n4; i < n; ++i) {
    lo_ = std::min(lo_, x[i]);
    hi_ = std::max(hi_, x[i]);
  }
  *lo = lo_;
  *hi = hi_;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops = {
      "scalar",         lift_row_scalar, combine2_scalar,
      acc_scaled_scalar, defect_step_scalar, sum_scalar,
      sum_abs_scalar,   sum_sq_scalar,   sum_abs_diff_scalar,
      max_abs_scalar,   minmax_scalar,
  };
  return ops;
}

}  // namespace tclaw::kernels
