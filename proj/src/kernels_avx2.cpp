// SPDX-License-Identifier: Apache-2.0
// AVX2 variants of the inner-loop kernels. Compiled with -mavx2 only; the
// dispatcher guards execution behind a runtime CPU check. Arithmetic mirrors
// the scalar reference lane for lane (see kernels_common.hpp), so results are
// bit-identical. FMA is deliberately not used.
#include "tclaw/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_common.hpp"

namespace tclaw::kernels {
namespace {

using detail::LaneAcc;
using detail::neumaier;

inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// (s, c) += v, Neumaier, per lane.
inline void neumaier_pd(__m256d& s, __m256d& c, __m256d v) {
  const __m256d t = _mm256_add_pd(s, v);
  const __m256d m = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
  const __m256d big = _mm256_blendv_pd(v, s, m);
  const __m256d small = _mm256_blendv_pd(s, v, m);
  c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
  s = t;
}

inline void store_lanes(__m256d s, __m256d c, LaneAcc& acc) {
  _mm256_storeu_pd(acc.s, s);
  _mm256_storeu_pd(acc.c, c);
}

void lift_row_avx2(const double* u, std::size_t n, double lo, double hi,
                   double inv_dxi, bool positive, double* out) {
  const std::size_t n4 = n - n % 4;
  const __m256d lov = _mm256_set1_pd(lo);
  const __m256d hiv = _mm256_set1_pd(hi);
  const __m256d inv = _mm256_set1_pd(inv_dxi);
  if (positive) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
      const __m256d v = _mm256_loadu_pd(u + i);
      const __m256d frac = _mm256_mul_pd(_mm256_sub_pd(v, lov), inv);
      __m256d r = _mm256_blendv_pd(frac, zero,
                                   _mm256_cmp_pd(v, lov, _CMP_LE_OQ));
      r = _mm256_blendv_pd(r, one, _mm256_cmp_pd(v, hiv, _CMP_GE_OQ));
      _mm256_storeu_pd(out + i, r);
    }
    for (std::size_t i = n4; i < n; ++i) {
      const double v = u[i];
      out[i] = (v >= hi) ? 1.0 : ((v <= lo) ? 0.0 : (v - lo) * inv_dxi);
    }
  } else {
    const __m256d neg1 = _mm256_set1_pd(-1.0);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
      const __m256d v = _mm256_loadu_pd(u + i);
      const __m256d frac = _mm256_mul_pd(_mm256_sub_pd(v, hiv), inv);
      __m256d r = _mm256_blendv_pd(frac, zero,
                                   _mm256_cmp_pd(v, hiv, _CMP_GE_OQ));
      r = _mm256_blendv_pd(r, neg1, _mm256_cmp_pd(v, lov, _CMP_LE_OQ));
      _mm256_storeu_pd(out + i, r);
    }
    for (std::size_t i = n4; i < n; ++i) {
      const double v = u[i];
      out[i] = (v <= lo) ? -1.0 : ((v >= hi) ? 0.0 : (v - hi) * inv_dxi);
    }
  }
}

void combine2_avx2(const double* p, const double* q, double a, double b,
                   std::size_t n, double* out) {
  const std::size_t n4 = n - n % 4;
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(av, _mm256_loadu_pd(p + i)),
                                    _mm256_mul_pd(bv, _mm256_loadu_pd(q + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (std::size_t i = n4; i < n; ++i) out[i] = a * p[i] + b * q[i];
}

void acc_scaled_avx2(double* sum, double* carry, const double* row,
                     double scale, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  const __m256d sv = _mm256_set1_pd(scale);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d s = _mm256_loadu_pd(sum + i);
    __m256d c = _mm256_loadu_pd(carry + i);
    neumaier_pd(s, c, _mm256_mul_pd(sv, _mm256_loadu_pd(row + i)));
    _mm256_storeu_pd(sum + i, s);
    _mm256_storeu_pd(carry + i, c);
  }
  for (std::size_t i = n4; i < n; ++i)
    neumaier(sum[i], carry[i], scale * row[i]);
}

void defect_step_avx2(const double* prev, const double* mf, const double* f,
                      double scale, std::size_t n, double* out) {
  const std::size_t n4 = n - n % 4;
  const __m256d sv = _mm256_set1_pd(scale);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(mf + i),
                                    _mm256_loadu_pd(f + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(prev + i),
                                            _mm256_mul_pd(sv, d)));
  }
  for (std::size_t i = n4; i < n; ++i)
    out[i] = prev[i] + scale * (mf[i] - f[i]);
}

double sum_avx2(const double* x, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    neumaier_pd(s, c, _mm256_loadu_pd(x + i));
  store_lanes(s, c, acc);
  return detail::finish(acc, x + n4, n - n4, detail::map_id);
}

double sum_abs_avx2(const double* x, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    neumaier_pd(s, c, abs_pd(_mm256_loadu_pd(x + i)));
  store_lanes(s, c, acc);
  return detail::finish(acc, x + n4, n - n4, detail::map_abs);
}

double sum_sq_avx2(const double* x, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    neumaier_pd(s, c, _mm256_mul_pd(v, v));
  }
  store_lanes(s, c, acc);
  return detail::finish(acc, x + n4, n - n4, detail::map_sq);
}

double sum_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
  LaneAcc acc;
  const std::size_t n4 = n - n % 4;
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i),
                                    _mm256_loadu_pd(y + i));
    neumaier_pd(s, c, abs_pd(d));
  }
  store_lanes(s, c, acc);
  double st = 0.0, ct = 0.0;
  for (std::size_t i = n4; i < n; ++i) neumaier(st, ct, std::abs(x[i] - y[i]));
  const double S = (acc.s[0] + acc.s[1]) + (acc.s[2] + acc.s[3]);
  const double C = (acc.c[0] + acc.c[1]) + (acc.c[2] + acc.c[3]);
  return S + (C + (st + ct));
}

double max_abs_avx2(const double* x, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d mv = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    mv = _mm256_max_pd(mv, abs_pd(_mm256_loadu_pd(x + i)));
  double m[4];
  _mm256_storeu_pd(m, mv);
  double r = std::max(std::max(m[0], m[1]), std::max(m[2], m[3]));
  for (std::size_t i = n4; i < n; ++i) r = std::max(r, std::abs(x[i]));
  return r;
}

void minmax_avx2(const double* x, std::size_t n, double* lo, double* hi) {
  const std::size_t n4 = n - n % 4;
  __m256d mnv = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d mxv = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    mnv = _mm256_min_pd(mnv, v);
    mxv = _mm256_max_pd(mxv, v);
  }
  double mn[4], mx[4];
  _mm256_storeu_pd(mn, mnv);
  _mm256_storeu_pd(mx, mxv);
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

const Ops* avx2() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops = {
      "avx2",          lift_row_avx2, combine2_avx2,
      acc_scaled_avx2, defect_step_avx2, sum_avx2,
      sum_abs_avx2,    sum_sq_avx2,   sum_abs_diff_avx2,
      max_abs_avx2,    minmax_avx2,
  };
  return &ops;
}

}  // namespace tclaw::kernels

#endif  // __AVX2__
