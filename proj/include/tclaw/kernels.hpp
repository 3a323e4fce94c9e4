// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace tclaw::kernels {

/// Table of the arithmetic inner-loop kernels. Every entry has a scalar
/// reference implementation and, on x86-64 with AVX2, a vectorized variant.
/// The two are bit-identical by construction:
///   - element-wise kernels perform the same operation sequence per element,
///   - reductions use four independent accumulator lanes (element i feeds
///     lane i%4), a pinned lane-combination order, and a sequential tail,
///     so a 4-wide vector backend reproduces the scalar result exactly.
/// Summing reductions are Neumaier-compensated per lane.
struct Ops {
  const char* name;

  /// Cell averages of the Maxwellian chi(u[i], .) over one velocity cell
  /// [lo, hi] that does not straddle 0. `positive` selects the xi > 0 branch.
  /// inv_dxi must equal 1.0 / (hi - lo) as provided by the velocity grid.
  void (*lift_row)(const double* u, std::size_t n, double lo, double hi,
                   double inv_dxi, bool positive, double* out);

  /// out[i] = a*p[i] + b*q[i]
  void (*combine2)(const double* p, const double* q, double a, double b,
                   std::size_t n, double* out);

  /// Compensated element-wise accumulation: (sum[i], carry[i]) += scale*row[i]
  void (*acc_scaled)(double* sum, double* carry, const double* row,
                     double scale, std::size_t n);

  /// out[i] = prev[i] + scale*(mf[i] - f[i])
  void (*defect_step)(const double* prev, const double* mf, const double* f,
                      double scale, std::size_t n, double* out);

  double (*sum)(const double* x, std::size_t n);
  double (*sum_abs)(const double* x, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  double (*sum_abs_diff)(const double* x, const double* y, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  void (*minmax)(const double* x, std::size_t n, double* lo, double* hi);
};

/// Scalar reference kernels; always available.
const Ops& scalar();

/// AVX2 kernels, or nullptr when the build or the CPU lacks them.
const Ops* avx2();

/// The table selected at startup: AVX2 when the CPU supports it, otherwise
/// scalar. Overridable with TCLAW_SIMD=scalar|avx2|auto.
const Ops& active();

}  // namespace tclaw::kernels
