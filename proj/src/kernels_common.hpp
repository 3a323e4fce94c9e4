// SPDX-License-Identifier: Apache-2.0
// Shared pieces of the kernel implementations. The lane layout and the
// combination order defined here are part of the kernel contract: backends
// may vectorize the 4-lane main loop but must keep this exact arithmetic.
#pragma once

#include <cmath>
#include <cstddef>

namespace tclaw::kernels::detail {

struct LaneAcc {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  double c[4] = {0.0, 0.0, 0.0, 0.0};
};

// Branchless Neumaier update, mirrored exactly by the vector backends.
inline void neumaier(double& s, double& c, double v) {
  const double t = s + v;
  const double big = (std::abs(s) >= std::abs(v)) ? s : v;
  const double small = (std::abs(s) >= std::abs(v)) ? v : s;
  c += (big - t) + small;
  s = t;
}

// Pinned combination: lane sums, lane carries, then the sequential tail.
inline double finish(const LaneAcc& acc, const double* tail, std::size_t n_tail,
                     double (*map)(double)) {
  double st = 0.0, ct = 0.0;
  for (std::size_t i = 0; i < n_tail; ++i) neumaier(st, ct, map(tail[i]));
  const double S = (acc.s[0] + acc.s[1]) + (acc.s[2] + acc.s[3]);
  const double C = (acc.c[0] + acc.c[1]) + (acc.c[2] + acc.c[3]);
  return S + (C + (st + ct));
}

inline double map_id(double v) { return v; }
inline double map_abs(double v) { return std::abs(v); }
inline double map_sq(double v) { return v * v; }

}  // namespace tclaw::kernels::detail
