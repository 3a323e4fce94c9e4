// SPDX-License-Identifier: Apache-2.0
#include "tclaw/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tclaw {

CharacteristicFlow::CharacteristicFlow(const InhomogeneousFlux& flux,
                                       const DriverPath& z, double t1,
                                       int substeps_per_segment)
    : flux_(&flux),
      reversed_(reverse(z, t1)),
      t1_(t1),
      substeps_(substeps_per_segment) {
  if (substeps_ < 1)
    throw std::invalid_argument("characteristics: substeps must be >= 1");
  const std::size_t nseg = reversed_.n_samples() - 1;
  slopes_.resize(nseg * flux.dimension);
  for (std::size_t s = 0; s < nseg; ++s) {
    const double h = reversed_.times[s + 1] - reversed_.times[s];
    for (int d = 0; d < flux.dimension; ++d)
      slopes_[s * flux.dimension + d] =
          (reversed_.value(s + 1, d) - reversed_.value(s, d)) / h;
  }
}

namespace {

struct State {
  double x[2];
  double xi;
};

// Right-hand side scaled by the segment slope sigma:
//   dx_i/ds = a_i(x, xi) sigma_i,   dxi/ds = -sum_i b_i(x, xi) sigma_i.
inline State rhs(const InhomogeneousFlux& flux, const double* sigma,
                 const State& y) {
  State d{{0.0, 0.0}, 0.0};
  double bsum = 0.0;
  for (int i = 0; i < flux.dimension; ++i) {
    d.x[i] = flux.a[i](y.x, y.xi) * sigma[i];
    bsum += flux.b[i](y.x, y.xi) * sigma[i];
  }
  d.xi = -bsum;
  return d;
}

inline State axpy(const State& y, double h, const State& d) {
  return {{y.x[0] + h * d.x[0], y.x[1] + h * d.x[1]}, y.xi + h * d.xi};
}

State rk4_step(const InhomogeneousFlux& flux, const double* sigma,
               const State& y, double h) {
  const State k1 = rhs(flux, sigma, y);
  const State k2 = rhs(flux, sigma, axpy(y, 0.5 * h, k1));
  const State k3 = rhs(flux, sigma, axpy(y, 0.5 * h, k2));
  const State k4 = rhs(flux, sigma, axpy(y, h, k3));
  State out = y;
  out.x[0] += (h / 6.0) * (k1.x[0] + 2.0 * k2.x[0] + 2.0 * k3.x[0] + k4.x[0]);
  out.x[1] += (h / 6.0) * (k1.x[1] + 2.0 * k2.x[1] + 2.0 * k3.x[1] + k4.x[1]);
  out.xi += (h / 6.0) * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi);
  return out;
}

}  // namespace

PhasePoint CharacteristicFlow::integrate(const PhasePoint& p, double s_from,
                                         double s_to) const {
  State y{{p.x[0], p.x[1]}, p.xi};
  const auto& times = reversed_.times;
  const long nseg = static_cast<long>(times.size()) - 1;

  auto step = [&](long seg, double a, double b) {
    const double* sigma = slopes_.data() + seg * flux_->dimension;
    const double h = (b - a) / substeps_;
    for (int i = 0; i < substeps_; ++i) y = rk4_step(*flux_, sigma, y, h);
    if (!std::isfinite(y.x[0]) || !std::isfinite(y.x[1]) ||
        !std::isfinite(y.xi))
      throw std::runtime_error(
          "characteristics: state diverged at reversed time s=" +
          std::to_string(b) + " (t=" + std::to_string(t1_ - b) + ")");
  };

  double s = s_from;
  long seg = static_cast<long>(reversed_.segment_of(s));
  if (s_to > s) {
    while (s < s_to) {
      if (seg < nseg - 1 && s >= times[seg + 1]) {
        ++seg;
        continue;
      }
      const double s_next = std::min(times[seg + 1], s_to);
      if (!(s_next > s)) break;
      step(seg, s, s_next);
      s = s_next;
    }
  } else if (s_to < s) {
    while (s > s_to) {
      if (seg > 0 && s <= times[seg]) {
        --seg;
        continue;
      }
      const double s_next = std::max(times[seg], s_to);
      if (!(s_next < s)) break;
      step(seg, s, s_next);
      s = s_next;
    }
  }
  return {{y.x[0], y.x[1]}, y.xi};
}

PhasePoint CharacteristicFlow::trace(const PhasePoint& start,
                                     double duration) const {
  if (duration < 0.0 || duration > reversed_.duration() + 1e-12)
    throw std::out_of_range("characteristics: duration outside [0, t1]");
  if (start.xi == 0.0) {
    // b(x, 0) = 0 and a-transport keeps xi frozen: (x, 0) is invariant in xi.
    PhasePoint p = integrate(start, 0.0, std::min(duration, reversed_.duration()));
    p.xi = 0.0;
    return p;
  }
  return integrate(start, 0.0, std::min(duration, reversed_.duration()));
}

PhasePoint CharacteristicFlow::trace_inverse(const PhasePoint& end,
                                             double duration) const {
  if (duration < 0.0 || duration > reversed_.duration() + 1e-12)
    throw std::out_of_range("characteristics: duration outside [0, t1]");
  PhasePoint p = integrate(end, std::min(duration, reversed_.duration()), 0.0);
  if (end.xi == 0.0) p.xi = 0.0;
  return p;
}

PhasePoint solve_characteristics(const InhomogeneousFlux& flux,
                                 const DriverPath& z, std::span<const double> x,
                                 double xi, double t1, double t,
                                 int substeps_per_segment) {
  if (t < 0.0 || t > t1 + 1e-12)
    throw std::out_of_range("solve_characteristics: need 0 <= t <= t1");
  CharacteristicFlow flow(flux, z, t1, substeps_per_segment);
  PhasePoint p;
  for (std::size_t i = 0; i < x.size() && i < 2; ++i) p.x[i] = x[i];
  p.xi = xi;
  return flow.trace(p, t1 - t);
}

FlowDiagnostics flow_diagnostics(const CharacteristicFlow& flow,
                                 std::span<const PhasePoint> samples,
                                 double duration) {
  FlowDiagnostics diag;
  const double h = 1e-5;
  const int n = flow.dimension() + 1;

  for (const PhasePoint& p : samples) {
    // Jacobian of (x, xi) -> (X, Xi) by central differences.
    double J[3][3] = {{0}};
    for (int c = 0; c < n; ++c) {
      PhasePoint pp = p, pm = p;
      if (c < flow.dimension()) {
        pp.x[c] += h;
        pm.x[c] -= h;
      } else {
        pp.xi += h;
        pm.xi -= h;
      }
      const PhasePoint fp = flow.trace(pp, duration);
      const PhasePoint fm = flow.trace(pm, duration);
      for (int r = 0; r < n; ++r) {
        const double vp = (r < flow.dimension()) ? fp.x[r] : fp.xi;
        const double vm = (r < flow.dimension()) ? fm.x[r] : fm.xi;
        J[r][c] = (vp - vm) / (2.0 * h);
      }
    }
    double det;
    if (n == 2) {
      det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    } else {
      det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
            J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
            J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    }
    diag.max_det_jacobian_dev =
        std::max(diag.max_det_jacobian_dev, std::abs(det - 1.0));

    const PhasePoint fwd = flow.trace(p, duration);
    double viol = 0.0;
    if (p.xi > 0.0)
      viol = std::max(0.0, -fwd.xi);
    else if (p.xi < 0.0)
      viol = std::max(0.0, fwd.xi);
    else
      viol = std::abs(fwd.xi);
    diag.max_sign_violation = std::max(diag.max_sign_violation, viol);

    const PhasePoint back = flow.trace_inverse(fwd, duration);
    double defect = std::abs(back.xi - p.xi);
    for (int i = 0; i < flow.dimension(); ++i)
      defect = std::max(defect, std::abs(back.x[i] - p.x[i]));
    diag.max_inverse_defect = std::max(diag.max_inverse_defect, defect);
  }
  return diag;
}

}  // namespace tclaw
