// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "tclaw/driver_path.hpp"
#include "tclaw/flux.hpp"

namespace tclaw {

/// Phase-space state of the characteristic system; x is padded to length 2.
struct PhasePoint {
  std::array<double, 2> x{0.0, 0.0};
  double xi = 0.0;
};

/// Numerical flow of the Hamiltonian system
///   dX = a(X, Xi) dz^{t1},   dXi = -b(X, Xi) dz^{t1}
/// driven by the time-reversed path z^{t1}(s) = z(t1 - s). Between path
/// samples the driver is linear, so the system is an autonomous ODE scaled by
/// the segment slope; it is integrated with classical RK4 using
/// substeps_per_segment steps per sample interval (steps never cross a
/// sample). The inverse map is obtained by walking the same segments
/// backwards, which composes to the identity up to the integrator tolerance.
class CharacteristicFlow {
 public:
  CharacteristicFlow(const InhomogeneousFlux& flux, const DriverPath& z,
                     double t1, int substeps_per_segment = 8);

  double t1() const { return t1_; }
  int dimension() const { return flux_->dimension; }

  /// Backward value (X, Xi)_{(x, xi, t1)}(t1 - t); duration = t1 - t >= 0.
  PhasePoint trace(const PhasePoint& start, double duration) const;
  /// Inverse of trace over the same duration (the map (Y, zeta)).
  PhasePoint trace_inverse(const PhasePoint& end, double duration) const;

 private:
  PhasePoint integrate(const PhasePoint& p, double s_from, double s_to) const;

  const InhomogeneousFlux* flux_;
  DriverPath reversed_;
  std::vector<double> slopes_;  // per segment, dim entries
  double t1_;
  int substeps_;
};

/// Spec'd entry point: backward characteristics from (x, xi) at final time t1
/// down to time t. Throws on non-finite states, reporting the divergence time.
PhasePoint solve_characteristics(const InhomogeneousFlux& flux,
                                 const DriverPath& z, std::span<const double> x,
                                 double xi, double t1, double t,
                                 int substeps_per_segment = 8);

struct FlowDiagnostics {
  double max_det_jacobian_dev = 0.0;  // max |det J - 1|
  double max_sign_violation = 0.0;    // how far Xi crosses sgn(xi)
  double max_inverse_defect = 0.0;    // forward(backward(p)) vs p, sup norm
};

/// Central finite-difference Jacobian (spacing 1e-5) of the flow over the
/// sample set, plus sign and inverse-composition checks. Advisory only.
FlowDiagnostics flow_diagnostics(const CharacteristicFlow& flow,
                                 std::span<const PhasePoint> samples,
                                 double duration);

}  // namespace tclaw
