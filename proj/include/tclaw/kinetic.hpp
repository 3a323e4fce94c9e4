// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tclaw/field.hpp"
#include "tclaw/grid.hpp"

namespace tclaw {

/// Equilibrium profile chi(u, xi): +1 on [0, u], -1 on [u, 0], 0 elsewhere
/// (closed intervals at both ends).
inline double maxwellian_value(double u, double xi) {
  if (xi >= 0.0 && xi <= u) return 1.0;
  if (xi <= 0.0 && xi >= u) return -1.0;
  return 0.0;
}

/// Exact integral of chi(u, .) over a velocity cell [xi_lo, xi_hi] that does
/// not straddle 0: the signed overlap length with [0, u] resp. [u, 0].
double chi_cell_integral(double u, double xi_lo, double xi_hi);

/// Cell-averaged Maxwellian of u. Throws std::range_error (naming the
/// offending value) when the field exceeds the velocity range.
KineticDensity lift(const ScalarField& u, const VelocityGrid& vgrid);

/// u(x) = integral of f(x, .) over xi, exact cell-average quadrature.
/// collapse(lift(u)) == u up to rounding; exact on power-of-two cell widths.
ScalarField collapse(const KineticDensity& f);

struct CollapseWithDefect {
  ScalarField u;
  DefectMeasure defect;
  double kinetic_l1 = 0.0;  // integral of |f| before the collapse
  double min_reanchored = 0.0;
};

/// Collapse the pre-collapse density at t_{k+1}- and assemble the entropy
/// defect generated by the projection, as signed cumulative sums of
/// (Mf - f) outward from the xi = 0 edge. A genuinely negative dissipation
/// value (below -1e-8, measured from the bottom edge so that per-x constant
/// offsets of mixed-sign states do not alarm) aborts with std::runtime_error:
/// it means the streaming step was not sign/bound preserving.
CollapseWithDefect defect_from_collapse(const KineticDensity& f_minus,
                                        int step_index);

/// Trapezoidal integral of the stored defect values over (x, xi).
double defect_mass(const DefectMeasure& m);

double l1_norm(const ScalarField& u);
double l2_norm(const ScalarField& u);
double linf_norm(const ScalarField& u);
/// Sum_j |u_j - v_j| * cell volume. Throws on grid mismatch.
double l1_distance(const ScalarField& u, const ScalarField& v);

double kinetic_l1_norm(const KineticDensity& f);
double kinetic_l1_distance(const KineticDensity& f, const KineticDensity& g);

/// Discrete total variation of the periodic cell-average sequence.
/// Dimension 1 only.
double bv_norm(const ScalarField& u);

struct BvIdentity {
  double lhs = 0.0;  // bv_norm(u)
  double rhs = 0.0;  // sum over xi cells of dxi * bv_norm(slice of lift(u))
};
/// Both sides agree to 1e-10 whenever the values of u lie on the xi-edge
/// lattice; otherwise within 2*dxi*(number of jumps).
BvIdentity bv_identity_check(const ScalarField& u, const VelocityGrid& vgrid);

struct FieldRange {
  double lo = 0.0;
  double hi = 0.0;
};
FieldRange field_range(const ScalarField& u);

}  // namespace tclaw
