// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "tclaw/characteristics.hpp"
#include "tclaw/homogeneous.hpp"

namespace tclaw {

/// Thrown when a backward-traced velocity exits the grid with kinetic mass on
/// the boundary rows; carries the suggested replacement bounds.
class VelocityRangeError : public std::range_error {
 public:
  VelocityRangeError(double lo, double hi, const std::string& what)
      : std::range_error(what), suggested_lo(lo), suggested_hi(hi) {}
  double suggested_lo;
  double suggested_hi;
};

/// Periodic multilinear interpolation of a cell-averaged field, treating the
/// averages as point values at cell centers.
double interpolate(const ScalarField& u, std::span<const double> x);

/// One semi-Lagrangian transport-collapse step from t_k to t_k1: every node
/// (x_j, xi_l) is traced backward through the characteristic flow, the
/// pre-collapse density is sampled as chi(u_k at X, Xi), and the collapse
/// produces u at t_k1 together with the entropy defect.
CollapseWithDefect sl_step(const ScalarField& u_k, const InhomogeneousFlux& flux,
                           const VelocityGrid& vgrid, const DriverPath& z,
                           double t_k, double t_k1, int step_index,
                           int substeps_per_segment = 8);

struct InhomogeneousOptions {
  RunOptions run;
  int substeps_per_segment = 8;
  int max_widenings = 8;
};

/// Full inhomogeneous evolution; widens the velocity grid by 1.5x and retries
/// the step when traced velocities leave the grid with mass on the boundary.
Trajectory run_inhomogeneous(const ScalarField& u0,
                             const InhomogeneousFlux& flux,
                             const VelocityGrid& vgrid, const DriverPath& z,
                             const TimePartition& p,
                             const InhomogeneousOptions& opt = {});

}  // namespace tclaw
