// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "tclaw/driver_path.hpp"
#include "tclaw/field.hpp"
#include "tclaw/flux.hpp"
#include "tclaw/homogeneous.hpp"

namespace tclaw {

/// Entropy solution of the Burgers Riemann problem with states (u_l, u_r)
/// separated at x = 0: shock at speed (u_l+u_r)/2 for u_l > u_r, rarefaction
/// fan clamp(x/t, u_l, u_r) for u_l < u_r.
double exact_riemann_burgers(double u_l, double u_r, double x, double t);

/// Exact cell averages on a periodic 1-D grid of the two-wave Burgers
/// solution emerging from u = u_l on [0, x0), u_r on [x0, L): one wave from
/// the jump at x0 and one from the wrap jump at 0. Valid (and checked) while
/// the waves stay inside (0, L) and do not meet.
ScalarField riemann_torus_averages(double u_l, double u_r, double x0, double t,
                                   const SpatialGrid& grid);

/// L1 distance between u and the single-jump oracle, restricted to the part
/// of the torus where that oracle is the exact solution of the periodic
/// problem: the wave emerging from the wrap jump at x = 0 (plus a margin) is
/// excluded. The oracle is cell-averaged exactly on the compared cells.
double riemann_window_error(const ScalarField& u, double u_l, double u_r,
                            double x0, double t, double margin);

/// First-order Godunov finite-volume evolution for a convex scalar flux
/// minimized at 0 (numerical flux max(A(max(uL,0)), A(min(uR,0)))),
/// dimension 1, periodic. Throws when the CFL condition max|a| dt <= dx
/// fails.
ScalarField godunov_run(const ScalarField& u0, const HomogeneousFlux& flux,
                        double T, double dt);

/// Godunov numerical flux value (exposed for direct checks).
double godunov_flux(const HomogeneousFlux& flux, double u_left, double u_right);

/// Splitting scheme for the relaxation model: stream exactly as the
/// transport-collapse step, then relax f <- e^{-dt/eps} f + (1-e^{-dt/eps}) Mf
/// with the Maxwellian frozen over the substep. As eps -> 0 a step reduces to
/// the transport-collapse step.
ScalarField bgk_run(const ScalarField& u0, const HomogeneousFlux& flux,
                    const VelocityGrid& vgrid, const DriverPath& z,
                    const TimePartition& p, double eps);

struct ConvergenceRow {
  double dt = 0.0;
  double delta_z = 0.0;
  double l1_error = 0.0;
  double bound = 0.0;      // NaN when no envelope applies
  double slope_cum = 0.0;  // least-squares slope over rows so far (NaN if <2)
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  // final fitted log(error) vs log(delta_z) slope
};

/// Runs the scheme at each K in k_list and at k_ref on the shared path and
/// grids, reporting the sup over the coarse run's partition points of the L1
/// distance to the reference. Partitions must nest: k_ref % K == 0.
using SchemeRunner = std::function<Trajectory(
    const TimePartition& p, const std::vector<double>& snapshot_times)>;

ConvergenceStudy self_convergence_study(
    const SchemeRunner& run, const DriverPath& z, double T,
    const std::vector<int>& k_list, int k_ref,
    const std::function<double(double)>& bound_at_dz = {});

/// Least-squares slope of log(y) vs log(x); pairs with y <= 0 are skipped.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace tclaw
