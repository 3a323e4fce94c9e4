// SPDX-License-Identifier: Apache-2.0
#include "tclaw/inhomogeneous.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tclaw/kernels.hpp"
#include "tclaw/kinetic.hpp"
#include "tclaw/parallel.hpp"

namespace tclaw {

namespace {

// Periodic linear weight along one axis: cell-center point values.
struct AxisWeight {
  int i0, i1;
  double w;  // weight of i1
};

AxisWeight axis_weight(double x, double length, int n) {
  double xm = std::fmod(x, length);
  if (xm < 0.0) xm += length;
  const double dx = length / n;
  const double pos = xm / dx - 0.5;
  double fl = std::floor(pos);
  double w = pos - fl;
  long i0 = static_cast<long>(fl);
  long r = i0 % n;
  if (r < 0) r += n;
  AxisWeight a;
  a.i0 = static_cast<int>(r);
  a.i1 = (a.i0 + 1 == n) ? 0 : a.i0 + 1;
  a.w = w;
  return a;
}

}  // namespace

double interpolate(const ScalarField& u, std::span<const double> x) {
  const SpatialGrid& g = u.grid;
  const AxisWeight ax = axis_weight(x[0], g.length(0), g.cells(0));
  if (g.dimension() == 1)
    return (1.0 - ax.w) * u.values[ax.i0] + ax.w * u.values[ax.i1];
  const AxisWeight ay = axis_weight(x[1], g.length(1), g.cells(1));
  const double v00 = u.values[g.index(ax.i0, ay.i0)];
  const double v10 = u.values[g.index(ax.i1, ay.i0)];
  const double v01 = u.values[g.index(ax.i0, ay.i1)];
  const double v11 = u.values[g.index(ax.i1, ay.i1)];
  const double r0 = (1.0 - ax.w) * v00 + ax.w * v10;
  const double r1 = (1.0 - ax.w) * v01 + ax.w * v11;
  return (1.0 - ay.w) * r0 + ay.w * r1;
}

CollapseWithDefect sl_step(const ScalarField& u_k, const InhomogeneousFlux& flux,
                           const VelocityGrid& vgrid, const DriverPath& z,
                           double t_k, double t_k1, int step_index,
                           int substeps_per_segment) {
  if (!(t_k < t_k1))
    throw std::invalid_argument("sl_step: need t_k < t_k1");
  if (flux.dimension != u_k.grid.dimension())
    throw std::invalid_argument("sl_step: flux/grid dimension mismatch");

  const CharacteristicFlow flow(flux, z, t_k1, substeps_per_segment);
  const double duration = t_k1 - t_k;
  const SpatialGrid& g = u_k.grid;
  KineticDensity f(g, vgrid);

  const int nl = vgrid.n_cells();
  const int nx = g.cells(0);
  const int ny = g.dimension() == 2 ? g.cells(1) : 1;

  parallel_for(nl, [&](int l0, int l1) {
    for (int l = l0; l < l1; ++l) {
      const double xi = vgrid.midpoint(l);
      double* row = f.row(l);
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
          PhasePoint p;
          p.x[0] = g.center(0, ix);
          if (g.dimension() == 2) p.x[1] = g.center(1, iy);
          p.xi = xi;
          const PhasePoint q = flow.trace(p, duration);
          const double uq = interpolate(u_k, std::span<const double>(q.x.data(), 2));
          row[g.index(ix, iy)] = maxwellian_value(uq, q.xi);
        }
    }
  });

  // Kinetic mass reaching the extreme velocity rows means the grid clipped
  // the evolution; report bounds wide enough for the observed state.
  const auto& kr = kernels::active();
  const double top = kr.max_abs(f.row(nl - 1), f.row_size());
  const double bot = kr.max_abs(f.row(0), f.row_size());
  if (top > 0.0 || bot > 0.0)
    throw VelocityRangeError(
        1.5 * vgrid.xi_min(), 1.5 * vgrid.xi_max(),
        "sl_step: traced velocities carry mass on the boundary rows; widen "
        "the velocity grid (suggested [" +
            std::to_string(1.5 * vgrid.xi_min()) + ", " +
            std::to_string(1.5 * vgrid.xi_max()) + "])");

  return defect_from_collapse(f, step_index);
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double mass_outside_ball(const ScalarField& u, double radius) {
  if (radius <= 0.0) return 0.0;
  const SpatialGrid& g = u.grid;
  double m = 0.0;
  for (int iy = 0; iy < (g.dimension() == 2 ? g.cells(1) : 1); ++iy)
    for (int ix = 0; ix < g.cells(0); ++ix) {
      double d0 = g.center(0, ix) - 0.5 * g.length(0);
      double dist2 = d0 * d0;
      if (g.dimension() == 2) {
        const double d1 = g.center(1, iy) - 0.5 * g.length(1);
        dist2 += d1 * d1;
      }
      if (dist2 > radius * radius)
        m += std::abs(u.values[g.index(ix, iy)]) * g.cell_volume();
    }
  return m;
}

}  // namespace

Trajectory run_inhomogeneous(const ScalarField& u0,
                             const InhomogeneousFlux& flux,
                             const VelocityGrid& vgrid_in, const DriverPath& z,
                             const TimePartition& p,
                             const InhomogeneousOptions& opt) {
  VelocityGrid vgrid = vgrid_in;
  const FieldRange r0 = field_range(u0);
  if (!vgrid.spans(std::min(r0.lo, 0.0), std::max(r0.hi, 0.0)))
    throw std::range_error("run: velocity grid does not cover the initial data");

  Trajectory traj;
  traj.initial_half_l2_sq = 0.5 * l2_norm(u0) * l2_norm(u0);

  std::vector<int> snap_steps;
  for (double t : opt.run.snapshot_times) {
    const int k = static_cast<int>(std::lround(t / p.dt()));
    if (k < 0 || k > p.K || std::abs(p.t(k) - t) > 1e-9)
      throw std::invalid_argument(
          "snapshot time " + std::to_string(t) +
          " is not a partition point (snapshots are restricted to t_k)");
    snap_steps.push_back(k);
  }

  ScalarField u = u0;
  auto maybe_snapshot = [&](int k) {
    for (std::size_t i = 0; i < snap_steps.size(); ++i)
      if (snap_steps[i] == k) {
        traj.snapshot_times.push_back(p.t(k));
        traj.snapshots.push_back(u);
      }
  };
  maybe_snapshot(0);

  for (int k = 0; k < p.K; ++k) {
    CollapseWithDefect cd = [&] {
      for (int attempt = 0;; ++attempt) {
        try {
          return sl_step(u, flux, vgrid, z, p.t(k), p.t(k + 1), k,
                         opt.substeps_per_segment);
        } catch (const VelocityRangeError&) {
          if (attempt >= opt.max_widenings) throw;
          vgrid = vgrid.widened(1.5);
          ++traj.velocity_widenings;
        }
      }
    }();
    u = std::move(cd.u);

    traj.dz_step_norm.push_back(norm2(increment(z, p.t(k), p.t(k + 1))));
    traj.kinetic_l1_pre.push_back(cd.kinetic_l1);
    const double dm = defect_mass(cd.defect);
    traj.defect_mass_per_step.push_back(dm);
    traj.defect_min_per_step.push_back(cd.min_reanchored);
    traj.cumulative_defect_mass += dm;
    traj.l1.push_back(l1_norm(u));
    traj.l2.push_back(l2_norm(u));
    traj.linf.push_back(linf_norm(u));
    const FieldRange r = field_range(u);
    traj.u_min.push_back(r.lo);
    traj.u_max.push_back(r.hi);
    traj.tightness.push_back(mass_outside_ball(u, opt.run.tightness_radius));
    maybe_snapshot(k + 1);
  }
  return traj;
}

}  // namespace tclaw
