// SPDX-License-Identifier: Apache-2.0
#include "tclaw/homogeneous.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "tclaw/kernels.hpp"
#include "tclaw/parallel.hpp"

namespace tclaw {

namespace {

// Splits the displacement (in cells) into the integer shift and the overlap
// weight of the trailing cell.
struct CellShift {
  long whole;
  double frac;
};

CellShift split_shift(double displacement, double dx) {
  const double c = displacement / dx;
  const double f = std::floor(c);
  CellShift s;
  s.whole = static_cast<long>(f);
  s.frac = c - f;
  if (s.frac >= 1.0) {  // c was an exact integer stored a hair below
    s.whole += 1;
    s.frac = 0.0;
  }
  return s;
}

inline std::size_t wrap(long i, long n) {
  long r = i % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

// out[j] = (1-w) in[j - whole] + w in[j - whole - 1], periodic, via a rotate
// into scratch followed by one two-point combination.
void remap_line(const double* in, double* scratch, double* out, std::size_t n,
                long whole, double w) {
  const std::size_t shift = wrap(whole, static_cast<long>(n));
  if (shift == 0 && w == 0.0) {
    if (out != in) std::memcpy(out, in, n * sizeof(double));
    return;
  }
  // scratch[j] = in[(j - shift) mod n]
  std::memcpy(scratch + shift, in, (n - shift) * sizeof(double));
  std::memcpy(scratch, in + (n - shift), shift * sizeof(double));
  if (w == 0.0) {
    std::memcpy(out, scratch, n * sizeof(double));
    return;
  }
  const auto& k = kernels::active();
  out[0] = (1.0 - w) * scratch[0] + w * scratch[n - 1];
  k.combine2(scratch + 1, scratch, 1.0 - w, w, n - 1, out + 1);
}

}  // namespace

KineticDensity stream_homogeneous(const KineticDensity& f,
                                  const HomogeneousFlux& flux,
                                  std::span<const double> dz) {
  if (static_cast<int>(dz.size()) != flux.dimension ||
      flux.dimension != f.sgrid.dimension())
    throw std::invalid_argument("stream: dimension mismatch");
  for (double d : dz)
    if (!std::isfinite(d)) throw std::invalid_argument("stream: non-finite dz");

  const SpatialGrid& g = f.sgrid;
  KineticDensity out(g, f.vgrid);

  if (g.dimension() == 1) {
    const std::size_t n = g.n_cells();
    const double dx = g.cell_size(0);
    parallel_for(f.vgrid.n_cells(), [&](int l0, int l1) {
      std::vector<double> scratch(n);
      for (int l = l0; l < l1; ++l) {
        const double s = flux.a[0](f.vgrid.midpoint(l)) * dz[0];
        const CellShift cs = split_shift(s, dx);
        remap_line(f.row(l), scratch.data(), out.row(l), n, cs.whole, cs.frac);
      }
    });
    return out;
  }

  const int nx = g.cells(0);
  const int ny = g.cells(1);
  parallel_for(f.vgrid.n_cells(), [&](int l0, int l1) {
    std::vector<double> scratch(static_cast<std::size_t>(nx));
    std::vector<double> stage(static_cast<std::size_t>(nx) * ny);
    const auto& k = kernels::active();
    for (int l = l0; l < l1; ++l) {
      const double xi = f.vgrid.midpoint(l);
      const CellShift sx = split_shift(flux.a[0](xi) * dz[0], g.cell_size(0));
      const CellShift sy = split_shift(flux.a[1](xi) * dz[1], g.cell_size(1));
      const double* src = f.row(l);
      for (int iy = 0; iy < ny; ++iy)
        remap_line(src + static_cast<std::size_t>(iy) * nx, scratch.data(),
                   stage.data() + static_cast<std::size_t>(iy) * nx, nx,
                   sx.whole, sx.frac);
      double* dst = out.row(l);
      for (int iy = 0; iy < ny; ++iy) {
        const double* r0 =
            stage.data() + wrap(iy - sy.whole, ny) * static_cast<std::size_t>(nx);
        const double* r1 = stage.data() +
                           wrap(iy - sy.whole - 1, ny) * static_cast<std::size_t>(nx);
        double* o = dst + static_cast<std::size_t>(iy) * nx;
        if (sy.frac == 0.0)
          std::memcpy(o, r0, static_cast<std::size_t>(nx) * sizeof(double));
        else
          k.combine2(r0, r1, 1.0 - sy.frac, sy.frac, static_cast<std::size_t>(nx), o);
      }
    }
  });
  return out;
}

StepResult tc_step(const ScalarField& u, const HomogeneousFlux& flux,
                   const VelocityGrid& vgrid, std::span<const double> dz,
                   int step_index) {
  KineticDensity f = lift(u, vgrid);
  KineticDensity fs = stream_homogeneous(f, flux, dz);
  CollapseWithDefect cd = defect_from_collapse(fs, step_index);
  return {std::move(cd.u), std::move(cd.defect)};
}

const ScalarField& Trajectory::at_time(double t, double tol) const {
  for (std::size_t i = 0; i < snapshot_times.size(); ++i)
    if (std::abs(snapshot_times[i] - t) <= tol) return snapshots[i];
  throw std::out_of_range("trajectory: no snapshot at t=" + std::to_string(t));
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
      double dx0 = g.center(0, ix) - 0.5 * g.length(0);
      double dist2 = dx0 * dx0;
      if (g.dimension() == 2) {
        double dy = g.center(1, iy) - 0.5 * g.length(1);
        dist2 += dy * dy;
      }
      if (dist2 > radius * radius)
        m += std::abs(u.values[g.index(ix, iy)]) * g.cell_volume();
    }
  return m;
}

std::vector<int> snapshot_steps(const RunOptions& opt, const TimePartition& p) {
  std::vector<int> steps;
  for (double t : opt.snapshot_times) {
    const double kf = t / p.dt();
    const int k = static_cast<int>(std::lround(kf));
    if (k < 0 || k > p.K || std::abs(p.t(k) - t) > 1e-9)
      throw std::invalid_argument(
          "snapshot time " + std::to_string(t) +
          " is not a partition point (snapshots are restricted to t_k)");
    steps.push_back(k);
  }
  return steps;
}

}  // namespace

Trajectory run_homogeneous(const ScalarField& u0, const HomogeneousFlux& flux,
                           const VelocityGrid& vgrid, const DriverPath& z,
                           const TimePartition& p, const RunOptions& opt) {
  const FieldRange r0 = field_range(u0);
  if (!vgrid.spans(std::min(r0.lo, 0.0), std::max(r0.hi, 0.0)))
    throw std::range_error("run: velocity grid does not cover the initial data");

  Trajectory traj;
  traj.initial_half_l2_sq = 0.5 * l2_norm(u0) * l2_norm(u0);
  const std::vector<int> snaps = snapshot_steps(opt, p);

  ScalarField u = u0;
  auto maybe_snapshot = [&](int k) {
    for (std::size_t i = 0; i < snaps.size(); ++i)
      if (snaps[i] == k) {
        traj.snapshot_times.push_back(p.t(k));
        traj.snapshots.push_back(u);
      }
  };
  maybe_snapshot(0);

  for (int k = 0; k < p.K; ++k) {
    const auto dz = increment(z, p.t(k), p.t(k + 1));
    KineticDensity f = lift(u, vgrid);
    KineticDensity fs = stream_homogeneous(f, flux, dz);
    CollapseWithDefect cd = defect_from_collapse(fs, k);
    u = std::move(cd.u);

    traj.dz_step_norm.push_back(norm2(dz));
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
    traj.tightness.push_back(mass_outside_ball(u, opt.tightness_radius));
    maybe_snapshot(k + 1);
  }

  if (traj.cumulative_defect_mass > traj.initial_half_l2_sq + 1e-8)
    throw std::runtime_error(
        "run: cumulative defect mass " +
        std::to_string(traj.cumulative_defect_mass) +
        " exceeds the entropy budget " +
        std::to_string(traj.initial_half_l2_sq));
  return traj;
}

BoundReport theorem_bound_report(const ScalarField& u0,
                                 const HomogeneousFlux& flux, double dz_max) {
  if (u0.grid.dimension() != 1)
    throw std::invalid_argument("theorem_bound: dimension 1 only (BV)");
  BoundReport rep;
  rep.dz_hypothesis_ok = dz_max <= 1.0;

  const double eta = linf_norm(u0);
  if (flux.sup_a && flux.lip_a) {
    rep.sup_a = *flux.sup_a;
    rep.lip_a = *flux.lip_a;
  } else {
    const int ns = 4096;
    const double lo = -eta, hi = eta;
    std::vector<double> av(ns + 1);
    double sup = 0.0;
    for (int s = 0; s <= ns; ++s) {
      const double xi = (eta == 0.0) ? 0.0 : lo + (hi - lo) * s / ns;
      double norm_sq = 0.0;
      for (int i = 0; i < flux.dimension; ++i) {
        const double ai = flux.a[i](xi);
        norm_sq += ai * ai;
      }
      av[s] = std::sqrt(norm_sq);
      sup = std::max(sup, av[s]);
    }
    double lip = 0.0;
    if (eta > 0.0) {
      const double h = (hi - lo) / ns;
      // Lipschitz constant of the vector map, estimated from the samples
      for (int s = 0; s < ns; ++s) {
        const double xa = lo + h * s;
        double diff_sq = 0.0;
        for (int i = 0; i < flux.dimension; ++i) {
          const double d = flux.a[i](xa + h) - flux.a[i](xa);
          diff_sq += d * d;
        }
        lip = std::max(lip, std::sqrt(diff_sq) / h);
      }
    }
    rep.sup_a = sup;
    rep.lip_a = lip;
  }

  const double bv = bv_norm(u0);
  const double l2 = l2_norm(u0);
  rep.value = std::sqrt(2.0 * bv * (rep.sup_a + rep.lip_a)) * l2 * std::sqrt(dz_max);
  rep.proof_variant =
      2.0 * std::sqrt(2.0 * bv * rep.lip_a) * l2 * std::sqrt(dz_max);
  return rep;
}

double theorem_bound(const ScalarField& u0, const HomogeneousFlux& flux,
                     double dz_max) {
  return theorem_bound_report(u0, flux, dz_max).value;
}

}  // namespace tclaw
