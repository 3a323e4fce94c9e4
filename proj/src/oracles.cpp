// SPDX-License-Identifier: Apache-2.0
#include "tclaw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tclaw/kernels.hpp"
#include "tclaw/kinetic.hpp"

namespace tclaw {

double exact_riemann_burgers(double u_l, double u_r, double x, double t) {
  if (t < 0.0) throw std::invalid_argument("riemann: t must be >= 0");
  if (u_l == u_r) return u_l;
  if (t == 0.0) return x < 0.0 ? u_l : u_r;
  if (u_l > u_r) {
    const double s = 0.5 * (u_l + u_r);
    return x < s * t ? u_l : u_r;
  }
  return std::clamp(x / t, u_l, u_r);
}

namespace {

// Single-jump solution profile as sorted breakpoints; between consecutive
// breakpoints the profile is linear, so trapezoids integrate it exactly.
std::vector<double> wave_breakpoints(double u_l, double u_r, double q, double t) {
  if (u_l == u_r) return {};
  if (u_l > u_r) {
    const double s = q + 0.5 * (u_l + u_r) * t;
    return {s, s};  // treat the jump as a zero-width interval
  }
  return {q + u_l * t, q + u_r * t};
}

double wave_value(double u_l, double u_r, double q, double x, double t) {
  return exact_riemann_burgers(u_l, u_r, x - q, t);
}

// Integral of the single-jump solution over [a, b]; split at breakpoints.
double wave_integral(double u_l, double u_r, double q, double t, double a,
                     double b) {
  std::vector<double> cuts = {a, b};
  for (double c : wave_breakpoints(u_l, u_r, q, t))
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double p0 = cuts[i], p1 = cuts[i + 1];
    if (p1 <= p0) continue;
    // evaluate strictly inside to dodge the shock's double-valued point
    const double m = 0.5 * (p0 + p1);
    const double v0 = wave_value(u_l, u_r, q, 0.5 * (p0 + m), t);
    const double v1 = wave_value(u_l, u_r, q, 0.5 * (m + p1), t);
    total += 0.5 * (v0 + v1) * (p1 - p0);
  }
  return total;
}

}  // namespace

ScalarField riemann_torus_averages(double u_l, double u_r, double x0, double t,
                                   const SpatialGrid& grid) {
  if (grid.dimension() != 1)
    throw std::invalid_argument("riemann_torus_averages: dimension 1 only");
  const double L = grid.length(0);
  if (!(x0 > 0.0) || !(x0 < L))
    throw std::invalid_argument("riemann_torus_averages: x0 must lie in (0, L)");

  // wave 1: wrap jump (u_r -> u_l) at 0; wave 2: data jump (u_l -> u_r) at x0
  auto interval = [&](double a, double b, double q) {
    const auto bp = wave_breakpoints(a, b, q, t);
    if (bp.empty()) return std::pair<double, double>(q, q);
    return std::pair<double, double>(bp.front(), bp.back());
  };
  const auto w1 = interval(u_r, u_l, 0.0);
  const auto w2 = interval(u_l, u_r, x0);
  if (w1.first < 0.0 || w1.second >= w2.first || w2.second >= L)
    throw std::invalid_argument(
        "riemann_torus_averages: waves left (0, L) or met; the patched exact "
        "solution is no longer valid at t=" +
        std::to_string(t));

  ScalarField u(grid);
  const double dx = grid.cell_size(0);
  for (int j = 0; j < grid.cells(0); ++j) {
    const double a = j * dx;
    const double b = (j + 1) * dx;
    const double cell = wave_integral(u_r, u_l, 0.0, t, a, b) +
                        wave_integral(u_l, u_r, x0, t, a, b) - u_l * (b - a);
    u.values[j] = cell / (b - a);
  }
  return u;
}

double riemann_window_error(const ScalarField& u, double u_l, double u_r,
                            double x0, double t, double margin) {
  const SpatialGrid& grid = u.grid;
  if (grid.dimension() != 1)
    throw std::invalid_argument("riemann_window_error: dimension 1 only");
  const double L = grid.length(0);
  const auto wrap_bp = wave_breakpoints(u_r, u_l, 0.0, t);
  const double wrap_hi = wrap_bp.empty() ? 0.0 : wrap_bp.back();
  const double wrap_lo = wrap_bp.empty() ? 0.0 : wrap_bp.front();
  if (wrap_lo < 0.0)
    throw std::invalid_argument(
        "riemann_window_error: the wrap wave moved left of 0; no window on "
        "which the single-jump solution is exact");
  const double lo = wrap_hi + margin;
  if (lo >= L)
    throw std::invalid_argument("riemann_window_error: empty window");

  const double dx = grid.cell_size(0);
  double err = 0.0;
  for (int j = 0; j < grid.cells(0); ++j) {
    const double a = j * dx;
    if (a < lo) continue;
    const double b = (j + 1) * dx;
    const double avg = wave_integral(u_l, u_r, x0, t, a, b) / (b - a);
    err += std::abs(u.values[j] - avg) * dx;
  }
  return err;
}

double godunov_flux(const HomogeneousFlux& flux, double u_left, double u_right) {
  const double al = flux.A[0](std::max(u_left, 0.0));
  const double ar = flux.A[0](std::min(u_right, 0.0));
  return std::max(al, ar);
}

ScalarField godunov_run(const ScalarField& u0, const HomogeneousFlux& flux,
                        double T, double dt) {
  if (u0.grid.dimension() != 1 || flux.dimension != 1)
    throw std::invalid_argument("godunov_run: dimension 1 only");
  if (!(dt > 0.0)) throw std::invalid_argument("godunov_run: dt must be > 0");
  if (T == 0.0) return u0;

  const int steps = static_cast<int>(std::lround(T / dt));
  if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T))
    throw std::invalid_argument("godunov_run: dt must divide T");

  const std::size_t n = u0.size();
  const double dx = u0.grid.cell_size(0);

  const FieldRange r = field_range(u0);
  double amax = 0.0;
  for (int s = 0; s <= 256; ++s) {
    const double v = r.lo + (r.hi - r.lo) * s / 256.0;
    amax = std::max(amax, std::abs(flux.a[0](v)));
  }
  if (amax * dt > dx)
    throw std::invalid_argument(
        "godunov_run: CFL violation, max|a|*dt = " + std::to_string(amax * dt) +
        " > dx = " + std::to_string(dx));

  ScalarField u = u0;
  std::vector<double> Fh(n);  // F_{j+1/2}
  for (int k = 0; k < steps; ++k) {
    for (std::size_t j = 0; j < n; ++j)
      Fh[j] = godunov_flux(flux, u.values[j], u.values[(j + 1) % n]);
    const double lam = dt / dx;
    for (std::size_t j = n; j-- > 0;) {
      const double fl = Fh[(j + n - 1) % n];
      u.values[j] -= lam * (Fh[j] - fl);
    }
  }
  return u;
}

ScalarField bgk_run(const ScalarField& u0, const HomogeneousFlux& flux,
                    const VelocityGrid& vgrid, const DriverPath& z,
                    const TimePartition& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("bgk_run: eps must be > 0");
  const auto& k = kernels::active();
  KineticDensity f = lift(u0, vgrid);
  const double alpha = std::exp(-p.dt() / eps);
  for (int step = 0; step < p.K; ++step) {
    const auto dz = increment(z, p.t(step), p.t(step + 1));
    f = stream_homogeneous(f, flux, dz);
    const KineticDensity mf = lift(collapse(f), vgrid);
    for (int l = 0; l < vgrid.n_cells(); ++l)
      k.combine2(f.row(l), mf.row(l), alpha, 1.0 - alpha, f.row_size(),
                 f.row(l));
  }
  return collapse(f);
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

ConvergenceStudy self_convergence_study(
    const SchemeRunner& run, const DriverPath& z, double T,
    const std::vector<int>& k_list, int k_ref,
    const std::function<double(double)>& bound_at_dz) {
  if (k_list.empty()) throw std::invalid_argument("study: empty dt list");
  for (int K : k_list)
    if (K < 1 || k_ref % K != 0)
      throw std::invalid_argument(
          "study: non-nested partitions (K=" + std::to_string(K) +
          ", reference " + std::to_string(k_ref) + ")");

  // union of all coarse partition points, for the reference run's snapshots
  std::vector<double> union_times;
  for (int K : k_list) {
    const TimePartition p(T, K);
    for (int k = 0; k <= K; ++k) union_times.push_back(p.t(k));
  }
  std::sort(union_times.begin(), union_times.end());
  union_times.erase(std::unique(union_times.begin(), union_times.end(),
                                [](double a, double b) {
                                  return std::abs(a - b) <= 1e-12;
                                }),
                    union_times.end());

  const TimePartition pref(T, k_ref);
  const Trajectory ref = run(pref, union_times);

  ConvergenceStudy study;
  std::vector<double> dzs, errs;
  for (int K : k_list) {
    const TimePartition p(T, K);
    std::vector<double> snaps;
    for (int k = 0; k <= K; ++k) snaps.push_back(p.t(k));
    const Trajectory traj = run(p, snaps);

    double err = 0.0;
    for (double t : snaps)
      err = std::max(err, l1_distance(traj.at_time(t), ref.at_time(t)));

    ConvergenceRow row;
    row.dt = p.dt();
    row.delta_z = delta_z(z, p);
    row.l1_error = err;
    row.bound = bound_at_dz ? bound_at_dz(row.delta_z)
                            : std::numeric_limits<double>::quiet_NaN();
    dzs.push_back(row.delta_z);
    errs.push_back(row.l1_error);
    row.slope_cum = fit_loglog_slope(dzs, errs);
    study.rows.push_back(row);
  }
  study.slope = fit_loglog_slope(dzs, errs);
  return study;
}

}  // namespace tclaw
