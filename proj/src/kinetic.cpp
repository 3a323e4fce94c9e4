// SPDX-License-Identifier: Apache-2.0
#include "tclaw/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tclaw/kernels.hpp"
#include "tclaw/parallel.hpp"

namespace tclaw {

double chi_cell_integral(double u, double xi_lo, double xi_hi) {
  if (!(xi_lo < xi_hi))
    throw std::invalid_argument("chi_cell_integral: need xi_lo < xi_hi");
  if (xi_lo < 0.0 && xi_hi > 0.0)
    throw std::invalid_argument("chi_cell_integral: cell straddles xi = 0");
  if (xi_lo >= 0.0) {
    if (u <= xi_lo) return 0.0;
    if (u >= xi_hi) return xi_hi - xi_lo;
    return u - xi_lo;
  }
  if (u >= xi_hi) return 0.0;
  if (u <= xi_lo) return -(xi_hi - xi_lo);
  return u - xi_hi;  // -(xi_hi - u)
}

KineticDensity lift(const ScalarField& u, const VelocityGrid& vgrid) {
  const auto& k = kernels::active();
  double lo, hi;
  k.minmax(u.data(), u.size(), &lo, &hi);
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::range_error("lift: field contains non-finite values");
  if (hi > vgrid.xi_max())
    throw std::range_error("lift: velocity range too small for field value u=" +
                           std::to_string(hi) + " (xi_max=" +
                           std::to_string(vgrid.xi_max()) + ")");
  if (lo < vgrid.xi_min())
    throw std::range_error("lift: velocity range too small for field value u=" +
                           std::to_string(lo) + " (xi_min=" +
                           std::to_string(vgrid.xi_min()) + ")");

  KineticDensity f(u.grid, vgrid);
  const std::size_t n = f.row_size();
  parallel_for(vgrid.n_cells(), [&](int l0, int l1) {
    for (int l = l0; l < l1; ++l)
      k.lift_row(u.data(), n, vgrid.edge(l), vgrid.edge(l + 1),
                 vgrid.inv_dxi(), vgrid.cell_positive(l), f.row(l));
  });
  return f;
}

ScalarField collapse(const KineticDensity& f) {
  const auto& k = kernels::active();
  ScalarField u(f.sgrid);
  std::vector<double> carry(u.size(), 0.0);
  const double dxi = f.vgrid.dxi();
  for (int l = 0; l < f.vgrid.n_cells(); ++l)
    k.acc_scaled(u.data(), carry.data(), f.row(l), dxi, f.row_size());
  for (std::size_t j = 0; j < u.size(); ++j) u.values[j] += carry[j];
  return u;
}

CollapseWithDefect defect_from_collapse(const KineticDensity& f_minus,
                                        int step_index) {
  const auto& k = kernels::active();
  const VelocityGrid& vg = f_minus.vgrid;
  const std::size_t n = f_minus.row_size();

  ScalarField u = collapse(f_minus);
  KineticDensity mf = lift(u, vg);

  DefectMeasure m(f_minus.sgrid, vg, step_index);
  const int z = vg.zero_edge();
  // edge(z) sits at xi = 0; the integral from 0 to 0 is identically zero.
  std::fill(m.edge_row(z), m.edge_row(z) + n, 0.0);
  for (int e = z; e < vg.n_cells(); ++e)
    k.defect_step(m.edge_row(e), mf.row(e), f_minus.row(e), vg.dxi(), n,
                  m.edge_row(e + 1));
  for (int e = z; e-- > 0;)
    k.defect_step(m.edge_row(e + 1), mf.row(e), f_minus.row(e), -vg.dxi(), n,
                  m.edge_row(e));

  // Entropy dissipation check, anchored at the bottom edge so that the per-x
  // constant offset carried by sign-mixed states drops out.
  double worst = 0.0;
  const double* bottom = m.edge_row(0);
  for (int e = 0; e <= vg.n_cells(); ++e) {
    const double* row = m.edge_row(e);
    for (std::size_t j = 0; j < n; ++j)
      worst = std::min(worst, row[j] - bottom[j]);
  }
  if (worst < -1e-8)
    throw std::runtime_error(
        "defect_from_collapse: negative entropy defect " +
        std::to_string(worst) + " at step " + std::to_string(step_index) +
        "; the streaming step is broken");

  CollapseWithDefect out{std::move(u), std::move(m),
                         kinetic_l1_norm(f_minus), worst};
  return out;
}

double defect_mass(const DefectMeasure& m) {
  const auto& k = kernels::active();
  const double w = m.sgrid.cell_volume() * m.vgrid.dxi();
  double total = 0.0;
  for (int e = 0; e <= m.vgrid.n_cells(); ++e) {
    const double rs = k.sum(m.edge_row(e), m.edge_row_size());
    const bool interior = e > 0 && e < m.vgrid.n_cells();
    total += rs * (interior ? w : 0.5 * w);
  }
  return total;
}

double l1_norm(const ScalarField& u) {
  return kernels::active().sum_abs(u.data(), u.size()) * u.grid.cell_volume();
}

double l2_norm(const ScalarField& u) {
  return std::sqrt(kernels::active().sum_sq(u.data(), u.size()) *
                   u.grid.cell_volume());
}

double linf_norm(const ScalarField& u) {
  return kernels::active().max_abs(u.data(), u.size());
}

double l1_distance(const ScalarField& u, const ScalarField& v) {
  if (!(u.grid == v.grid))
    throw std::invalid_argument("l1_distance: fields live on different grids");
  return kernels::active().sum_abs_diff(u.data(), v.data(), u.size()) *
         u.grid.cell_volume();
}

double kinetic_l1_norm(const KineticDensity& f) {
  return kernels::active().sum_abs(f.values.data(), f.values.size()) *
         f.sgrid.cell_volume() * f.vgrid.dxi();
}

double kinetic_l1_distance(const KineticDensity& f, const KineticDensity& g) {
  if (!(f.sgrid == g.sgrid) || !(f.vgrid == g.vgrid))
    throw std::invalid_argument("kinetic_l1_distance: grid mismatch");
  return kernels::active().sum_abs_diff(f.values.data(), g.values.data(),
                                        f.values.size()) *
         f.sgrid.cell_volume() * f.vgrid.dxi();
}

double bv_norm(const ScalarField& u) {
  if (u.grid.dimension() != 1)
    throw std::invalid_argument("bv_norm: dimension 1 only");
  const std::size_t n = u.size();
  double tv = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    tv += std::abs(u.values[(j + 1) % n] - u.values[j]);
  return tv;
}

namespace {

double row_bv_periodic(const double* row, std::size_t n) {
  double tv = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    tv += std::abs(row[(j + 1) % n] - row[j]);
  return tv;
}

}  // namespace

BvIdentity bv_identity_check(const ScalarField& u, const VelocityGrid& vgrid) {
  if (u.grid.dimension() != 1)
    throw std::invalid_argument("bv_identity_check: dimension 1 only");
  BvIdentity r;
  r.lhs = bv_norm(u);
  const KineticDensity f = lift(u, vgrid);
  for (int l = 0; l < vgrid.n_cells(); ++l)
    r.rhs += vgrid.dxi() * row_bv_periodic(f.row(l), f.row_size());
  return r;
}

FieldRange field_range(const ScalarField& u) {
  FieldRange r;
  kernels::active().minmax(u.data(), u.size(), &r.lo, &r.hi);
  return r;
}

}  // namespace tclaw
