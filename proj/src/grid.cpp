// SPDX-License-Identifier: Apache-2.0
#include "tclaw/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tclaw {

namespace {

void check_axis(int n, double length) {
  if (n <= 0) throw std::invalid_argument("grid: cell count must be positive");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: domain length must be positive");
}

}  // namespace

SpatialGrid::SpatialGrid(int nx, double length)
    : dim_(1), cells_{nx, 1}, length_{length, 1.0} {
  check_axis(nx, length);
}

SpatialGrid::SpatialGrid(int nx, int ny, double length_x, double length_y)
    : dim_(2), cells_{nx, ny}, length_{length_x, length_y} {
  check_axis(nx, length_x);
  check_axis(ny, length_y);
}

VelocityGrid::VelocityGrid(int n_neg, int n_pos, double dxi)
    : dxi_(dxi), inv_dxi_(1.0 / dxi), n_neg_(n_neg), n_pos_(n_pos) {}

VelocityGrid::VelocityGrid(double xi_min, double xi_max, int n_cells)
    : dxi_(0), inv_dxi_(0), n_neg_(0), n_pos_(0) {
  if (!(xi_min < 0.0) || !(xi_max > 0.0))
    throw std::invalid_argument("velocity grid: need xi_min < 0 < xi_max");
  if (n_cells < 2 || n_cells % 2 != 0)
    throw std::invalid_argument("velocity grid: cell count must be even and >= 2");
  const double dxi = (xi_max - xi_min) / n_cells;
  const double neg = -xi_min / dxi;
  const int n_neg = static_cast<int>(std::lround(neg));
  if (n_neg < 1 || n_neg > n_cells - 1 ||
      std::abs(neg - n_neg) > 1e-9 * n_cells)
    throw std::invalid_argument(
        "velocity grid: 0 must lie on the cell-edge lattice (got xi_min=" +
        std::to_string(xi_min) + ", dxi=" + std::to_string(dxi) + ")");
  dxi_ = dxi;
  inv_dxi_ = 1.0 / dxi;
  n_neg_ = n_neg;
  n_pos_ = n_cells - n_neg;
}

VelocityGrid VelocityGrid::symmetric(double xi_abs, int n_cells) {
  if (!(xi_abs > 0.0))
    throw std::invalid_argument("velocity grid: bound must be positive");
  if (n_cells < 2 || n_cells % 2 != 0)
    throw std::invalid_argument("velocity grid: cell count must be even and >= 2");
  return VelocityGrid(n_cells / 2, n_cells / 2, 2.0 * xi_abs / n_cells);
}

VelocityGrid VelocityGrid::widened(double factor) const {
  if (!(factor > 1.0))
    throw std::invalid_argument("velocity grid: widening factor must exceed 1");
  int n_neg = static_cast<int>(std::ceil(n_neg_ * factor));
  int n_pos = static_cast<int>(std::ceil(n_pos_ * factor));
  if ((n_neg + n_pos) % 2 != 0) ++n_pos;
  return VelocityGrid(n_neg, n_pos, dxi_);
}

}  // namespace tclaw
