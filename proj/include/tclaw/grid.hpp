// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>

namespace tclaw {

/// Uniform periodic grid over [0,L0) (x [0,L1) in dimension 2).
/// Values attached to it are cell averages; cell j covers
/// [j*dx, (j+1)*dx) per axis.
class SpatialGrid {
 public:
  SpatialGrid(int nx, double length);
  SpatialGrid(int nx, int ny, double length_x, double length_y);

  int dimension() const { return dim_; }
  int cells(int axis) const { return cells_[axis]; }
  double length(int axis) const { return length_[axis]; }
  double cell_size(int axis) const { return length_[axis] / cells_[axis]; }
  std::size_t n_cells() const {
    return static_cast<std::size_t>(cells_[0]) * cells_[1];
  }
  /// Volume (length in 1-D, area in 2-D) of one cell.
  double cell_volume() const {
    return dim_ == 1 ? cell_size(0) : cell_size(0) * cell_size(1);
  }
  /// Flat index; axis 0 is the fastest-varying one.
  std::size_t index(int ix, int iy = 0) const {
    return static_cast<std::size_t>(iy) * cells_[0] + ix;
  }
  double center(int axis, int i) const {
    return (i + 0.5) * cell_size(axis);
  }

  bool operator==(const SpatialGrid& o) const = default;

 private:
  int dim_;
  std::array<int, 2> cells_;
  std::array<double, 2> length_;
};

/// Uniform grid in the velocity variable xi with a cell edge pinned exactly
/// at xi = 0, so every cell has a single sign. Edges are integer multiples of
/// the cell width: edge(i) = (i - n_negative) * dxi.
class VelocityGrid {
 public:
  /// Requires xi_min < 0 < xi_max, an even cell count, and 0 on the edge
  /// lattice implied by (xi_max - xi_min) / n_cells.
  VelocityGrid(double xi_min, double xi_max, int n_cells);
  static VelocityGrid symmetric(double xi_abs, int n_cells);

  int n_cells() const { return n_neg_ + n_pos_; }
  int n_edges() const { return n_cells() + 1; }
  double dxi() const { return dxi_; }
  double inv_dxi() const { return inv_dxi_; }
  double edge(int i) const { return (i - n_neg_) * dxi_; }
  double midpoint(int l) const { return (l - n_neg_ + 0.5) * dxi_; }
  double xi_min() const { return edge(0); }
  double xi_max() const { return edge(n_cells()); }
  /// Index of the edge at xi = 0.
  int zero_edge() const { return n_neg_; }
  bool cell_positive(int l) const { return l >= n_neg_; }
  bool spans(double lo, double hi) const {
    return xi_min() <= lo && hi <= xi_max();
  }
  /// Same cell width, range extended by `factor` (rounded up to whole cells,
  /// kept even in count).
  VelocityGrid widened(double factor) const;

  bool operator==(const VelocityGrid& o) const = default;

 private:
  VelocityGrid(int n_neg, int n_pos, double dxi);
  double dxi_;
  double inv_dxi_;
  int n_neg_;
  int n_pos_;
};

}  // namespace tclaw
