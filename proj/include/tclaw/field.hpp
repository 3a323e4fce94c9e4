// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tclaw/grid.hpp"

namespace tclaw {

/// Cell-averaged conserved quantity on a periodic spatial grid.
struct ScalarField {
  explicit ScalarField(SpatialGrid g)
      : grid(std::move(g)), values(grid.n_cells(), 0.0) {}

  SpatialGrid grid;
  std::vector<double> values;

  double& operator[](std::size_t j) { return values[j]; }
  double operator[](std::size_t j) const { return values[j]; }
  std::size_t size() const { return values.size(); }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }
};

/// Cell-averaged kinetic density on the (x, xi) product grid. Row l holds the
/// spatial profile of velocity cell l, contiguously.
struct KineticDensity {
  KineticDensity(SpatialGrid sg, VelocityGrid vg)
      : sgrid(std::move(sg)),
        vgrid(std::move(vg)),
        values(sgrid.n_cells() * static_cast<std::size_t>(vgrid.n_cells()),
               0.0) {}

  SpatialGrid sgrid;
  VelocityGrid vgrid;
  std::vector<double> values;

  std::size_t row_size() const { return sgrid.n_cells(); }
  double* row(int l) { return values.data() + row_size() * l; }
  const double* row(int l) const { return values.data() + row_size() * l; }
  std::span<const double> row_span(int l) const {
    return {row(l), row_size()};
  }
};

/// Collapse-time entropy defect, stored at (x-cell, xi-edge) pairs as the
/// signed cumulative integral of (Mf - f) outward from the edge at xi = 0.
struct DefectMeasure {
  DefectMeasure(SpatialGrid sg, VelocityGrid vg, int step)
      : sgrid(std::move(sg)),
        vgrid(std::move(vg)),
        step_index(step),
        values(sgrid.n_cells() * static_cast<std::size_t>(vgrid.n_edges()),
               0.0) {}

  SpatialGrid sgrid;
  VelocityGrid vgrid;
  int step_index;
  std::vector<double> values;

  std::size_t edge_row_size() const { return sgrid.n_cells(); }
  double* edge_row(int e) { return values.data() + edge_row_size() * e; }
  const double* edge_row(int e) const {
    return values.data() + edge_row_size() * e;
  }
  double at(std::size_t j, int e) const {
    return values[edge_row_size() * e + j];
  }
};

}  // namespace tclaw
