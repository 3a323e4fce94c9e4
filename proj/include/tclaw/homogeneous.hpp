// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tclaw/driver_path.hpp"
#include "tclaw/field.hpp"
#include "tclaw/flux.hpp"
#include "tclaw/kinetic.hpp"

namespace tclaw {

/// Free-streaming step: each velocity cell's spatial profile is translated by
/// a(xi_mid) * dz through a conservative two-point remap per axis (overlap
/// weights of the shifted cell against the target cells). Mass-preserving per
/// row, positivity-preserving, L1-nonexpansive.
KineticDensity stream_homogeneous(const KineticDensity& f,
                                  const HomogeneousFlux& flux,
                                  std::span<const double> dz);

struct StepResult {
  ScalarField u;
  DefectMeasure defect;
};

/// One transport-collapse step: collapse(stream(lift(u))) plus the defect
/// generated at the collapse.
StepResult tc_step(const ScalarField& u, const HomogeneousFlux& flux,
                   const VelocityGrid& vgrid, std::span<const double> dz,
                   int step_index);

/// Per-run record shared by both schemes.
struct Trajectory {
  std::vector<double> snapshot_times;
  std::vector<ScalarField> snapshots;

  // per step k = 0..K-1 (values after the step where applicable)
  std::vector<double> defect_mass_per_step;
  std::vector<double> defect_min_per_step;   // worst re-anchored value
  std::vector<double> l1, l2, linf;          // norms of u_{k+1}
  std::vector<double> u_min, u_max;
  std::vector<double> dz_step_norm;          // |z_{t_{k+1}} - z_{t_k}|
  std::vector<double> kinetic_l1_pre;        // integral |f| before collapse
  std::vector<double> tightness;             // mass outside the central ball

  double cumulative_defect_mass = 0.0;
  double initial_half_l2_sq = 0.0;
  int velocity_widenings = 0;  // inhomogeneous runs only

  const ScalarField& at_time(double t, double tol = 1e-9) const;
};

struct RunOptions {
  std::vector<double> snapshot_times;  // must coincide with partition points
  double tightness_radius = 0.0;       // 0: record zeros
};

/// Full homogeneous evolution. Snapshot times must coincide (1e-9) with
/// partition points. Verifies the defect budget: cumulative defect mass
/// <= 0.5*||u0||_2^2 + 1e-8.
Trajectory run_homogeneous(const ScalarField& u0, const HomogeneousFlux& flux,
                           const VelocityGrid& vgrid, const DriverPath& z,
                           const TimePartition& p, const RunOptions& opt = {});

struct BoundReport {
  double value = 0.0;          // sqrt(2 BV (sup|a|+Lip a)) ||u0||_2 sqrt(dz)
  double proof_variant = 0.0;  // 2 sqrt(2 BV Lip(a)) ||u0||_2 sqrt(dz)
  double sup_a = 0.0;
  double lip_a = 0.0;
  bool dz_hypothesis_ok = true;  // dz <= 1
  double envelope() const { return value > proof_variant ? value : proof_variant; }
};

/// A-priori error bound for the homogeneous scheme at oscillation dz_max.
/// Dimension 1. sup|a| and Lip(a) are taken on [-||u0||_inf, ||u0||_inf],
/// estimated by dense sampling unless the flux carries analytic values.
BoundReport theorem_bound_report(const ScalarField& u0,
                                 const HomogeneousFlux& flux, double dz_max);
double theorem_bound(const ScalarField& u0, const HomogeneousFlux& flux,
                     double dz_max);

}  // namespace tclaw
