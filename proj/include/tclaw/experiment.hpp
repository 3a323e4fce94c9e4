// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tclaw/config.hpp"
#include "tclaw/field.hpp"
#include "tclaw/flux.hpp"
#include "tclaw/homogeneous.hpp"
#include "tclaw/oracles.hpp"

namespace tclaw {

/// Pieces assembled from an ExperimentConfig.
struct ExperimentSetup {
  SpatialGrid sgrid;
  VelocityGrid vgrid;
  ScalarField u0;
  bool inhomogeneous = false;
  HomogeneousFlux hflux;      // valid when !inhomogeneous
  InhomogeneousFlux iflux;    // valid when inhomogeneous
  DriverPath path;            // sampled over [0, T], partition-aligned
};

ExperimentSetup build_setup(const ExperimentConfig& cfg);

struct ExitReport {
  int status = 0;
  std::string message;
  std::vector<std::string> files_written;
};

/// run: single simulation at dt_list[0]; writes snapshots + metadata.
ExitReport run_experiment(const ExperimentConfig& cfg);

/// converge: self-convergence study over dt_list against dt_ref; writes the
/// convergence table + metadata.
ExitReport run_convergence(const ExperimentConfig& cfg);

/// compare: scheme vs oracle in L1 at T. Oracles: riemann | godunov | bgk |
/// timechange.
ExitReport run_compare(const ExperimentConfig& cfg, const std::string& oracle);

/// Shared writers (CSV: RFC 4180, '.' decimal separator, %.17g payload).
void write_convergence_csv(const ConvergenceStudy& study, std::ostream& os);
void write_snapshot_csv(const ScalarField& u, std::ostream& os);
std::string metadata_json(const ExperimentConfig& cfg, const Trajectory& traj,
                          const std::string& kernel_name);

}  // namespace tclaw
