// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tclaw/driver_path.hpp"

namespace tclaw {

struct FluxSpec {
  std::string kind = "burgers";  // burgers | linear | polynomial |
                                 // sine-speed-inhomogeneous
  std::vector<double> speeds = {1.0};                 // linear
  std::vector<std::vector<double>> coefficients;      // polynomial, per comp.
  bool spatial_factor = false;                        // polynomial only
  double amplitude = 0.5;   // spatial factor / sine-speed
  double wavenumber = 1.0;  // spatial factor / sine-speed
};

struct InitialSpec {
  std::string kind = "bump";  // riemann | bump | sine
  double u_left = 1.0;        // riemann
  double u_right = 0.0;       // riemann
  double x0 = 0.5;            // riemann jump position
  double center = 1.0;        // bump
  double width = 0.5;         // bump
  double height = 1.0;        // bump
  double amplitude = 0.5;     // sine
};

struct GridSpec {
  std::vector<int> nx = {256};
  std::vector<double> domain_length = {2.0};
  int nxi = 256;
  double xi_min = -1.0;
  double xi_max = 1.0;
};

struct TimeSpec {
  double T = 0.5;
  std::vector<double> dt_list;     // defaulted to {T/100}
  double dt_ref = 0.0;             // 0: unset (required by converge)
  std::vector<double> snapshots;   // defaulted to {T}
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::string scheme = "auto";  // auto | homogeneous | inhomogeneous
  FluxSpec flux;
  InitialSpec initial;
  GridSpec grid;
  PathSpec path;
  bool path_seed_set = false;  // when false, path.seed follows the run seed
  TimeSpec time;
  std::string output_dir = "out";
  int characteristics_substeps = 8;
  double tightness_radius = 0.0;
};

/// Parse a JSON document. Unknown keys are fatal and reported with their
/// field path; range violations likewise.
ExperimentConfig parse_config(const std::string& text);

/// Canonical JSON form with every field filled in; parse(serialize(c)) is the
/// identity on normalized configs.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace tclaw
