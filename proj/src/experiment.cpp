// SPDX-License-Identifier: Apache-2.0
#include "tclaw/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tclaw/inhomogeneous.hpp"
#include "tclaw/kernels.hpp"
#include "tclaw/kinetic.hpp"

namespace tclaw {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SpatialGrid make_sgrid(const GridSpec& g) {
  if (g.nx.size() == 1) return SpatialGrid(g.nx[0], g.domain_length[0]);
  return SpatialGrid(g.nx[0], g.nx[1], g.domain_length[0], g.domain_length[1]);
}

ScalarField make_initial(const InitialSpec& s, const SpatialGrid& grid) {
  ScalarField u(grid);
  const double L = grid.length(0);
  const int ny = grid.dimension() == 2 ? grid.cells(1) : 1;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < grid.cells(0); ++ix) {
      const double x = grid.center(0, ix);
      double v = 0.0;
      if (s.kind == "riemann") {
        v = (x < s.x0) ? s.u_left : s.u_right;
      } else if (s.kind == "bump") {
        double r2 = (x - s.center) * (x - s.center);
        if (grid.dimension() == 2) {
          const double y = grid.center(1, iy);
          const double cy = 0.5 * grid.length(1);
          r2 += (y - cy) * (y - cy);
        }
        const double r = std::sqrt(r2) / s.width;
        const double c = (r < 1.0) ? std::cos(0.5 * M_PI * r) : 0.0;
        v = s.height * c * c;
      } else {  // sine
        v = s.amplitude * std::sin(2.0 * M_PI * x / L);
        if (grid.dimension() == 2) {
          const double y = grid.center(1, iy);
          v *= std::sin(2.0 * M_PI * y / grid.length(1));
        }
      }
      u.values[grid.index(ix, iy)] = v;
    }
  return u;
}

int steps_for(double T, double dt) { return static_cast<int>(std::lround(T / dt)); }

}  // namespace

ExperimentSetup build_setup(const ExperimentConfig& cfg) {
  SpatialGrid sgrid = make_sgrid(cfg.grid);
  VelocityGrid vgrid(cfg.grid.xi_min, cfg.grid.xi_max, cfg.grid.nxi);
  ScalarField u0 = make_initial(cfg.initial, sgrid);

  ExperimentSetup setup{std::move(sgrid), std::move(vgrid), std::move(u0),
                        false, HomogeneousFlux{}, InhomogeneousFlux{},
                        DriverPath{}};

  const bool flux_is_spatial =
      cfg.flux.kind == "sine-speed-inhomogeneous" || cfg.flux.spatial_factor;
  setup.inhomogeneous = flux_is_spatial || cfg.scheme == "inhomogeneous";
  if (flux_is_spatial && cfg.scheme == "homogeneous")
    throw std::invalid_argument(
        "config: scheme=homogeneous cannot run a spatially dependent flux");

  if (cfg.flux.kind == "burgers") {
    setup.hflux = HomogeneousFlux::burgers();
  } else if (cfg.flux.kind == "linear") {
    setup.hflux = HomogeneousFlux::linear(cfg.flux.speeds);
  } else if (cfg.flux.kind == "polynomial" && !cfg.flux.spatial_factor) {
    setup.hflux = HomogeneousFlux::polynomial(cfg.flux.coefficients);
  }

  if (setup.inhomogeneous) {
    if (cfg.flux.kind == "sine-speed-inhomogeneous") {
      setup.iflux = InhomogeneousFlux::sine_speed(cfg.flux.amplitude,
                                                  cfg.flux.wavenumber);
    } else if (cfg.flux.spatial_factor) {
      if (cfg.flux.coefficients.size() != 1)
        throw std::invalid_argument(
            "config: spatial polynomial flux supports one component");
      setup.iflux = InhomogeneousFlux::spatial_polynomial(
          cfg.flux.coefficients[0], cfg.flux.amplitude, cfg.flux.wavenumber);
    } else {
      setup.iflux = InhomogeneousFlux::from_homogeneous(setup.hflux);
    }
    if (setup.iflux.dimension != setup.sgrid.dimension())
      throw std::invalid_argument("config: flux/grid dimension mismatch");
  } else if (setup.hflux.A.empty()) {
    throw std::invalid_argument("config: flux preset did not resolve");
  }

  // One shared path, sampled at oversampling * (finest partition) intervals.
  int k_max = 1;
  for (double dt : cfg.time.dt_list) k_max = std::max(k_max, steps_for(cfg.time.T, dt));
  if (cfg.time.dt_ref > 0.0)
    k_max = std::max(k_max, steps_for(cfg.time.T, cfg.time.dt_ref));
  const int n_samples = cfg.path.oversampling * k_max + 1;
  setup.path = generate(cfg.path, cfg.time.T, n_samples);
  for (double dt : cfg.time.dt_list)
    setup.path = aligned_with(setup.path, TimePartition(cfg.time.T, steps_for(cfg.time.T, dt)));
  return setup;
}

void write_convergence_csv(const ConvergenceStudy& study, std::ostream& os) {
  os << "dt,delta_z,l1_error,bound,slope_cum\n";
  for (const auto& r : study.rows)
    os << fmt(r.dt) << "," << fmt(r.delta_z) << "," << fmt(r.l1_error) << ","
       << fmt(r.bound) << "," << fmt(r.slope_cum) << "\n";
}

void write_snapshot_csv(const ScalarField& u, std::ostream& os) {
  const SpatialGrid& g = u.grid;
  if (g.dimension() == 1) {
    os << "x,u\n";
    for (int j = 0; j < g.cells(0); ++j)
      os << fmt(g.center(0, j)) << "," << fmt(u.values[j]) << "\n";
    return;
  }
  os << "x,y,u\n";
  for (int iy = 0; iy < g.cells(1); ++iy)
    for (int ix = 0; ix < g.cells(0); ++ix)
      os << fmt(g.center(0, ix)) << "," << fmt(g.center(1, iy)) << ","
         << fmt(u.values[g.index(ix, iy)]) << "\n";
}

std::string metadata_json(const ExperimentConfig& cfg, const Trajectory& traj,
                          const std::string& kernel_name) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(serialize_config(cfg));
  j["version"] = "1.0.0";
  j["kernel_isa"] = kernel_name;
  j["seed"] = cfg.seed;
  j["defect_mass_per_step"] = traj.defect_mass_per_step;
  j["defect_min_per_step"] = traj.defect_min_per_step;
  j["cumulative_defect_mass"] = traj.cumulative_defect_mass;
  j["entropy_budget"] = traj.initial_half_l2_sq;
  j["l1"] = traj.l1;
  j["l2"] = traj.l2;
  j["linf"] = traj.linf;
  j["u_min"] = traj.u_min;
  j["u_max"] = traj.u_max;
  j["dz_step_norm"] = traj.dz_step_norm;
  j["kinetic_l1_pre_collapse"] = traj.kinetic_l1_pre;
  j["tightness"] = traj.tightness;
  j["velocity_widenings"] = traj.velocity_widenings;
  return j.dump(2);
}

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& p, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << content;
  if (!os.flush()) throw std::runtime_error("failed writing " + p.string());
  written.push_back(p.string());
}

Trajectory run_scheme(const ExperimentConfig& cfg, const ExperimentSetup& s,
                      const TimePartition& p,
                      const std::vector<double>& snapshot_times) {
  RunOptions opt;
  opt.snapshot_times = snapshot_times;
  opt.tightness_radius = cfg.tightness_radius;
  if (!s.inhomogeneous)
    return run_homogeneous(s.u0, s.hflux, s.vgrid, s.path, p, opt);
  InhomogeneousOptions iopt;
  iopt.run = opt;
  iopt.substeps_per_segment = cfg.characteristics_substeps;
  return run_inhomogeneous(s.u0, s.iflux, s.vgrid, s.path, p, iopt);
}

ExitReport guarded(const std::function<void(ExitReport&)>& body) {
  ExitReport rep;
  try {
    body(rep);
  } catch (const std::exception& e) {
    rep.status = 1;
    nlohmann::json err;
    err["error"] = e.what();
    rep.message = err.dump();
  }
  return rep;
}

double pick_godunov_dt(const ExperimentSetup& s, double horizon) {
  const FieldRange r = field_range(s.u0);
  double amax = 1e-12;
  for (int q = 0; q <= 256; ++q) {
    const double v = r.lo + (r.hi - r.lo) * q / 256.0;
    amax = std::max(amax, std::abs(s.hflux.a[0](v)));
  }
  const double dx = s.sgrid.cell_size(0);
  const int steps = std::max(1, static_cast<int>(std::ceil(horizon * amax / (0.9 * dx))));
  return horizon / steps;
}

}  // namespace

ExitReport run_experiment(const ExperimentConfig& cfg) {
  return guarded([&](ExitReport& rep) {
    const ExperimentSetup s = build_setup(cfg);
    const double dt = cfg.time.dt_list.front();
    const TimePartition p(cfg.time.T, steps_for(cfg.time.T, dt));
    const Trajectory traj = run_scheme(cfg, s, p, cfg.time.snapshots);

    fs::create_directories(cfg.output_dir);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      std::ostringstream os;
      write_snapshot_csv(traj.snapshots[i], os);
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
      write_file(fs::path(cfg.output_dir) / name, os.str(), rep.files_written);
    }
    write_file(fs::path(cfg.output_dir) / "metadata.json",
               metadata_json(cfg, traj, kernels::active().name),
               rep.files_written);
    rep.message = "run complete: " + std::to_string(p.K) + " steps";
  });
}

ExitReport run_convergence(const ExperimentConfig& cfg) {
  return guarded([&](ExitReport& rep) {
    if (!(cfg.time.dt_ref > 0.0))
      throw std::invalid_argument("converge: time.dt_ref is required");
    const ExperimentSetup s = build_setup(cfg);

    std::vector<int> k_list;
    for (double dt : cfg.time.dt_list)
      k_list.push_back(steps_for(cfg.time.T, dt));
    const int k_ref = steps_for(cfg.time.T, cfg.time.dt_ref);

    std::function<double(double)> bound;
    if (!s.inhomogeneous && s.sgrid.dimension() == 1) {
      const BoundReport base = theorem_bound_report(s.u0, s.hflux, 1.0);
      bound = [base](double dz) {
        const double root = std::sqrt(dz);
        return std::max(base.value, base.proof_variant) * root;
      };
    }

    const ConvergenceStudy study = self_convergence_study(
        [&](const TimePartition& p, const std::vector<double>& snaps) {
          return run_scheme(cfg, s, p, snaps);
        },
        s.path, cfg.time.T, k_list, k_ref, bound);

    fs::create_directories(cfg.output_dir);
    std::ostringstream os;
    write_convergence_csv(study, os);
    write_file(fs::path(cfg.output_dir) / "convergence.csv", os.str(),
               rep.files_written);

    const TimePartition pref(cfg.time.T, k_ref);
    const Trajectory ref = run_scheme(cfg, s, pref, {cfg.time.T});
    write_file(fs::path(cfg.output_dir) / "metadata.json",
               metadata_json(cfg, ref, kernels::active().name),
               rep.files_written);
    char msg[128];
    std::snprintf(msg, sizeof msg, "converge complete: slope=%.4f", study.slope);
    rep.message = msg;
  });
}

ExitReport run_compare(const ExperimentConfig& cfg, const std::string& oracle) {
  return guarded([&](ExitReport& rep) {
    const ExperimentSetup s = build_setup(cfg);
    const double T = cfg.time.T;
    const double dt = cfg.time.dt_list.front();
    const TimePartition p(T, steps_for(T, dt));
    const Trajectory traj = run_scheme(cfg, s, p, {T});
    const ScalarField& uT = traj.at_time(T);

    ScalarField ref(s.sgrid);
    if (oracle == "riemann") {
      if (cfg.initial.kind != "riemann")
        throw std::invalid_argument("compare --oracle riemann needs riemann data");
      ref = riemann_torus_averages(cfg.initial.u_left, cfg.initial.u_right,
                                   cfg.initial.x0, T, s.sgrid);
    } else if (oracle == "godunov") {
      if (s.inhomogeneous)
        throw std::invalid_argument("godunov oracle needs a homogeneous flux");
      ref = godunov_run(s.u0, s.hflux, T, pick_godunov_dt(s, T));
    } else if (oracle == "timechange") {
      if (s.inhomogeneous || s.path.dim != 1)
        throw std::invalid_argument(
            "timechange oracle needs a homogeneous flux and a single driver");
      const double tau = s.path.at(T)[0] - s.path.at(0.0)[0];
      if (!(tau > 0.0))
        throw std::invalid_argument("timechange oracle needs z(T) > z(0)");
      ref = godunov_run(s.u0, s.hflux, tau, pick_godunov_dt(s, tau));
    } else if (oracle == "bgk") {
      if (s.inhomogeneous)
        throw std::invalid_argument("bgk oracle needs a homogeneous flux");
      const double eps = dt / 100.0;
      ref = bgk_run(s.u0, s.hflux, s.vgrid, s.path, p, eps);
    } else {
      throw std::invalid_argument("unknown oracle: " + oracle);
    }

    const double err = l1_distance(uT, ref);
    nlohmann::json j;
    j["oracle"] = oracle;
    j["T"] = T;
    j["dt"] = dt;
    j["l1_error"] = err;
    fs::create_directories(cfg.output_dir);
    write_file(fs::path(cfg.output_dir) / "compare.json", j.dump(2),
               rep.files_written);
    rep.message = "compare vs " + oracle + ": l1_error=" + fmt(err);
  });
}

}  // namespace tclaw
