// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tclaw/config.hpp"
#include "tclaw/driver_path.hpp"
#include "tclaw/experiment.hpp"
#include "tclaw/kernels.hpp"
#include "tclaw/selftest.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

tclaw::ExperimentConfig load_config(const std::string& path,
                                    const std::string& seed_override,
                                    const std::string& out_override) {
  tclaw::ExperimentConfig cfg = tclaw::parse_config(slurp(path));
  if (!seed_override.empty()) {
    cfg.seed = std::stoull(seed_override);
    if (!cfg.path_seed_set) cfg.path.seed = cfg.seed;
  }
  if (!out_override.empty()) cfg.output_dir = out_override;
  return cfg;
}

int finish(const tclaw::ExitReport& rep) {
  if (rep.status == 0) {
    std::cout << rep.message << "\n";
    for (const auto& f : rep.files_written) std::cout << "wrote " << f << "\n";
  } else {
    std::cerr << rep.message << "\n";
  }
  return rep.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transport-collapse solver for scalar conservation laws with "
               "rough drivers"};
  app.require_subcommand(1);

  std::string config_path, seed_override, out_override, oracle, spec_path,
      out_csv;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->required();
    cmd->add_option("--seed", seed_override, "override the run seed");
    cmd->add_option("--out", out_override, "override the output directory");
  };

  CLI::App* run = app.add_subcommand("run", "single simulation");
  add_common(run);

  CLI::App* conv = app.add_subcommand("converge", "self-convergence study");
  add_common(conv);

  CLI::App* cmp = app.add_subcommand("compare", "scheme vs oracle");
  add_common(cmp);
  cmp->add_option("--oracle", oracle, "riemann|godunov|bgk|timechange")
      ->required();

  CLI::App* self = app.add_subcommand("selftest", "run the invariant suites");

  CLI::App* paths = app.add_subcommand("paths", "generate a driver path CSV");
  paths->add_option("--spec", spec_path, "JSON path spec file")->required();
  paths->add_option("--out", out_csv, "output CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return finish(tclaw::run_experiment(
          load_config(config_path, seed_override, out_override)));
    if (conv->parsed())
      return finish(tclaw::run_convergence(
          load_config(config_path, seed_override, out_override)));
    if (cmp->parsed())
      return finish(tclaw::run_compare(
          load_config(config_path, seed_override, out_override), oracle));
    if (self->parsed()) {
      std::cout << "kernels: " << tclaw::kernels::active().name << "\n";
      return tclaw::run_selftest(std::cout) ? 0 : 1;
    }
    if (paths->parsed()) {
      // spec file: {"path": {...}, "T": 1.0, "n_samples": 257}
      tclaw::ExperimentConfig cfg = tclaw::parse_config(slurp(spec_path));
      const int k_max = static_cast<int>(
          std::lround(cfg.time.T / cfg.time.dt_list.front()));
      const int n = cfg.path.oversampling * k_max + 1;
      const tclaw::DriverPath z = tclaw::generate(cfg.path, cfg.time.T, n);
      std::ofstream os(out_csv, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + out_csv);
      tclaw::write_path_csv(z, os);
      const tclaw::TimePartition p(cfg.time.T, k_max);
      std::cout << "wrote " << out_csv << " (" << z.n_samples()
                << " samples, delta_z=" << tclaw::delta_z(z, p) << ")\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
