// SPDX-License-Identifier: Apache-2.0
#include "tclaw/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "tclaw/homogeneous.hpp"
#include "tclaw/inhomogeneous.hpp"
#include "tclaw/kernels.hpp"
#include "tclaw/kinetic.hpp"
#include "tclaw/oracles.hpp"

namespace tclaw {

namespace {

struct Check {
  std::string name;
  std::function<bool(std::string&)> run;
};

// Random single-signed step function with values on the xi-edge lattice of
// the given cell width.
ScalarField random_field(std::mt19937_64& rng, const SpatialGrid& g,
                         double dxi, bool lattice) {
  std::uniform_int_distribution<int> npieces(2, 6);
  std::uniform_real_distribution<double> level(0.1, 0.9);
  std::uniform_int_distribution<int> sign(0, 1);
  const double sgn = sign(rng) ? 1.0 : -1.0;
  ScalarField u(g);
  const int pieces = npieces(rng);
  std::vector<int> cuts = {0, static_cast<int>(g.n_cells())};
  std::uniform_int_distribution<int> cut(1, static_cast<int>(g.n_cells()) - 1);
  for (int i = 0; i < pieces - 1; ++i) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double v = sgn * level(rng);
    if (lattice) v = std::round(v / dxi) * dxi;
    for (int j = cuts[p]; j < cuts[p + 1]; ++j) u.values[j] = v;
  }
  return u;
}

bool kernel_equivalence(std::string& detail) {
  const auto* vec = kernels::avx2();
  if (!vec) {
    detail = "avx2 unavailable, scalar only";
    return true;
  }
  const auto& ref = kernels::scalar();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 129u}) {
    std::vector<double> x(n), y(n), o1(n), o2(n);
    for (auto& v : x) v = val(rng);
    for (auto& v : y) v = val(rng);
    if (ref.sum(x.data(), n) != vec->sum(x.data(), n) ||
        ref.sum_abs(x.data(), n) != vec->sum_abs(x.data(), n) ||
        ref.sum_sq(x.data(), n) != vec->sum_sq(x.data(), n) ||
        ref.sum_abs_diff(x.data(), y.data(), n) !=
            vec->sum_abs_diff(x.data(), y.data(), n) ||
        ref.max_abs(x.data(), n) != vec->max_abs(x.data(), n)) {
      detail = "reduction mismatch at n=" + std::to_string(n);
      return false;
    }
    ref.lift_row(x.data(), n, 0.25, 0.5, 4.0, true, o1.data());
    vec->lift_row(x.data(), n, 0.25, 0.5, 4.0, true, o2.data());
    for (std::size_t i = 0; i < n; ++i)
      if (o1[i] != o2[i]) {
        detail = "lift_row mismatch";
        return false;
      }
  }
  detail = "scalar == avx2";
  return true;
}

bool lift_collapse_roundtrip(std::string& detail) {
  std::mt19937_64 rng(11);
  const SpatialGrid g(64, 2.0);
  const VelocityGrid vg(-1.0, 1.0, 64);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField u = random_field(rng, g, vg.dxi(), false);
    const ScalarField v = collapse(lift(u, vg));
    for (std::size_t j = 0; j < u.size(); ++j)
      worst = std::max(worst, std::abs(u.values[j] - v.values[j]));
  }
  detail = "max roundtrip error " + std::to_string(worst);
  return worst <= 1e-12;
}

bool defect_laws(std::string& detail) {
  std::mt19937_64 rng(13);
  const SpatialGrid g(48, 2.0);
  const VelocityGrid vg(-1.0, 1.0, 32);
  std::uniform_real_distribution<double> dzd(-0.5, 0.5);
  const HomogeneousFlux flux = HomogeneousFlux::burgers();
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const ScalarField u = random_field(rng, g, vg.dxi(), false);
    const double dz[] = {dzd(rng)};
    const KineticDensity fs = stream_homogeneous(lift(u, vg), flux, dz);
    const CollapseWithDefect cd = defect_from_collapse(fs, trial);
    for (double v : cd.defect.values) worst = std::min(worst, v);
  }
  detail = "min defect value " + std::to_string(worst);
  return worst >= -1e-12;
}

bool mass_and_contraction(std::string& detail) {
  std::mt19937_64 rng(17);
  const SpatialGrid g(64, 2.0);
  const VelocityGrid vg(-1.0, 1.0, 64);
  const HomogeneousFlux flux = HomogeneousFlux::burgers();
  ScalarField u1 = random_field(rng, g, vg.dxi(), false);
  ScalarField u2 = random_field(rng, g, vg.dxi(), false);
  const double mass0 = kernels::active().sum(u1.data(), u1.size());
  double dist = l1_distance(u1, u2);
  std::uniform_real_distribution<double> dzd(-0.3, 0.3);
  for (int k = 0; k < 20; ++k) {
    const double dz[] = {dzd(rng)};
    u1 = tc_step(u1, flux, vg, dz, k).u;
    u2 = tc_step(u2, flux, vg, dz, k).u;
    const double d = l1_distance(u1, u2);
    if (d > dist + 1e-12) {
      detail = "L1 expansion at step " + std::to_string(k);
      return false;
    }
    dist = d;
  }
  const double mass1 = kernels::active().sum(u1.data(), u1.size());
  detail = "mass drift " + std::to_string(std::abs(mass1 - mass0));
  return std::abs(mass1 - mass0) <= 1e-12 * std::max(1.0, std::abs(mass0));
}

bool bv_identity(std::string& detail) {
  std::mt19937_64 rng(19);
  const SpatialGrid g(48, 2.0);
  const VelocityGrid vg(-1.0, 1.0, 32);
  double worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const ScalarField u = random_field(rng, g, vg.dxi(), true);
    const BvIdentity id = bv_identity_check(u, vg);
    worst = std::max(worst, std::abs(id.lhs - id.rhs));
  }
  detail = "max |lhs-rhs| " + std::to_string(worst);
  return worst <= 1e-10;
}

bool path_properties(std::string& detail) {
  PathSpec spec;
  spec.kind = PathKind::zigzag;
  spec.period = 0.25;
  spec.amplitude = 0.7;
  const DriverPath z = generate(spec, 1.0, 257);
  for (int K : {2, 4, 8}) {
    const double dz = delta_z(z, TimePartition(1.0, K));
    if (std::abs(dz - 0.7) > 1e-12) {
      detail = "zigzag excursion " + std::to_string(dz);
      return false;
    }
  }
  // additivity of increments
  PathSpec bspec;
  bspec.kind = PathKind::brownian;
  bspec.seed = 5;
  const DriverPath b = generate(bspec, 1.0, 129);
  const double lhs = increment(b, 0.1, 0.9)[0];
  const double rhs = increment(b, 0.1, 0.4)[0] + increment(b, 0.4, 0.9)[0];
  detail = "increment additivity " + std::to_string(std::abs(lhs - rhs));
  return std::abs(lhs - rhs) <= 1e-12;
}

bool characteristics_flow(std::string& detail) {
  const InhomogeneousFlux flux = InhomogeneousFlux::sine_speed(0.5, 1.0);
  PathSpec spec;
  spec.slope = {1.0};
  const DriverPath z = generate(spec, 0.1, 17);
  const CharacteristicFlow flow(flux, z, 0.1, 8);
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      pts.push_back({{0.3 + 1.1 * i, 0.0}, -0.8 + 0.4 * j});
  const FlowDiagnostics d = flow_diagnostics(flow, pts, 0.1);
  detail = "detJ dev " + std::to_string(d.max_det_jacobian_dev) + ", inverse " +
           std::to_string(d.max_inverse_defect);
  return d.max_det_jacobian_dev <= 1e-5 && d.max_sign_violation <= 1e-8 &&
         d.max_inverse_defect <= 1e-7;
}

}  // namespace

bool run_selftest(std::ostream& os) {
  const std::vector<Check> checks = {
      {"kernel-equivalence", kernel_equivalence},
      {"lift-collapse-roundtrip", lift_collapse_roundtrip},
      {"defect-nonnegativity", defect_laws},
      {"mass-conservation-and-contraction", mass_and_contraction},
      {"bv-identity", bv_identity},
      {"driver-path-properties", path_properties},
      {"characteristic-flow", characteristics_flow},
  };
  bool ok = true;
  for (const auto& c : checks) {
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    os << (pass ? "PASS" : "FAIL") << "  " << c.name << " (" << detail << ")\n";
    ok = ok && pass;
  }
  return ok;
}

}  // namespace tclaw
