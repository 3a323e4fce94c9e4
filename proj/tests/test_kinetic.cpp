// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tclaw/homogeneous.hpp"
#include "tclaw/kinetic.hpp"
#include "testing.hpp"

using namespace tclaw;

namespace {

// Independent quadrature oracle for the chi cell integral: midpoint sums at a
// resolution far below the tolerance.
double chi_integral_quadrature(double u, double lo, double hi) {
  const int n = 200000;
  const double h = (hi - lo) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += maxwellian_value(u, lo + (i + 0.5) * h);
  return s * h;
}

// Brute-force defect oracle: cumulative sums outward from the zero edge,
// written independently of the library's kernel-based implementation.
std::vector<double> defect_brute_force(const KineticDensity& f_minus) {
  const ScalarField u = collapse(f_minus);
  const KineticDensity mf = lift(u, f_minus.vgrid);
  const VelocityGrid& vg = f_minus.vgrid;
  const std::size_t n = f_minus.row_size();
  std::vector<double> m((vg.n_cells() + 1) * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (int e = vg.zero_edge(); e < vg.n_cells(); ++e)
      m[(e + 1) * n + j] =
          m[e * n + j] + vg.dxi() * (mf.row(e)[j] - f_minus.row(e)[j]);
    for (int e = vg.zero_edge(); e-- > 0;)
      m[e * n + j] =
          m[(e + 1) * n + j] - vg.dxi() * (mf.row(e)[j] - f_minus.row(e)[j]);
  }
  return m;
}

}  // namespace

TEST_CASE("maxwellian point values") {
  CHECK(maxwellian_value(2.0, 1.5) == 1.0);
  CHECK(maxwellian_value(-1.0, -0.5) == -1.0);
  CHECK(maxwellian_value(0.5, 0.7) == 0.0);
  // closed-interval convention at both ends
  CHECK(maxwellian_value(0.5, 0.5) == 1.0);
  CHECK(maxwellian_value(0.5, 0.0) == 1.0);
  CHECK(maxwellian_value(0.0, 0.0) == 1.0);
  CHECK(maxwellian_value(-0.5, -0.5) == -1.0);
}

TEST_CASE("chi cell integral closed form") {
  CHECK(chi_cell_integral(0.5, 0.2, 0.4) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(chi_cell_integral(-0.3, -0.4, -0.2) == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(chi_cell_integral(1.0, 1.0, 1.2) == 0.0);
  CHECK_THROWS_AS(chi_cell_integral(0.5, -0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(chi_cell_integral(0.5, 0.4, 0.2), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(-1.5, 1.5);
  std::uniform_real_distribution<double> cell(0.01, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const double u = ud(rng);
    double lo = cell(rng), hi = lo + cell(rng);
    if (trial % 2) {
      const double t = lo;
      lo = -hi;
      hi = -t;
    }
    const double exact = chi_cell_integral(u, lo, hi);
    CHECK(exact == doctest::Approx(chi_integral_quadrature(u, lo, hi)).epsilon(1e-4));
  }
}

TEST_CASE("lift produces exact cell averages") {
  SpatialGrid g(4, 4.0);
  VelocityGrid vg(-1.0, 1.0, 8);  // edges at multiples of 0.25

  SUBCASE("zero field lifts to the zero density") {
    ScalarField u(g);
    const KineticDensity f = lift(u, vg);
    for (double v : f.values) CHECK(v == 0.0);
  }

  SUBCASE("u = 0.5 fills exactly the two cells of [0, 0.5]") {
    ScalarField u(g);
    for (auto& v : u.values) v = 0.5;
    const KineticDensity f = lift(u, vg);
    for (int l = 0; l < 8; ++l) {
      const double expect = (l == 4 || l == 5) ? 1.0 : 0.0;
      for (std::size_t j = 0; j < 4; ++j) CHECK(f.row(l)[j] == expect);
    }
  }

  SUBCASE("u = 0.3 gives the partial cell 0.05/0.25") {
    ScalarField u(g);
    for (auto& v : u.values) v = 0.3;
    const KineticDensity f = lift(u, vg);
    CHECK(f.row(4)[0] == 1.0);
    CHECK(f.row(5)[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(f.row(6)[0] == 0.0);
    CHECK(f.row(3)[0] == 0.0);
  }

  SUBCASE("range error names the offending value") {
    ScalarField u(g);
    u.values[2] = 1.75;
    CHECK_THROWS_WITH_AS(lift(u, vg), doctest::Contains("1.75"),
                         std::range_error);
  }

  SUBCASE("lift output is sign-pure and bounded by one") {
    std::mt19937_64 rng(5);
    const ScalarField u =
        testing::random_step_field(rng, g, 3, -0.95, 0.95);
    const KineticDensity f = lift(u, vg);
    for (int l = 0; l < vg.n_cells(); ++l)
      for (std::size_t j = 0; j < f.row_size(); ++j) {
        CHECK(std::abs(f.row(l)[j]) <= 1.0);
        if (vg.cell_positive(l))
          CHECK(f.row(l)[j] >= 0.0);
        else
          CHECK(f.row(l)[j] <= 0.0);
      }
  }
}

TEST_CASE("collapse inverts lift") {
  SpatialGrid g(64, 2.0);
  VelocityGrid vg(-1.0, 1.0, 64);  // dyadic width

  SUBCASE("zero density collapses to zero") {
    const KineticDensity f(g, vg);
    const ScalarField u = collapse(f);
    for (double v : u.values) CHECK(v == 0.0);
  }

  SUBCASE("direct weighted sum") {
    VelocityGrid vg8(-1.0, 1.0, 8);
    KineticDensity f(g, vg8);
    for (std::size_t j = 0; j < g.n_cells(); ++j) {
      f.row(4)[j] = 1.0;
      f.row(5)[j] = 0.2;
    }
    const ScalarField u = collapse(f);
    for (double v : u.values) CHECK(v == doctest::Approx(0.3).epsilon(1e-14));
  }

  SUBCASE("round trip is bitwise on a power-of-two lattice") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      const ScalarField u = testing::random_step_field(rng, g, 5, -0.99, 0.99);
      const ScalarField v = collapse(lift(u, vg));
      for (std::size_t j = 0; j < u.size(); ++j) CHECK(v.values[j] == u.values[j]);
    }
  }

  SUBCASE("round trip within 1e-12 on a non-dyadic lattice") {
    VelocityGrid odd(-0.9, 0.9, 30);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      const ScalarField u = testing::random_step_field(rng, g, 5, -0.85, 0.85);
      const ScalarField v = collapse(lift(u, odd));
      for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(v.values[j] == doctest::Approx(u.values[j]).epsilon(1e-12));
    }
  }

  SUBCASE("lift is idempotent through the collapse") {
    std::mt19937_64 rng(11);
    const ScalarField u = testing::random_step_field(rng, g, 6, -0.99, 0.99);
    const KineticDensity f1 = lift(u, vg);
    const KineticDensity f2 = lift(collapse(f1), vg);
    for (std::size_t i = 0; i < f1.values.size(); ++i)
      CHECK(f1.values[i] == f2.values[i]);
  }
}

TEST_CASE("defect from collapse") {
  SpatialGrid g(32, 2.0);
  VelocityGrid vg(-1.0, 1.0, 16);

  SUBCASE("equilibrium densities generate no defect") {
    std::mt19937_64 rng(13);
    const ScalarField u = testing::random_step_field(rng, g, 4, -0.9, 0.9);
    const CollapseWithDefect cd = defect_from_collapse(lift(u, vg), 0);
    for (double v : cd.defect.values) CHECK(std::abs(v) <= 1e-13);
  }

  SUBCASE("streamed shock data dissipates entropy, and the edge at 0 is 0") {
    SpatialGrid gs(128, 2.0);
    VelocityGrid vgs(-0.25, 1.25, 48);
    ScalarField u(gs);
    for (int j = 0; j < 128; ++j)
      u.values[j] = (gs.center(0, j) < 1.0) ? 1.0 : 0.0;
    const HomogeneousFlux flux = HomogeneousFlux::burgers();
    const double dz[] = {0.25};
    const KineticDensity fs = stream_homogeneous(lift(u, vgs), flux, dz);
    const CollapseWithDefect cd = defect_from_collapse(fs, 0);

    double min_v = 0.0, best_at_half = 0.0;
    for (double v : cd.defect.values) min_v = std::min(min_v, v);
    CHECK(min_v >= -1e-12);

    // edge nearest xi = 0.5 carries positive defect at the shock
    int e_half = 0;
    double best = 1e9;
    for (int e = 0; e <= vgs.n_cells(); ++e)
      if (std::abs(vgs.edge(e) - 0.5) < best) {
        best = std::abs(vgs.edge(e) - 0.5);
        e_half = e;
      }
    for (std::size_t j = 0; j < gs.n_cells(); ++j)
      best_at_half = std::max(best_at_half, cd.defect.at(j, e_half));
    CHECK(best_at_half > 0.0);

    for (std::size_t j = 0; j < gs.n_cells(); ++j)
      CHECK(cd.defect.at(j, vgs.zero_edge()) == 0.0);

    // against the independent cumulative-sum oracle
    const std::vector<double> oracle = defect_brute_force(fs);
    for (std::size_t i = 0; i < oracle.size(); ++i)
      CHECK(cd.defect.values[i] == doctest::Approx(oracle[i]).epsilon(1e-13));
  }

  SUBCASE("defect mass equals the xi-moment drop at the collapse") {
    SpatialGrid gs(64, 2.0);
    VelocityGrid vgs(-1.0, 1.0, 32);
    std::mt19937_64 rng(17);
    const ScalarField u = testing::random_signed_step_field(rng, gs, 5, 0.9);
    const HomogeneousFlux flux = HomogeneousFlux::burgers();
    const double dz[] = {0.3};
    const KineticDensity fs = stream_homogeneous(lift(u, vgs), flux, dz);
    const CollapseWithDefect cd = defect_from_collapse(fs, 0);
    // moment form: integral of m over xi equals integral of xi (f - Mf)
    const KineticDensity mf = lift(cd.u, vgs);
    double moment = 0.0;
    for (int l = 0; l < vgs.n_cells(); ++l)
      for (std::size_t j = 0; j < fs.row_size(); ++j)
        moment += vgs.midpoint(l) * (fs.row(l)[j] - mf.row(l)[j]);
    moment *= vgs.dxi() * gs.cell_volume();
    CHECK(defect_mass(cd.defect) == doctest::Approx(moment).epsilon(1e-10));
  }
}

TEST_CASE("norms and distances") {
  SpatialGrid g(512, 4.0);

  SUBCASE("identical fields are at distance zero") {
    std::mt19937_64 rng(19);
    const ScalarField u = testing::random_step_field(rng, g, 4, -1.0, 1.0);
    CHECK(l1_distance(u, u) == 0.0);
  }

  SUBCASE("constant offset integrates to |c| L") {
    ScalarField u(g), v(g);
    for (auto& x : v.values) x = -0.75;
    CHECK(l1_distance(u, v) == doctest::Approx(0.75 * 4.0).epsilon(1e-13));
  }

  SUBCASE("shifted indicators differ by the symmetric difference") {
    ScalarField u(g), v(g);
    for (int j = 0; j < 512; ++j) {
      const double x = g.center(0, j);
      u.values[j] = (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
      v.values[j] = (x > 0.5 && x < 1.5) ? 1.0 : 0.0;
    }
    CHECK(l1_distance(u, v) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("grid mismatch is rejected") {
    ScalarField u(g), v(SpatialGrid(256, 4.0));
    CHECK_THROWS_AS(l1_distance(u, v), std::invalid_argument);
  }

  SUBCASE("collapse is an L1 contraction between densities") {
    VelocityGrid vg(-1.0, 1.0, 32);
    SpatialGrid gs(64, 2.0);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
      KineticDensity f(gs, vg), h(gs, vg);
      // admissible random densities: sign-pure, bounded by one
      for (int l = 0; l < vg.n_cells(); ++l)
        for (std::size_t j = 0; j < f.row_size(); ++j) {
          std::uniform_real_distribution<double> d(0.0, 1.0);
          const double s = vg.cell_positive(l) ? 1.0 : -1.0;
          f.row(l)[j] = s * d(rng);
          h.row(l)[j] = s * d(rng);
        }
      CHECK(l1_distance(collapse(f), collapse(h)) <=
            kinetic_l1_distance(f, h) + 1e-12);
    }
  }
}

TEST_CASE("bv norm and the kinetic slice identity") {
  SpatialGrid g(64, 4.0);
  VelocityGrid vg(-1.0, 1.0, 8);  // dxi = 0.25

  SUBCASE("constant fields have zero variation") {
    ScalarField u(g);
    for (auto& v : u.values) v = 0.4;
    CHECK(bv_norm(u) == 0.0);
  }

  SUBCASE("a resolved indicator has variation two") {
    ScalarField u(g);
    for (int j = 0; j < 64; ++j)
      u.values[j] = (g.center(0, j) > 0.0 && g.center(0, j) < 1.0) ? 1.0 : 0.0;
    CHECK(bv_norm(u) == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("a staircase up and back down has variation two") {
    ScalarField u(g);
    for (int j = 0; j < 64; ++j) {
      const int level = std::min({j / 6, (63 - j) / 6, 4});
      u.values[j] = level / 4.0;
    }
    CHECK(bv_norm(u) == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("dimension two is rejected") {
    ScalarField u(SpatialGrid(4, 4, 1.0, 1.0));
    CHECK_THROWS_AS(bv_norm(u), std::invalid_argument);
  }

  SUBCASE("zero field gives (0, 0)") {
    ScalarField u(g);
    const BvIdentity id = bv_identity_check(u, vg);
    CHECK(id.lhs == 0.0);
    CHECK(id.rhs == 0.0);
  }

  SUBCASE("lattice-aligned indicator: both sides equal two") {
    ScalarField u(g);
    for (int j = 0; j < 64; ++j)
      u.values[j] = (g.center(0, j) > 0.0 && g.center(0, j) < 1.0) ? 1.0 : 0.0;
    const BvIdentity id = bv_identity_check(u, vg);
    CHECK(id.lhs == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(id.lhs - id.rhs) <= 1e-10);
  }

  SUBCASE("two-level field on the lattice: 2*(0.5 + 0.25)") {
    ScalarField u(g);
    for (int j = 0; j < 64; ++j)
      u.values[j] = (g.center(0, j) < 2.0) ? 0.5 : -0.25;
    const BvIdentity id = bv_identity_check(u, vg);
    CHECK(id.lhs == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(std::abs(id.lhs - id.rhs) <= 1e-10);

    // brute-force slice sum as an independent oracle
    const KineticDensity f = lift(u, vg);
    double rhs = 0.0;
    for (int l = 0; l < vg.n_cells(); ++l) {
      double tv = 0.0;
      for (std::size_t j = 0; j < f.row_size(); ++j)
        tv += std::abs(f.row(l)[(j + 1) % f.row_size()] - f.row(l)[j]);
      rhs += vg.dxi() * tv;
    }
    CHECK(id.rhs == doctest::Approx(rhs).epsilon(1e-14));
  }

  SUBCASE("randomized lattice-aligned suite holds to 1e-10") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
      const ScalarField u =
          testing::random_step_field(rng, g, 2 + trial % 5, -0.9, 0.9, vg.dxi());
      const BvIdentity id = bv_identity_check(u, vg);
      CHECK(std::abs(id.lhs - id.rhs) <= 1e-10);
    }
  }

  SUBCASE("off-lattice values stay within the quantization envelope") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const ScalarField u = testing::random_step_field(rng, g, 3, -0.9, 0.9);
      const BvIdentity id = bv_identity_check(u, vg);
      // as many as 2 jumps per piece boundary
      CHECK(std::abs(id.lhs - id.rhs) <= 2.0 * vg.dxi() * 6);
    }
  }
}
