// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tclaw/driver_path.hpp"

using namespace tclaw;

namespace {

DriverPath three_point_path() {
  // samples t = {0, 0.5, 1}, z = {0, 1, 0.5}
  DriverPath z;
  z.dim = 1;
  z.times = {0.0, 0.5, 1.0};
  z.values = {0.0, 1.0, 0.5};
  z.validate();
  return z;
}

}  // namespace

TEST_CASE("deterministic path samples the line exactly") {
  PathSpec spec;
  spec.slope = {1.0};
  const DriverPath z = generate(spec, 1.0, 11);
  REQUIRE(z.n_samples() == 11);
  for (std::size_t i = 0; i < z.n_samples(); ++i)
    CHECK(z.value(i, 0) == z.times[i]);

  PathSpec v;
  v.slope = {2.0, -1.0};
  const DriverPath z2 = generate(v, 2.0, 5);
  CHECK(z2.dim == 2);
  CHECK(z2.at(1.5)[0] == doctest::Approx(3.0));
  CHECK(z2.at(1.5)[1] == doctest::Approx(-1.5));
}

TEST_CASE("increment") {
  const DriverPath z = three_point_path();

  SUBCASE("zero-length increments vanish") {
    CHECK(increment(z, 0.3, 0.3)[0] == 0.0);
  }

  SUBCASE("slope-one path increments by the time difference") {
    PathSpec spec;
    const DriverPath line = generate(spec, 1.0, 11);
    CHECK(increment(line, 0.2, 0.7)[0] == doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("interpolated three-point example") {
    // z(0.75) - z(0.25) = 0.75 - 0.5
    CHECK(increment(z, 0.25, 0.75)[0] == doctest::Approx(0.25).epsilon(1e-14));
  }

  SUBCASE("out-of-range times are rejected") {
    CHECK_THROWS_AS(increment(z, -0.5, 0.5), std::out_of_range);
    CHECK_THROWS_AS(increment(z, 0.0, 1.5), std::out_of_range);
    CHECK_THROWS_AS(increment(z, 0.7, 0.3), std::invalid_argument);
  }

  SUBCASE("additivity over a split point") {
    PathSpec spec;
    spec.kind = PathKind::brownian;
    spec.seed = 99;
    const DriverPath b = generate(spec, 1.0, 65);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      double a = t(rng), c = t(rng), m = t(rng);
      if (a > c) std::swap(a, c);
      const double mid = a + (c - a) * m;
      const double whole = increment(b, a, c)[0];
      const double parts = increment(b, a, mid)[0] + increment(b, mid, c)[0];
      CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
    }
  }
}

TEST_CASE("delta_z") {
  SUBCASE("slope-one path: window width") {
    PathSpec spec;
    const DriverPath z = generate(spec, 1.0, 101);
    CHECK(delta_z(z, TimePartition(1.0, 10)) == doctest::Approx(0.1).epsilon(1e-13));
  }

  SUBCASE("interior sample dominates the endpoint") {
    const DriverPath z = three_point_path();
    CHECK(delta_z(z, TimePartition(1.0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_z(z, TimePartition(1.0, 1), /*endpoints_only=*/true) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("constant path has zero oscillation") {
    PathSpec spec;
    spec.slope = {0.0};
    const DriverPath z = generate(spec, 1.0, 11);
    CHECK(delta_z(z, TimePartition(1.0, 4)) == 0.0);
  }

  SUBCASE("zigzag attains the full excursion once windows cover a half period") {
    PathSpec spec;
    spec.kind = PathKind::zigzag;
    spec.period = 0.4;
    spec.amplitude = 0.35;
    const DriverPath z = generate(spec, 1.0, 41);
    for (int K : {1, 2, 5}) {  // dt = 1, 0.5, 0.2 >= period/2
      CHECK(delta_z(z, TimePartition(1.0, K)) ==
            doctest::Approx(0.35).epsilon(1e-13));
    }
  }

  SUBCASE("monotone paths refine monotonically") {
    PathSpec spec;
    spec.slope = {1.3};
    const DriverPath z = generate(spec, 1.0, 33);
    double prev = delta_z(z, TimePartition(1.0, 1));
    for (int K : {2, 4, 8, 16}) {
      const double cur = delta_z(z, TimePartition(1.0, K));
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
  }

  SUBCASE("general refinement is bounded by twice the coarse oscillation") {
    PathSpec spec;
    spec.kind = PathKind::brownian;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      spec.seed = seed;
      const DriverPath z = generate(spec, 1.0, 129);
      for (int K : {1, 2, 4, 8}) {
        const double coarse = delta_z(z, TimePartition(1.0, K));
        const double fine = delta_z(z, TimePartition(1.0, 2 * K));
        CHECK(fine <= 2.0 * coarse + 1e-15);
      }
    }
  }
}

TEST_CASE("reverse") {
  SUBCASE("three-point reflection") {
    const DriverPath z = three_point_path();
    const DriverPath r = reverse(z, 1.0);
    REQUIRE(r.n_samples() == 3);
    CHECK(r.times[0] == 0.0);
    CHECK(r.times[1] == doctest::Approx(0.5));
    CHECK(r.times[2] == doctest::Approx(1.0));
    CHECK(r.value(0, 0) == 0.5);
    CHECK(r.value(1, 0) == 1.0);
    CHECK(r.value(2, 0) == 0.0);
  }

  SUBCASE("slope-one path reverses to 1 - t") {
    PathSpec spec;
    const DriverPath z = generate(spec, 1.0, 21);
    const DriverPath r = reverse(z, 1.0);
    for (std::size_t i = 0; i < r.n_samples(); ++i)
      CHECK(r.value(i, 0) == doctest::Approx(1.0 - r.times[i]).epsilon(1e-14));
  }

  SUBCASE("double reversal restores the restriction") {
    PathSpec spec;
    spec.kind = PathKind::brownian;
    spec.seed = 31;
    const DriverPath z = generate(spec, 1.0, 65);
    for (double t1 : {1.0, 0.732, 0.5}) {
      const DriverPath rr = reverse(reverse(z, t1), t1);
      DriverPath expect = z;
      expect.ensure_sample(t1);
      const std::size_t cut = expect.segment_of(t1);
      const std::size_t last =
          (std::abs(expect.times[cut] - t1) <= 1e-12) ? cut : cut + 1;
      REQUIRE(rr.n_samples() == last + 1);
      for (std::size_t i = 0; i <= last; ++i) {
        CHECK(rr.times[i] == doctest::Approx(expect.times[i]).epsilon(1e-12));
        CHECK(rr.value(i, 0) == expect.value(i, 0));  // values copied bitwise
      }
    }
  }

  SUBCASE("t1 outside the domain is rejected") {
    CHECK_THROWS_AS(reverse(three_point_path(), 1.5), std::out_of_range);
  }
}

TEST_CASE("brownian generation") {
  SUBCASE("bit-reproducible for a fixed seed") {
    PathSpec spec;
    spec.kind = PathKind::brownian;
    spec.seed = 12345;
    const DriverPath a = generate(spec, 1.0, 257);
    const DriverPath b = generate(spec, 1.0, 257);
    CHECK(a.values == b.values);
    spec.seed = 12346;
    const DriverPath c = generate(spec, 1.0, 257);
    CHECK(a.values != c.values);
  }

  SUBCASE("terminal variance matches the Monte Carlo estimate") {
    double sum = 0.0, sum2 = 0.0;
    const int n_paths = 10000;
    for (int i = 0; i < n_paths; ++i) {
      PathSpec spec;
      spec.kind = PathKind::brownian;
      spec.seed = 1000 + static_cast<std::uint64_t>(i);
      const DriverPath z = generate(spec, 1.0, 17);
      const double v = z.at(1.0)[0];
      sum += v;
      sum2 += v * v;
    }
    const double var = sum2 / n_paths - (sum / n_paths) * (sum / n_paths);
    CHECK(var > 0.95);
    CHECK(var < 1.05);
  }
}

TEST_CASE("fractional Brownian motion") {
  SUBCASE("H = 1/2 synthesis covariance equals the Brownian min(s, t)") {
    const int n = 33;
    double worst = 0.0;
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        const double s = i / double(n - 1);
        const double t = j / double(n - 1);
        const double cov_fbm = 0.5 * (s + t - std::abs(t - s));
        worst = std::max(worst, std::abs(cov_fbm - std::min(s, t)));
      }
    CHECK(worst <= 1e-10);
  }

  SUBCASE("sampled fbm at H = 1/2 has unit terminal variance") {
    PathSpec spec;
    spec.kind = PathKind::fbm;
    spec.hurst = 0.5;
    double sum2 = 0.0;
    const int n_paths = 2000;
    for (int i = 0; i < n_paths; ++i) {
      spec.seed = 77 + static_cast<std::uint64_t>(i);
      const DriverPath z = generate(spec, 1.0, 17);
      const double v = z.at(1.0)[0];
      sum2 += v * v;
    }
    CHECK(sum2 / n_paths == doctest::Approx(1.0).epsilon(0.08));
  }

  SUBCASE("reproducible, and parameter errors are loud") {
    PathSpec spec;
    spec.kind = PathKind::fbm;
    spec.hurst = 0.75;
    spec.seed = 5;
    const DriverPath a = generate(spec, 1.0, 65);
    const DriverPath b = generate(spec, 1.0, 65);
    CHECK(a.values == b.values);

    spec.hurst = 1.5;
    CHECK_THROWS_AS(generate(spec, 1.0, 65), std::invalid_argument);
    spec.hurst = 0.5;
    CHECK_THROWS_AS(generate(spec, 1.0, 5000), std::invalid_argument);
  }
}

TEST_CASE("partition alignment inserts the t_k as samples") {
  PathSpec spec;
  spec.kind = PathKind::brownian;
  spec.seed = 3;
  const DriverPath z = generate(spec, 0.5, 41);
  const TimePartition p(0.5, 7);
  const DriverPath a = aligned_with(z, p);
  for (int k = 0; k <= p.K; ++k) {
    const std::size_t i = a.segment_of(p.t(k));
    const bool hit = std::abs(a.times[i] - p.t(k)) <= 1e-12 ||
                     std::abs(a.times[std::min(i + 1, a.n_samples() - 1)] -
                              p.t(k)) <= 1e-12;
    CHECK(hit);
  }
  // alignment must not change the function
  for (double t : {0.01, 0.2, 0.33, 0.49})
    CHECK(a.at(t)[0] == doctest::Approx(z.at(t)[0]).epsilon(1e-14));
}

TEST_CASE("path csv round trip") {
  PathSpec spec;
  spec.kind = PathKind::brownian;
  spec.seed = 8;
  spec.dimension = 2;
  const DriverPath z = generate(spec, 1.0, 33);
  std::stringstream ss;
  write_path_csv(z, ss);
  const DriverPath r = read_path_csv(ss);
  CHECK(r.dim == 2);
  REQUIRE(r.n_samples() == z.n_samples());
  CHECK(r.times == z.times);  // %.17g round-trips doubles exactly
  CHECK(r.values == z.values);
}
