// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tclaw {

/// Sampled continuous driving signal z on [0, T], piecewise linear between
/// samples. Values are stored flat, dimension entries per sample.
struct DriverPath {
  std::vector<double> times;   // strictly increasing, times[0] == 0
  std::vector<double> values;  // times.size() * dim entries
  int dim = 1;

  std::size_t n_samples() const { return times.size(); }
  double duration() const { return times.back(); }
  double value(std::size_t i, int d) const { return values[i * dim + d]; }

  /// z(t) by linear interpolation; t must lie in [0, duration].
  std::vector<double> at(double t) const;
  /// Index of the last sample with time <= t.
  std::size_t segment_of(double t) const;
  /// Insert an interpolated sample at t unless one already sits within tol.
  void ensure_sample(double t, double tol = 1e-12);

  void validate() const;  // invariants: monotone times, finite values
};

/// Uniform partition t_k = k*T/K of [0, T].
struct TimePartition {
  double T = 1.0;
  int K = 1;

  TimePartition(double T_, int K_);
  double dt() const { return T / K; }
  double t(int k) const { return (T * k) / K; }
};

enum class PathKind { deterministic, zigzag, brownian, fbm };

struct PathSpec {
  PathKind kind = PathKind::deterministic;
  int dimension = 1;
  std::vector<double> slope = {1.0};  // deterministic: z(t) = slope * t
  double period = 1.0;                // zigzag
  double amplitude = 1.0;             // zigzag
  std::uint64_t seed = 0;             // brownian, fbm
  int oversampling = 16;              // samples per scheme step (harness use)
  double hurst = 0.5;                 // fbm
};

PathKind path_kind_from_string(const std::string& s);
std::string to_string(PathKind k);

/// Sample a driving signal on [0, T] with n_samples points (zigzag kink
/// points are inserted on top so the triangle wave is represented exactly).
/// brownian: cumulative independent Gaussian increments of variance equal to
/// the sample spacing. fbm: exact-covariance Gaussian path through a dense
/// Cholesky factorization; n_samples is limited to 4097.
DriverPath generate(const PathSpec& spec, double T, int n_samples);

/// z(t) - z(s), componentwise.
std::vector<double> increment(const DriverPath& z, double s, double t);

/// Largest Euclidean oscillation of z away from the left endpoint of a
/// partition window: max_k sup_{t in [t_k, t_{k+1}]} |z_t - z_{t_k}|. The sup
/// is exact for piecewise-linear paths when evaluated at samples and window
/// endpoints. With endpoints_only, only |z_{t_{k+1}} - z_{t_k}| is taken.
double delta_z(const DriverPath& z, const TimePartition& p,
               bool endpoints_only = false);

/// Time reversal z^{t1}(t) = z(t1 - t) on [0, t1].
DriverPath reverse(const DriverPath& z, double t1);

/// Copy of z with every partition point inserted as a sample.
DriverPath aligned_with(const DriverPath& z, const TimePartition& p);

/// CSV with header t,z1,...,zN; full double precision.
void write_path_csv(const DriverPath& z, std::ostream& os);
DriverPath read_path_csv(std::istream& is);

}  // namespace tclaw
