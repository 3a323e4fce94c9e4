// SPDX-License-Identifier: Apache-2.0
#include "tclaw/driver_path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tclaw {

void DriverPath::validate() const {
  if (times.size() < 2) throw std::invalid_argument("path: need >= 2 samples");
  if (times.front() != 0.0) throw std::invalid_argument("path: times[0] must be 0");
  if (dim < 1) throw std::invalid_argument("path: dimension must be >= 1");
  if (values.size() != times.size() * static_cast<std::size_t>(dim))
    throw std::invalid_argument("path: value/time size mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("path: times must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("path: non-finite value");
}

std::size_t DriverPath::segment_of(double t) const {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
  return std::min(i, times.size() - 2);
}

std::vector<double> DriverPath::at(double t) const {
  if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
    throw std::out_of_range("path: time " + std::to_string(t) +
                            " outside [0, " + std::to_string(times.back()) + "]");
  t = std::clamp(t, times.front(), times.back());
  const std::size_t i = segment_of(t);
  const double w = (t - times[i]) / (times[i + 1] - times[i]);
  std::vector<double> out(dim);
  for (int d = 0; d < dim; ++d)
    out[d] = value(i, d) + w * (value(i + 1, d) - value(i, d));
  return out;
}

void DriverPath::ensure_sample(double t, double tol) {
  if (t < -tol || t > times.back() + tol)
    throw std::out_of_range("path: cannot insert sample outside the domain");
  t = std::clamp(t, 0.0, times.back());
  const std::size_t i = segment_of(t);
  if (std::abs(times[i] - t) <= tol || std::abs(times[i + 1] - t) <= tol)
    return;
  const auto v = at(t);
  times.insert(times.begin() + i + 1, t);
  values.insert(values.begin() + (i + 1) * dim, v.begin(), v.end());
}

TimePartition::TimePartition(double T_, int K_) : T(T_), K(K_) {
  if (!(T > 0.0)) throw std::invalid_argument("partition: T must be positive");
  if (K < 1) throw std::invalid_argument("partition: K must be >= 1");
}

PathKind path_kind_from_string(const std::string& s) {
  if (s == "deterministic") return PathKind::deterministic;
  if (s == "zigzag") return PathKind::zigzag;
  if (s == "brownian") return PathKind::brownian;
  if (s == "fbm") return PathKind::fbm;
  throw std::invalid_argument("unknown path kind: " + s);
}

std::string to_string(PathKind k) {
  switch (k) {
    case PathKind::deterministic: return "deterministic";
    case PathKind::zigzag: return "zigzag";
    case PathKind::brownian: return "brownian";
    case PathKind::fbm: return "fbm";
  }
  return "?";
}

namespace {

std::vector<double> uniform_times(double T, int n_samples) {
  std::vector<double> t(n_samples);
  for (int i = 0; i < n_samples; ++i) t[i] = (T * i) / (n_samples - 1);
  t.front() = 0.0;
  t.back() = T;
  return t;
}

DriverPath deterministic_path(const PathSpec& spec, double T, int n) {
  DriverPath z;
  z.dim = static_cast<int>(spec.slope.size());
  z.times = uniform_times(T, n);
  z.values.resize(z.times.size() * z.dim);
  for (std::size_t i = 0; i < z.times.size(); ++i)
    for (int d = 0; d < z.dim; ++d)
      z.values[i * z.dim + d] = spec.slope[d] * z.times[i];
  return z;
}

double zigzag_value(double t, double period, double amplitude) {
  const double frac = t / period - std::floor(t / period);
  return amplitude * (1.0 - std::abs(2.0 * frac - 1.0));
}

DriverPath zigzag_path(const PathSpec& spec, double T, int n) {
  if (!(spec.period > 0.0) || !(spec.amplitude > 0.0))
    throw std::invalid_argument("zigzag path: period and amplitude must be > 0");
  DriverPath z;
  z.dim = spec.dimension;
  z.times = uniform_times(T, n);
  z.values.resize(z.times.size() * z.dim);
  for (std::size_t i = 0; i < z.times.size(); ++i)
    for (int d = 0; d < z.dim; ++d)
      z.values[i * z.dim + d] = zigzag_value(z.times[i], spec.period, spec.amplitude);
  // kinks at multiples of period/2 must be samples, or the piecewise-linear
  // model would round the wave's corners
  for (double tk = 0.5 * spec.period; tk < T; tk += 0.5 * spec.period) {
    z.ensure_sample(tk);
    const std::size_t i = z.segment_of(tk);
    const std::size_t at = (std::abs(z.times[i] - tk) <= 1e-12) ? i : i + 1;
    for (int d = 0; d < z.dim; ++d)
      z.values[at * z.dim + d] = zigzag_value(tk, spec.period, spec.amplitude);
  }
  return z;
}

DriverPath brownian_path(const PathSpec& spec, double T, int n) {
  DriverPath z;
  z.dim = spec.dimension;
  z.times = uniform_times(T, n);
  z.values.assign(z.times.size() * z.dim, 0.0);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 1; i < z.times.size(); ++i) {
    const double sd = std::sqrt(z.times[i] - z.times[i - 1]);
    for (int d = 0; d < z.dim; ++d)
      z.values[i * z.dim + d] = z.values[(i - 1) * z.dim + d] + sd * gauss(rng);
  }
  return z;
}

// Covariance of fractional Brownian motion values,
// C(s, t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double fbm_cov(double s, double t, double hurst) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

DriverPath fbm_path(const PathSpec& spec, double T, int n) {
  if (!(spec.hurst > 0.0) || !(spec.hurst < 1.0))
    throw std::invalid_argument("fbm path: Hurst index must lie in (0, 1)");
  if (n > 4097)
    throw std::invalid_argument(
        "fbm path: dense Cholesky synthesis is limited to 4096 increments");
  DriverPath z;
  z.dim = spec.dimension;
  z.times = uniform_times(T, n);
  z.values.assign(z.times.size() * z.dim, 0.0);

  const int m = n - 1;  // values at t_1..t_m; z(0) = 0
  std::vector<double> L(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      L[static_cast<std::size_t>(i) * m + j] =
          fbm_cov(z.times[i + 1], z.times[j + 1], spec.hurst);
  // in-place lower Cholesky
  for (int j = 0; j < m; ++j) {
    double d = L[static_cast<std::size_t>(j) * m + j];
    for (int k = 0; k < j; ++k) {
      const double v = L[static_cast<std::size_t>(j) * m + k];
      d -= v * v;
    }
    if (d <= 0.0)
      throw std::runtime_error("fbm path: covariance factorization failed");
    const double dj = std::sqrt(d);
    L[static_cast<std::size_t>(j) * m + j] = dj;
    for (int i = j + 1; i < m; ++i) {
      double s = L[static_cast<std::size_t>(i) * m + j];
      for (int k = 0; k < j; ++k)
        s -= L[static_cast<std::size_t>(i) * m + k] *
             L[static_cast<std::size_t>(j) * m + k];
      L[static_cast<std::size_t>(i) * m + j] = s / dj;
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> g(m);
  for (int d = 0; d < z.dim; ++d) {
    for (int i = 0; i < m; ++i) g[i] = gauss(rng);
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int k = 0; k <= i; ++k)
        s += L[static_cast<std::size_t>(i) * m + k] * g[k];
      z.values[(i + 1) * static_cast<std::size_t>(z.dim) + d] = s;
    }
  }
  return z;
}

}  // namespace

DriverPath generate(const PathSpec& spec, double T, int n_samples) {
  if (!(T > 0.0)) throw std::invalid_argument("generate: T must be positive");
  if (n_samples < 2) throw std::invalid_argument("generate: need >= 2 samples");
  if (spec.dimension < 1)
    throw std::invalid_argument("generate: dimension must be >= 1");
  DriverPath z;
  switch (spec.kind) {
    case PathKind::deterministic: z = deterministic_path(spec, T, n_samples); break;
    case PathKind::zigzag: z = zigzag_path(spec, T, n_samples); break;
    case PathKind::brownian: z = brownian_path(spec, T, n_samples); break;
    case PathKind::fbm: z = fbm_path(spec, T, n_samples); break;
  }
  z.validate();
  return z;
}

std::vector<double> increment(const DriverPath& z, double s, double t) {
  if (s > t) throw std::invalid_argument("increment: need s <= t");
  const auto zs = z.at(s);
  const auto zt = z.at(t);
  std::vector<double> out(z.dim);
  for (int d = 0; d < z.dim; ++d) out[d] = zt[d] - zs[d];
  return out;
}

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double delta_z(const DriverPath& z, const TimePartition& p,
               bool endpoints_only) {
  if (p.T > z.duration() + 1e-12)
    throw std::invalid_argument("delta_z: partition extends past the path");
  double worst = 0.0;
  std::vector<double> d(z.dim);
  for (int k = 0; k < p.K; ++k) {
    const double ta = p.t(k);
    const double tb = p.t(k + 1);
    const auto za = z.at(ta);
    auto probe = [&](const std::vector<double>& zt) {
      for (int c = 0; c < z.dim; ++c) d[c] = zt[c] - za[c];
      worst = std::max(worst, norm2(d));
    };
    probe(z.at(tb));
    if (!endpoints_only) {
      for (std::size_t i = z.segment_of(ta) + 1;
           i < z.n_samples() && z.times[i] < tb; ++i) {
        if (z.times[i] <= ta) continue;
        std::vector<double> zt(z.dim);
        for (int c = 0; c < z.dim; ++c) zt[c] = z.value(i, c);
        probe(zt);
      }
    }
  }
  return worst;
}

DriverPath reverse(const DriverPath& z, double t1) {
  if (t1 < 0.0 || t1 > z.duration() + 1e-12)
    throw std::out_of_range("reverse: t1 outside [0, T]");
  DriverPath work = z;
  work.ensure_sample(t1);
  const std::size_t seg = work.segment_of(t1);
  const std::size_t last =
      (std::abs(work.times[seg] - t1) <= 1e-12) ? seg : seg + 1;

  DriverPath out;
  out.dim = z.dim;
  out.times.reserve(last + 1);
  out.values.reserve((last + 1) * z.dim);
  for (std::size_t i = last + 1; i-- > 0;) {
    out.times.push_back(t1 - work.times[i]);
    for (int d = 0; d < z.dim; ++d) out.values.push_back(work.value(i, d));
  }
  out.times.front() = 0.0;
  out.validate();
  return out;
}

DriverPath aligned_with(const DriverPath& z, const TimePartition& p) {
  if (p.T > z.duration() + 1e-12)
    throw std::invalid_argument("aligned_with: partition extends past the path");
  DriverPath out = z;
  for (int k = 0; k <= p.K; ++k) out.ensure_sample(p.t(k));
  return out;
}

void write_path_csv(const DriverPath& z, std::ostream& os) {
  os << "t";
  for (int d = 0; d < z.dim; ++d) os << ",z" << (d + 1);
  os << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < z.n_samples(); ++i) {
    put(z.times[i]);
    for (int d = 0; d < z.dim; ++d) {
      os << ",";
      put(z.value(i, d));
    }
    os << "\n";
  }
}

DriverPath read_path_csv(std::istream& is) {
  DriverPath z;
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("path csv: empty stream");
  z.dim = static_cast<int>(std::count(line.begin(), line.end(), ','));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) break;
    z.times.push_back(std::stod(cell));
    for (int d = 0; d < z.dim; ++d) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("path csv: short row");
      z.values.push_back(std::stod(cell));
    }
  }
  z.validate();
  return z;
}

}  // namespace tclaw
