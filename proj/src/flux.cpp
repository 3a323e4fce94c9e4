// SPDX-License-Identifier: Apache-2.0
#include "tclaw/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace tclaw {

HomogeneousFlux HomogeneousFlux::burgers() {
  HomogeneousFlux f;
  f.dimension = 1;
  f.A = {[](double xi) { return 0.5 * xi * xi; }};
  f.a = {[](double xi) { return xi; }};
  f.name = "burgers";
  return f;
}

HomogeneousFlux HomogeneousFlux::linear(std::vector<double> speeds) {
  if (speeds.empty())
    throw std::invalid_argument("linear flux: need at least one speed");
  HomogeneousFlux f;
  f.dimension = static_cast<int>(speeds.size());
  double sup = 0.0;
  for (double c : speeds) {
    f.A.push_back([c](double xi) { return c * xi; });
    f.a.push_back([c](double) { return c; });
    sup = std::max(sup, std::abs(c));
  }
  f.sup_a = sup;
  f.lip_a = 0.0;
  f.name = "linear";
  return f;
}

namespace {

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

HomogeneousFlux HomogeneousFlux::polynomial(
    std::vector<std::vector<double>> coeffs) {
  if (coeffs.empty())
    throw std::invalid_argument("polynomial flux: need coefficients");
  HomogeneousFlux f;
  f.dimension = static_cast<int>(coeffs.size());
  for (auto& c : coeffs) {
    auto d = poly_derivative(c);
    f.A.push_back([c](double xi) { return poly_eval(c, xi); });
    f.a.push_back([d](double xi) { return poly_eval(d, xi); });
  }
  f.name = "polynomial";
  return f;
}

InhomogeneousFlux InhomogeneousFlux::sine_speed(double amplitude,
                                                double wavenumber) {
  return spatial_polynomial({0.0, 0.0, 0.5}, amplitude, wavenumber);
}

InhomogeneousFlux InhomogeneousFlux::spatial_polynomial(
    std::vector<double> coeffs, double amplitude, double wavenumber) {
  if (coeffs.empty() || coeffs[0] != 0.0)
    throw std::invalid_argument(
        "spatial flux: polynomial must vanish at xi = 0 so that b(x, 0) = 0");
  if (std::abs(amplitude) >= 1.0)
    throw std::invalid_argument("spatial flux: |amplitude| must be < 1");
  auto dcoeffs = poly_derivative(coeffs);
  const double amp = amplitude;
  const double k = wavenumber;
  InhomogeneousFlux f;
  f.dimension = 1;
  f.A = {[coeffs, amp, k](const double* x, double xi) {
    return (1.0 + amp * std::sin(k * x[0])) * poly_eval(coeffs, xi);
  }};
  f.a = {[dcoeffs, amp, k](const double* x, double xi) {
    return (1.0 + amp * std::sin(k * x[0])) * poly_eval(dcoeffs, xi);
  }};
  f.b = {[coeffs, amp, k](const double* x, double xi) {
    return amp * k * std::cos(k * x[0]) * poly_eval(coeffs, xi);
  }};
  f.name = "sine-speed";
  return f;
}

InhomogeneousFlux InhomogeneousFlux::from_homogeneous(
    const HomogeneousFlux& h) {
  InhomogeneousFlux f;
  f.dimension = h.dimension;
  for (int i = 0; i < h.dimension; ++i) {
    auto Ai = h.A[i];
    auto ai = h.a[i];
    f.A.push_back([Ai](const double*, double xi) { return Ai(xi); });
    f.a.push_back([ai](const double*, double xi) { return ai(xi); });
    f.b.push_back([](const double*, double) { return 0.0; });
  }
  f.name = h.name;
  return f;
}

double derivative_consistency(const HomogeneousFlux& flux, double xi_lo,
                              double xi_hi, int n_samples, double h) {
  double worst = 0.0;
  for (int i = 0; i < flux.dimension; ++i) {
    for (int s = 0; s < n_samples; ++s) {
      const double xi = xi_lo + (xi_hi - xi_lo) * (s + 0.5) / n_samples;
      const double fd = (flux.A[i](xi + h) - flux.A[i](xi - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - flux.a[i](xi)));
    }
  }
  return worst;
}

InhomogeneousConsistency derivative_consistency(const InhomogeneousFlux& flux,
                                                double x_lo, double x_hi,
                                                double xi_lo, double xi_hi,
                                                int n_samples, double h) {
  InhomogeneousConsistency r;
  for (int i = 0; i < flux.dimension; ++i) {
    for (int s = 0; s < n_samples; ++s) {
      const double xs = x_lo + (x_hi - x_lo) * (s + 0.5) / n_samples;
      double x[2] = {xs, 0.37 * xs};  // off-diagonal line through the box
      r.max_b_at_zero = std::max(r.max_b_at_zero, std::abs(flux.b[i](x, 0.0)));
      for (int t = 0; t < n_samples; ++t) {
        const double xi = xi_lo + (xi_hi - xi_lo) * (t + 0.5) / n_samples;
        const double fd_xi =
            (flux.A[i](x, xi + h) - flux.A[i](x, xi - h)) / (2.0 * h);
        r.max_a_dev = std::max(r.max_a_dev, std::abs(fd_xi - flux.a[i](x, xi)));
        double xp[2] = {x[0], x[1]};
        double xm[2] = {x[0], x[1]};
        xp[i] += h;
        xm[i] -= h;
        const double fd_x = (flux.A[i](xp, xi) - flux.A[i](xm, xi)) / (2.0 * h);
        r.max_b_dev = std::max(r.max_b_dev, std::abs(fd_x - flux.b[i](x, xi)));
      }
    }
  }
  return r;
}

}  // namespace tclaw
