// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tclaw {

/// Spatially homogeneous flux A(xi) with derivative a = A'. One evaluator
/// pair per spatial component. Optional analytic sup/Lipschitz data for the
/// error-bound calculator; when absent both are estimated by dense sampling.
struct HomogeneousFlux {
  using Fn = std::function<double(double)>;

  int dimension = 1;
  std::vector<Fn> A;
  std::vector<Fn> a;
  std::optional<double> sup_a;  // sup |a| on the relevant range
  std::optional<double> lip_a;  // Lipschitz constant of a
  std::string name = "custom";

  static HomogeneousFlux burgers();
  static HomogeneousFlux linear(std::vector<double> speeds);
  /// A(xi) = sum_k coeffs[k] xi^k, per component.
  static HomogeneousFlux polynomial(std::vector<std::vector<double>> coeffs);
};

/// Spatially inhomogeneous flux A(x, xi) with a = dA/dxi and b_i = dA^i/dx_i.
/// The admissibility condition b(x, 0) = 0 must hold.
struct InhomogeneousFlux {
  using Fn = std::function<double(const double* x, double xi)>;

  int dimension = 1;
  std::vector<Fn> A;
  std::vector<Fn> a;
  std::vector<Fn> b;
  std::string name = "custom";

  /// A(x, xi) = (1 + amplitude*sin(wavenumber*x)) * xi^2/2, one dimension.
  static InhomogeneousFlux sine_speed(double amplitude, double wavenumber);
  /// V(x) * P(xi) with V(x) = 1 + amplitude*sin(wavenumber*x) and polynomial
  /// P; P(0) = 0 is required so that b(x, 0) = 0.
  static InhomogeneousFlux spatial_polynomial(std::vector<double> coeffs,
                                              double amplitude,
                                              double wavenumber);
  /// Embeds a homogeneous flux (b = 0); used for cross-scheme checks.
  static InhomogeneousFlux from_homogeneous(const HomogeneousFlux& f);
};

/// Max deviation |(A(s+h)-A(s-h))/(2h) - a(s)| over the samples.
double derivative_consistency(const HomogeneousFlux& flux, double xi_lo,
                              double xi_hi, int n_samples, double h);

struct InhomogeneousConsistency {
  double max_a_dev = 0.0;  // a vs d A / d xi
  double max_b_dev = 0.0;  // b vs d A / d x
  double max_b_at_zero = 0.0;
};
InhomogeneousConsistency derivative_consistency(const InhomogeneousFlux& flux,
                                                double x_lo, double x_hi,
                                                double xi_lo, double xi_hi,
                                                int n_samples, double h);

}  // namespace tclaw
