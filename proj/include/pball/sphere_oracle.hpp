#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "pball/kernel.hpp"

namespace pball {

enum class QuadMethod { ReducedGaussLegendre, MonteCarlo };

/// Accuracy and sampling budget for the sphere integrators.
struct QuadratureSpec {
  QuadMethod method = QuadMethod::ReducedGaussLegendre;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  long mc_samples = 100000;
  std::uint64_t seed = 12345;
  int threads = 1;  // Monte Carlo worker count; never affects the values

  void validate() const;  // tolerances > 0, mc_samples >= 1000, max_subdivisions >= 1
};

/// Integrand f(<u, eta>) depending on eta only through one axis; n is the
/// ambient dimension of the sphere S^{n-1}.
struct ZonalIntegrand {
  std::function<double(double)> f;
  int n = 3;
};

struct IntegralResult {
  double value;
  double error;  // achieved error estimate
};

/// Integral of a zonal function over S^{n-1} against the normalized surface
/// measure, reduced to one dimension:
///   int f(<u,eta>) dsigma = Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2))
///                           * int_{-1}^{1} f(t) (1-t^2)^{(n-3)/2} dt,
/// evaluated by adaptive bisection with fixed-order Gauss-Legendre panels.
IntegralResult zonal_integral_ex(const ZonalIntegrand& integrand, const QuadratureSpec& spec);
double zonal_integral(const ZonalIntegrand& integrand, const QuadratureSpec& spec);
double zonal_integral(const std::function<double(double)>& f, int n, const QuadratureSpec& spec);

/// Independent oracle for the kernel q-norm integral
///   int P(x, eta)^q dsigma(eta),  x = r * axis,
/// computed through the zonal reduction (never through any closed form).
double kernel_q_norm_oracle(const KernelParams& params, double q, double r,
                            const QuadratureSpec& spec);

struct McResult {
  double value;
  double std_error;
};

/// Monte Carlo integral of f over S^{n-1} against the normalized measure.
/// Sample i is a pure function of (spec.seed, i), and the reduction is a
/// pairwise deterministic sum, so results are bit-identical for a fixed
/// seed regardless of spec.threads.
McResult mc_sphere_integral(const std::function<double(std::span<const double>)>& f, int n,
                            const QuadratureSpec& spec);

}  // namespace pball
