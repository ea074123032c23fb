#pragma once

#include <string>
#include <string_view>

#include "pball/kernel.hpp"

namespace pball {

/// Conjugate Hoelder pair with 1/p + 1/q = 1.  p = infinity is represented
/// by an infinite double and maps to q = 1; all formulas consume q.
struct HolderExponents {
  double p = 2.0;
  double q = 2.0;

  static HolderExponents from_p(double p);
  static HolderExponents from_q(double q);
  static HolderExponents infinite();  // p = inf, q = 1

  bool infinite_p() const;
  void validate() const;  // q >= 1; q > 1 when p finite; conjugacy to 1e-12
};

/// Where the pointwise constant attains its supremum over the ball.
enum class Regime {
  ConstantAtZero,  // decreasing in r: the global constant is the value at 0
  SupAtBoundary,   // increasing in r: the global constant is the boundary limit
  Degenerate,      // the profile is constant in r; both branch formulas agree
};

std::string_view to_string(Regime regime);

struct SharpEstimate {
  double value = 0.0;
  Regime regime = Regime::Degenerate;
  std::string branch_condition;
  bool out_of_theorem = false;  // beta < n: computed from the same formulas, unproven
};

/// True when the stated hypotheses hold: normalized parameters and beta >= n.
bool within_theorem_range(const KernelParams& params);

/// Best constant of the pointwise estimate at |x| = r:
///   C_p(x) = c_{n,beta} * F((n - q beta)/2, n - 1 - q beta/2; n/2; r^2)^{1/q}.
double pointwise_sharp_constant(const KernelParams& params, const HolderExponents& exps, double r);

/// Monotonicity profile psi(r) = F((n - q beta)/2, n - 1 - q beta/2; n/2; r),
/// whose direction on [0, 1) decides the regime.
double regime_profile(const KernelParams& params, const HolderExponents& exps, double r);

/// Sign analysis of the product of the two upper series parameters:
/// Degenerate exactly when q = 2(n-1)/beta (within 1e-12), otherwise the
/// profile decreases (ConstantAtZero) or increases (SupAtBoundary).
Regime classify_regime(const KernelParams& params, const HolderExponents& exps);

/// Best constant of the global estimate, sup over the ball:
/// c_{n,beta} on the decreasing branch, otherwise the boundary value
///   c_{n,beta} * (Gamma(n/2) Gamma(q beta - n + 1)
///                 / (Gamma(q beta/2) Gamma((beta q - n + 2)/2)))^{1/q}.
SharpEstimate global_sharp_constant(const KernelParams& params, const HolderExponents& exps);

/// Specialization alpha = 1, beta = n (harmonic extension): the classical
/// branch formula with the power of two from the Legendre duplication,
///   C_p = (2^{nq-n} Gamma(n/2) Gamma((nq-n+1)/2) / (sqrt(pi) Gamma(nq/2)))^{1/q}
/// for q > 2(n-1)/n, and 1 otherwise.
SharpEstimate harmonic_constant(int n, const HolderExponents& exps);

/// Specialization alpha = n-1, beta = 2(n-1) (hyperbolic-harmonic case):
///   C_p = (Gamma(n/2) Gamma((2q-1)(n-1))
///          / (Gamma(n/2 + (q-1)(n-1)) Gamma(q(n-1))))^{1/q}.
SharpEstimate hyperbolic_constant(int n, const HolderExponents& exps);

/// Family alpha = 1 + 2g, beta = n + 2g solving the weighted-Laplacian
/// Dirichlet problem; requires g > -1/2, proven range g >= 0.
SharpEstimate dirichlet_gamma_constant(int n, double g, const HolderExponents& exps);
double dirichlet_gamma_pointwise(int n, double g, const HolderExponents& exps, double r);

}  // namespace pball
