#include "pball/sharp.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pball/errors.hpp"
#include "pball/specfun.hpp"

namespace pball {

namespace {

constexpr double kRegimeTol = 1e-12;
constexpr double kConjugacyTol = 1e-12;
constexpr double kLogPi = 1.14472988584940017414;
constexpr double kLog2 = 0.69314718055994530942;

void require_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    std::ostringstream msg;
    msg << "sharp constant: r = " << r << " outside [0, 1)";
    throw DomainError(msg.str());
  }
}

double degenerate_gap(const KernelParams& params, const HolderExponents& exps) {
  return exps.q - 2.0 * (params.n - 1.0) / params.beta;
}

}  // namespace

HolderExponents HolderExponents::from_p(double p) {
  if (std::isinf(p) && p > 0.0) return infinite();
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "Hoelder exponent p = " << p << " must lie in (1, inf]";
    throw InvalidParameterError(msg.str());
  }
  return {p, p / (p - 1.0)};
}

HolderExponents HolderExponents::from_q(double q) {
  if (q == 1.0) return infinite();
  if (!(q > 1.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << "Hoelder exponent q = " << q << " must lie in [1, inf)";
    throw InvalidParameterError(msg.str());
  }
  return {q / (q - 1.0), q};
}

HolderExponents HolderExponents::infinite() {
  return {std::numeric_limits<double>::infinity(), 1.0};
}

bool HolderExponents::infinite_p() const {
  return std::isinf(p) && p > 0.0;
}

void HolderExponents::validate() const {
  if (infinite_p()) {
    if (std::abs(q - 1.0) > kConjugacyTol) {
      throw InvalidParameterError("HolderExponents: p = inf requires q = 1");
    }
    return;
  }
  if (!(p > 1.0) || !(q > 1.0)) {
    throw InvalidParameterError("HolderExponents: finite exponents must both exceed 1");
  }
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > kConjugacyTol) {
    std::ostringstream msg;
    msg << "HolderExponents: 1/p + 1/q = " << 1.0 / p + 1.0 / q << " != 1";
    throw InvalidParameterError(msg.str());
  }
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::ConstantAtZero: return "ConstantAtZero";
    case Regime::SupAtBoundary: return "SupAtBoundary";
    case Regime::Degenerate: return "Degenerate";
  }
  return "unknown";
}

bool within_theorem_range(const KernelParams& params) {
  return params.is_normalized() && params.beta >= params.n;
}

double pointwise_sharp_constant(const KernelParams& params, const HolderExponents& exps,
                                double r) {
  params.require_normalized();
  exps.validate();
  require_radius(r);
  const double n = params.n;
  const double qb = exps.q * params.beta;
  const double factor = hyp2f1(0.5 * (n - qb), n - 1.0 - 0.5 * qb, 0.5 * n, r * r);
  return normalization_constant(params.n, params.beta) * std::pow(factor, 1.0 / exps.q);
}

double regime_profile(const KernelParams& params, const HolderExponents& exps, double r) {
  params.require_normalized();
  exps.validate();
  require_radius(r);
  const double n = params.n;
  const double qb = exps.q * params.beta;
  return hyp2f1(0.5 * (n - qb), n - 1.0 - 0.5 * qb, 0.5 * n, r);
}

Regime classify_regime(const KernelParams& params, const HolderExponents& exps) {
  params.require_normalized();
  exps.validate();
  const double gap = degenerate_gap(params, exps);
  if (std::abs(gap) <= kRegimeTol) return Regime::Degenerate;
  // Profile parameters a = (n - q beta)/2 and b = (2(n-1) - q beta)/2 with
  // c = n/2 > 0: the product ab <= 0 gives a decreasing profile, ab >= 0 an
  // increasing one.  On the stated range (q >= 1, beta >= n) a <= 0 always
  // and the sign of b decides; below beta = n the same product rule applies
  // mechanically, where a can turn positive as well.
  if (gap > 0.0) return Regime::SupAtBoundary;                       // a < 0, b < 0
  if (exps.q * params.beta >= params.n) return Regime::ConstantAtZero;  // a <= 0 <= b
  return Regime::SupAtBoundary;                                      // a > 0, b > 0
}

SharpEstimate global_sharp_constant(const KernelParams& params, const HolderExponents& exps) {
  const Regime regime = classify_regime(params, exps);
  const double c = normalization_constant(params.n, params.beta);
  SharpEstimate est;
  est.regime = regime;
  est.out_of_theorem = !within_theorem_range(params);

  std::ostringstream cond;
  if (regime == Regime::Degenerate) {
    est.value = c;
    cond << "q == 2(n-1)/beta: profile constant, both branch formulas give c_{n,beta}";
  } else if (regime == Regime::ConstantAtZero) {
    est.value = c;
    cond << "q < 2(n-1)/beta: decreasing profile, supremum at the origin";
  } else {
    const double n = params.n;
    const double qb = exps.q * params.beta;
    const double boundary = hyp2f1_at_one(0.5 * (n - qb), n - 1.0 - 0.5 * qb, 0.5 * n);
    est.value = c * std::pow(boundary, 1.0 / exps.q);
    if (qb < n) {
      cond << "q beta < n (outside stated range): increasing profile, boundary supremum";
    } else if (params.beta >= 2.0 * (params.n - 1.0)) {
      cond << "beta >= 2(n-1): increasing profile for every q > 1, boundary supremum";
    } else {
      cond << "q > 2(n-1)/beta: increasing profile, boundary supremum";
    }
  }
  est.branch_condition = cond.str();
  return est;
}

SharpEstimate harmonic_constant(int n, const HolderExponents& exps) {
  const KernelParams params = KernelParams::normalized(n, static_cast<double>(n));
  const Regime regime = classify_regime(params, exps);
  SharpEstimate est;
  est.regime = regime;

  const double q = exps.q;
  const double nd = n;
  std::ostringstream cond;
  if (q <= 2.0 * (nd - 1.0) / nd + kRegimeTol) {
    est.value = 1.0;
    cond << "q <= 2(n-1)/n: C_p = 1";
  } else {
    // (2^{nq-n} Gamma(n/2) Gamma((nq-n+1)/2) / (sqrt(pi) Gamma(nq/2)))^{1/q}
    const double log_value = (nd * q - nd) * kLog2 + log_gamma(0.5 * nd) +
                             log_gamma(0.5 * (nd * q - nd + 1.0)) - 0.5 * kLogPi -
                             log_gamma(0.5 * nd * q);
    est.value = std::exp(log_value / q);
    cond << "q > 2(n-1)/n: boundary supremum (duplication form)";
  }
  est.branch_condition = cond.str();
  return est;
}

SharpEstimate hyperbolic_constant(int n, const HolderExponents& exps) {
  const KernelParams params = KernelParams::normalized(n, 2.0 * (n - 1.0));
  const Regime regime = classify_regime(params, exps);
  SharpEstimate est;
  est.regime = regime;

  const double q = exps.q;
  const double nd = n;
  const double log_value = log_gamma(0.5 * nd) + log_gamma((2.0 * q - 1.0) * (nd - 1.0)) -
                           log_gamma(0.5 * nd + (q - 1.0) * (nd - 1.0)) -
                           log_gamma(q * (nd - 1.0));
  est.value = std::exp(log_value / q);
  est.branch_condition = "beta = 2(n-1): single boundary formula for every q >= 1";
  return est;
}

SharpEstimate dirichlet_gamma_constant(int n, double g, const HolderExponents& exps) {
  if (!(g > -0.5)) {
    std::ostringstream msg;
    msg << "dirichlet_gamma_constant: exponent " << g
        << " must exceed -1/2 for a solvable Dirichlet problem";
    throw InvalidParameterError(msg.str());
  }
  const double beta = n + 2.0 * g;
  const KernelParams params = KernelParams::normalized(n, beta);
  const Regime regime = classify_regime(params, exps);
  const double c = normalization_constant(n, beta);
  SharpEstimate est;
  est.regime = regime;
  est.out_of_theorem = g < 0.0;  // proven range is g >= 0

  const double q = exps.q;
  const double nd = n;
  std::ostringstream cond;
  if (regime != Regime::SupAtBoundary) {
    est.value = c;
    cond << (regime == Regime::Degenerate ? "q == 2(n-1)/(n+2g): branches agree"
                                          : "q <= 2(n-1)/(n+2g): C_p = c_{n,n+2g}");
  } else {
    // c * (Gamma(n/2) Gamma((q-1)n + 2qg + 1)
    //      / (Gamma((nq+2gq)/2) Gamma((q-1)n/2 + qg + 1)))^{1/q}
    const double log_factor = log_gamma(0.5 * nd) + log_gamma((q - 1.0) * nd + 2.0 * q * g + 1.0) -
                              log_gamma(0.5 * (nd * q + 2.0 * g * q)) -
                              log_gamma(0.5 * (q - 1.0) * nd + q * g + 1.0);
    est.value = c * std::exp(log_factor / q);
    cond << (g >= 0.5 * nd - 1.0 ? "g >= n/2 - 1: boundary supremum for every q > 1"
                                 : "q > 2(n-1)/(n+2g): boundary supremum");
  }
  est.branch_condition = cond.str();
  return est;
}

double dirichlet_gamma_pointwise(int n, double g, const HolderExponents& exps, double r) {
  if (!(g > -0.5)) {
    throw InvalidParameterError("dirichlet_gamma_pointwise: exponent must exceed -1/2");
  }
  exps.validate();
  require_radius(r);
  const double beta = n + 2.0 * g;
  const double q = exps.q;
  const double nd = n;
  const double a = 0.5 * (1.0 - q) * nd - q * g;
  const double b = 0.5 * (2.0 - q) * nd - q * g - 1.0;
  const double factor = hyp2f1(a, b, 0.5 * nd, r * r);
  return normalization_constant(n, beta) * std::pow(factor, 1.0 / q);
}

}  // namespace pball
