#pragma once

#include <span>

namespace pball {

/// Parameter triple and argument for the Gauss hypergeometric series
///   F(a, b; c; x) = sum_{k>=0} (a)_k (b)_k / (c)_k * x^k / k!.
struct Hyp2F1Params {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;

  // c must not be zero or a negative integer; x in [0, 1], and x = 1 only
  // when c - a - b > 0 (otherwise the series diverges).
  void validate() const;
};

bool is_nonpositive_integer(double v);

/// Gamma function for real arguments away from the poles at 0, -1, -2, ...
/// Lanczos approximation (g = 7, 9 coefficients) with reflection for x < 0.5.
double gamma(double x);

/// log|Gamma(x)| together with sign(Gamma(x)).  Defined for all non-pole x.
struct LogGamma {
  double log_abs;
  int sign;
};
LogGamma log_gamma_signed(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// prod Gamma(numerator[i]) / prod Gamma(denominator[j]), evaluated in log
/// space with a single exponentiation so that desk-scale arguments (~100)
/// cannot overflow intermediate products.
double gamma_ratio(std::span<const double> numerator, std::span<const double> denominator);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.  Product
/// form, exact through gamma poles of the ratio definition.
double pochhammer(double a, long k);

/// Gauss hypergeometric function on x in [0, 1].  Terminating series are
/// evaluated as exact finite sums; x = 1 routes to hyp2f1_at_one; otherwise
/// the power series runs with term recursion
///   t_{k+1} = t_k * (a+k)(b+k) / ((c+k)(k+1)) * x
/// until three consecutive terms fall below 1e-16 of the partial sum.
double hyp2f1(double a, double b, double c, double x);
double hyp2f1(const Hyp2F1Params& params);

/// (1-x)^(c-a-b) * hyp2f1(c-a, c-b, c, x); equals hyp2f1(a, b, c, x) by the
/// Euler transformation.  Kept as a distinct code path for cross-checks.
double hyp2f1_euler_transformed(double a, double b, double c, double x);
double hyp2f1_euler_transformed(const Hyp2F1Params& params);

/// Boundary value by Gauss summation:
///   F(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
/// requiring c - a - b > 0.  Returns 0 when 1/Gamma(c-a) or 1/Gamma(c-b)
/// vanishes at a pole.
double hyp2f1_at_one(double a, double b, double c);

}  // namespace pball
