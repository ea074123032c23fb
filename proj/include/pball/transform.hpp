#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pball/kernel.hpp"
#include "pball/sharp.hpp"
#include "pball/sphere_oracle.hpp"

namespace pball {

/// Boundary data on S^{n-1}.  Three shapes:
///  - Zonal: profile f(t) of t = <axis, eta>; an empty axis means the data
///    is constant in every direction (axis-free),
///  - General: arbitrary callable of the full coordinate vector,
///  - Sampled: weighted point values with weights summing to 1.
class BoundaryFunction {
 public:
  enum class Kind { Zonal, General, Sampled };

  /// Structure tags that admit closed-form Poisson integrals.
  enum class ClosedForm { None, Constant, ExtremalKernelPower };

  static BoundaryFunction constant(double value);
  static BoundaryFunction zonal(std::function<double(double)> profile, std::vector<double> axis);
  static BoundaryFunction general(std::function<double(std::span<const double>)> fn);
  static BoundaryFunction sampled(std::vector<std::vector<double>> points,
                                  std::vector<double> values, std::vector<double> weights);

  Kind kind() const { return kind_; }
  ClosedForm closed_form() const { return closed_form_; }
  bool axis_free() const { return kind_ == Kind::Zonal && axis_.empty(); }
  const std::vector<double>& axis() const { return axis_; }

  double zonal_value(double t) const;  // Zonal only
  double value_at(std::span<const double> eta) const;  // Zonal (with axis) or General

  const std::vector<std::vector<double>>& sample_points() const { return points_; }
  const std::vector<double>& sample_values() const { return values_; }
  const std::vector<double>& sample_weights() const { return weights_; }

 private:
  BoundaryFunction() = default;

  Kind kind_ = Kind::Zonal;
  ClosedForm closed_form_ = ClosedForm::None;
  std::function<double(double)> profile_;
  std::function<double(std::span<const double>)> general_;
  std::vector<double> axis_;
  std::vector<std::vector<double>> points_;
  std::vector<double> values_;
  std::vector<double> weights_;

  // Parameters behind an ExtremalKernelPower tag, for closed-form routing.
  friend BoundaryFunction extremal_boundary(const KernelParams&, const HolderExponents&,
                                            const BallPoint&);
  friend std::optional<double> poisson_integral_closed_form(const KernelParams&,
                                                            const BoundaryFunction&, double);
  friend std::optional<double> lp_norm_closed_form(const BoundaryFunction&, double);
  double tag_value_ = 0.0;       // Constant: the value
  double tag_r_ = 0.0;           // Extremal: |x| of the defining point
  double tag_q_over_p_ = 0.0;    // Extremal: kernel power
  KernelParams tag_params_{};    // Extremal: kernel parameters
  HolderExponents tag_exps_{};   // Extremal: exponent pair
};

enum class EvalMethod { ClosedForm, Quadrature, MonteCarlo };

/// Outcome of one sharpness verification:
///   ratio = |u| (1-r^2)^{(n-1)/p} / (C_p(x) ||phi||_p),
/// which equals 1 exactly for the extremal data.
struct SharpnessReport {
  double ratio = 0.0;
  double closed_form_bound = 0.0;  // C_p(x)
  double integral_value = 0.0;     // u(x)
  double lp_norm = 0.0;
  EvalMethod method = EvalMethod::ClosedForm;
};

struct BoundCheckRow {
  double r = 0.0;
  double integral_abs = 0.0;  // |u(r e)| (Euclidean norm for vector data)
  double bound = 0.0;         // C_p(r) (1-r^2)^{-(n-1)/p} ||phi||_p
  double margin = 0.0;        // bound - integral_abs
  double sigma = 0.0;         // combined error estimate of the two sides
};

/// Weighted Poisson integral u(x) = c_{n,beta} * int P(x,eta) phi(eta) dsigma.
/// Zonal data aligned with x (or axis-free, or x = 0) reduces to the 1-D
/// oracle; everything else integrates by Monte Carlo; Sampled data uses its
/// weighted sum.
IntegralResult poisson_integral_ex(const KernelParams& params, const BoundaryFunction& phi,
                                   const BallPoint& x, const QuadratureSpec& spec);
double poisson_integral(const KernelParams& params, const BoundaryFunction& phi,
                        const BallPoint& x, const QuadratureSpec& spec);

/// Closed form for structured data (Constant or ExtremalKernelPower tag) at
/// x = r * axis; nullopt when no closed form applies.
std::optional<double> poisson_integral_closed_form(const KernelParams& params,
                                                   const BoundaryFunction& phi, double r);

/// u[1](r) = c_{n,beta} * F((n-beta)/2, n-1-beta/2; n/2; r^2); tends to 1 as
/// r -> 1 for normalized parameters.
double constant_poisson_closed_form(const KernelParams& params, double r);

/// The extremal data phi0(eta) = P(x, eta)^{q/p}, zonal about x/|x|.
BoundaryFunction extremal_boundary(const KernelParams& params, const HolderExponents& exps,
                                   const BallPoint& x);

/// L^p norm against the normalized surface measure; p = inf is the sup over
/// a fine grid (Zonal), the sample maximum (Sampled), or a Monte Carlo sup.
IntegralResult lp_norm_ex(const BoundaryFunction& phi, double p, int n,
                          const QuadratureSpec& spec);
double lp_norm(const BoundaryFunction& phi, double p, int n, const QuadratureSpec& spec);

/// Closed-form L^p norm for structured data: |v| for constants, the
/// hypergeometric form for kernel powers (any p in [1, inf], not just the
/// defining exponent); nullopt when no closed form applies.
std::optional<double> lp_norm_closed_form(const BoundaryFunction& phi, double p);

/// Closed forms for the extremal data:
///   ||phi0||_p = ((1-r^2)^{alpha q} F(q beta/2, q beta/2 - n/2 + 1; n/2; r^2))^{1/p},
///   u[phi0](x) = c_{n,beta} (1-r^2)^{alpha q} F(q beta/2, q beta/2 - n/2 + 1; n/2; r^2).
double extremal_lp_norm_closed_form(const KernelParams& params, const HolderExponents& exps,
                                    double r);
double extremal_integral_closed_form(const KernelParams& params, const HolderExponents& exps,
                                     double r);

/// Evaluate the equality chain for the extremal data at |x| = r by the
/// requested method and report the ratio (1 up to method tolerance).
SharpnessReport sharpness_ratio(const KernelParams& params, const HolderExponents& exps, double r,
                                EvalMethod method, const QuadratureSpec& spec);

/// Verify |u(r e1)| <= C_p(r) (1-r^2)^{-(n-1)/p} ||phi||_p on a radius grid.
/// With throw_on_violation, throws ViolationError if any margin dips below
/// -4 combined sigma; otherwise the rows are returned for inspection.
std::vector<BoundCheckRow> bound_check(const KernelParams& params, const HolderExponents& exps,
                                       const BoundaryFunction& phi, std::span<const double> r_grid,
                                       const QuadratureSpec& spec, bool throw_on_violation = true);

/// Component-wise Poisson integrals for vector-valued data; the pointwise
/// bound applies to the Euclidean norm of the result.
std::vector<double> poisson_integral_components(const KernelParams& params,
                                                std::span<const BoundaryFunction> components,
                                                const BallPoint& x, const QuadratureSpec& spec);

/// {0, 0.1, ..., 0.9, 0.95, 0.99}
std::vector<double> default_r_grid();

}  // namespace pball
