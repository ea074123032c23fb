#include "pball/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pball/errors.hpp"
#include "pball/rng.hpp"
#include "pball/specfun.hpp"

namespace pball {

namespace {

constexpr double kAxisAlignTol = 1e-9;
constexpr double kUnitTol = 1e-12;
constexpr double kRenormalizeTol = 1e-8;
constexpr double kWeightSumTol = 1e-10;
constexpr double kQuadratureRadiusCap = 0.999;
constexpr int kSupGridSize = 8193;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<double> normalize_direction(std::vector<double> v, const char* what) {
  double norm2 = 0.0;
  for (double c : v) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kRenormalizeTol) {
    std::ostringstream msg;
    msg << what << ": direction norm " << norm << " too far from 1";
    throw DomainError(msg.str());
  }
  if (std::abs(norm - 1.0) > kUnitTol) {
    for (double& c : v) c /= norm;
  }
  return v;
}

void require_quadrature_radius(double r) {
  if (r > kQuadratureRadiusCap) {
    std::ostringstream msg;
    msg << "radius r = " << r << " exceeds " << kQuadratureRadiusCap
        << "; quadrature oracles are unreliable this close to the boundary "
           "(use the closed forms)";
    throw DomainError(msg.str());
  }
}

// log of the kernel power P(r, t)^s along an axis, assembled in log space
// so the boundary factor and the distance factor cannot overflow separately.
double log_kernel_power(const KernelParams& params, double r, double t, double s) {
  return s * (params.alpha * std::log1p(-r * r) -
              0.5 * params.beta * std::log(1.0 + r * r - 2.0 * r * t));
}

}  // namespace

BoundaryFunction BoundaryFunction::constant(double value) {
  if (!std::isfinite(value)) throw InvalidParameterError("BoundaryFunction: non-finite constant");
  BoundaryFunction out;
  out.kind_ = Kind::Zonal;
  out.closed_form_ = ClosedForm::Constant;
  out.tag_value_ = value;
  out.profile_ = [value](double) { return value; };
  return out;
}

BoundaryFunction BoundaryFunction::zonal(std::function<double(double)> profile,
                                         std::vector<double> axis) {
  if (!profile) throw InvalidParameterError("BoundaryFunction: empty zonal profile");
  BoundaryFunction out;
  out.kind_ = Kind::Zonal;
  out.profile_ = std::move(profile);
  if (!axis.empty()) out.axis_ = normalize_direction(std::move(axis), "BoundaryFunction");
  return out;
}

BoundaryFunction BoundaryFunction::general(std::function<double(std::span<const double>)> fn) {
  if (!fn) throw InvalidParameterError("BoundaryFunction: empty general integrand");
  BoundaryFunction out;
  out.kind_ = Kind::General;
  out.general_ = std::move(fn);
  return out;
}

BoundaryFunction BoundaryFunction::sampled(std::vector<std::vector<double>> points,
                                           std::vector<double> values,
                                           std::vector<double> weights) {
  if (points.empty() || points.size() != values.size() || points.size() != weights.size()) {
    throw InvalidParameterError("BoundaryFunction: sample arrays empty or mismatched");
  }
  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;
  if (std::abs(weight_sum - 1.0) > kWeightSumTol) {
    std::ostringstream msg;
    msg << "BoundaryFunction: sample weights sum to " << weight_sum << ", need 1";
    throw InvalidParameterError(msg.str());
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidParameterError("BoundaryFunction: non-finite sample value");
  }
  const std::size_t dim = points.front().size();
  for (auto& pt : points) {
    if (pt.size() != dim) throw InvalidParameterError("BoundaryFunction: mixed point dimensions");
    pt = normalize_direction(std::move(pt), "BoundaryFunction sample");
  }
  BoundaryFunction out;
  out.kind_ = Kind::Sampled;
  out.points_ = std::move(points);
  out.values_ = std::move(values);
  out.weights_ = std::move(weights);
  return out;
}

double BoundaryFunction::zonal_value(double t) const {
  if (kind_ != Kind::Zonal) throw InvalidParameterError("zonal_value: data is not zonal");
  return profile_(t);
}

double BoundaryFunction::value_at(std::span<const double> eta) const {
  switch (kind_) {
    case Kind::Zonal:
      return profile_(axis_.empty() ? 1.0 : dot(axis_, eta));
    case Kind::General:
      return general_(eta);
    case Kind::Sampled:
      throw InvalidParameterError("value_at: sampled data has no pointwise evaluation");
  }
  throw InvalidParameterError("value_at: unknown kind");
}

IntegralResult poisson_integral_ex(const KernelParams& params, const BoundaryFunction& phi,
                                   const BallPoint& x, const QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  if (x.dim() != params.n) throw InvalidParameterError("poisson_integral: dimension mismatch");
  const double c = normalization_constant(params.n, params.beta);
  const double r = x.radius();

  if (phi.kind() == BoundaryFunction::Kind::Sampled) {
    const auto& pts = phi.sample_points();
    const auto& vals = phi.sample_values();
    const auto& wts = phi.sample_weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      acc += wts[i] * vals[i] * poisson_kernel(params, x, pts[i]);
    }
    return {c * acc, 0.0};
  }

  const bool want_quadrature = spec.method == QuadMethod::ReducedGaussLegendre;
  if (phi.kind() == BoundaryFunction::Kind::Zonal && want_quadrature) {
    // Orientation of the data axis against the evaluation direction; the
    // kernel is zonal about x, so only aligned or reflected data reduces
    // to one dimension.  r = 0 makes the kernel constant, so any axis works.
    double orientation = 0.0;
    if (r == 0.0 || phi.axis_free()) {
      orientation = 1.0;
    } else {
      const double cosine = dot(phi.axis(), x.coords()) / r;
      if (std::abs(cosine - 1.0) <= kAxisAlignTol) orientation = 1.0;
      if (std::abs(cosine + 1.0) <= kAxisAlignTol) orientation = -1.0;
    }
    if (orientation != 0.0) {
      require_quadrature_radius(r);
      const auto f = [&phi, &params, r, orientation](double t) {
        return std::exp(log_kernel_power(params, r, t, 1.0)) * phi.zonal_value(orientation * t);
      };
      const IntegralResult inner = zonal_integral_ex(ZonalIntegrand{f, params.n}, spec);
      return {c * inner.value, c * inner.error};
    }
    // Misaligned axis: the integrand depends on two directions at once, so
    // the one-dimensional reduction does not apply; fall through to the
    // Monte Carlo oracle.
  }

  const auto f = [&phi, &params, &x](std::span<const double> eta) {
    return poisson_kernel(params, x, eta) * phi.value_at(eta);
  };
  const McResult mc = mc_sphere_integral(f, params.n, spec);
  return {c * mc.value, c * mc.std_error};
}

double poisson_integral(const KernelParams& params, const BoundaryFunction& phi,
                        const BallPoint& x, const QuadratureSpec& spec) {
  return poisson_integral_ex(params, phi, x, spec).value;
}

double constant_poisson_closed_form(const KernelParams& params, double r) {
  params.require_normalized();
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("constant_poisson_closed_form: r outside [0, 1)");
  const double n = params.n;
  const double b = params.beta;
  const double factor = hyp2f1(0.5 * (n - b), n - 1.0 - 0.5 * b, 0.5 * n, r * r);
  return normalization_constant(params.n, b) * factor;
}

std::optional<double> poisson_integral_closed_form(const KernelParams& params,
                                                   const BoundaryFunction& phi, double r) {
  switch (phi.closed_form()) {
    case BoundaryFunction::ClosedForm::Constant:
      if (params.is_normalized()) {
        return phi.tag_value_ * constant_poisson_closed_form(params, r);
      } else {
        // Plain zonal reduction without the normalization tie:
        // c (1-r^2)^alpha F(beta/2, beta/2 - n/2 + 1; n/2; r^2).
        const double n = params.n;
        const double b = params.beta;
        const double factor =
            std::pow(1.0 - r * r, params.alpha) *
            hyp2f1(0.5 * b, 0.5 * b - 0.5 * n + 1.0, 0.5 * n, r * r);
        return phi.tag_value_ * normalization_constant(params.n, b) * factor;
      }
    case BoundaryFunction::ClosedForm::ExtremalKernelPower: {
      // Only valid at the defining point of the extremal data.
      const KernelParams& tp = phi.tag_params_;
      if (tp.n != params.n || std::abs(tp.alpha - params.alpha) > 1e-12 ||
          std::abs(tp.beta - params.beta) > 1e-12 || std::abs(phi.tag_r_ - r) > 1e-12) {
        return std::nullopt;
      }
      return extremal_integral_closed_form(params, phi.tag_exps_, r);
    }
    case BoundaryFunction::ClosedForm::None:
      return std::nullopt;
  }
  return std::nullopt;
}

BoundaryFunction extremal_boundary(const KernelParams& params, const HolderExponents& exps,
                                   const BallPoint& x) {
  params.require_normalized();
  exps.validate();
  if (exps.infinite_p()) {
    throw InvalidParameterError("extremal_boundary: requires a finite p in (1, inf)");
  }
  if (x.dim() != params.n) throw InvalidParameterError("extremal_boundary: dimension mismatch");
  const double r = x.radius();
  const double power = exps.q / exps.p;

  BoundaryFunction out;
  if (r == 0.0) {
    out = BoundaryFunction::constant(1.0);  // P(0, .) = 1 identically
  } else {
    std::vector<double> axis = x.coords();
    for (double& c : axis) c /= r;
    const KernelParams p = params;
    out = BoundaryFunction::zonal(
        [p, r, power](double t) { return std::exp(log_kernel_power(p, r, t, power)); },
        std::move(axis));
  }
  out.closed_form_ = BoundaryFunction::ClosedForm::ExtremalKernelPower;
  out.tag_r_ = r;
  out.tag_q_over_p_ = power;
  out.tag_params_ = params;
  out.tag_exps_ = exps;
  return out;
}

IntegralResult lp_norm_ex(const BoundaryFunction& phi, double p, int n,
                          const QuadratureSpec& spec) {
  spec.validate();
  const bool p_infinite = std::isinf(p) && p > 0.0;
  if (!p_infinite && !(p >= 1.0)) {
    throw InvalidParameterError("lp_norm: p must lie in [1, inf]");
  }

  if (phi.kind() == BoundaryFunction::Kind::Sampled) {
    const auto& vals = phi.sample_values();
    const auto& wts = phi.sample_weights();
    if (p_infinite) {
      double sup = 0.0;
      for (double v : vals) sup = std::max(sup, std::abs(v));
      return {sup, 0.0};
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) acc += wts[i] * std::pow(std::abs(vals[i]), p);
    return {std::pow(acc, 1.0 / p), 0.0};
  }

  if (p_infinite) {
    // Essential supremum over a fine evaluation grid.
    if (phi.kind() == BoundaryFunction::Kind::Zonal) {
      double sup = 0.0;
      for (int i = 0; i < kSupGridSize; ++i) {
        const double t = -1.0 + 2.0 * i / (kSupGridSize - 1.0);
        sup = std::max(sup, std::abs(phi.zonal_value(t)));
      }
      return {sup, 0.0};
    }
    std::vector<double> point(static_cast<std::size_t>(n));
    double sup = 0.0;
    for (long i = 0; i < spec.mc_samples; ++i) {
      rng::unit_sphere_point(spec.seed, static_cast<std::uint64_t>(i), point);
      sup = std::max(sup, std::abs(phi.value_at(point)));
    }
    return {sup, 0.0};
  }

  IntegralResult integral{};
  if (phi.kind() == BoundaryFunction::Kind::Zonal &&
      spec.method == QuadMethod::ReducedGaussLegendre) {
    const auto f = [&phi, p](double t) { return std::pow(std::abs(phi.zonal_value(t)), p); };
    integral = zonal_integral_ex(ZonalIntegrand{f, n}, spec);
  } else {
    const auto f = [&phi, p](std::span<const double> eta) {
      return std::pow(std::abs(phi.value_at(eta)), p);
    };
    const McResult mc = mc_sphere_integral(f, n, spec);
    integral = {mc.value, mc.std_error};
  }
  if (!(integral.value >= 0.0)) integral.value = 0.0;
  const double norm = std::pow(integral.value, 1.0 / p);
  const double norm_err =
      integral.value > 0.0 ? integral.error * norm / (p * integral.value) : integral.error;
  return {norm, norm_err};
}

double lp_norm(const BoundaryFunction& phi, double p, int n, const QuadratureSpec& spec) {
  return lp_norm_ex(phi, p, n, spec).value;
}

std::optional<double> lp_norm_closed_form(const BoundaryFunction& phi, double p) {
  const bool p_infinite = std::isinf(p) && p > 0.0;
  if (!p_infinite && !(p >= 1.0)) {
    throw InvalidParameterError("lp_norm_closed_form: p must lie in [1, inf]");
  }
  switch (phi.closed_form()) {
    case BoundaryFunction::ClosedForm::Constant:
      return std::abs(phi.tag_value_);
    case BoundaryFunction::ClosedForm::ExtremalKernelPower: {
      const KernelParams& kp = phi.tag_params_;
      const double r = phi.tag_r_;
      if (p_infinite) {
        // The kernel power peaks at t = 1.
        return std::exp(log_kernel_power(kp, r, 1.0, phi.tag_q_over_p_));
      }
      const double s = phi.tag_q_over_p_ * p;
      const double n = kp.n;
      const double sb = s * kp.beta;
      const double factor = hyp2f1(0.5 * sb, 0.5 * sb - 0.5 * n + 1.0, 0.5 * n, r * r);
      const double boundary_power = std::exp(kp.alpha * s * std::log1p(-r * r));
      return std::pow(boundary_power * factor, 1.0 / p);
    }
    case BoundaryFunction::ClosedForm::None:
      return std::nullopt;
  }
  return std::nullopt;
}

double extremal_integral_closed_form(const KernelParams& params, const HolderExponents& exps,
                                     double r) {
  params.require_normalized();
  exps.validate();
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("extremal_integral_closed_form: r outside [0, 1)");
  const double n = params.n;
  const double qb = exps.q * params.beta;
  const double factor = hyp2f1(0.5 * qb, 0.5 * qb - 0.5 * n + 1.0, 0.5 * n, r * r);
  const double boundary_power = std::exp(params.alpha * exps.q * std::log1p(-r * r));
  return normalization_constant(params.n, params.beta) * boundary_power * factor;
}

double extremal_lp_norm_closed_form(const KernelParams& params, const HolderExponents& exps,
                                    double r) {
  params.require_normalized();
  exps.validate();
  if (exps.infinite_p()) {
    throw InvalidParameterError("extremal_lp_norm_closed_form: requires finite p");
  }
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("extremal_lp_norm_closed_form: r outside [0, 1)");
  const double n = params.n;
  const double qb = exps.q * params.beta;
  const double factor = hyp2f1(0.5 * qb, 0.5 * qb - 0.5 * n + 1.0, 0.5 * n, r * r);
  const double boundary_power = std::exp(params.alpha * exps.q * std::log1p(-r * r));
  return std::pow(boundary_power * factor, 1.0 / exps.p);
}

SharpnessReport sharpness_ratio(const KernelParams& params, const HolderExponents& exps, double r,
                                EvalMethod method, const QuadratureSpec& spec) {
  params.require_normalized();
  exps.validate();
  if (exps.infinite_p()) {
    throw InvalidParameterError("sharpness_ratio: requires a finite p in (1, inf)");
  }
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("sharpness_ratio: r outside [0, 1)");

  SharpnessReport report;
  report.method = method;
  report.closed_form_bound = pointwise_sharp_constant(params, exps, r);

  if (method == EvalMethod::ClosedForm) {
    report.integral_value = extremal_integral_closed_form(params, exps, r);
    report.lp_norm = extremal_lp_norm_closed_form(params, exps, r);
  } else {
    require_quadrature_radius(r);
    QuadratureSpec local = spec;
    local.method = method == EvalMethod::Quadrature ? QuadMethod::ReducedGaussLegendre
                                                    : QuadMethod::MonteCarlo;
    const BallPoint x = BallPoint::radial(params.n, r);
    const BoundaryFunction phi0 = extremal_boundary(params, exps, x);
    report.integral_value = poisson_integral(params, phi0, x, local);
    report.lp_norm = lp_norm(phi0, exps.p, params.n, local);
  }

  const double attenuation = std::pow(1.0 - r * r, (params.n - 1.0) / exps.p);
  report.ratio = std::abs(report.integral_value) * attenuation /
                 (report.closed_form_bound * report.lp_norm);
  return report;
}

std::vector<BoundCheckRow> bound_check(const KernelParams& params, const HolderExponents& exps,
                                       const BoundaryFunction& phi, std::span<const double> r_grid,
                                       const QuadratureSpec& spec, bool throw_on_violation) {
  params.require_normalized();
  exps.validate();
  spec.validate();
  if (r_grid.empty()) throw InvalidParameterError("bound_check: empty radius grid");
  if (phi.kind() == BoundaryFunction::Kind::Sampled) {
    // A finite point set is a discrete measure; its weighted kernel sum is
    // a cubature, not a surface integral, and the L^p bound need not
    // dominate it (take a sample at the kernel peak).
    throw InvalidParameterError(
        "bound_check: sampled data is not an L^p density; evaluate poisson_integral instead");
  }

  const IntegralResult norm = lp_norm_ex(phi, exps.p, params.n, spec);
  std::vector<BoundCheckRow> rows;
  rows.reserve(r_grid.size());

  for (double r : r_grid) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("bound_check: r outside [0, 1)");
    require_quadrature_radius(r);
    BallPoint x = phi.kind() == BoundaryFunction::Kind::Zonal && !phi.axis_free()
                      ? BallPoint([&] {
                          std::vector<double> coords = phi.axis();
                          for (double& c : coords) c *= r;
                          return coords;
                        }())
                      : BallPoint::radial(params.n, r);
    const IntegralResult u = poisson_integral_ex(params, phi, x, spec);
    const double attenuation = std::pow(1.0 - r * r, -(params.n - 1.0) / exps.p);
    const double constant = pointwise_sharp_constant(params, exps, r);
    const double bound = constant * attenuation * norm.value;
    // Quadrature error on both sides plus a roundoff floor; the bound holds
    // with equality for extremal data, so exact-zero sigma would misread
    // last-bit noise as a violation.
    const double sigma = u.error + constant * attenuation * norm.error +
                         1e-14 * (std::abs(bound) + std::abs(u.value));
    rows.push_back({r, std::abs(u.value), bound, bound - std::abs(u.value), sigma});
  }

  for (const BoundCheckRow& row : rows) {
    if (!throw_on_violation) break;
    if (row.margin < -4.0 * row.sigma) {
      std::ostringstream msg;
      msg << "bound_check: pointwise bound violated at r = " << row.r << " (margin "
          << row.margin << ", 4 sigma = " << 4.0 * row.sigma << ")";
      throw ViolationError(msg.str());
    }
  }
  return rows;
}

std::vector<double> poisson_integral_components(const KernelParams& params,
                                                std::span<const BoundaryFunction> components,
                                                const BallPoint& x, const QuadratureSpec& spec) {
  if (components.empty()) {
    throw InvalidParameterError("poisson_integral_components: no components");
  }
  std::vector<double> out;
  out.reserve(components.size());
  for (const BoundaryFunction& phi : components) {
    out.push_back(poisson_integral(params, phi, x, spec));
  }
  return out;
}

std::vector<double> default_r_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 9; ++i) grid.push_back(0.1 * i);
  grid.push_back(0.95);
  grid.push_back(0.99);
  return grid;
}

}  // namespace pball
