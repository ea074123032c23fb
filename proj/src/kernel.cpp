#include "pball/kernel.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "pball/errors.hpp"
#include "pball/specfun.hpp"

namespace pball {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kRenormalizeTol = 1e-8;

double squared_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double c : v) acc += c * c;
  return acc;
}

}  // namespace

KernelParams KernelParams::normalized(int n, double beta) {
  KernelParams p{n, beta + 1.0 - n, beta};
  p.validate();
  return p;
}

bool KernelParams::is_normalized(double tol) const {
  return std::abs(n + alpha - beta - 1.0) <= tol;
}

void KernelParams::validate() const {
  if (n < 3) {
    std::ostringstream msg;
    msg << "kernel dimension n = " << n << " must be >= 3";
    throw InvalidParameterError(msg.str());
  }
  if (!(beta > 0.0)) {
    std::ostringstream msg;
    msg << "kernel exponent beta = " << beta << " must be positive";
    throw InvalidParameterError(msg.str());
  }
  if (!std::isfinite(alpha)) throw InvalidParameterError("kernel exponent alpha must be finite");
}

void KernelParams::require_normalized() const {
  validate();
  if (!is_normalized()) {
    std::ostringstream msg;
    msg << "kernel parameters not normalized: n + alpha - beta - 1 = "
        << n + alpha - beta - 1.0 << " (need |.| <= 1e-12)";
    throw InvalidParameterError(msg.str());
  }
}

BallPoint::BallPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidParameterError("BallPoint: empty coordinate vector");
  const double r2 = squared_norm(coords_);
  if (!std::isfinite(r2) || r2 >= 1.0) {
    std::ostringstream msg;
    msg << "BallPoint: |x| = " << std::sqrt(r2) << " not inside the open unit ball";
    throw DomainError(msg.str());
  }
}

BallPoint BallPoint::radial(int n, double r, int axis) {
  if (n < 1) throw InvalidParameterError("BallPoint::radial: dimension must be positive");
  if (axis < 0 || axis >= n) throw InvalidParameterError("BallPoint::radial: axis out of range");
  if (!(r >= 0.0 && r < 1.0)) {
    std::ostringstream msg;
    msg << "BallPoint::radial: r = " << r << " outside [0, 1)";
    throw DomainError(msg.str());
  }
  std::vector<double> coords(static_cast<std::size_t>(n), 0.0);
  coords[static_cast<std::size_t>(axis)] = r;
  return BallPoint(std::move(coords));
}

double BallPoint::radius() const {
  return std::sqrt(squared_norm(coords_));
}

double normalization_constant(int n, double beta) {
  if (n < 3) throw InvalidParameterError("normalization_constant: n must be >= 3");
  if (!(beta > n - 2.0)) {
    std::ostringstream msg;
    msg << "normalization_constant: beta = " << beta << " must exceed n - 2 = " << n - 2;
    throw InvalidParameterError(msg.str());
  }
  const double half_n = 0.5 * n;
  if (is_nonpositive_integer(beta - n + 1.0)) {
    std::ostringstream msg;
    msg << "normalization_constant: gamma pole at beta - n + 1 = " << beta - n + 1.0;
    throw PoleError(msg.str());
  }
  const std::array<double, 2> num = {0.5 * beta, 0.5 * beta - half_n + 1.0};
  const std::array<double, 2> den = {half_n, beta - n + 1.0};
  return gamma_ratio(num, den);
}

double poisson_kernel(const KernelParams& params, const BallPoint& x, std::span<const double> eta) {
  params.validate();
  if (x.dim() != params.n) throw InvalidParameterError("poisson_kernel: x dimension mismatch");
  if (static_cast<int>(eta.size()) != params.n) {
    throw InvalidParameterError("poisson_kernel: eta dimension mismatch");
  }
  const double eta_norm = std::sqrt(squared_norm(eta));
  if (!std::isfinite(eta_norm) || std::abs(eta_norm - 1.0) > kRenormalizeTol) {
    std::ostringstream msg;
    msg << "poisson_kernel: |eta| = " << eta_norm << " too far from the unit sphere";
    throw DomainError(msg.str());
  }
  const double scale = std::abs(eta_norm - 1.0) <= kUnitTol ? 1.0 : 1.0 / eta_norm;

  const auto& xc = x.coords();
  double dist2 = 0.0;
  for (int i = 0; i < params.n; ++i) {
    const double d = xc[static_cast<std::size_t>(i)] - scale * eta[static_cast<std::size_t>(i)];
    dist2 += d * d;
  }
  const double r2 = squared_norm(xc);
  return std::pow(1.0 - r2, params.alpha) * std::pow(dist2, -0.5 * params.beta);
}

double poisson_kernel_radial(const KernelParams& params, double r, double t) {
  params.validate();
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("poisson_kernel_radial: r outside [0, 1)");
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("poisson_kernel_radial: t outside [-1, 1]");
  return std::pow(1.0 - r * r, params.alpha) * std::pow(1.0 + r * r - 2.0 * r * t, -0.5 * params.beta);
}

}  // namespace pball
