#pragma once

#include <span>
#include <vector>

namespace pball {

/// Parameters of the weighted Poisson-type kernel
///   P(x, eta) = (1 - |x|^2)^alpha / |x - eta|^beta
/// on the unit ball of R^n, n >= 3.  The pair (alpha, beta) is "normalized"
/// when n + alpha = beta + 1; every sharp-constant formula assumes it.
struct KernelParams {
  int n = 3;
  double alpha = 1.0;
  double beta = 3.0;

  /// The normalized member of the family for a given beta: alpha = beta+1-n.
  static KernelParams normalized(int n, double beta);

  bool is_normalized(double tol = 1e-12) const;
  void validate() const;             // n >= 3, beta > 0, finite alpha
  void require_normalized() const;   // validate() plus the normalization tie
};

/// Point of the open unit ball, |x| < 1.
class BallPoint {
 public:
  explicit BallPoint(std::vector<double> coords);

  /// r along coordinate axis `axis` (radial shorthand).
  static BallPoint radial(int n, double r, int axis = 0);

  const std::vector<double>& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double radius() const;

 private:
  std::vector<double> coords_;
};

/// Normalizing constant c_{n,beta} making the kernel integrate to 1 in the
/// boundary limit:
///   c_{n,beta} = Gamma(beta/2) Gamma(beta/2 - n/2 + 1)
///              / (Gamma(n/2) Gamma(beta - n + 1)).
/// Requires beta > n - 2 so every gamma argument stays off the poles.
double normalization_constant(int n, double beta);

/// Kernel value at (x, eta) with eta on the unit sphere.  eta within 1e-12
/// of unit length is accepted as-is, within 1e-8 it is renormalized, and
/// anything further off is a domain error.
double poisson_kernel(const KernelParams& params, const BallPoint& x, std::span<const double> eta);

/// Kernel along a fixed axis as a function of r = |x| and t = <x/|x|, eta>:
///   (1 - r^2)^alpha * (1 + r^2 - 2 r t)^(-beta/2).
double poisson_kernel_radial(const KernelParams& params, double r, double t);

}  // namespace pball
