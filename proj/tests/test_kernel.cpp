#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <span>
#include <vector>

#include "pball/errors.hpp"
#include "pball/kernel.hpp"
#include "pball/rng.hpp"

using namespace pball;

namespace {

// Orthonormal n x n matrix from seeded Gaussian columns (Gram-Schmidt).
std::vector<std::vector<double>> random_rotation(int n, std::uint64_t seed) {
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    rng::gaussian_vector(seed, static_cast<std::uint64_t>(j), cols[static_cast<std::size_t>(j)]);
    for (int k = 0; k < j; ++k) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) {
        dot += cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
               cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      }
      for (int i = 0; i < n; ++i) {
        cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -=
            dot * cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      }
    }
    double norm2 = 0.0;
    for (double c : cols[static_cast<std::size_t>(j)]) norm2 += c * c;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : cols[static_cast<std::size_t>(j)]) c *= inv;
  }
  // Rows of R are the orthonormalized columns, so R maps e_j to cols[j].
  std::vector<std::vector<double>> rot(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }
  return rot;
}

std::vector<double> rotate_by(const std::vector<std::vector<double>>& rot,
                          const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += rot[i][j] * v[j];
  }
  return out;
}

}  // namespace

TEST_CASE("normalization constant matches closed-form special cases") {
  CHECK(normalization_constant(3, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalization_constant(3, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalization_constant(3, 5.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(normalization_constant(4, 6.0) == doctest::Approx(1.0).epsilon(1e-14));
  // Non-integer exponent, frozen from a 40-digit reference computation.
  CHECK(normalization_constant(3, 3.7) == doctest::Approx(1.0464727513431788).epsilon(1e-14));
  CHECK(normalization_constant(5, 7.25) == doctest::Approx(1.1956495904388754).epsilon(1e-13));
}

TEST_CASE("normalization constant rejects beta at or below n - 2") {
  CHECK_THROWS_AS(normalization_constant(3, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(normalization_constant(3, 0.9), InvalidParameterError);
  CHECK_THROWS_AS(normalization_constant(5, 3.0), InvalidParameterError);
  CHECK_THROWS_AS(normalization_constant(2, 3.0), InvalidParameterError);
}

TEST_CASE("normalization constant reports the Gamma(beta - n + 1) pole") {
  // beta in (n-2, n-1] can put beta - n + 1 on a nonpositive integer.
  CHECK_THROWS_AS(normalization_constant(3, 2.0), PoleError);
  CHECK_THROWS_AS(normalization_constant(4, 3.0), PoleError);
}

TEST_CASE("normalized family ties alpha to beta + 1 - n") {
  const KernelParams p = KernelParams::normalized(3, 3.0);
  CHECK(p.alpha == doctest::Approx(1.0));
  CHECK(p.is_normalized());
  CHECK_NOTHROW(p.require_normalized());

  const KernelParams q = KernelParams::normalized(4, 6.0);
  CHECK(q.alpha == doctest::Approx(3.0));

  KernelParams off{3, 1.0, 3.5};
  CHECK_FALSE(off.is_normalized());
  CHECK_THROWS_AS(off.require_normalized(), InvalidParameterError);
  // A looser tolerance can accept small drift.
  KernelParams near{3, 1.0 + 1e-10, 3.0};
  CHECK_FALSE(near.is_normalized());
  CHECK(near.is_normalized(1e-9));
}

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(KernelParams({2, 1.0, 3.0}).validate(), InvalidParameterError);
  CHECK_THROWS_AS(KernelParams({3, 1.0, 0.0}).validate(), InvalidParameterError);
  CHECK_THROWS_AS(KernelParams({3, 1.0, -2.0}).validate(), InvalidParameterError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(KernelParams({3, inf, 3.0}).validate(), InvalidParameterError);
  CHECK_NOTHROW(KernelParams({3, -0.5, 2.5}).validate());
}

TEST_CASE("ball points validate their coordinates") {
  const BallPoint x = BallPoint::radial(3, 0.6);
  CHECK(x.dim() == 3);
  CHECK(x.radius() == doctest::Approx(0.6));
  CHECK(x.coords() == std::vector<double>{0.6, 0.0, 0.0});

  const BallPoint y = BallPoint::radial(4, 0.25, 2);
  CHECK(y.coords() == std::vector<double>{0.0, 0.0, 0.25, 0.0});

  CHECK_THROWS_AS(BallPoint(std::vector<double>{}), InvalidParameterError);
  CHECK_THROWS_AS(BallPoint({1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(BallPoint({0.8, 0.8}), DomainError);
  CHECK_THROWS_AS(BallPoint::radial(3, 1.0), DomainError);
  CHECK_THROWS_AS(BallPoint::radial(3, -0.1), DomainError);
  CHECK_THROWS_AS(BallPoint::radial(3, 0.5, 3), InvalidParameterError);
  CHECK_THROWS_AS(BallPoint::radial(3, 0.5, -1), InvalidParameterError);
  CHECK_THROWS_AS(BallPoint::radial(0, 0.0), InvalidParameterError);
}

TEST_CASE("kernel value at a simple aligned configuration") {
  // (1 - 0.25)^1 / |0.5 e1 - e1|^3 = 0.75 / 0.125 = 6.
  const KernelParams p{3, 1.0, 3.0};
  const BallPoint x = BallPoint::radial(3, 0.5);
  const std::vector<double> eta = {1.0, 0.0, 0.0};
  CHECK(poisson_kernel(p, x, eta) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(poisson_kernel_radial(p, 0.5, 1.0) == doctest::Approx(6.0).epsilon(1e-14));

  // At the center every direction sees the same value (1 - 0)^alpha / 1.
  const BallPoint origin = BallPoint::radial(3, 0.0);
  CHECK(poisson_kernel(p, origin, eta) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(poisson_kernel_radial(p, 0.0, -0.3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("full kernel agrees with the radial form") {
  const KernelParams p{4, 2.3, 5.1};
  for (std::uint64_t i = 0; i < 24; ++i) {
    std::vector<double> dir(4), eta(4);
    rng::unit_sphere_point(101, 2 * i, dir);
    rng::unit_sphere_point(101, 2 * i + 1, eta);
    const double r = 0.97 * rng::counter_uniform(707, i);
    std::vector<double> coords(4);
    for (int k = 0; k < 4; ++k) coords[static_cast<std::size_t>(k)] = r * dir[static_cast<std::size_t>(k)];
    const BallPoint x{coords};
    double t = 0.0;
    for (int k = 0; k < 4; ++k) t += dir[static_cast<std::size_t>(k)] * eta[static_cast<std::size_t>(k)];
    const double full = poisson_kernel(p, x, eta);
    const double radial = poisson_kernel_radial(p, r, t);
    CHECK(full == doctest::Approx(radial).epsilon(1e-11));
  }
}

TEST_CASE("kernel is invariant under simultaneous rotation") {
  const KernelParams p{3, 1.0, 3.0};
  const KernelParams q{5, 3.25, 7.25};
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    for (const auto& params : {p, q}) {
      const int n = params.n;
      const auto rot = random_rotation(n, 3000 + trial);
      std::vector<double> dir(static_cast<std::size_t>(n)), eta(static_cast<std::size_t>(n));
      rng::unit_sphere_point(55, 2 * trial, dir);
      rng::unit_sphere_point(55, 2 * trial + 1, eta);
      const double r = 0.9 * rng::counter_uniform(56, trial);
      std::vector<double> coords(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) coords[static_cast<std::size_t>(k)] = r * dir[static_cast<std::size_t>(k)];

      const std::vector<double> rotated_x = rotate_by(rot, coords);
      const std::vector<double> rotated_eta = rotate_by(rot, eta);
      const double before = poisson_kernel(params, BallPoint{coords}, eta);
      const double after = poisson_kernel(params, BallPoint{rotated_x}, rotated_eta);
      CHECK(before == doctest::Approx(after).epsilon(1e-12));
    }
  }
}

TEST_CASE("eta is accepted, renormalized, or rejected by distance from the sphere") {
  const KernelParams p{3, 1.0, 3.0};
  const BallPoint x = BallPoint::radial(3, 0.5);

  // Within 1e-12 of unit length: used as-is.
  const std::vector<double> close = {1.0 + 5e-13, 0.0, 0.0};
  CHECK(poisson_kernel(p, x, close) == doctest::Approx(6.0).epsilon(1e-10));

  // Within 1e-8: pulled back to the sphere, so the exact value reappears.
  const std::vector<double> drifted = {1.0 + 1e-9, 0.0, 0.0};
  CHECK(poisson_kernel(p, x, drifted) == doctest::Approx(6.0).epsilon(1e-12));

  const std::vector<double> far = {1.001, 0.0, 0.0};
  CHECK_THROWS_AS(poisson_kernel(p, x, far), DomainError);
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(poisson_kernel(p, x, zero), DomainError);
}

TEST_CASE("kernel rejects mismatched dimensions and bad radial arguments") {
  const KernelParams p{3, 1.0, 3.0};
  const BallPoint x4 = BallPoint::radial(4, 0.5);
  const std::vector<double> eta3 = {1.0, 0.0, 0.0};
  const std::vector<double> eta4 = {1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(poisson_kernel(p, x4, eta4), InvalidParameterError);
  CHECK_THROWS_AS(poisson_kernel(p, BallPoint::radial(3, 0.5), eta4), InvalidParameterError);

  CHECK_THROWS_AS(poisson_kernel_radial(p, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(poisson_kernel_radial(p, -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(poisson_kernel_radial(p, 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(poisson_kernel_radial(p, 0.5, -1.5), DomainError);
}
