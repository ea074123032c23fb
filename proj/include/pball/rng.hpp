#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace pball::rng {

/// SplitMix64 output function evaluated at an arbitrary stream position.
/// Counter-based: the k-th value depends only on (seed, k), so any sample
/// can be generated independently of all others.
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform draw in the open interval (0, 1).
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  return (static_cast<double>(counter_u64(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

/// Fill `out` with standard Gaussians for sample index `index` (Box-Muller
/// over a per-sample block of counters).
inline void gaussian_vector(std::uint64_t seed, std::uint64_t index, std::span<double> out) {
  constexpr double kTwoPi = 6.28318530717958647692;
  const std::size_t n = out.size();
  const std::uint64_t stride = 2 * ((static_cast<std::uint64_t>(n) + 1) / 2);
  const std::uint64_t base = index * stride;
  for (std::size_t pair = 0; 2 * pair < n; ++pair) {
    const double u1 = counter_uniform(seed, base + 2 * pair);
    const double u2 = counter_uniform(seed, base + 2 * pair + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    out[2 * pair] = radius * std::cos(kTwoPi * u2);
    if (2 * pair + 1 < n) out[2 * pair + 1] = radius * std::sin(kTwoPi * u2);
  }
}

/// Uniform point on the unit sphere S^{n-1}, n = out.size().
inline void unit_sphere_point(std::uint64_t seed, std::uint64_t index, std::span<double> out) {
  gaussian_vector(seed, index, out);
  double norm2 = 0.0;
  for (double c : out) norm2 += c * c;
  // A numerically zero Gaussian vector has probability ~0; fall back to a
  // deterministic axis so the stream stays a pure function of (seed, index).
  if (norm2 < 1e-300) {
    for (double& c : out) c = 0.0;
    out[0] = 1.0;
    return;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : out) c *= inv;
}

}  // namespace pball::rng
