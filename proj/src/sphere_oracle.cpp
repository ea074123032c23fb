#include "pball/sphere_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "pball/errors.hpp"
#include "pball/rng.hpp"
#include "pball/specfun.hpp"

namespace pball {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr int kPanelOrder = 20;
constexpr double kMinSegmentLength = 1e-14;

// Gauss-Legendre nodes/weights of order 20 on [-1, 1] (positive half).
constexpr double kGlNode[10] = {
    0.076526521133497333755, 0.22778585114164507808, 0.37370608871541956067,
    0.51086700195082709800,  0.63605368072651502545, 0.74633190646015079261,
    0.83911697182221882339,  0.91223442825132590587, 0.96397192727791379127,
    0.99312859918509492479};
constexpr double kGlWeight[10] = {
    0.15275338713072585070,  0.14917298647260374679, 0.14209610931838205133,
    0.13168863844917662690,  0.11819453196151841731, 0.10193011981724043504,
    0.083276741576704748725, 0.06267204833410906357, 0.040601429800386941331,
    0.017614007139152118312};

struct Segment {
  double a;
  double b;
  double refined;  // two-panel estimate
  double err;      // |two-panel - one-panel|
};

double panel(const std::function<double(double)>& h, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kPanelOrder / 2; ++i) {
    const double lo = h(mid - half * kGlNode[i]);
    const double hi = h(mid + half * kGlNode[i]);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      std::ostringstream msg;
      msg << "zonal integrand non-finite on [" << a << ", " << b << "]";
      throw NonFiniteError(msg.str());
    }
    acc += kGlWeight[i] * (lo + hi);
  }
  return acc * half;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw InvalidParameterError("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw InvalidParameterError("QuadratureSpec: max_subdivisions must be >= 1");
  }
  if (mc_samples < 1000) {
    throw InvalidParameterError("QuadratureSpec: mc_samples must be >= 1000");
  }
  if (threads < 1) {
    throw InvalidParameterError("QuadratureSpec: threads must be >= 1");
  }
}

IntegralResult zonal_integral_ex(const ZonalIntegrand& integrand, const QuadratureSpec& spec) {
  spec.validate();
  if (integrand.n < 3) throw InvalidParameterError("zonal_integral: dimension must be >= 3");
  if (!integrand.f) throw InvalidParameterError("zonal_integral: empty integrand");

  // Constant folding the surface-measure weight into the 1-D integrand:
  // W_n (1-t^2)^{(n-3)/2}, with W_n = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)).
  const int n = integrand.n;
  const double wn = std::exp(log_gamma(0.5 * n) - log_gamma(0.5 * (n - 1))) / kSqrtPi;
  const double weight_exp = 0.5 * (n - 3);
  const auto& f = integrand.f;
  const auto h = [&](double t) {
    const double w = n == 3 ? 1.0 : std::pow(1.0 - t * t, weight_exp);
    return wn * w * f(t);
  };

  // Global-error bisection: always split the segment with the largest
  // error estimate, stop once the summed estimates fit the budget.  This
  // concentrates panels near boundary-peaked kernels without starving the
  // tiny segments that carry most of the mass.
  const auto make_segment = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double whole = panel(h, a, b);
    const double refined = panel(h, a, mid) + panel(h, mid, b);
    return Segment{a, b, refined, std::abs(refined - whole)};
  };

  std::vector<Segment> heap;
  const auto by_err = [](const Segment& x, const Segment& y) { return x.err < y.err; };
  heap.push_back(make_segment(-1.0, 1.0));
  double total = heap.front().refined;
  double total_err = heap.front().err;

  for (int splits = 0;; ++splits) {
    const double budget = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= budget) break;
    std::pop_heap(heap.begin(), heap.end(), by_err);
    const Segment worst = heap.back();
    heap.pop_back();
    if (worst.b - worst.a < kMinSegmentLength || splits >= spec.max_subdivisions) {
      std::ostringstream msg;
      msg << "zonal_integral: tolerance not met within " << splits
          << " subdivisions (best estimate " << total << ", error " << total_err << ")";
      throw ToleranceError(msg.str(), total, total_err);
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = make_segment(worst.a, mid);
    const Segment right = make_segment(mid, worst.b);
    total += left.refined + right.refined - worst.refined;
    total_err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_err);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_err);
  }

  // Resum from the pieces pairwise so the result does not depend on the
  // incremental update order's rounding.
  std::vector<double> parts;
  parts.reserve(heap.size());
  for (const Segment& s : heap) parts.push_back(s.refined);
  return {pairwise_sum(parts), total_err};
}

double zonal_integral(const ZonalIntegrand& integrand, const QuadratureSpec& spec) {
  return zonal_integral_ex(integrand, spec).value;
}

double zonal_integral(const std::function<double(double)>& f, int n, const QuadratureSpec& spec) {
  return zonal_integral_ex(ZonalIntegrand{f, n}, spec).value;
}

double kernel_q_norm_oracle(const KernelParams& params, double q, double r,
                            const QuadratureSpec& spec) {
  params.validate();
  if (!(q >= 1.0)) throw InvalidParameterError("kernel_q_norm_oracle: q must be >= 1");
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("kernel_q_norm_oracle: r outside [0, 1)");
  // (1-r^2)^{alpha q} folded into the integrand in log space so neither
  // factor overflows on its own near the boundary.
  const double log_scale = params.alpha * q * std::log1p(-r * r);
  const double exponent = -0.5 * q * params.beta;
  const auto f = [=](double t) {
    return std::exp(log_scale + exponent * std::log(1.0 + r * r - 2.0 * r * t));
  };
  return zonal_integral(f, params.n, spec);
}

McResult mc_sphere_integral(const std::function<double(std::span<const double>)>& f, int n,
                            const QuadratureSpec& spec) {
  spec.validate();
  if (n < 3) throw InvalidParameterError("mc_sphere_integral: dimension must be >= 3");
  if (!f) throw InvalidParameterError("mc_sphere_integral: empty integrand");
  const int threads = spec.threads;

  const std::size_t count = static_cast<std::size_t>(spec.mc_samples);
  std::vector<double> values(count);
  std::atomic<bool> bad{false};

  const auto worker = [&](std::size_t begin, std::size_t end) {
    std::vector<double> point(static_cast<std::size_t>(n));
    for (std::size_t i = begin; i < end && !bad.load(std::memory_order_relaxed); ++i) {
      rng::unit_sphere_point(spec.seed, i, point);
      const double v = f(point);
      if (!std::isfinite(v)) {
        bad.store(true, std::memory_order_relaxed);
        return;
      }
      values[i] = v;
    }
  };

  if (threads == 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(count, static_cast<std::size_t>(t) * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (bad.load()) throw NonFiniteError("mc_sphere_integral: integrand non-finite at a sample");

  const double mean = pairwise_sum(values) / static_cast<double>(count);
  for (double& v : values) {
    const double d = v - mean;
    v = d * d;
  }
  const double m2 = pairwise_sum(values);
  const double variance = m2 / static_cast<double>(count - 1);
  const double std_error = std::sqrt(variance / static_cast<double>(count));
  return {mean, std_error};
}

}  // namespace pball
