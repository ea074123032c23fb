// Acceptance harness: one line per criterion, nonzero exit on any failure.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pball/errors.hpp"
#include "pball/kernel.hpp"
#include "pball/rng.hpp"
#include "pball/sharp.hpp"
#include "pball/specfun.hpp"
#include "pball/sphere_oracle.hpp"
#include "pball/transform.hpp"

using namespace pball;

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  const std::string path = "/tmp/pball_acceptance_" + std::to_string(counter++) + ".out";
  const std::string cmd = std::string(PBALL_CLI_PATH) + " " + args + " >" + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  run.out = buf.str();
  std::remove(path.c_str());
  return run;
}

// 1. Zonal quadrature of (1 + r^2 - 2rt)^(-lambda) against the
//    hypergeometric closed form over the full (n, lambda, r) grid.
bool kernel_moment_identity(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const QuadratureSpec spec{};
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    for (double lambda : {1.0, 0.5 * n, n - 1.0, 1.7, 3.3}) {
      for (double r : {0.0, 0.3, 0.7, 0.95}) {
        const double quad = zonal_integral(
            [lambda, r](double t) { return std::pow(1.0 + r * r - 2.0 * r * t, -lambda); }, n,
            spec);
        const double closed = hyp2f1(lambda, lambda - 0.5 * n + 1.0, 0.5 * n, r * r);
        worst = std::max(worst, std::abs(quad - closed) / std::max(1.0, std::abs(closed)));
      }
    }
  }
  const double secs = elapsed_seconds(start);
  std::ostringstream msg;
  msg << "max scaled error " << worst << ", " << secs << " s";
  detail = msg.str();
  return worst <= 1e-8 && secs < 10.0;
}

// 2. The representation of constant data tends to 1 at the boundary.
bool normalization_limit(std::string& detail) {
  double worst = 0.0;
  const std::pair<int, double> cells[] = {{3, 3.0}, {3, 4.0}, {4, 6.0}, {3, 5.0}};
  for (const auto& [n, beta] : cells) {
    const double u = constant_poisson_closed_form(KernelParams::normalized(n, beta), 0.9999);
    worst = std::max(worst, std::abs(u - 1.0));
  }
  std::ostringstream msg;
  msg << "max |u[1](0.9999) - 1| = " << worst;
  detail = msg.str();
  return worst <= 1e-3;
}

// 3. The extremal data attains the bound: equality-chain ratio is 1 under
//    both the closed forms and independent quadrature.
bool sharpness_ratios(std::string& detail) {
  const QuadratureSpec spec{};
  double worst_closed = 0.0;
  double worst_quad = 0.0;
  for (int n : {3, 4}) {
    for (double beta : {static_cast<double>(n), 2.0 * (n - 1.0), n + 1.5}) {
      const KernelParams params = KernelParams::normalized(n, beta);
      for (double p : {1.25, 2.0, 4.0}) {
        const HolderExponents exps = HolderExponents::from_p(p);
        for (double r : {0.0, 0.5, 0.9}) {
          const SharpnessReport closed =
              sharpness_ratio(params, exps, r, EvalMethod::ClosedForm, spec);
          worst_closed = std::max(worst_closed, std::abs(closed.ratio - 1.0));
          const SharpnessReport quad =
              sharpness_ratio(params, exps, r, EvalMethod::Quadrature, spec);
          worst_quad = std::max(worst_quad, std::abs(quad.ratio - 1.0));
        }
      }
    }
  }
  std::ostringstream msg;
  msg << "closed-form dev " << worst_closed << ", quadrature dev " << worst_quad;
  detail = msg.str();
  return worst_closed <= 1e-10 && worst_quad <= 1e-6;
}

// 4. The named specializations match the general branch formula, including
//    the power-of-two (Legendre duplication) form of the harmonic constant.
bool specialization_identities(std::string& detail) {
  double worst = 0.0;
  const auto rel_dev = [](double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  };
  for (int n : {3, 4, 5}) {
    for (double q : {1.1, 1.5, 2.0, 3.0}) {
      const HolderExponents exps = HolderExponents::from_q(q);
      const double harm = harmonic_constant(n, exps).value;
      const double harm_gen =
          global_sharp_constant(KernelParams::normalized(n, static_cast<double>(n)), exps).value;
      worst = std::max(worst, rel_dev(harm, harm_gen));

      const double hyp = hyperbolic_constant(n, exps).value;
      const double hyp_gen =
          global_sharp_constant(KernelParams::normalized(n, 2.0 * (n - 1.0)), exps).value;
      worst = std::max(worst, rel_dev(hyp, hyp_gen));

      for (double g : {0.0, 0.5 * (n - 2.0), 0.35}) {
        const double dir = dirichlet_gamma_constant(n, g, exps).value;
        const double dir_gen =
            global_sharp_constant(KernelParams::normalized(n, n + 2.0 * g), exps).value;
        worst = std::max(worst, rel_dev(dir, dir_gen));
      }
      worst = std::max(worst, rel_dev(dirichlet_gamma_constant(n, 0.0, exps).value, harm));
      worst = std::max(worst, rel_dev(dirichlet_gamma_constant(n, 0.5 * (n - 2.0), exps).value, hyp));
    }
  }
  std::ostringstream msg;
  msg << "max relative deviation " << worst;
  detail = msg.str();
  return worst <= 1e-12;
}

// 5. Frozen known values.
bool known_values(std::string& detail) {
  double worst = 0.0;
  const KernelParams harm3 = KernelParams::normalized(3, 3.0);
  const HolderExponents p2 = HolderExponents::from_p(2.0);
  for (double r : {0.0, 0.25, 0.5, 0.9}) {
    const double c = pointwise_sharp_constant(harm3, p2, r);
    worst = std::max(worst, std::abs(c - std::sqrt(1.0 + r * r)));
  }
  for (int n : {3, 4, 5}) {
    for (double q : {1.0, 1.1, 2.0 * (n - 1.0) / n}) {
      if (q > 2.0 * (n - 1.0) / n + 1e-15) continue;
      const HolderExponents exps = q == 1.0 ? HolderExponents::infinite() : HolderExponents::from_q(q);
      worst = std::max(worst, std::abs(harmonic_constant(n, exps).value - 1.0));
    }
  }
  worst = std::max(worst, std::abs(normalization_constant(3, 3.0) - 1.0));
  worst = std::max(worst, std::abs(normalization_constant(3, 4.0) - 1.0));
  worst = std::max(worst, std::abs(normalization_constant(3, 5.0) - 0.75));
  std::ostringstream msg;
  msg << "max deviation " << worst;
  detail = msg.str();
  return worst <= 1e-12;
}

// 6. The two branch formulas agree where the regimes meet.
bool branch_continuity(std::string& detail) {
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    for (double beta : {static_cast<double>(n), n + 0.5, 2.0 * (n - 1.0) - 0.1}) {
      const KernelParams params = KernelParams::normalized(n, beta);
      const double q_star = 2.0 * (n - 1.0) / beta;
      const double at = global_sharp_constant(params, HolderExponents::from_q(q_star)).value;
      const double below =
          global_sharp_constant(params, HolderExponents::from_q(q_star - 1e-11)).value;
      const double above =
          global_sharp_constant(params, HolderExponents::from_q(q_star + 1e-11)).value;
      worst = std::max({worst, std::abs(below - at), std::abs(above - at), std::abs(below - above)});
    }
  }
  std::ostringstream msg;
  msg << "max branch gap " << worst;
  detail = msg.str();
  return worst <= 1e-10;
}

// 7. The numerical direction of the profile matches the classified regime
//    for seeded parameter draws on both sides of the crossover.
bool regime_direction(std::string& detail) {
  int mismatches = 0;
  int increasing_cases = 0;
  int decreasing_cases = 0;
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + i % 3;
    const double u1 = rng::counter_uniform(616101, static_cast<std::uint64_t>(2 * i));
    const double u2 = rng::counter_uniform(616101, static_cast<std::uint64_t>(2 * i + 1));
    double beta;
    double q;
    if (i % 2 == 0) {
      // Increasing side: q safely above the crossover 2(n-1)/beta.
      beta = n + 2.5 * u1;
      q = std::max(2.0 * (n - 1.0) / beta, 1.0) + 0.08 + 1.5 * u2;
      ++increasing_cases;
    } else {
      // Decreasing side: beta kept small enough that (1, q* - 0.08] is
      // nonempty, then q drawn from it.
      const double beta_max = 2.0 * (n - 1.0) / 1.09;
      beta = n + (beta_max - n) * u1;
      const double q_star = 2.0 * (n - 1.0) / beta;
      q = 1.0005 + (q_star - 0.08 - 1.0005) * u2;
      ++decreasing_cases;
    }
    const KernelParams params = KernelParams::normalized(n, beta);
    const HolderExponents exps = HolderExponents::from_q(q);
    const Regime regime = classify_regime(params, exps);

    double prev = regime_profile(params, exps, 0.0);
    bool saw_up = false;
    bool saw_down = false;
    for (int k = 1; k < 20; ++k) {
      const double r = 0.05 * k;
      const double cur = regime_profile(params, exps, r);
      const double slack = 1e-12 * std::max(1.0, std::abs(cur));
      if (cur > prev + slack) saw_up = true;
      if (cur < prev - slack) saw_down = true;
      prev = cur;
    }
    const bool matches = (regime == Regime::SupAtBoundary && saw_up && !saw_down)
                      || (regime == Regime::ConstantAtZero && saw_down && !saw_up);
    if (!matches) ++mismatches;
  }
  std::ostringstream msg;
  msg << mismatches << " mismatches over " << increasing_cases << "+" << decreasing_cases
      << " draws";
  detail = msg.str();
  return mismatches == 0;
}

// 8. The pointwise bound holds for seeded random zonal data at every grid
//    radius, within four combined standard errors.
bool hoelder_dominance(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const QuadratureSpec spec{};
  const std::vector<double> grid = default_r_grid();
  double worst = 0.0;  // most negative margin measured in sigmas
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 3;
    const std::uint64_t base = static_cast<std::uint64_t>(8 * i);
    double coef[4];
    for (int k = 0; k < 4; ++k) {
      coef[k] = 2.0 * rng::counter_uniform(828201, base + static_cast<std::uint64_t>(k)) - 1.0;
    }
    const double beta = n + 1.5 * rng::counter_uniform(828201, base + 4);
    const double p = 1.25 + 3.0 * rng::counter_uniform(828201, base + 5);
    const KernelParams params = KernelParams::normalized(n, beta);
    const HolderExponents exps = HolderExponents::from_p(p);
    std::vector<double> axis(static_cast<std::size_t>(n), 0.0);
    axis[0] = 1.0;
    const BoundaryFunction phi = BoundaryFunction::zonal(
        [coef](double t) { return coef[0] + t * (coef[1] + t * (coef[2] + t * coef[3])); },
        axis);
    const auto rows = bound_check(params, exps, phi, grid, spec, false);
    for (const auto& row : rows) {
      if (row.sigma > 0.0) worst = std::min(worst, row.margin / row.sigma);
      else if (row.margin < 0.0) worst = std::min(worst, -5.0);
    }
  }
  const double secs = elapsed_seconds(start);
  std::ostringstream msg;
  msg << "min margin " << worst << " sigma, " << secs << " s";
  detail = msg.str();
  return worst >= -4.0 && secs < 60.0;
}

// 9. Series evaluation of the profile near r = 1 approaches the boundary
//    summation value.
bool boundary_profile_limit(std::string& detail) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int n = 3 + i % 3;
    const double u1 = rng::counter_uniform(939301, static_cast<std::uint64_t>(2 * i));
    const double u2 = rng::counter_uniform(939301, static_cast<std::uint64_t>(2 * i + 1));
    const double beta = n * (1.0 + u1);           // in [n, 2n]
    const double q = 1.5 + 1.5 * u2;              // in [1.5, 3]
    const KernelParams params = KernelParams::normalized(n, beta);
    const HolderExponents exps = HolderExponents::from_q(q);
    const double near = regime_profile(params, exps, 0.9999);
    const double qb = q * beta;
    const double limit = hyp2f1_at_one(0.5 * (n - qb), n - 1.0 - 0.5 * qb, 0.5 * n);
    worst = std::max(worst, std::abs(near - limit) / std::abs(limit));
  }
  std::ostringstream msg;
  msg << "max relative gap " << worst;
  detail = msg.str();
  return worst <= 1e-3;
}

// 10. Monte Carlo subcommands reproduce byte-identical output for a fixed
//     seed, and thread count never moves a value by more than 1e-12.
bool determinism(std::string& detail) {
  const std::string base = "verify-identity --mc -n 3 --samples 30000 --seed 4242";
  const CliRun a = run_cli(base);
  const CliRun b = run_cli(base);
  if (a.exit_code != 0 || b.exit_code != 0) {
    detail = "CLI exited nonzero";
    return false;
  }
  if (a.out != b.out) {
    detail = "same-seed runs differ byte-wise";
    return false;
  }
  const CliRun threaded = run_cli(base + " --threads 4");
  if (threaded.exit_code != 0) {
    detail = "threaded run exited nonzero";
    return false;
  }
  const nlohmann::json doc1 = nlohmann::json::parse(a.out);
  const nlohmann::json doc4 = nlohmann::json::parse(threaded.out);
  if (doc1["rows"].size() != doc4["rows"].size() || doc1["rows"].empty()) {
    detail = "row sets differ";
    return false;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < doc1["rows"].size(); ++i) {
    for (const auto& [key, val] : doc1["rows"][i].items()) {
      if (!val.is_number()) continue;
      const double x = val.get<double>();
      const double y = doc4["rows"][i][key].get<double>();
      worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(x)));
    }
  }
  std::ostringstream msg;
  msg << "byte-identical single-threaded, thread drift " << worst;
  detail = msg.str();
  return worst <= 1e-12;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*check)(std::string&);
  };
  const Criterion criteria[] = {
      {"kernel moment identity vs quadrature oracle", kernel_moment_identity},
      {"constant data normalizes to 1 at the boundary", normalization_limit},
      {"extremal data attains the bound (ratio = 1)", sharpness_ratios},
      {"specializations equal the general formula", specialization_identities},
      {"frozen known values", known_values},
      {"branch formulas continuous at the crossover", branch_continuity},
      {"profile direction matches classified regime", regime_direction},
      {"pointwise bound dominates random zonal data", hoelder_dominance},
      {"profile series approaches its boundary value", boundary_profile_limit},
      {"seeded runs deterministic across threads", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& crit : criteria) {
    std::string info;
    bool ok = false;
    try {
      ok = crit.check(info);
    } catch (const std::exception& e) {
      info = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", index, crit.name,
                info.empty() ? "" : " -- ", info.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
    ++index;
  }
  return failures;
}
