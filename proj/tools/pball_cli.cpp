// Command-line front end: sharp-constant tables, identity verification,
// sharpness experiments, monotonicity scans, and pointwise bound checks,
// with reproducible JSON/CSV output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pball/errors.hpp"
#include "pball/kernel.hpp"
#include "pball/sharp.hpp"
#include "pball/specfun.hpp"
#include "pball/sphere_oracle.hpp"
#include "pball/transform.hpp"

namespace {

using namespace pball;

std::string num_str(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

// One serializable cell: number, string, boolean, or numeric list.
struct Value {
  enum class T { Num, Str, Bool, NumArr };
  T t = T::Num;
  double num = 0.0;
  std::string str;
  bool flag = false;
  std::vector<double> arr;

  static Value N(double v) {
    Value out;
    out.t = T::Num;
    out.num = v;
    return out;
  }
  static Value S(std::string v) {
    Value out;
    out.t = T::Str;
    out.str = std::move(v);
    return out;
  }
  static Value B(bool v) {
    Value out;
    out.t = T::Bool;
    out.flag = v;
    return out;
  }
  static Value A(std::vector<double> v) {
    Value out;
    out.t = T::NumArr;
    out.arr = std::move(v);
    return out;
  }

  std::string json() const {
    switch (t) {
      case T::Num:
        return std::isfinite(num) ? num_str(num) : "\"" + num_str(num) + "\"";
      case T::Str:
        return "\"" + json_escape(str) + "\"";
      case T::Bool:
        return flag ? "true" : "false";
      case T::NumArr: {
        std::string out = "[";
        for (std::size_t i = 0; i < arr.size(); ++i) {
          if (i) out += ", ";
          out += num_str(arr[i]);
        }
        return out + "]";
      }
    }
    return "null";
  }

  std::string csv() const {
    switch (t) {
      case T::Num:
        return num_str(num);
      case T::Str:
        return str;
      case T::Bool:
        return flag ? "true" : "false";
      case T::NumArr: {
        std::string out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
          if (i) out += ";";
          out += num_str(arr[i]);
        }
        return out;
      }
    }
    return "";
  }
};

using Fields = std::vector<std::pair<std::string, Value>>;

struct Document {
  Fields params;
  std::vector<Fields> rows;
  Fields summary;
  Fields oracle;
  std::vector<std::string> warnings;
};

std::string fields_json(const Fields& fields) {
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + fields[i].first + "\": " + fields[i].second.json();
  }
  return out + "}";
}

std::string to_json(const Document& doc) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"params\": " << fields_json(doc.params) << ",\n";
  out << "  \"rows\": [\n";
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    out << "    " << fields_json(doc.rows[i]) << (i + 1 < doc.rows.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"summary\": " << fields_json(doc.summary) << ",\n";
  out << "  \"oracle\": " << fields_json(doc.oracle) << ",\n";
  out << "  \"warnings\": [";
  for (std::size_t i = 0; i < doc.warnings.size(); ++i) {
    if (i) out << ", ";
    out << "\"" << json_escape(doc.warnings[i]) << "\"";
  }
  out << "]\n}\n";
  return out.str();
}

std::string fields_kv(const Fields& fields, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += sep;
    out += fields[i].first + "=" + fields[i].second.csv();
  }
  return out;
}

std::string to_csv(const Document& doc) {
  std::ostringstream out;
  out << "# params: " << fields_kv(doc.params, " ") << "\n";
  out << "# oracle: " << fields_kv(doc.oracle, " ") << "\n";
  for (const std::string& w : doc.warnings) out << "# warning: " << w << "\n";
  if (!doc.rows.empty()) {
    const Fields& head = doc.rows.front();
    for (std::size_t i = 0; i < head.size(); ++i) {
      out << (i ? "," : "") << head[i].first;
    }
    out << "\n";
    for (const Fields& row : doc.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << row[i].second.csv();
      }
      out << "\n";
    }
  }
  out << "# summary: " << fields_kv(doc.summary, "; ") << "\n";
  return out.str();
}

// Options shared by the subcommands; sentinel values mark "not given".
struct Common {
  int n = 3;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::string family;
  std::string p_str = "2";
  std::vector<double> r;
  std::string method = "gl";
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdiv = 2000;
  long samples = 100000;
  std::uint64_t seed = 12345;
  int threads = 1;
  std::string format = "json";
  std::string output;
  bool strict = false;

  // subcommand-specific
  bool mc_flag = false;           // verify-identity --mc
  std::string eval = "closed";    // sharpness
  double tol = std::numeric_limits<double>::quiet_NaN();
  std::string data_path;          // bound-check
  std::string phi_spec;           // bound-check
  int n_count = 0;                // whether -n was given (verify-identity)
};

void add_kernel_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("-n,--dimension", c.n, "Ball dimension (>= 3)")->check(CLI::Range(3, 64));
  cmd->add_option("--beta", c.beta, "Kernel exponent beta (alpha defaults to beta+1-n)");
  cmd->add_option("--alpha", c.alpha, "Boundary exponent alpha (requires --beta)");
  cmd->add_option("--gamma", c.gamma, "Weighted-Laplacian family: alpha=1+2g, beta=n+2g");
  cmd->add_option("--family", c.family, "Named kernel family")
      ->check(CLI::IsMember({"harmonic", "hyperbolic"}));
  cmd->add_option("-p", c.p_str, "Hoelder exponent p in (1, inf], or 'inf'");
}

void add_oracle_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--r", c.r, "Radii (comma separated, each in [0, 1))")->delimiter(',');
  cmd->add_option("--method", c.method, "Integration oracle")
      ->check(CLI::IsMember({"gl", "mc"}));
  cmd->add_option("--abs-tol", c.abs_tol, "Quadrature absolute tolerance");
  cmd->add_option("--rel-tol", c.rel_tol, "Quadrature relative tolerance");
  cmd->add_option("--max-subdiv", c.max_subdiv, "Quadrature subdivision budget");
  cmd->add_option("--samples", c.samples, "Monte Carlo sample count");
  cmd->add_option("--seed", c.seed, "Monte Carlo seed")->envname("PBALL_SEED");
  cmd->add_option("--threads", c.threads, "Monte Carlo worker threads")->check(CLI::Range(1, 256));
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", c.output, "Write output to a file instead of stdout");
  cmd->add_flag("--strict", c.strict, "Treat out-of-theorem warnings as failures (exit 3)");
}

KernelParams resolve_kernel(const Common& c, std::vector<std::string>& warnings) {
  const bool has_beta = !std::isnan(c.beta);
  const bool has_gamma = !std::isnan(c.gamma);
  const bool has_family = !c.family.empty();
  const int styles = (has_beta ? 1 : 0) + (has_gamma ? 1 : 0) + (has_family ? 1 : 0);
  if (styles != 1) {
    throw InvalidParameterError(
        "kernel parameters: give exactly one of --beta [--alpha], --gamma, --family");
  }
  if (!std::isnan(c.alpha) && !has_beta) {
    throw InvalidParameterError("--alpha requires --beta");
  }

  KernelParams params;
  params.n = c.n;
  if (has_family) {
    if (c.family == "harmonic") {
      params.alpha = 1.0;
      params.beta = static_cast<double>(c.n);
    } else {
      params.alpha = c.n - 1.0;
      params.beta = 2.0 * (c.n - 1.0);
    }
  } else if (has_gamma) {
    if (!(c.gamma > -0.5)) {
      throw InvalidParameterError("--gamma must exceed -1/2");
    }
    params.alpha = 1.0 + 2.0 * c.gamma;
    params.beta = c.n + 2.0 * c.gamma;
  } else {
    params.beta = c.beta;
    params.alpha = std::isnan(c.alpha) ? c.beta + 1.0 - c.n : c.alpha;
  }
  params.validate();
  if (!params.is_normalized()) {
    throw InvalidParameterError(
        "alpha, beta must satisfy n + alpha = beta + 1 (the normalized family)");
  }
  if (!within_theorem_range(params)) {
    warnings.push_back(
        "beta < n: outside the proven range; values come from the same formulas unproven");
  }
  return params;
}

HolderExponents resolve_exponents(const Common& c) {
  std::string p = c.p_str;
  std::transform(p.begin(), p.end(), p.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (p == "inf" || p == "infinity") return HolderExponents::infinite();
  char* end = nullptr;
  const double value = std::strtod(p.c_str(), &end);
  if (end == p.c_str() || *end != '\0') {
    throw InvalidParameterError("-p: expected a number or 'inf'");
  }
  return HolderExponents::from_p(value);
}

QuadratureSpec resolve_spec(const Common& c) {
  QuadratureSpec spec;
  spec.method = c.method == "mc" ? QuadMethod::MonteCarlo : QuadMethod::ReducedGaussLegendre;
  spec.abs_tol = c.abs_tol;
  spec.rel_tol = c.rel_tol;
  spec.max_subdivisions = c.max_subdiv;
  spec.mc_samples = c.samples;
  spec.seed = c.seed;
  spec.threads = c.threads;
  spec.validate();
  return spec;
}

Value p_value(const HolderExponents& exps) {
  return exps.infinite_p() ? Value::S("inf") : Value::N(exps.p);
}

Fields oracle_fields(const Common& c) {
  return {{"method", Value::S(c.method)},
          {"seed", Value::N(static_cast<double>(c.seed))},
          {"tol", Value::N(c.abs_tol)}};
}

int finish(const Document& doc, const Common& c, bool verification_failed) {
  const std::string text = c.format == "csv" ? to_csv(doc) : to_json(doc);
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file " << c.output << "\n";
      return 2;
    }
    out << text;
  }
  if (verification_failed) return 1;
  if (c.strict && !doc.warnings.empty()) {
    std::cerr << "strict: " << doc.warnings.size() << " warning(s) escalated to failure\n";
    return 3;
  }
  return 0;
}

std::vector<double> radius_grid(const Common& c) {
  std::vector<double> grid = c.r.empty() ? default_r_grid() : c.r;
  for (double r : grid) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("--r: radii must lie in [0, 1)");
  }
  return grid;
}

int cmd_constants(const Common& c) {
  std::vector<std::string> warnings;
  const KernelParams params = resolve_kernel(c, warnings);
  const HolderExponents exps = resolve_exponents(c);
  const std::vector<double> grid = radius_grid(c);

  const SharpEstimate est = global_sharp_constant(params, exps);
  if (exps.q * params.beta < params.n) {
    warnings.push_back("q*beta < n: boundary branch applied outside the stated range");
  }

  Document doc;
  doc.params = {{"subcommand", Value::S("constants")}, {"n", Value::N(params.n)},
                {"alpha", Value::N(params.alpha)},     {"beta", Value::N(params.beta)},
                {"p", p_value(exps)},                  {"q", Value::N(exps.q)}};
  for (double r : grid) {
    doc.rows.push_back(
        {{"r", Value::N(r)}, {"C_p_r", Value::N(pointwise_sharp_constant(params, exps, r))}});
  }
  doc.summary = {{"C_p", Value::N(est.value)},
                 {"regime", Value::S(std::string(to_string(est.regime)))},
                 {"branch_condition", Value::S(est.branch_condition)},
                 {"c_n_beta", Value::N(normalization_constant(params.n, params.beta))}};
  doc.oracle = oracle_fields(c);
  doc.warnings = std::move(warnings);
  return finish(doc, c, false);
}

int cmd_verify_identity(Common& c) {
  if (c.mc_flag) c.method = "mc";
  const QuadratureSpec spec = resolve_spec(c);
  std::vector<int> dims;
  if (c.n_count > 0) {
    dims.push_back(c.n);
  } else {
    dims = {3, 4, 5};
  }
  // Near the boundary the moment integrand's variance explodes, so the
  // Monte Carlo default grid stops at 0.7; the quadrature grid matches the
  // acceptance radii.
  std::vector<double> radii = c.r;
  if (radii.empty()) {
    radii = spec.method == QuadMethod::MonteCarlo ? std::vector<double>{0.0, 0.3, 0.7}
                                                  : std::vector<double>{0.0, 0.3, 0.7, 0.95};
  }
  for (double r : radii) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("--r: radii must lie in [0, 1)");
  }

  Document doc;
  doc.params = {{"subcommand", Value::S("verify-identity")},
                {"n_grid", Value::A(std::vector<double>(dims.begin(), dims.end()))},
                {"r_grid", Value::A(radii)}};

  int failures = 0;
  double max_err = 0.0;
  for (int n : dims) {
    const std::vector<double> lambdas = {1.0, 0.5 * n, n - 1.0, 1.7, 3.3};
    for (double lambda : lambdas) {
      for (double r : radii) {
        // int |x-eta|^{-2 lambda} dsigma = F(lambda, lambda-n/2+1; n/2; r^2)
        const double closed = hyp2f1(lambda, lambda - 0.5 * n + 1.0, 0.5 * n, r * r);
        double oracle = 0.0;
        double tol = 0.0;
        if (spec.method == QuadMethod::ReducedGaussLegendre) {
          const auto f = [r, lambda](double t) {
            return std::pow(1.0 + r * r - 2.0 * r * t, -lambda);
          };
          oracle = zonal_integral(f, n, spec);
          tol = 1e-8 * std::max(1.0, std::abs(closed));
        } else {
          std::vector<double> xc(static_cast<std::size_t>(n), 0.0);
          xc[0] = r;
          const auto f = [xc, lambda](std::span<const double> eta) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < eta.size(); ++i) {
              const double d = xc[i] - eta[i];
              d2 += d * d;
            }
            return std::pow(d2, -lambda);
          };
          const McResult mc = mc_sphere_integral(f, n, spec);
          oracle = mc.value;
          tol = 4.0 * mc.std_error + 1e-12;
        }
        const double abs_err = std::abs(closed - oracle);
        const bool pass = abs_err <= tol;
        if (!pass) {
          ++failures;
          std::cerr << "verify-identity: n=" << n << " lambda=" << lambda << " r=" << r
                    << " |closed - oracle| = " << abs_err << " > " << tol << "\n";
        }
        max_err = std::max(max_err, abs_err);
        doc.rows.push_back({{"n", Value::N(n)},
                            {"lambda", Value::N(lambda)},
                            {"r", Value::N(r)},
                            {"closed", Value::N(closed)},
                            {"oracle", Value::N(oracle)},
                            {"abs_error", Value::N(abs_err)},
                            {"tol", Value::N(tol)},
                            {"pass", Value::B(pass)}});
      }
    }
  }
  doc.summary = {{"cells", Value::N(static_cast<double>(doc.rows.size()))},
                 {"failures", Value::N(failures)},
                 {"max_abs_error", Value::N(max_err)}};
  doc.oracle = oracle_fields(c);
  return finish(doc, c, failures > 0);
}

int cmd_sharpness(const Common& c) {
  std::vector<std::string> warnings;
  const KernelParams params = resolve_kernel(c, warnings);
  const HolderExponents exps = resolve_exponents(c);
  const QuadratureSpec spec = resolve_spec(c);
  const std::vector<double> grid = radius_grid(c);

  EvalMethod eval = EvalMethod::ClosedForm;
  if (c.eval == "quadrature" || c.eval == "quad") eval = EvalMethod::Quadrature;
  if (c.eval == "mc") eval = EvalMethod::MonteCarlo;
  double tol = c.tol;
  if (std::isnan(tol)) {
    tol = eval == EvalMethod::ClosedForm ? 1e-10 : (eval == EvalMethod::Quadrature ? 1e-6 : 0.05);
  }

  Document doc;
  doc.params = {{"subcommand", Value::S("sharpness")}, {"n", Value::N(params.n)},
                {"alpha", Value::N(params.alpha)},     {"beta", Value::N(params.beta)},
                {"p", p_value(exps)},                  {"q", Value::N(exps.q)},
                {"eval", Value::S(c.eval)}};

  int failures = 0;
  double max_dev = 0.0;
  for (double r : grid) {
    const SharpnessReport report = sharpness_ratio(params, exps, r, eval, spec);
    const double dev = std::abs(report.ratio - 1.0);
    max_dev = std::max(max_dev, dev);
    if (dev > tol) {
      ++failures;
      std::cerr << "sharpness: r=" << r << " ratio deviates by " << dev << " > " << tol << "\n";
    }
    doc.rows.push_back({{"r", Value::N(r)},
                        {"ratio", Value::N(report.ratio)},
                        {"C_p_r", Value::N(report.closed_form_bound)},
                        {"integral", Value::N(report.integral_value)},
                        {"lp_norm", Value::N(report.lp_norm)},
                        {"abs_dev", Value::N(dev)}});
  }
  doc.summary = {{"max_abs_dev", Value::N(max_dev)},
                 {"tol", Value::N(tol)},
                 {"failures", Value::N(failures)}};
  doc.oracle = oracle_fields(c);
  doc.warnings = std::move(warnings);
  return finish(doc, c, failures > 0);
}

int cmd_monotonicity(const Common& c) {
  std::vector<std::string> warnings;
  const KernelParams params = resolve_kernel(c, warnings);
  const HolderExponents exps = resolve_exponents(c);

  std::vector<double> grid = c.r;
  if (grid.empty()) {
    for (int i = 0; i < 20; ++i) grid.push_back(0.05 * i);
  }
  for (double r : grid) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("--r: grid must lie in [0, 1)");
  }
  std::sort(grid.begin(), grid.end());

  Document doc;
  doc.params = {{"subcommand", Value::S("monotonicity")}, {"n", Value::N(params.n)},
                {"alpha", Value::N(params.alpha)},        {"beta", Value::N(params.beta)},
                {"p", p_value(exps)},                     {"q", Value::N(exps.q)}};

  std::vector<double> psi;
  psi.reserve(grid.size());
  double scale = 1.0;
  for (double r : grid) {
    psi.push_back(regime_profile(params, exps, r));
    scale = std::max(scale, std::abs(psi.back()));
    doc.rows.push_back({{"r", Value::N(r)}, {"psi", Value::N(psi.back())}});
  }

  const double slack = 1e-12 * scale;
  bool non_decreasing = true;
  bool non_increasing = true;
  for (std::size_t i = 1; i < psi.size(); ++i) {
    if (psi[i] < psi[i - 1] - slack) non_decreasing = false;
    if (psi[i] > psi[i - 1] + slack) non_increasing = false;
  }
  std::string direction = "none";
  if (non_decreasing && non_increasing) {
    direction = "constant";
  } else if (non_decreasing) {
    direction = "non-decreasing";
  } else if (non_increasing) {
    direction = "non-increasing";
  }

  const Regime regime = classify_regime(params, exps);
  bool consistent = false;
  switch (regime) {
    case Regime::Degenerate: consistent = direction == "constant"; break;
    case Regime::SupAtBoundary: consistent = non_decreasing; break;
    case Regime::ConstantAtZero: consistent = non_increasing; break;
  }
  if (!consistent) {
    std::cerr << "monotonicity: detected direction '" << direction
              << "' conflicts with regime " << to_string(regime) << "\n";
  }

  doc.summary = {{"direction", Value::S(direction)},
                 {"regime", Value::S(std::string(to_string(regime)))},
                 {"consistent", Value::B(consistent)}};
  doc.oracle = oracle_fields(c);
  doc.warnings = std::move(warnings);
  return finish(doc, c, !consistent);
}

std::vector<double> split_csv_line(const std::string& line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string cell = line.substr(pos, comma - pos);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) throw InvalidParameterError("boundary data: unparseable cell '" + cell + "'");
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != '\0') throw InvalidParameterError("boundary data: trailing junk in cell '" + cell + "'");
    out.push_back(v);
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  return out;
}

BoundaryFunction parse_boundary_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw InvalidParameterError("boundary data: cannot open " + path);
  std::vector<std::vector<double>> table;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::size_t last = line.find_last_not_of(" \t\r");
    table.push_back(split_csv_line(line.substr(first, last - first + 1)));
    if (table.back().size() != table.front().size()) {
      throw InvalidParameterError("boundary data: inconsistent column count");
    }
  }
  if (table.empty()) throw InvalidParameterError("boundary data: no rows in " + path);
  const std::size_t width = table.front().size();

  if (width == 2) {
    // Zonal profile samples (t, value) about the first coordinate axis,
    // interpolated piecewise linearly and clamped outside the data range.
    std::sort(table.begin(), table.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    std::vector<double> ts, vs;
    for (const auto& row : table) {
      if (!(row[0] >= -1.0 - 1e-9 && row[0] <= 1.0 + 1e-9)) {
        throw InvalidParameterError("boundary data: t outside [-1, 1]");
      }
      if (!ts.empty() && !(row[0] > ts.back())) {
        throw InvalidParameterError("boundary data: duplicate t values");
      }
      ts.push_back(std::clamp(row[0], -1.0, 1.0));
      vs.push_back(row[1]);
    }
    auto profile = [ts, vs](double t) {
      if (t <= ts.front()) return vs.front();
      if (t >= ts.back()) return vs.back();
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - ts.begin());
      const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
      return vs[i - 1] + w * (vs[i] - vs[i - 1]);
    };
    std::vector<double> axis(static_cast<std::size_t>(n), 0.0);
    axis[0] = 1.0;
    return BoundaryFunction::zonal(profile, axis);
  }

  if (width == static_cast<std::size_t>(n) + 1) {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
    for (const auto& row : table) {
      points.emplace_back(row.begin(), row.end() - 1);
      values.push_back(row.back());
    }
    const std::vector<double> weights(table.size(), 1.0 / static_cast<double>(table.size()));
    return BoundaryFunction::sampled(std::move(points), std::move(values), weights);
  }

  std::ostringstream msg;
  msg << "boundary data: rows must have 2 columns (t,value) or " << n + 1
      << " columns (x1..x" << n << ",value); got " << width;
  throw InvalidParameterError(msg.str());
}

BoundaryFunction parse_phi_spec(const std::string& spec_str, const KernelParams& params,
                                const HolderExponents& exps) {
  const std::size_t eq = spec_str.find('=');
  const std::string kind = spec_str.substr(0, eq);
  const std::string arg = eq == std::string::npos ? "" : spec_str.substr(eq + 1);
  const auto parse_num = [&](const std::string& s, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
      throw InvalidParameterError(std::string("--phi ") + what + ": expected a number");
    }
    return v;
  };
  if (kind == "const") {
    return BoundaryFunction::constant(arg.empty() ? 1.0 : parse_num(arg, "const"));
  }
  if (kind == "extremal") {
    const double r_star = arg.empty() ? 0.5 : parse_num(arg, "extremal");
    if (!(r_star >= 0.0 && r_star < 1.0)) {
      throw InvalidParameterError("--phi extremal=<r>: r must lie in [0, 1)");
    }
    return extremal_boundary(params, exps, BallPoint::radial(params.n, r_star));
  }
  throw InvalidParameterError("--phi: expected const=<value> or extremal=<r>");
}

int cmd_bound_check(const Common& c) {
  std::vector<std::string> warnings;
  const KernelParams params = resolve_kernel(c, warnings);
  const HolderExponents exps = resolve_exponents(c);
  const QuadratureSpec spec = resolve_spec(c);
  const std::vector<double> grid = radius_grid(c);

  if (!c.data_path.empty() && !c.phi_spec.empty()) {
    throw InvalidParameterError("give at most one of --data and --phi");
  }
  std::string phi_desc;
  BoundaryFunction phi = BoundaryFunction::constant(1.0);
  if (!c.data_path.empty()) {
    phi = parse_boundary_file(c.data_path, params.n);
    phi_desc = "file:" + c.data_path;
  } else {
    const std::string spec_str = c.phi_spec.empty() ? "const=1" : c.phi_spec;
    phi = parse_phi_spec(spec_str, params, exps);
    phi_desc = spec_str;
  }

  const std::vector<BoundCheckRow> rows = bound_check(params, exps, phi, grid, spec, false);

  Document doc;
  doc.params = {{"subcommand", Value::S("bound-check")}, {"n", Value::N(params.n)},
                {"alpha", Value::N(params.alpha)},       {"beta", Value::N(params.beta)},
                {"p", p_value(exps)},                    {"q", Value::N(exps.q)},
                {"phi", Value::S(phi_desc)}};
  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const BoundCheckRow& row : rows) {
    min_margin = std::min(min_margin, row.margin);
    if (row.margin < -4.0 * row.sigma) {
      ++violations;
      std::cerr << "bound-check: violation at r=" << row.r << " margin=" << row.margin
                << " sigma=" << row.sigma << "\n";
    }
    doc.rows.push_back({{"r", Value::N(row.r)},
                        {"integral_abs", Value::N(row.integral_abs)},
                        {"bound", Value::N(row.bound)},
                        {"margin", Value::N(row.margin)},
                        {"sigma", Value::N(row.sigma)}});
  }
  doc.summary = {{"min_margin", Value::N(min_margin)}, {"violations", Value::N(violations)}};
  doc.oracle = oracle_fields(c);
  doc.warnings = std::move(warnings);
  return finish(doc, c, violations > 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp pointwise estimates for Poisson-type representations on the unit ball"};
  app.require_subcommand(1);

  Common c_constants, c_verify, c_sharp, c_mono, c_bound;

  CLI::App* constants =
      app.add_subcommand("constants", "Pointwise constants C_p(r) and the global C_p");
  add_kernel_flags(constants, c_constants);
  add_oracle_flags(constants, c_constants);

  CLI::App* verify = app.add_subcommand(
      "verify-identity", "Check the kernel-moment identity against the integration oracles");
  CLI::Option* n_opt =
      verify->add_option("-n,--dimension", c_verify.n, "Restrict to one dimension")
          ->check(CLI::Range(3, 64));
  add_oracle_flags(verify, c_verify);
  verify->add_flag("--mc", c_verify.mc_flag, "Shorthand for --method mc");

  CLI::App* sharp = app.add_subcommand(
      "sharpness", "Evaluate the extremal equality chain; ratios should be 1");
  add_kernel_flags(sharp, c_sharp);
  add_oracle_flags(sharp, c_sharp);
  sharp->add_option("--eval", c_sharp.eval, "Evaluation route")
      ->check(CLI::IsMember({"closed", "quadrature", "quad", "mc"}));
  sharp->add_option("--tol", c_sharp.tol, "Max |ratio - 1| before failure");

  CLI::App* mono = app.add_subcommand(
      "monotonicity", "Scan the regime profile and compare with the classified regime");
  add_kernel_flags(mono, c_mono);
  add_oracle_flags(mono, c_mono);

  CLI::App* bound = app.add_subcommand(
      "bound-check", "Verify the pointwise bound for boundary data on a radius grid");
  add_kernel_flags(bound, c_bound);
  add_oracle_flags(bound, c_bound);
  bound->add_option("--data", c_bound.data_path,
                    "Boundary data file: rows 't,value' (zonal); the bound needs an L^p "
                    "density, so sampled point files are rejected here");
  bound->add_option("--phi", c_bound.phi_spec, "Built-in data: const=<value> or extremal=<r>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (constants->parsed()) return cmd_constants(c_constants);
    if (verify->parsed()) {
      c_verify.n_count = static_cast<int>(n_opt->count());
      return cmd_verify_identity(c_verify);
    }
    if (sharp->parsed()) return cmd_sharpness(c_sharp);
    if (mono->parsed()) return cmd_monotonicity(c_mono);
    if (bound->parsed()) return cmd_bound_check(c_bound);
  } catch (const ViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
