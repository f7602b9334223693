#include "bernprim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bernprim/bernstein.hpp"
#include "bernprim/expr.hpp"
#include "bernprim/poly_json.hpp"
#include "bernprim/quadrature.hpp"
#include "numfmt.hpp"

namespace bernprim::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kDefaultSeed = 7;
constexpr double kSupSafetyFactor = 1.01;

// Tolerances of the identity suite; the moment residuals are divided by n.
constexpr double kPartitionTol = 1e-12;
constexpr double kFirstMomentTol = 1e-9;
constexpr double kSecondMomentTol = 1e-8;
constexpr double kDerivativeTol = 1e-5;
constexpr double kDerivativeStep = 1e-6;
constexpr int kDerivativeMaxDegree = 50;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One report, rendered either as JSON or as CSV with '#' comment lines.
struct Report {
  std::string command;
  std::string expr;
  Json params = Json::object();
  BernsteinPoly poly = BernsteinPoly::zero(0);
  std::vector<std::string> columns;
  std::vector<std::vector<double>> table;
  std::vector<std::string> labels;  // optional leading text column
  std::vector<std::string> status;  // optional trailing text column
  Json extra = Json::object();      // merged into "summary"
  double max_error = 0.0;
  bool passed = true;
};

std::string fmt(double v) { return std::isnan(v) ? std::string() : detail::format_double(v); }

std::string json_scalar(const Json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(const Report& r, std::ostream& os) {
  os << "# command: " << r.command << '\n';
  if (!r.expr.empty()) os << "# expr: " << r.expr << '\n';
  for (const auto& [k, v] : r.params.items()) os << "# " << k << ": " << json_scalar(v) << '\n';
  os << "# degree: " << r.poly.degree() << '\n';
  os << "# coeffs: ";
  for (std::size_t i = 0; i < r.poly.coeffs().size(); ++i) os << (i ? "," : "") << fmt(r.poly.coeffs()[i]);
  os << '\n';

  const bool labelled = !r.labels.empty();
  const bool with_status = !r.status.empty();
  if (labelled) os << "label,";
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  if (with_status) os << ",status";
  os << '\n';
  for (std::size_t row = 0; row < r.table.size(); ++row) {
    if (labelled) os << r.labels[row] << ',';
    for (std::size_t i = 0; i < r.table[row].size(); ++i) os << (i ? "," : "") << fmt(r.table[row][i]);
    if (with_status) os << ',' << r.status[row];
    os << '\n';
  }
  for (const auto& [k, v] : r.extra.items()) os << "# " << k << ": " << json_scalar(v) << '\n';
  os << "# max_error: " << fmt(r.max_error) << '\n';
  os << "# passed: " << (r.passed ? "true" : "false") << '\n';
}

void write_json(const Report& r, std::ostream& os) {
  Json j;
  j["command"] = r.command;
  j["expr"] = r.expr;
  j["params"] = r.params;
  j["poly"] = poly_to_json(r.poly);
  j["columns"] = r.columns;
  if (!r.labels.empty()) j["labels"] = r.labels;
  if (!r.status.empty()) j["status"] = r.status;
  j["table"] = r.table;  // NaN cells serialize as null
  Json summary;
  summary["max_error"] = r.max_error;
  summary["passed"] = r.passed;
  for (const auto& [k, v] : r.extra.items()) summary[k] = v;
  j["summary"] = summary;
  os << j.dump(2) << '\n';
}

void emit(const Report& r, const std::string& format, std::ostream& os) {
  if (format == "json")
    write_json(r, os);
  else
    write_csv(r, os);
}

void check_degree(int n, const char* flag) {
  if (n < 1) throw UsageError(std::string(flag) + " must be >= 1, got " + std::to_string(n));
  if (n > kMaxDegree)
    throw UsageError("degree " + std::to_string(n) + " exceeds the limit of " + std::to_string(kMaxDegree));
}

void check_at_least(int v, int lowest, const char* flag) {
  if (v < lowest) throw UsageError(std::string(flag) + " must be >= " + std::to_string(lowest));
}

double grid_point(int i, int count) { return static_cast<double>(i) / (count - 1); }

RealFunction load_function(const std::string& text, int probe, std::optional<double> lipschitz = std::nullopt) {
  return expr::to_real_function(expr::parse(text), lipschitz, std::nullopt, probe);
}

// --- subcommands -----------------------------------------------------------

struct ApproxArgs {
  std::string expr;
  int n = 0;
  int samples = 101;
  int probe = kDefaultProbePoints;
  std::string emit = "csv";
};

Report cmd_approx(const ApproxArgs& a) {
  check_degree(a.n, "--n");
  check_at_least(a.samples, 2, "--samples");
  const RealFunction f = load_function(a.expr, a.probe);
  Report r;
  r.command = "approx";
  r.expr = a.expr;
  r.params["n"] = a.n;
  r.params["samples"] = a.samples;
  r.poly = bernstein_approximant(f, a.n);
  r.columns = {"x", "f", "f_n", "abs_error"};
  for (int i = 0; i < a.samples; ++i) {
    const double x = grid_point(i, a.samples);
    const double fx = f(x);
    const double fn = eval_poly(r.poly, x);
    const double e = std::abs(fx - fn);
    r.table.push_back({x, fx, fn, e});
    r.max_error = std::max(r.max_error, e);
  }
  return r;
}

struct PrimitiveArgs {
  std::string expr;
  int n = 0;
  int samples = 101;
  int grid = 1001;
  int panels = 256;
  int probe = kDefaultProbePoints;
  double h = kDefaultFiniteDifferenceStep;
  std::string emit = "csv";
};

Report cmd_primitive(const PrimitiveArgs& a) {
  check_degree(a.n, "--n");
  check_at_least(a.samples, 2, "--samples");
  check_at_least(a.grid, 2, "--grid");
  if (a.panels < 2 || a.panels % 2) throw UsageError("--panels must be even and >= 2");
  if (!(a.h > 0.0 && a.h < 0.5)) throw UsageError("--fd-step must lie in (0, 0.5)");
  const RealFunction f = load_function(a.expr, a.probe);
  Report r;
  r.command = "primitive";
  r.expr = a.expr;
  r.params["n"] = a.n;
  r.params["samples"] = a.samples;
  r.params["grid"] = a.grid;
  r.params["panels"] = a.panels;
  r.params["fd_step"] = a.h;
  r.poly = primitive_approximant(f, a.n);
  const BernsteinPoly fn = bernstein_approximant(f, a.n);
  r.columns = {"x", "F_n", "oracle", "difference"};
  double derivative_check = 0.0;
  for (int i = 0; i < a.samples; ++i) {
    const double x = grid_point(i, a.samples);
    const double Fx = eval_poly(r.poly, x);
    const double oracle = simpson(f, x, a.panels).value;
    r.table.push_back({x, Fx, oracle, Fx - oracle});
    r.max_error = std::max(r.max_error, std::abs(Fx - oracle));
    if (x - a.h >= 0.0 && x + a.h <= 1.0)
      derivative_check = std::max(derivative_check, std::abs(central_difference(r.poly, x, a.h) - f(x)));
  }
  const double F0 = eval_poly(r.poly, 0.0);
  const double fn_error = sup_norm_distance(fn, f, a.grid).value;
  r.extra["F_n(0)"] = F0;
  r.extra["derivative_check"] = derivative_check;
  r.extra["fn_sup_error"] = fn_error;
  r.passed = F0 == 0.0 && r.max_error <= fn_error + 1e-6;
  return r;
}

struct IdentitiesArgs {
  int n_max = 0;
  int grid = 101;
  std::optional<std::uint64_t> seed;
  std::string emit = "csv";
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("BERN_SEED")) {
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, v);
    if (res.ec != std::errc() || res.ptr != end || env == end)
      throw UsageError(std::string("BERN_SEED is not an unsigned integer: '") + env + "'");
    return v;
  }
  return kDefaultSeed;
}

Report cmd_identities(const IdentitiesArgs& a) {
  check_degree(a.n_max, "--n-max");
  check_at_least(a.grid, 1, "--grid");
  const std::uint64_t seed = resolve_seed(a.seed);
  std::mt19937_64 rng(seed);
  // Portable uniform draw in [0,1); std::uniform_real_distribution is not
  // specified bit-for-bit across standard libraries.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  double partition = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (int n = 1; n <= a.n_max; ++n) {
    for (int k = 0; k < a.grid; ++k) {
      const double x = uniform();
      partition = std::max(partition, std::abs(moment_sum(n, x, MomentKind::Partition) - 1.0));
      first = std::max(first, std::abs(moment_sum(n, x, MomentKind::First) - n * x) / n);
      second = std::max(second, std::abs(moment_sum(n, x, MomentKind::SecondCentral) - n * x * (1.0 - x)) / n);
    }
  }
  double derivative = 0.0;
  const int n_deriv = std::min(a.n_max, kDerivativeMaxDegree);
  for (int n = 1; n <= n_deriv; ++n) {
    for (int k = 0; k < a.grid; ++k) {
      const double x = kDerivativeStep + (1.0 - 2.0 * kDerivativeStep) * uniform();
      for (int m = 0; m <= n; ++m) {
        const double fd = central_difference([m, n](double t) { return basis_eval(m, n, t); }, x, kDerivativeStep);
        derivative = std::max(derivative, std::abs(basis_derivative(m, n, x) - fd));
      }
    }
  }

  Report r;
  r.command = "identities";
  r.params["n_max"] = a.n_max;
  r.params["grid"] = a.grid;
  r.params["seed"] = seed;
  r.columns = {"max_residual", "tolerance"};
  const struct {
    const char* name;
    double residual;
    double tol;
  } rows[] = {
      {"derivative", derivative, kDerivativeTol},
      {"partition", partition, kPartitionTol},
      {"first_moment", first, kFirstMomentTol},
      {"second_central_moment", second, kSecondMomentTol},
  };
  for (const auto& row : rows) {
    const bool ok = row.residual < row.tol;
    r.labels.emplace_back(row.name);
    r.table.push_back({row.residual, row.tol});
    r.status.emplace_back(ok ? "PASS" : "FAIL");
    r.passed = r.passed && ok;
    r.max_error = std::max(r.max_error, row.residual);
  }
  return r;
}

struct ConvergeArgs {
  std::string expr;
  std::vector<int> degrees;
  int grid = 1001;
  int panels = 256;
  int probe = kDefaultProbePoints;
  std::string emit = "csv";
};

Report cmd_converge(const ConvergeArgs& a) {
  if (a.degrees.empty()) throw UsageError("--degrees must list at least one degree");
  for (std::size_t i = 0; i < a.degrees.size(); ++i) {
    check_degree(a.degrees[i], "--degrees");
    if (i > 0 && a.degrees[i] <= a.degrees[i - 1]) throw UsageError("--degrees must be strictly ascending");
  }
  check_at_least(a.grid, 2, "--grid");
  if (a.panels < 2 || a.panels % 2) throw UsageError("--panels must be even and >= 2");
  const RealFunction f = load_function(a.expr, a.probe);
  const ConvergenceReport cr = convergence_report(a.expr, f, a.degrees, a.grid, a.panels);

  Report r;
  r.command = "converge";
  r.expr = a.expr;
  r.params["degrees"] = a.degrees;
  r.params["grid"] = a.grid;
  r.params["panels"] = a.panels;
  r.poly = bernstein_approximant(f, a.degrees.back());
  r.columns = {"n", "sup_error_fn", "sup_error_Fn", "rate"};
  for (std::size_t i = 0; i < cr.degrees.size(); ++i)
    r.table.push_back({static_cast<double>(cr.degrees[i]), cr.sup_errors_fn[i], cr.sup_errors_Fn[i],
                       i == 0 ? kNaN : cr.empirical_rates[i - 1]});
  r.extra["degrees"] = cr.degrees;
  r.extra["sup_errors_fn"] = cr.sup_errors_fn;
  r.extra["sup_errors_Fn"] = cr.sup_errors_Fn;
  r.extra["empirical_rates"] = cr.empirical_rates;
  r.max_error = cr.sup_errors_fn.back();
  r.passed = cr.sup_errors_fn.back() <= cr.sup_errors_fn.front() + 1e-12;
  return r;
}

struct BoundArgs {
  std::string expr;
  double eps = 0.0;
  std::optional<double> delta;
  std::optional<double> lipschitz;
  int grid = 1001;
  int probe = kDefaultProbePoints;
  std::string emit = "csv";
};

Report cmd_bound(const BoundArgs& a) {
  if (a.delta.has_value() == a.lipschitz.has_value())
    throw UsageError("exactly one of --delta and --lipschitz is required");
  if (!(a.eps > 0.0)) throw UsageError("--eps must be positive");
  if (a.delta && !(*a.delta > 0.0 && *a.delta <= 1.0)) throw UsageError("--delta must lie in (0,1]");
  if (a.lipschitz && !(*a.lipschitz > 0.0)) throw UsageError("--lipschitz must be positive");
  check_at_least(a.grid, 2, "--grid");
  const RealFunction f = load_function(a.expr, a.probe, a.lipschitz);

  const double sup = sup_norm(f, a.grid).value * kSupSafetyFactor;
  const double delta = a.delta ? *a.delta : lipschitz_delta(*a.lipschitz, a.eps);
  const std::int64_t n = sup > 0.0 ? required_degree(sup, a.eps, delta) : 1;
  const int verified = static_cast<int>(std::min<std::int64_t>(n, kMaxDegree));
  const BernsteinPoly fn = bernstein_approximant(f, verified);
  const double measured = sup_norm_distance(fn, f, a.grid).value;

  Report r;
  r.command = "bound";
  r.expr = a.expr;
  r.params["eps"] = a.eps;
  if (a.delta) r.params["delta"] = *a.delta;
  if (a.lipschitz) r.params["lipschitz"] = *a.lipschitz;
  r.params["grid"] = a.grid;
  r.poly = fn;
  r.columns = {"sup_norm", "delta", "required_degree", "verified_degree", "measured_error"};
  r.table.push_back({sup, delta, static_cast<double>(n), static_cast<double>(verified), measured});
  r.max_error = measured;
  r.passed = measured < a.eps;
  r.status.emplace_back(r.passed ? "PASS" : "FAIL");
  if (verified != n) r.extra["note"] = "required degree exceeds the evaluation limit; verified at the limit";
  return r;
}

}  // namespace

ConvergenceReport convergence_report(const std::string& function_text, const RealFunction& f,
                                     std::span<const int> degrees, int grid_size, int simpson_panels) {
  if (grid_size < 2) throw std::domain_error("convergence_report: grid_size must be >= 2");
  ConvergenceReport cr;
  cr.function_text = function_text;
  cr.degrees.assign(degrees.begin(), degrees.end());

  std::vector<double> oracle(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) oracle[i] = simpson(f, grid_point(i, grid_size), simpson_panels).value;

  for (const int n : cr.degrees) {
    cr.sup_errors_fn.push_back(sup_norm_distance(bernstein_approximant(f, n), f, grid_size).value);
    const BernsteinPoly F = primitive_approximant(f, n);
    double e = 0.0;
    for (int i = 0; i < grid_size; ++i)
      e = std::max(e, std::abs(eval_poly(F, grid_point(i, grid_size)) - oracle[i]));
    cr.sup_errors_Fn.push_back(e);
  }
  for (std::size_t k = 0; k + 1 < cr.degrees.size(); ++k) {
    const double a = cr.sup_errors_fn[k];
    const double b = cr.sup_errors_fn[k + 1];
    const double rate = a > 0.0 && b > 0.0
                            ? std::log(a / b) / std::log(static_cast<double>(cr.degrees[k + 1]) / cr.degrees[k])
                            : kNaN;
    cr.empirical_rates.push_back(rate);
  }
  return cr;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernstein-polynomial approximants and primitives on [0,1]", "bernprim"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  const auto emit_check = CLI::IsMember({"json", "csv"});

  ApproxArgs approx_args;
  auto* approx = app.add_subcommand("approx", "Bernstein approximant f_n and its error table");
  approx->add_option("--expr", approx_args.expr, "Function of x on [0,1]")->required();
  approx->add_option("--n", approx_args.n, "Degree")->required();
  approx->add_option("--samples", approx_args.samples, "Table grid points")->capture_default_str();
  approx->add_option("--probe", approx_args.probe, "Finiteness probe points")->capture_default_str();
  approx->add_option("--emit", approx_args.emit, "json or csv")->check(emit_check)->capture_default_str();
  approx->add_option("--out", out_path, "Output file");

  PrimitiveArgs prim_args;
  auto* prim = app.add_subcommand("primitive", "Primitive polynomial F_n checked against Simpson");
  prim->add_option("--expr", prim_args.expr, "Function of x on [0,1]")->required();
  prim->add_option("--n", prim_args.n, "Degree of f_n")->required();
  prim->add_option("--samples", prim_args.samples, "Table grid points")->capture_default_str();
  prim->add_option("--grid", prim_args.grid, "Sup-norm grid points")->capture_default_str();
  prim->add_option("--panels", prim_args.panels, "Simpson panels")->capture_default_str();
  prim->add_option("--fd-step", prim_args.h, "Finite-difference step")->capture_default_str();
  prim->add_option("--probe", prim_args.probe, "Finiteness probe points")->capture_default_str();
  prim->add_option("--emit", prim_args.emit, "json or csv")->check(emit_check)->capture_default_str();
  prim->add_option("--out", out_path, "Output file");

  IdentitiesArgs id_args;
  std::uint64_t seed_value = 0;
  auto* ident = app.add_subcommand("identities", "Check the basis identities on random draws");
  ident->add_option("--n-max", id_args.n_max, "Largest degree")->required();
  ident->add_option("--grid", id_args.grid, "Draws of x per degree")->capture_default_str();
  auto* seed_opt = ident->add_option("--seed", seed_value, "RNG seed (default: $BERN_SEED or 7)");
  ident->add_option("--emit", id_args.emit, "json or csv")->check(emit_check)->capture_default_str();
  ident->add_option("--out", out_path, "Output file");

  ConvergeArgs conv_args;
  auto* conv = app.add_subcommand("converge", "Sup-norm errors of f_n and F_n along a degree schedule");
  conv->add_option("--expr", conv_args.expr, "Function of x on [0,1]")->required();
  conv->add_option("--degrees", conv_args.degrees, "Comma-separated ascending degrees")
      ->required()
      ->delimiter(',');
  conv->add_option("--grid", conv_args.grid, "Sup-norm grid points")->capture_default_str();
  conv->add_option("--panels", conv_args.panels, "Simpson panels")->capture_default_str();
  conv->add_option("--probe", conv_args.probe, "Finiteness probe points")->capture_default_str();
  conv->add_option("--emit", conv_args.emit, "json or csv")->check(emit_check)->capture_default_str();
  conv->add_option("--out", out_path, "Output file");

  BoundArgs bound_args;
  double delta_value = 0.0;
  double lipschitz_value = 0.0;
  auto* bound = app.add_subcommand("bound", "A-priori degree for a target sup-norm error, then verify it");
  bound->add_option("--expr", bound_args.expr, "Function of x on [0,1]")->required();
  bound->add_option("--eps", bound_args.eps, "Target sup-norm error")->required();
  auto* delta_opt = bound->add_option("--delta", delta_value, "Uniform-continuity delta");
  auto* lip_opt = bound->add_option("--lipschitz", lipschitz_value, "Lipschitz constant");
  bound->add_option("--grid", bound_args.grid, "Sup-norm grid points")->capture_default_str();
  bound->add_option("--probe", bound_args.probe, "Finiteness probe points")->capture_default_str();
  bound->add_option("--emit", bound_args.emit, "json or csv")->check(emit_check)->capture_default_str();
  bound->add_option("--out", out_path, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Report report;
    std::string format;
    if (*approx) {
      report = cmd_approx(approx_args);
      format = approx_args.emit;
    } else if (*prim) {
      report = cmd_primitive(prim_args);
      format = prim_args.emit;
    } else if (*ident) {
      if (seed_opt->count() > 0) id_args.seed = seed_value;
      report = cmd_identities(id_args);
      format = id_args.emit;
    } else if (*conv) {
      report = cmd_converge(conv_args);
      format = conv_args.emit;
    } else {
      if (delta_opt->count() > 0) bound_args.delta = delta_value;
      if (lip_opt->count() > 0) bound_args.lipschitz = lipschitz_value;
      report = cmd_bound(bound_args);
      format = bound_args.emit;
    }

    if (out_path.empty()) {
      emit(report, format, out);
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        err << "usage error: cannot open '" << out_path << "' for writing\n";
        return kExitUsage;
      }
      emit(report, format, file);
    }
    return report.passed ? kExitOk : kExitNumeric;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const expr::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const EvalError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace bernprim::cli
