// Acceptance suite. One PASS/FAIL line per criterion; nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "bernprim/bernstein.hpp"
#include "bernprim/cli.hpp"
#include "bernprim/expr.hpp"
#include "bernprim/quadrature.hpp"
#include "cli_support.hpp"
#include "expr_corpus.hpp"
#include "golden_cases.hpp"
#include "oracles.hpp"

using namespace bernprim;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> grid(int points) {
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) xs[i] = static_cast<double>(i) / (points - 1);
  return xs;
}

double ulp(double s) {
  s = std::abs(s);
  return std::nextafter(s, std::numeric_limits<double>::infinity()) - s;
}

RealFunction fn(std::function<double(double)> f) { return RealFunction(std::move(f)); }

// Residuals of the four basis identities for every n in [1, 500].
void identity_suite() {
  const auto t0 = Clock::now();
  const auto xs = grid(101);
  double worst_partition = 0, worst_first = 0, worst_second = 0, worst_deriv = 0;
  bool ok = true;
  for (int n = 1; n <= 500; ++n) {
    for (double x : xs) {
      const double part = std::abs(moment_sum(n, x, MomentKind::Partition) - 1.0);
      const double first = std::abs(moment_sum(n, x, MomentKind::First) - n * x);
      const double second = std::abs(moment_sum(n, x, MomentKind::SecondCentral) - n * x * (1 - x));
      worst_partition = std::max(worst_partition, part);
      worst_first = std::max(worst_first, first / n);
      worst_second = std::max(worst_second, second / n);
      ok = ok && part < 1e-12 && first < 1e-9 * n && second < 1e-8 * n;
    }
    if (n > 50) continue;
    for (int m = 0; m <= n; ++m)
      for (double x : xs) {
        // second-order one-sided stencils at the ends keep every sample in [0,1]
        const double h = 1e-6;
        const auto b = [&](double t) { return basis_eval(m, n, t); };
        double fd;
        if (x == 0.0)
          fd = (-3 * b(0.0) + 4 * b(h) - b(2 * h)) / (2 * h);
        else if (x == 1.0)
          fd = (3 * b(1.0) - 4 * b(1.0 - h) + b(1.0 - 2 * h)) / (2 * h);
        else
          fd = (b(x + h) - b(x - h)) / (2 * h);
        const double d = std::abs(basis_derivative(m, n, x) - fd);
        worst_deriv = std::max(worst_deriv, d);
        ok = ok && d < 1e-5;
      }
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 30.0;
  report("identity suite", ok,
         fmt("partition %.3g (<1e-12), first/n %.3g (<1e-9), second/n %.3g (<1e-8), derivative %.3g (<1e-5), %.2fs (<30s)",
             worst_partition, worst_first, worst_second, worst_deriv, secs));
}

// derivative_poly(F_n) reproduces the node values; F_n(0) is exactly zero.
void primitive_exactness() {
  bool ok = true;
  double worst_ulps = 0;
  for (const auto& [text, f] : corpus::functions())
    for (int n : {5, 50, 200}) {
      const auto P = primitive_approximant(fn(f), n);
      const auto D = derivative_poly(P);
      ok = ok && D.degree() == n && P.coeffs()[0] == 0.0 && eval_poly(P, 0.0) == 0.0;
      for (int m = 0; m <= n; ++m) {
        const double target = f(static_cast<double>(m) / n);
        const double scale =
            std::max(std::abs(target), (n + 1) * std::max(std::abs(P.coeffs()[m]), std::abs(P.coeffs()[m + 1])));
        const double ulps = std::abs(D.coeffs()[m] - target) / ulp(scale);
        worst_ulps = std::max(worst_ulps, ulps);
        ok = ok && ulps <= 4.0;
      }
    }
  report("primitive exactness", ok, fmt("worst coefficient error %.2f ulp (<=4), F_n(0) == 0 for all 30 cases", worst_ulps));
}

// ||f_n - x^2|| = 1/(4n) and ||F_n - x^3/3|| = 1/(6n).
void convergence_law() {
  const auto sq = fn([](double x) { return x * x; });
  bool ok = true;
  std::string detail;
  for (int n : {10, 100, 1000}) {
    const auto f_n = bernstein_approximant(sq, n);
    const auto F_n = primitive_approximant(sq, n);
    const double e_f = sup_norm_distance(f_n, [](double x) { return x * x; }, 1001).value;
    const double e_F = sup_norm_distance(F_n, [](double x) { return x * x * x / 3; }, 1001).value;
    // Independent route: Simpson integral of f_n itself (exact, f_n is quadratic).
    // F_n - x^3/3 = (x^2/2 - x^3/3)/n peaks at x = 1; the other points check F_n pointwise.
    const auto fn_as_fn = fn([&f_n](double x) { return eval_poly(f_n, x); });
    const double e_oracle = simpson(fn_as_fn, 1.0, 256).value - 1.0 / 3;
    double pointwise = 0;
    for (double x : {0.25, 0.5, 0.75})
      pointwise = std::max(pointwise, std::abs(simpson(fn_as_fn, x, 256).value - eval_poly(F_n, x)));
    const bool case_ok = std::abs(e_f - 0.25 / n) < 1e-9 && std::abs(e_F - 1.0 / (6 * n)) < 1e-9 &&
                         std::abs(e_oracle - 1.0 / (6 * n)) < 1e-10 && std::abs(e_oracle - e_F) < 1e-10 &&
                         pointwise < 1e-10;
    ok = ok && case_ok;
    detail += fmt("n=%d: |e_f-1/(4n)|=%.2g |e_F-1/(6n)|=%.2g simpson %.2g; ", n, std::abs(e_f - 0.25 / n),
                  std::abs(e_F - 1.0 / (6 * n)), std::abs(e_oracle - 1.0 / (6 * n)));
  }
  detail.resize(detail.size() - 2);
  report("exact convergence law", ok, detail);
}

// ||F_m - F_n|| <= ||f_m - f_n|| on the grid.
void cauchy_bound() {
  const auto all = corpus::functions();
  const std::vector<corpus::Named> picked{all[1], all[2], all[7]};
  const int degrees[] = {5, 10, 20, 40, 80};
  bool ok = true;
  double worst_slack = -std::numeric_limits<double>::infinity();
  for (const auto& [text, f] : picked) {
    std::vector<BernsteinPoly> fs, Fs;
    for (int n : degrees) {
      fs.push_back(bernstein_approximant(fn(f), n));
      Fs.push_back(primitive_approximant(fn(f), n));
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) {
        if (i == j) continue;
        const double lhs = sup_norm_distance(Fs[i], Fs[j], 1001).value;
        const double rhs = sup_norm_distance(fs[i], fs[j], 1001).value;
        worst_slack = std::max(worst_slack, lhs - rhs);
        ok = ok && lhs <= rhs + 1e-10;
      }
  }
  report("Cauchy bound", ok, fmt("max(||F_m-F_n|| - ||f_m-f_n||) = %.3g over 60 pairs (<=1e-10)", worst_slack));
}

void difference_quotient_contract() {
  const auto s = fn([](double x) { return std::sin(corpus::kPi * x); });
  const int n = 40;
  const auto F = primitive_approximant(s, n);
  const auto f_n = bernstein_approximant(s, n);
  bool ok = true;
  double worst_qc = 0, worst_rec = 0;
  for (double c : {0.1, 0.5, 0.9}) {
    const auto Q = difference_quotient(F, c);
    const double qc = std::abs(eval_poly(Q, c) - eval_poly(f_n, c));
    const double Fc = eval_poly(F, c);
    double rec = 0;
    for (double x : grid(101)) rec = std::max(rec, std::abs(eval_poly(Q, x) * (x - c) + Fc - eval_poly(F, x)));
    worst_qc = std::max(worst_qc, qc);
    worst_rec = std::max(worst_rec, rec);
    ok = ok && qc <= 1e-9 && rec <= 1e-10;
  }
  report("difference quotient", ok, fmt("|Q(c)-f_n(c)| %.3g (<=1e-9), reconstruction %.3g (<=1e-10)", worst_qc, worst_rec));
}

void degree_bound() {
  const auto t0 = Clock::now();
  const auto f = expr::to_real_function(expr::parse("abs(x-0.5)"), 1.0, 0.5);
  const double sup = *f.sup_bound();
  bool ok = true;
  std::string detail;
  // The bound 4||f||/(eps delta^2) with ||f|| = 0.5, delta = eps/2 evaluates to 64 and 512.
  const std::pair<double, std::int64_t> cases[] = {{0.5, 65}, {0.25, 513}};
  for (const auto& [eps, expected] : cases) {
    const double delta = eps / 2;
    const auto n = required_degree(sup, eps, delta);
    const double err = sup_norm_distance(bernstein_approximant(f, static_cast<int>(n)), f, 1001).value;
    ok = ok && n == expected && err < eps;
    detail += fmt("eps=%g: n=%lld (expected %lld) error %.4g; ", eps, static_cast<long long>(n),
                  static_cast<long long>(expected), err);
  }
  const double err1025 = sup_norm_distance(bernstein_approximant(f, 1025), f, 1001).value;
  ok = ok && err1025 < 0.25;
  const double secs = seconds_since(t0);
  ok = ok && secs < 10.0;
  detail += fmt("error at n=1025 %.4g; %.2fs (<10s)", err1025, secs);
  report("degree-bound sufficiency", ok, detail);
}

void oracle_cross_check() {
  const auto all = corpus::functions();
  bool ok = true;
  double worst_slack = -std::numeric_limits<double>::infinity();
  for (int i : {0, 1, 2, 3, 7}) {
    const auto f = fn(all[i].fn);
    const auto F = primitive_approximant(f, 200);
    const double bound = sup_norm_distance(bernstein_approximant(f, 200), f, 101).value;
    double worst = 0;
    for (double x : grid(101)) worst = std::max(worst, std::abs(eval_poly(F, x) - simpson(f, x, 256).value));
    worst_slack = std::max(worst_slack, worst - bound);
    ok = ok && worst <= bound + 1e-6;
  }
  report("oracle cross-check", ok, fmt("max(|F_200 - simpson| - ||f_200 - f||) = %.3g (<=1e-6) over 5 functions", worst_slack));
}

void parser_and_cli() {
  int round_trips = 0;
  const auto& list = corpus::expressions();
  for (const auto& text : list) {
    try {
      const auto ast = expr::parse(text);
      const auto printed = ast.to_string();
      if (expr::parse(printed) == ast && expr::parse(printed).to_string() == printed) ++round_trips;
    } catch (const std::exception&) {
    }
  }

  int goldens = 0;
  for (const auto& c : golden::cases()) {
    try {
      const auto r = clitest::invoke(c.args);
      if (r.code == 0 && r.out == clitest::read_file(std::string(BERNPRIM_GOLDEN_DIR) + "/" + c.file)) ++goldens;
    } catch (const std::exception&) {
    }
  }

  const bool codes = clitest::invoke({"approx", "--expr", "x", "--n", "5"}).code == 0 &&
                     clitest::invoke({"approx", "--expr", "x^^2", "--n", "3"}).code == 2 &&
                     clitest::invoke({"bound", "--expr", "1", "--eps", "0.1"}).code == 2 &&
                     clitest::invoke({"approx", "--expr", "1/x", "--n", "3"}).code == 3;

  const bool ok = list.size() == 50 && round_trips == 50 && goldens == 5 && codes;
  report("parser and CLI", ok,
         fmt("%d/50 round trips, %d/5 goldens byte-identical, exit codes 0/2/3 %s", round_trips, goldens,
             codes ? "as expected" : "WRONG"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  identity_suite();
  primitive_exactness();
  convergence_law();
  cauchy_bound();
  difference_quotient_contract();
  degree_bound();
  oracle_cross_check();
  parser_and_cli();
  const double secs = seconds_since(t0);
  std::printf("%d failed, total %.1fs (<300s)\n", g_failures, secs);
  return g_failures == 0 && secs < 300.0 ? 0 : 1;
}
