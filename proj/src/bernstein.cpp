#include "bernprim/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "numfmt.hpp"

namespace bernprim {

namespace {

void require_unit(double x, const char* where) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error(std::string(where) + ": x=" + detail::format_double(x) + " outside [0,1]");
}

void require_degree(int n, int lowest, const char* where) {
  if (n < lowest || n > kMaxDegree)
    throw std::domain_error(std::string(where) + ": degree " + std::to_string(n) + " outside [" +
                            std::to_string(lowest) + ", " + std::to_string(kMaxDegree) + "]");
}

// p_{k,n}(x) for 0 < x < 1 as a product of k factors ((n-k+i)/i) x and n-k
// factors (1-x). The factors are interleaved so the running product stays
// near 1; at the mode every ratio factor is >= ~1 and the result is not
// small, so nothing underflows.
double mode_value(int k, int n, double x) {
  const double y = 1.0 - x;
  double v = 1.0;
  int i = 1;
  int j = 0;
  while (i <= k || j < n - k) {
    if (i > k || (v >= 1.0 && j < n - k)) {
      v *= y;
      ++j;
    } else {
      v *= static_cast<double>(n - k + i) * x / i;
      ++i;
    }
  }
  return v;
}

}  // namespace

BernsteinPoly::BernsteinPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("BernsteinPoly: needs at least one coefficient");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw std::invalid_argument("BernsteinPoly: non-finite coefficient");
}

BernsteinPoly BernsteinPoly::zero(int degree) {
  if (degree < 0) throw std::domain_error("BernsteinPoly::zero: negative degree");
  return BernsteinPoly(std::vector<double>(static_cast<std::size_t>(degree) + 1, 0.0));
}

double BernsteinPoly::operator()(double x) const { return eval_poly(*this, x); }

double log_binomial(std::int64_t n, std::int64_t m) {
  if (n < 0 || m < 0 || m > n) throw std::domain_error("log_binomial: need 0 <= m <= n");
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(m) + 1.0) -
         std::lgamma(static_cast<double>(n - m) + 1.0);
}

double binomial_convention(std::int64_t n, std::int64_t m) {
  if (n < 0) throw std::domain_error("binomial_convention: n must be nonnegative");
  if (m < 0 || m > n) return 0.0;
  const std::int64_t k = std::min(m, n - m);
  // The running product is C(n-k+i, i), an integer at every step, so small
  // results come out exact; large ones go through the log domain.
  if (k > 64 && log_binomial(n, k) > 700.0) return std::exp(log_binomial(n, k));
  double r = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double basis_eval(int m, int n, double x) {
  require_unit(x, "basis_eval");
  if (n < 0) throw std::domain_error("basis_eval: negative degree");
  if (m < 0 || m > n) return 0.0;
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x == 1.0) return m == n ? 1.0 : 0.0;
  if (n <= 50) return binomial_convention(n, m) * std::pow(x, m) * std::pow(1.0 - x, n - m);
  return std::exp(log_binomial(n, m) + m * std::log(x) + (n - m) * std::log1p(-x));
}

std::vector<double> basis_all(int n, double x) {
  require_unit(x, "basis_all");
  if (n < 0) throw std::domain_error("basis_all: negative degree");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  if (x == 0.0) {
    out.front() = 1.0;
    return out;
  }
  if (x == 1.0) {
    out.back() = 1.0;
    return out;
  }
  const double y = 1.0 - x;
  const int k = std::min(n, static_cast<int>(std::floor((n + 1) * x)));
  out[k] = mode_value(k, n, x);
  for (int m = k; m < n; ++m) out[m + 1] = out[m] * (static_cast<double>(n - m) * x) / ((m + 1) * y);
  for (int m = k; m > 0; --m) out[m - 1] = out[m] * (static_cast<double>(m) * y) / ((n - m + 1) * x);
  return out;
}

double basis_derivative(int m, int n, double x) {
  if (n < 1) throw std::domain_error("basis_derivative: degree must be >= 1");
  return n * (basis_eval(m - 1, n - 1, x) - basis_eval(m, n - 1, x));
}

double moment_sum(int n, double x, MomentKind kind) {
  require_unit(x, "moment_sum");
  if (n < 1) throw std::domain_error("moment_sum: degree must be >= 1");
  const auto p = basis_all(n, x);
  detail::CompensatedSum sum;
  for (int m = 0; m <= n; ++m) {
    switch (kind) {
      case MomentKind::Partition:
        sum.add(p[m]);
        break;
      case MomentKind::First:
        sum.add(m * p[m]);
        break;
      case MomentKind::SecondCentral: {
        const double d = n * x - m;
        sum.add(d * d * p[m]);
        break;
      }
    }
  }
  return sum.value();
}

BernsteinPoly bernstein_approximant(const RealFunction& f, int n) {
  require_degree(n, 1, "bernstein_approximant");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) c[m] = f(static_cast<double>(m) / n);
  return BernsteinPoly(std::move(c));
}

BernsteinPoly primitive_approximant(const RealFunction& f, int n) {
  require_degree(n, 1, "primitive_approximant");
  std::vector<double> c(static_cast<std::size_t>(n) + 2, 0.0);
  const double scale = n + 1;
  detail::CompensatedSum prefix;
  for (int j = 1; j <= n + 1; ++j) {
    prefix.add(f(static_cast<double>(j - 1) / n));
    c[j] = prefix.value() / scale;
  }
  return BernsteinPoly(std::move(c));
}

double eval_poly(const BernsteinPoly& p, double x) {
  require_unit(x, "eval_poly");
  const auto c = p.coeffs();
  const int n = p.degree();
  if (n > kDeCasteljauMaxDegree) {
    const auto w = basis_all(n, x);
    detail::CompensatedSum sum;
    for (int m = 0; m <= n; ++m)
      if (w[m] != 0.0) sum.add(c[m] * w[m]);
    return sum.value();
  }
  std::vector<double> b(c.begin(), c.end());
  const double y = 1.0 - x;
  for (int r = 1; r <= n; ++r)
    for (int i = 0; i + r <= n; ++i) b[i] = y * b[i] + x * b[i + 1];
  return b[0];
}

BernsteinPoly derivative_poly(const BernsteinPoly& p) {
  const int n = p.degree();
  if (n == 0) return BernsteinPoly::zero(0);
  const auto c = p.coeffs();
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) d[j] = n * (c[j + 1] - c[j]);
  return BernsteinPoly(std::move(d));
}

BernsteinPoly difference_quotient(const BernsteinPoly& p, double c) {
  if (!(c > 0.0 && c < 1.0))
    throw std::domain_error("difference_quotient: c=" + detail::format_double(c) + " outside (0,1)");
  const int n = p.degree();
  if (n == 0) return BernsteinPoly::zero(0);

  const double pc = eval_poly(p, c);
  const auto b = p.coeffs();
  const double d = 1.0 - c;
  // Coefficient j of (x - c) Q in degree n:
  //   (1-c) (j/n) q_{j-1} - c ((n-j)/n) q_j = b_j - p(c)
  std::vector<double> q(static_cast<std::size_t>(n), 0.0);
  const int split = std::clamp(static_cast<int>(std::floor(c * n)), 0, n - 1);
  for (int j = 0; j <= split; ++j) {
    const double prev = j > 0 ? d * j * q[j - 1] : 0.0;
    q[j] = (prev - n * (b[j] - pc)) / (c * (n - j));
  }
  for (int j = n; j >= split + 2; --j) {
    const double next = j < n ? c * (n - j) * q[j] : 0.0;
    q[j - 1] = (n * (b[j] - pc) + next) / (d * j);
  }
  return BernsteinPoly(std::move(q));
}

std::int64_t required_degree(double sup_bound, double eps, double delta) {
  if (!(sup_bound > 0.0) || !(eps > 0.0) || !(delta > 0.0))
    throw std::domain_error("required_degree: arguments must be positive");
  if (delta > 1.0) throw std::domain_error("required_degree: delta must lie in (0,1]");
  const double bound = 4.0 * sup_bound / (eps * delta * delta);
  if (!std::isfinite(bound) || bound >= 9.0e18) throw std::domain_error("required_degree: bound overflows");
  const double nearest = std::round(bound);
  const double base =
      std::abs(bound - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::floor(bound);
  return static_cast<std::int64_t>(base) + 1;
}

double lipschitz_delta(double lipschitz, double eps) {
  if (!(lipschitz > 0.0) || !(eps > 0.0))
    throw std::domain_error("lipschitz_delta: arguments must be positive");
  return std::min(1.0, eps / (2.0 * lipschitz));
}

}  // namespace bernprim
