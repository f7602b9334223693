#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bernprim/real_function.hpp"

namespace bernprim {

/// Largest degree the public constructors and the CLI accept.
inline constexpr int kMaxDegree = 100000;

/// Above this degree eval_poly switches from De Casteljau (O(n^2)) to a
/// weighted sum over basis_all (O(n)).
inline constexpr int kDeCasteljauMaxDegree = 1024;

/// A polynomial of degree n in the Bernstein basis {p_{m,n}}: coeffs()[m]
/// multiplies p_{m,n}. Always holds n+1 finite coefficients.
class BernsteinPoly {
 public:
  /// Throws std::invalid_argument on an empty or non-finite coefficient list.
  explicit BernsteinPoly(std::vector<double> coeffs);

  static BernsteinPoly zero(int degree = 0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double operator()(double x) const;

  friend bool operator==(const BernsteinPoly&, const BernsteinPoly&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Binomial coefficient C(n, m) with C(n, m) = 0 for m < 0 or m > n.
/// Exact for results below 2^53; beyond double range the result is +inf
/// (use log_binomial there). Throws std::domain_error for n < 0.
double binomial_convention(std::int64_t n, std::int64_t m);

/// log C(n, m) for 0 <= m <= n.
double log_binomial(std::int64_t n, std::int64_t m);

/// p_{m,n}(x) = C(n,m) x^m (1-x)^(n-m); zero for m outside [0, n].
/// Direct product for n <= 50, log domain above.
double basis_eval(int m, int n, double x);

/// All n+1 basis values at x in O(n). Starts from the mode of the
/// distribution and recurs outward, so tails underflow to zero without
/// contaminating the bulk.
std::vector<double> basis_all(int n, double x);

/// n (p_{m-1,n-1}(x) - p_{m,n-1}(x)). Requires n >= 1.
double basis_derivative(int m, int n, double x);

enum class MomentKind { Partition, First, SecondCentral };

/// Direct summation of sum p_{m,n}, sum m p_{m,n}, or sum (nx-m)^2 p_{m,n}.
/// The closed forms are 1, nx and nx(1-x); this routine never uses them.
double moment_sum(int n, double x, MomentKind kind);

/// The n-th Bernstein polynomial f_n with coefficients f(m/n).
BernsteinPoly bernstein_approximant(const RealFunction& f, int n);

/// F_n of degree n+1 with coefficients sum_{m<j} f(m/n) / (n+1).
/// F_n(0) = 0 and derivative_poly(F_n) reproduces f_n.
BernsteinPoly primitive_approximant(const RealFunction& f, int n);

/// De Casteljau evaluation. Throws std::domain_error for x outside [0,1].
double eval_poly(const BernsteinPoly& p, double x);

/// Derivative in Bernstein form: n (c[j+1] - c[j]). Degree 0 gives the
/// zero polynomial of degree 0.
BernsteinPoly derivative_poly(const BernsteinPoly& p);

/// The exact quotient Q with Q(x) (x - c) = p(x) - p(c), for c in (0,1).
///
/// Solved directly in Bernstein form. Writing x - c = (1-c) x - c (1-x) and
/// matching degree-n coefficients gives a two-term recurrence in the q_j.
/// It is run forward from j = 0 while j <= floor(c n) and backward from
/// j = n above that, which keeps every step's amplification factor <= 1.
BernsteinPoly difference_quotient(const BernsteinPoly& p, double c);

/// Smallest integer strictly greater than 4 sup_bound / (eps delta^2).
/// Bounds that land within 1e-9 (relative) of an integer are treated as
/// that integer, so decimal inputs like (1, 0.2, 0.1) give 2001.
std::int64_t required_degree(double sup_bound, double eps, double delta);

/// min(1, eps / (2 L)): a valid uniform-continuity delta for an L-Lipschitz f.
double lipschitz_delta(double lipschitz, double eps);

/// Grid estimate of a sup-norm. This is a lower bound for the true value.
struct SupNormEstimate {
  double value = 0.0;
  int grid_size = 0;
  double argmax = 0.0;
};

template <class F>
concept UnitIntervalFunction = std::regular_invocable<const F&, double>;

/// max |g(x_i) - h(x_i)| over x_i = i/(grid_size-1). Ties keep the first index.
template <UnitIntervalFunction G, UnitIntervalFunction H>
SupNormEstimate sup_norm_distance(const G& g, const H& h, int grid_size) {
  if (grid_size < 2) throw std::domain_error("sup_norm_distance: grid_size must be >= 2");
  SupNormEstimate est{0.0, grid_size, 0.0};
  for (int i = 0; i < grid_size; ++i) {
    const double x = static_cast<double>(i) / (grid_size - 1);
    const double d = std::abs(static_cast<double>(g(x)) - static_cast<double>(h(x)));
    if (d > est.value) {
      est.value = d;
      est.argmax = x;
    }
  }
  return est;
}

template <UnitIntervalFunction G>
SupNormEstimate sup_norm(const G& g, int grid_size) {
  return sup_norm_distance(g, [](double) { return 0.0; }, grid_size);
}

}  // namespace bernprim
