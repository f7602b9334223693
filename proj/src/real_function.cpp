#include "bernprim/real_function.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "numfmt.hpp"

namespace bernprim {

RealFunction::RealFunction(Evaluator evaluator, std::optional<double> sup_bound,
                           std::optional<double> lipschitz, int probe_points)
    : evaluator_(std::move(evaluator)), sup_bound_(sup_bound), lipschitz_(lipschitz) {
  if (!evaluator_) throw std::invalid_argument("RealFunction: empty evaluator");
  if (sup_bound_ && !(std::isfinite(*sup_bound_) && *sup_bound_ >= 0.0))
    throw std::invalid_argument("RealFunction: sup bound must be finite and nonnegative");
  if (lipschitz_ && !(std::isfinite(*lipschitz_) && *lipschitz_ > 0.0))
    throw std::invalid_argument("RealFunction: Lipschitz constant must be finite and positive");
  if (probe_points < 2) throw std::invalid_argument("RealFunction: probe grid needs at least 2 points");

  for (int i = 0; i < probe_points; ++i) {
    const double x = static_cast<double>(i) / (probe_points - 1);
    try {
      (*this)(x);
    } catch (const EvalError& e) {
      throw EvalError("function rejected: probe failed at x=" + detail::format_double(x) + ": " + e.what(), x);
    }
  }
}

double RealFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("RealFunction: x=" + detail::format_double(x) + " outside [0,1]");
  const double y = evaluator_(x);
  if (!std::isfinite(y))
    throw EvalError("non-finite value at x=" + detail::format_double(x), x);
  return y;
}

}  // namespace bernprim
