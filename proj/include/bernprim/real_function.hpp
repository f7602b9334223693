#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace bernprim {

/// Raised when a function cannot be evaluated to a finite value.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, double x) : std::runtime_error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Number of equally spaced points used to check finiteness on [0,1].
inline constexpr int kDefaultProbePoints = 257;

/// A real-valued function on the closed unit interval.
///
/// Construction evaluates the function on a uniform probe grid and rejects it
/// if any value is non-finite or the evaluator throws. Optional metadata
/// (a known bound for the sup-norm, a Lipschitz constant) feeds the a-priori
/// degree bound.
class RealFunction {
 public:
  using Evaluator = std::function<double(double)>;

  explicit RealFunction(Evaluator evaluator,
                        std::optional<double> sup_bound = std::nullopt,
                        std::optional<double> lipschitz = std::nullopt,
                        int probe_points = kDefaultProbePoints);

  /// Evaluates at x in [0,1]. Throws std::domain_error outside the interval
  /// and EvalError on a non-finite value.
  double operator()(double x) const;

  const std::optional<double>& sup_bound() const noexcept { return sup_bound_; }
  const std::optional<double>& lipschitz() const noexcept { return lipschitz_; }

 private:
  Evaluator evaluator_;
  std::optional<double> sup_bound_;
  std::optional<double> lipschitz_;
};

}  // namespace bernprim
