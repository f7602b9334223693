#pragma once

#include <stdexcept>

#include "bernprim/bernstein.hpp"
#include "bernprim/real_function.hpp"

namespace bernprim {

struct QuadratureResult {
  double value = 0.0;
  int panels = 0;
  double error_estimate = 0.0;
};

enum class RiemannRule { Left, Right, Midpoint };

/// Uniform-panel Riemann sum for the integral of f over [0, upper].
/// error_estimate = |S(panels) - S(2 panels)|.
QuadratureResult riemann_sum(const RealFunction& f, double upper, int panels, RiemannRule rule);

/// Composite Simpson rule over [0, upper]; panels must be even.
/// error_estimate = |S(2 panels) - S(panels)| / 15.
QuadratureResult simpson(const RealFunction& f, double upper, int panels);

inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

/// (f(x+h) - f(x-h)) / (2h); the stencil must stay inside [0,1].
template <UnitIntervalFunction F>
double central_difference(const F& f, double x, double h = kDefaultFiniteDifferenceStep) {
  if (!(h > 0.0)) throw std::domain_error("central_difference: h must be positive");
  if (!(x - h >= 0.0 && x + h <= 1.0)) throw std::domain_error("central_difference: stencil leaves [0,1]");
  return (static_cast<double>(f(x + h)) - static_cast<double>(f(x - h))) / (2.0 * h);
}

}  // namespace bernprim
