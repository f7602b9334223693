#include "bernprim/quadrature.hpp"

#include <cmath>

#include "numfmt.hpp"

namespace bernprim {

namespace {

void check_upper(double upper) {
  if (!(upper >= 0.0 && upper <= 1.0)) throw std::domain_error("quadrature: upper limit outside [0,1]");
}

double riemann_value(const RealFunction& f, double upper, int panels, RiemannRule rule) {
  const double offset = rule == RiemannRule::Left ? 0.0 : rule == RiemannRule::Right ? 1.0 : 0.5;
  detail::CompensatedSum sum;
  for (int i = 0; i < panels; ++i) sum.add(f(upper * ((i + offset) / panels)));
  return sum.value() * upper / panels;
}

double simpson_value(const RealFunction& f, double upper, int panels) {
  detail::CompensatedSum sum;
  sum.add(f(0.0));
  sum.add(f(upper));
  for (int i = 1; i < panels; ++i) sum.add((i % 2 ? 4.0 : 2.0) * f(upper * (static_cast<double>(i) / panels)));
  return sum.value() * upper / (3.0 * panels);
}

}  // namespace

QuadratureResult riemann_sum(const RealFunction& f, double upper, int panels, RiemannRule rule) {
  check_upper(upper);
  if (panels < 1) throw std::domain_error("riemann_sum: panels must be >= 1");
  const double coarse = riemann_value(f, upper, panels, rule);
  const double fine = riemann_value(f, upper, 2 * panels, rule);
  return {coarse, panels, std::abs(coarse - fine)};
}

QuadratureResult simpson(const RealFunction& f, double upper, int panels) {
  check_upper(upper);
  if (panels < 2 || panels % 2 != 0) throw std::domain_error("simpson: panels must be even and >= 2");
  const double coarse = simpson_value(f, upper, panels);
  const double fine = simpson_value(f, upper, 2 * panels);
  return {coarse, panels, std::abs(fine - coarse) / 15.0};
}

}  // namespace bernprim
