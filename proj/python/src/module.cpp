#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bernprim/bernstein.hpp"
#include "bernprim/cli.hpp"
#include "bernprim/expr.hpp"
#include "bernprim/quadrature.hpp"
#include "bernprim/real_function.hpp"

namespace py = pybind11;
using namespace bernprim;

namespace {

// Poly, Function and Expr are evaluated in C++; anything else goes through Python.
std::function<double(double)> as_callable(const py::object& obj) {
  if (py::isinstance<BernsteinPoly>(obj)) {
    const auto p = obj.cast<BernsteinPoly>();
    return [p](double x) { return eval_poly(p, x); };
  }
  if (py::isinstance<RealFunction>(obj)) {
    const auto f = obj.cast<RealFunction>();
    return [f](double x) { return f(x); };
  }
  if (py::isinstance<expr::ExprAst>(obj)) {
    const auto e = obj.cast<expr::ExprAst>();
    return [e](double x) { return e(x); };
  }
  return obj.cast<std::function<double(double)>>();
}

// Accepts a Function, an expression string or a Python callable.
RealFunction as_function(const py::object& obj) {
  if (py::isinstance<RealFunction>(obj)) return obj.cast<RealFunction>();
  if (py::isinstance<py::str>(obj)) return expr::to_real_function(expr::parse(obj.cast<std::string>()));
  return RealFunction(as_callable(obj));
}

MomentKind moment_kind(const std::string& s) {
  if (s == "partition") return MomentKind::Partition;
  if (s == "first") return MomentKind::First;
  if (s == "second_central") return MomentKind::SecondCentral;
  throw py::value_error("kind must be 'partition', 'first' or 'second_central'");
}

RiemannRule riemann_rule(const std::string& s) {
  if (s == "left") return RiemannRule::Left;
  if (s == "right") return RiemannRule::Right;
  if (s == "midpoint") return RiemannRule::Midpoint;
  throw py::value_error("rule must be 'left', 'right' or 'midpoint'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bernstein approximants of functions on [0,1] and their primitives";

  static py::exception<expr::ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<EvalError> eval_error(m, "EvalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const expr::ParseError& e) {
      parse_error(e.what());
    } catch (const EvalError& e) {
      eval_error(e.what());
    }
  });

  py::class_<RealFunction>(m, "Function")
      .def(py::init([](const py::object& f, std::optional<double> sup_bound, std::optional<double> lipschitz,
                       int probe_points) { return RealFunction(as_callable(f), sup_bound, lipschitz, probe_points); }),
           py::arg("f"), py::arg("sup_bound") = py::none(), py::arg("lipschitz") = py::none(),
           py::arg("probe_points") = kDefaultProbePoints)
      .def_static(
          "from_expr",
          [](const std::string& text, std::optional<double> lipschitz, std::optional<double> sup_bound) {
            return expr::to_real_function(expr::parse(text), lipschitz, sup_bound);
          },
          py::arg("text"), py::arg("lipschitz") = py::none(), py::arg("sup_bound") = py::none())
      .def("__call__", &RealFunction::operator(), py::arg("x"))
      .def_property_readonly("sup_bound", &RealFunction::sup_bound)
      .def_property_readonly("lipschitz", &RealFunction::lipschitz);

  py::class_<BernsteinPoly>(m, "Poly")
      .def(py::init<std::vector<double>>(), py::arg("coeffs"))
      .def_static("zero", &BernsteinPoly::zero, py::arg("degree") = 0)
      .def_property_readonly("degree", &BernsteinPoly::degree)
      .def_property_readonly("coeffs",
                             [](const BernsteinPoly& p) { return std::vector<double>(p.coeffs().begin(), p.coeffs().end()); })
      .def("__call__", &eval_poly, py::arg("x"))
      .def("derivative", &derivative_poly)
      .def("difference_quotient", &difference_quotient, py::arg("c"))
      .def(py::self == py::self)
      .def("__repr__", [](const BernsteinPoly& p) {
        std::ostringstream ss;
        ss << "Poly(degree=" << p.degree() << ")";
        return ss.str();
      });

  py::class_<expr::ExprAst>(m, "Expr")
      .def("__call__", &expr::ExprAst::operator(), py::arg("x"))
      .def("__str__", &expr::ExprAst::to_string)
      .def("__repr__", [](const expr::ExprAst& e) { return "Expr('" + e.to_string() + "')"; })
      .def(py::self == py::self);

  py::class_<QuadratureResult>(m, "QuadratureResult")
      .def_readonly("value", &QuadratureResult::value)
      .def_readonly("panels", &QuadratureResult::panels)
      .def_readonly("error_estimate", &QuadratureResult::error_estimate);

  py::class_<SupNormEstimate>(m, "SupNormEstimate")
      .def_readonly("value", &SupNormEstimate::value)
      .def_readonly("grid_size", &SupNormEstimate::grid_size)
      .def_readonly("argmax", &SupNormEstimate::argmax);

  m.def("binomial", &binomial_convention, py::arg("n"), py::arg("m"));
  m.def("log_binomial", &log_binomial, py::arg("n"), py::arg("m"));
  m.def("basis", &basis_eval, py::arg("m"), py::arg("n"), py::arg("x"));
  m.def("basis_all", &basis_all, py::arg("n"), py::arg("x"));
  m.def("basis_derivative", &basis_derivative, py::arg("m"), py::arg("n"), py::arg("x"));
  m.def(
      "moment_sum", [](int n, double x, const std::string& kind) { return moment_sum(n, x, moment_kind(kind)); },
      py::arg("n"), py::arg("x"), py::arg("kind"));

  m.def(
      "bernstein_approximant", [](const py::object& f, int n) { return bernstein_approximant(as_function(f), n); },
      py::arg("f"), py::arg("n"));
  m.def(
      "primitive_approximant", [](const py::object& f, int n) { return primitive_approximant(as_function(f), n); },
      py::arg("f"), py::arg("n"));
  m.def("difference_quotient", &difference_quotient, py::arg("p"), py::arg("c"));
  m.def("required_degree", &required_degree, py::arg("sup_bound"), py::arg("eps"), py::arg("delta"));
  m.def("lipschitz_delta", &lipschitz_delta, py::arg("lipschitz"), py::arg("eps"));
  m.def(
      "sup_norm_distance",
      [](const py::object& g, const py::object& h, int grid_size) {
        return sup_norm_distance(as_callable(g), as_callable(h), grid_size);
      },
      py::arg("g"), py::arg("h"), py::arg("grid_size") = 1001);

  m.def(
      "simpson", [](const py::object& f, double upper, int panels) { return simpson(as_function(f), upper, panels); },
      py::arg("f"), py::arg("upper") = 1.0, py::arg("panels") = 256);
  m.def(
      "riemann_sum",
      [](const py::object& f, double upper, int panels, const std::string& rule) {
        return riemann_sum(as_function(f), upper, panels, riemann_rule(rule));
      },
      py::arg("f"), py::arg("upper") = 1.0, py::arg("panels") = 1000, py::arg("rule") = "midpoint");

  m.def("parse", &expr::parse, py::arg("text"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
