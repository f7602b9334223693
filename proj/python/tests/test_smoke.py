import json
import math

import pytest

import bernprim


def test_binomial_and_basis():
    assert bernprim.binomial(4, 2) == 6.0
    assert bernprim.binomial(3, 5) == 0.0
    assert bernprim.basis(1, 2, 0.5) == 0.5
    values = bernprim.basis_all(30, 0.3)
    assert len(values) == 31
    assert abs(sum(values) - 1.0) < 1e-14
    assert abs(bernprim.moment_sum(40, 0.3, "second_central") - 40 * 0.3 * 0.7) < 1e-12
    with pytest.raises(ValueError):
        bernprim.moment_sum(4, 0.3, "third")


def test_approximant_from_string_callable_and_function():
    a = bernprim.bernstein_approximant("x^2", 10)
    b = bernprim.bernstein_approximant(lambda x: x * x, 10)
    c = bernprim.bernstein_approximant(bernprim.Function.from_expr("x*x"), 10)
    assert a == b == c
    assert a.degree == 10
    assert abs(a(0.5) - 0.275) < 1e-15
    err = bernprim.sup_norm_distance(a, lambda x: x * x, 1001)
    assert abs(err.value - 0.025) < 1e-15
    assert err.argmax == 0.5


def test_primitive():
    F = bernprim.primitive_approximant("x^2", 10)
    assert F.degree == 11
    assert F(0.0) == 0.0
    assert F.coeffs[0] == 0.0
    d = F.derivative()
    f10 = bernprim.bernstein_approximant("x^2", 10)
    assert max(abs(p - q) for p, q in zip(d.coeffs, f10.coeffs)) < 1e-15
    err = bernprim.sup_norm_distance(F, lambda x: x**3 / 3)
    assert abs(err.value - 1 / 60) < 1e-12


def test_difference_quotient():
    F = bernprim.primitive_approximant(lambda x: math.sin(math.pi * x), 40)
    f = bernprim.bernstein_approximant(lambda x: math.sin(math.pi * x), 40)
    c = 0.3
    Q = F.difference_quotient(c)
    assert abs(Q(c) - f(c)) < 1e-12
    for x in (0.0, 0.25, 0.9, 1.0):
        assert abs(Q(x) * (x - c) + F(c) - F(x)) < 1e-12
    with pytest.raises(ValueError):
        bernprim.difference_quotient(F, 1.0)


def test_degree_bound():
    assert bernprim.required_degree(1.0, 0.2, 0.1) == 2001
    delta = bernprim.lipschitz_delta(1.0, 0.5)
    assert delta == 0.25
    assert bernprim.required_degree(0.5, 0.5, delta) == 65


def test_quadrature():
    r = bernprim.simpson(lambda x: x**3, 1.0, 2)
    assert abs(r.value - 0.25) < 1e-15
    assert r.panels == 2
    m = bernprim.riemann_sum("x", 1.0, 10, "midpoint")
    assert abs(m.value - 0.5) < 1e-15
    with pytest.raises(ValueError):
        bernprim.simpson("x", 1.0, 3)


def test_parser_and_errors():
    e = bernprim.parse("2 + 3*x^2")
    assert e(1.0) == 5.0
    assert str(e) == "2 + 3*x^2"
    assert bernprim.parse(str(e)) == e
    with pytest.raises(bernprim.ParseError, match="byte 3"):
        bernprim.parse("x^^2")
    with pytest.raises(bernprim.EvalError, match="division by zero"):
        bernprim.parse("1/x")(0.0)
    with pytest.raises(bernprim.EvalError, match="probe failed"):
        bernprim.Function(lambda x: math.log(x) if x > 0 else float("nan"))


def test_python_exception_in_callable_surfaces():
    def bad(x):
        raise RuntimeError("boom")

    with pytest.raises(Exception):
        bernprim.bernstein_approximant(bad, 3)


def test_run_cli():
    code, out, err = bernprim.run_cli(["approx", "--expr", "x^2", "--n", "10", "--samples", "5", "--emit", "json"])
    assert code == 0
    assert err == ""
    report = json.loads(out)
    assert report["command"] == "approx"
    assert abs(report["summary"]["max_error"] - 0.025) < 1e-15
    code, _, err = bernprim.run_cli(["approx", "--expr", "x^^2", "--n", "3"])
    assert code == 2
    assert "byte 3" in err
