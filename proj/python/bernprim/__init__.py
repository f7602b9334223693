"""Bernstein approximants of functions on [0,1] and their primitives."""

from ._core import (
    EvalError,
    Expr,
    Function,
    ParseError,
    Poly,
    QuadratureResult,
    SupNormEstimate,
    basis,
    basis_all,
    basis_derivative,
    bernstein_approximant,
    binomial,
    difference_quotient,
    lipschitz_delta,
    log_binomial,
    moment_sum,
    parse,
    primitive_approximant,
    required_degree,
    riemann_sum,
    run_cli,
    simpson,
    sup_norm_distance,
)

__all__ = [
    "EvalError",
    "Expr",
    "Function",
    "ParseError",
    "Poly",
    "QuadratureResult",
    "SupNormEstimate",
    "basis",
    "basis_all",
    "basis_derivative",
    "bernstein_approximant",
    "binomial",
    "difference_quotient",
    "lipschitz_delta",
    "log_binomial",
    "moment_sum",
    "parse",
    "primitive_approximant",
    "required_degree",
    "riemann_sum",
    "run_cli",
    "simpson",
    "sup_norm_distance",
]
