"""Divided-power differential operators on k[x1..xn], the D-modules R_f and D/Dm,
and exact filtration-dimension tools for the holonomic bounds."""

from .field import QQ, FieldError, FieldSpec, binom_in_k, lucas_binomial, make_field
from .filtration import (
    AmbientError,
    BudgetExceeded,
    DimensionSeries,
    FiltrationReport,
    FractionSpace,
    PolynomialSpace,
    QuotientSpace,
    RowEchelon,
    build_report,
    check_lower_bound,
    cyclic_filtration_dims,
    degree_filtration_dims,
    holonomy_constant,
    length_bound,
    mf_filtration_dims,
    multiplicity_series,
    span_dim,
)
from .grammar import ParseError, parse_fraction, parse_operator, parse_polynomial
from .localize import (
    LocalizedContext,
    LocalizedFraction,
    frac_act,
    frac_apply,
    frac_arith,
    frac_eq,
    frac_scale,
    in_filtration_level,
)
from .poly import (
    AmbientMismatch,
    NotDivisible,
    Polynomial,
    apply_divided_derivative,
    degree,
    divide_exact,
    poly_arith,
)
from .quotient import (
    QuotientElem,
    RationalPoint,
    annihilator_power,
    left_act,
    reduce_mod_Dm,
    socle_multiplier,
)
from .weyl import (
    DiffOp,
    bernstein_degree,
    enumerate_filtration_basis,
    op_apply,
    op_mul,
    right_normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientError",
    "AmbientMismatch",
    "annihilator_power",
    "apply_divided_derivative",
    "bernstein_degree",
    "binom_in_k",
    "BudgetExceeded",
    "build_report",
    "check_lower_bound",
    "cyclic_filtration_dims",
    "degree",
    "degree_filtration_dims",
    "DiffOp",
    "DimensionSeries",
    "divide_exact",
    "enumerate_filtration_basis",
    "FieldError",
    "FieldSpec",
    "FiltrationReport",
    "frac_act",
    "frac_apply",
    "frac_arith",
    "frac_eq",
    "frac_scale",
    "FractionSpace",
    "holonomy_constant",
    "in_filtration_level",
    "left_act",
    "length_bound",
    "LocalizedContext",
    "LocalizedFraction",
    "lucas_binomial",
    "make_field",
    "mf_filtration_dims",
    "multiplicity_series",
    "NotDivisible",
    "op_apply",
    "op_mul",
    "parse_fraction",
    "parse_operator",
    "parse_polynomial",
    "ParseError",
    "poly_arith",
    "Polynomial",
    "PolynomialSpace",
    "QQ",
    "QuotientElem",
    "QuotientSpace",
    "RationalPoint",
    "reduce_mod_Dm",
    "right_normal_form",
    "RowEchelon",
    "socle_multiplier",
    "span_dim",
]
