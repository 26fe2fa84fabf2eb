import random
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hasse_dmod import (
    AmbientMismatch,
    NotDivisible,
    Polynomial,
    apply_divided_derivative,
    degree,
    divide_exact,
    make_field,
    poly_arith,
)
from hasse_dmod.suites import random_nonzero_poly, random_poly

QQ, F2, F5 = make_field(0), make_field(2), make_field(5)


def P(text, n=1, k=QQ):
    return Polynomial.parse(text, n, k)


def to_sympy(g: Polynomial):
    xs = sympy.symbols(f"x1:{g.n + 1}")
    return sum(sympy.Rational(c) * sympy.prod([x**e for x, e in zip(xs, m)]) for m, c in g.terms.items()), xs


def test_arith_examples():
    assert poly_arith(P("x1+1"), P("x1-1"), "mul") == P("x1^2-1")
    assert P("x1+1", k=F2) ** 2 == P("x1^2+1", k=F2)
    f = P("3*x1^2 - 1/2")
    assert poly_arith(f, Polynomial.zero(1, QQ), "add") == f
    assert f - f == Polynomial.zero(1, QQ)
    with pytest.raises(AmbientMismatch):
        poly_arith(P("x1"), P("x1", 2), "add")
    with pytest.raises(AmbientMismatch):
        P("x1") + P("x1", k=F5)


def test_no_zero_coefficients_stored():
    g = Polynomial(2, F5, {(1, 0): 5, (0, 1): 3})
    assert g.terms == {(0, 1): 3}


def test_divided_derivative_examples():
    assert apply_divided_derivative(2, 1, P("x1^5")) == P("10*x1^3")
    assert apply_divided_derivative(2, 1, P("x1^5", k=F5)).is_zero()
    g = P("x1^3*x2 + 7", 2)
    assert apply_divided_derivative(0, 2, g) == g
    assert apply_divided_derivative(1, 2, P("x1^3", 2)).is_zero()
    with pytest.raises(IndexError):
        apply_divided_derivative(1, 3, g)


def test_degree():
    assert degree(P("x1*x2+1", 2)) == 2
    assert degree(Polynomial.zero(2, QQ)) == -1
    assert degree(P("7")) == 0


def test_divide_exact_examples():
    assert divide_exact(P("x1^2-1"), P("x1-1")) == P("x1+1")
    with pytest.raises(NotDivisible):
        divide_exact(P("x1^2+1"), P("x1"))
    with pytest.raises(ZeroDivisionError):
        divide_exact(P("x1"), Polynomial.zero(1, QQ))
    f = P("x1*x2+1", 2)
    g = (f**3).divided_derivative(1, 1)
    # chain rule oracle, expanded independently by sympy
    e, xs = to_sympy(f**3)
    assert sympy.expand(sympy.diff(e, xs[0]) - to_sympy(g)[0]) == 0
    assert divide_exact(g, f**2) == P("3*x2", 2)


def _formal_derivative_oracle(g: Polynomial, t: int, i: int):
    e, xs = to_sympy(g)
    return sympy.expand(sympy.diff(e, xs[i - 1], t))


def test_divided_derivative_against_formal_derivative():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 3)
        g = random_poly(rng, n, QQ, 6, 4)
        t, i = rng.randint(0, 5), rng.randint(1, n)
        lhs = to_sympy(g.divided_derivative(t, i).scale(factorial(t)))[0]
        assert sympy.expand(lhs - _formal_derivative_oracle(g, t, i)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 3), st.sampled_from([0, 2, 5]), st.integers(0, 5))
def test_product_rule(seed, n, p, t):
    rng = random.Random(seed)
    k = make_field(p)
    f, g = random_poly(rng, n, k), random_poly(rng, n, k)
    i = rng.randint(1, n)
    rhs = Polynomial.zero(n, k)
    for s in range(t + 1):
        rhs = rhs + f.divided_derivative(s, i) * g.divided_derivative(t - s, i)
    assert (f * g).divided_derivative(t, i) == rhs


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([0, 2, 3, 5]), st.integers(0, 5), st.integers(0, 5))
def test_composition_of_divided_powers(seed, p, s, t):
    from math import comb

    rng = random.Random(seed)
    k = make_field(p)
    g = random_poly(rng, 2, k, 8, 4)
    assert g.divided_derivative(t, 1).divided_derivative(s, 1) == g.divided_derivative(s + t, 1).scale(comb(s + t, s))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([0, 2, 5]), st.integers(1, 3))
def test_divide_round_trip(seed, p, n):
    rng = random.Random(seed)
    k = make_field(p)
    q = random_poly(rng, n, k, 4, 3)
    f = random_nonzero_poly(rng, n, k, 3)
    assert divide_exact(q * f, f) == q


@pytest.mark.parametrize(
    "text, n",
    [("3*x1^2*x2 - 1/2", 2), ("x1*x2 + 1", 2), ("-x1^3 + 2*x1 - 7", 1), ("0", 3)],
)
def test_grammar_round_trip(text, n):
    g = Polynomial.parse(text, n, QQ)
    assert Polynomial.parse(str(g), n, QQ) == g


def test_grammar_whitespace_insensitive():
    assert Polynomial.parse(" 3 * x1 ^ 2 *x2-1/ 2 ", 2, QQ) == Polynomial.parse("3*x1^2*x2 - 1/2", 2, QQ)


def test_translate_and_evaluate():
    g = P("x1^2*x2 + 3", 2)
    moved = g.translate((1, -2))
    assert moved == P("(x1+1)^2*(x2-2) + 3", 2)
    assert moved.evaluate((0, 0)) == g.evaluate((1, -2)) == 1
