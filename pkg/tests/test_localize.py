import random
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hasse_dmod import (
    AmbientMismatch,
    LocalizedContext,
    LocalizedFraction,
    Polynomial,
    divide_exact,
    frac_act,
    frac_arith,
    frac_eq,
    frac_scale,
    in_filtration_level,
    make_field,
)
from hasse_dmod.localize import exhaustion_level, filtration_spanning_set
from hasse_dmod.suites import (
    check_divisibility,
    check_mf_containments,
    random_nonzero_poly,
    random_poly,
)

QQ = make_field(0)


def ctx_of(text, n=1, k=QQ):
    return LocalizedContext(Polynomial.parse(text, n, k))


def sym(u: LocalizedFraction):
    n = u.context.n
    xs = sympy.symbols(f"x1:{n + 1}")

    def conv(g):
        return sum(sympy.Rational(c) * sympy.prod([x**e for x, e in zip(xs, m)]) for m, c in g.terms.items())

    return conv(u.num) / conv(u.context.f) ** u.exp, xs


def test_frac_eq_examples():
    c = ctx_of("x1")
    assert frac_eq(c.parse("x1/f^1"), c.parse("1/f^0"))
    assert not frac_eq(c.parse("1/f^1"), c.parse("1/f^2"))
    assert frac_eq(c.parse("0/f^3"), c.parse("0/f^0"))
    assert c.parse("0/f^3").exp == 0
    with pytest.raises(AmbientMismatch):
        frac_eq(c.parse("1/f^1"), ctx_of("x1+1").parse("1/f^1"))


def test_frac_arith_examples():
    c = ctx_of("x1")
    s = frac_arith(c.parse("1/f^1"), c.parse("1/f^2"), "add")
    assert s.exp == 2 and s.num == Polynomial.parse("x1+1", 1, QQ)
    sc = frac_scale(Polynomial.parse("x1", 1, QQ), c.parse("1/f^2"))
    assert sc.exp == 2 and frac_eq(sc, c.parse("1/f^1"))
    u = c.parse("(x1^2+3)/f^2")
    assert not frac_arith(u, u, "sub")


def test_inverse_powers():
    for p in (0, 2, 3, 5):
        c = ctx_of("x1", k=make_field(p))
        u = c.fraction(1, 1)
        assert frac_act(0, 1, u) is u
        for t in range(7):
            got = frac_act(t, 1, u)
            assert got.exp == t + 1
            assert frac_eq(got, c.fraction((-1) ** t, t + 1))
            # independent check: D_t(x * x^-1) = D_t(1) = 0, i.e. x D_t(u) + D_(t-1)(u) = 0
            if t >= 1:
                x = Polynomial.var(1, 1, c.field)
                assert not frac_arith(frac_scale(x, got), frac_act(t - 1, 1, u), "add")


def test_minus_one_over_x_squared():
    c = ctx_of("x1")
    assert frac_eq(frac_act(1, 1, c.fraction(1, 1)), c.parse("-1/f^2"))
    assert frac_eq(frac_act(2, 1, c.fraction(1, 1)), c.parse("1/f^3"))


def test_polynomial_input_collapses_to_poly_action():
    rng = random.Random(3)
    for p in (0, 2, 5):
        k = make_field(p)
        c = ctx_of("x1*x2+1", 2, k)
        for _ in range(20):
            g = random_poly(rng, 2, k)
            t, i = rng.randint(0, 5), rng.randint(1, 2)
            got = frac_act(t, i, c.fraction(g, 0))
            assert frac_eq(got, c.fraction(g.divided_derivative(t, i), 0))


def test_against_rational_function_derivative():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 2)
        f = random_nonzero_poly(rng, n, QQ, 3)
        if f.degree() < 1:
            f = f + Polynomial.var(1, n, QQ)
        c = LocalizedContext(f)
        u = LocalizedFraction(random_poly(rng, n, QQ, 3, 3), rng.randint(0, 2), c)
        t, i = rng.randint(0, 3), rng.randint(1, n)
        expr, xs = sym(u)
        want = sympy.diff(expr, xs[i - 1], t)
        got, _ = sym(frac_act(t, i, u))
        assert sympy.simplify(factorial(t) * got - want) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([0, 2, 3, 5]), st.integers(1, 2))
def test_product_rule_and_clearing(seed, p, n):
    rng = random.Random(seed)
    k = make_field(p)
    f = random_nonzero_poly(rng, n, k, 3)
    if f.degree() < 1:
        f = f + Polynomial.var(1, n, k)
    c = LocalizedContext(f)
    u = LocalizedFraction(random_poly(rng, n, k, 4, 3), rng.randint(0, 3), c)
    g = random_poly(rng, n, k, 3, 3)
    t, i = rng.randint(0, 4), rng.randint(1, n)
    rhs = c.fraction(0)
    for s in range(t + 1):
        rhs = rhs + frac_scale(g.divided_derivative(s, i), frac_act(t - s, i, u))
    assert frac_eq(frac_act(t, i, frac_scale(g, u)), rhs)
    m, j = u.num, u.exp
    cleared = LocalizedFraction(m * c.power(j), j, c)
    assert frac_eq(frac_act(t, i, cleared), c.fraction(m.divided_derivative(t, i)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([0, 2, 5]), st.integers(0, 4), st.integers(0, 4))
def test_module_axiom(seed, p, s, t):
    rng = random.Random(seed)
    k = make_field(p)
    f = random_nonzero_poly(rng, 2, k, 3)
    while f.degree() < 1:
        f = random_nonzero_poly(rng, 2, k, 3)
    c = LocalizedContext(f)
    u = LocalizedFraction(random_poly(rng, 2, k, 3, 3), rng.randint(0, 2), c)
    twice = frac_act(s, 1, frac_act(t, 1, u))
    once = frac_act(s + t, 1, u)
    assert frac_eq(twice, LocalizedFraction(once.num.scale(comb(s + t, s)), once.exp, c))
    assert frac_eq(frac_act(s, 2, frac_act(t, 1, u)), frac_act(t, 1, frac_act(s, 2, u)))


def test_in_filtration_level_examples():
    c = ctx_of("x1*x2+1", 2)
    assert c.d == 2
    assert in_filtration_level(c.parse("x1^3/f^1"), 1)
    assert not in_filtration_level(c.parse("x1^4/f^1"), 1)
    assert in_filtration_level(ctx_of("x1^2+7").parse("1/f^0"), 0)
    # exp above the level: x1*f/f^2 = x1/f sits in M'_1
    assert in_filtration_level(c.parse("x1*(x1*x2+1)/f^2"), 1)
    assert not in_filtration_level(c.parse("x1/f^2"), 1)


@pytest.mark.parametrize("text, n", [("x1", 1), ("x1*x2+1", 2), ("x1^2+x2", 2)])
@pytest.mark.parametrize("p", [0, 2, 5])
def test_divisibility_claim(text, n, p):
    f = Polynomial.parse(text, n, make_field(p))
    assert check_divisibility(f, 5).passed


def test_fs_degree_can_drop_below_ds_minus_s():
    # D_{s,2}((x1^2 + x2)^j) = C(j,s) (x1^2 + x2)^(j-s): f_s is a constant, not of degree s
    f = Polynomial.parse("x1^2+x2", 2, QQ)
    fs = divide_exact((f**3).divided_derivative(1, 2), f**2)
    assert fs == Polynomial.constant(3, 2, QQ)
    assert fs.degree() == 0 < f.degree() * 1 - 1


@pytest.mark.parametrize("text, n, j_max", [("x1", 1, 3), ("x1*x2+1", 2, 3), ("x1^2+x2", 2, 2)])
def test_filtration_containments(text, n, j_max):
    f = Polynomial.parse(text, n, QQ)
    assert check_mf_containments(f, j_max, 3).passed


def test_spanning_set_size():
    c = ctx_of("x1*x2+1", 2)
    assert len(filtration_spanning_set(c, 2)) == comb(2 + 6, 2)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([0, 3]), st.integers(1, 2))
def test_exhaustion(seed, p, n):
    rng = random.Random(seed)
    k = make_field(p)
    f = random_nonzero_poly(rng, n, k, 3)
    while f.degree() < 1:
        f = random_nonzero_poly(rng, n, k, 3)
    c = LocalizedContext(f)
    u = LocalizedFraction(random_poly(rng, n, k, 8, 3), rng.randint(0, 3), c)
    assert in_filtration_level(u, exhaustion_level(u))


def test_fraction_grammar():
    c = ctx_of("x1")
    u = c.parse("(x1+1)/f^2")
    assert c.parse(str(u)).num == u.num and c.parse(str(u)).exp == 2
    assert c.parse("x1^2").exp == 0
