"""Seeded property suites: random generators and the invariant checks behind ``verify``.

Each check returns a :class:`CheckResult`; a suite is a list of them.  Given
the same seed, field and sizes, a suite is fully deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .field import FieldSpec
from .filtration import (
    FractionSpace,
    PolynomialSpace,
    QuotientSpace,
    DimensionSeries,
    check_lower_bound,
    cyclic_filtration_dims,
    degree_filtration_dims,
    failed_levels,
    holonomy_constant,
    mf_filtration_dims,
    span_dim,
)
from .localize import (
    LocalizedContext,
    LocalizedFraction,
    exhaustion_level,
    frac_act,
    frac_eq,
    frac_scale,
    filtration_spanning_set,
    in_filtration_level,
)
from .poly import Polynomial, divide_exact
from .quotient import QuotientElem, RationalPoint, left_act, reduce_mod_Dm, socle_multiplier
from .weyl import DiffOp, from_right_normal_form, op_apply, op_mul, right_normal_form


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str):
        self.cases += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(detail)
        elif not ok:
            self.failures.append("...")

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: {self.cases} cases"
        if self.failures:
            out += f", {len(self.failures)} failures; first: {self.failures[0]}"
        return out


# -- random data ------------------------------------------------------------------


def random_scalar(rng: random.Random, k: FieldSpec):
    if k.characteristic:
        return rng.randrange(k.characteristic)
    if rng.random() < 0.2:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return rng.randint(-9, 9)


def random_exponents(rng: random.Random, slots: int, max_deg: int) -> tuple[int, ...]:
    deg = rng.randint(0, max_deg)
    e = [0] * slots
    for _ in range(deg):
        e[rng.randrange(slots)] += 1
    return tuple(e)


def random_poly(rng, n: int, k: FieldSpec, max_deg: int = 5, max_terms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_exponents(rng, n, max_deg)] = random_scalar(rng, k)
    return Polynomial(n, k, terms)


def random_op(rng, n: int, k: FieldSpec, max_bdeg: int = 4, max_terms: int = 3) -> DiffOp:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = random_exponents(rng, 2 * n, max_bdeg)
        terms[(e[:n], e[n:])] = random_scalar(rng, k)
    return DiffOp(n, k, terms)


def random_quotient_elem(rng, n: int, k: FieldSpec, max_entry: int = 4, max_terms: int = 4) -> QuotientElem:
    while True:
        terms = {
            tuple(rng.randint(0, max_entry) for _ in range(n)): random_scalar(rng, k)
            for _ in range(rng.randint(1, max_terms))
        }
        z = QuotientElem(n, k, terms)
        if z:
            return z


def random_nonzero_poly(rng, n, k, max_deg, max_terms=3) -> Polynomial:
    while True:
        g = random_poly(rng, n, k, max_deg, max_terms)
        if g:
            return g


# -- individual properties ------------------------------------------------------------


def product_formula_op(t: int, i: int, f: Polynomial) -> DiffOp:
    """sum_s D_{s,i}(f) * D_{t-s,i} as an operator."""
    n, k = f.n, f.field
    total = DiffOp.zero(n, k)
    for s in range(t + 1):
        total = total + op_mul(DiffOp.from_poly(f.divided_derivative(s, i)), DiffOp.D(t - s, i, n, k))
    return total


def check_homomorphism(rng, k, cases, max_n=3) -> list[CheckResult]:
    hom = CheckResult(f"op_apply(A*B, g) == A(B(g)) over {k}")
    prod = CheckResult(f"D_t * f == sum_s D_s(f) D_(t-s) over {k}")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        A = random_op(rng, n, k)
        B = random_op(rng, n, k)
        g = random_poly(rng, n, k)
        lhs = op_apply(op_mul(A, B), g)
        rhs = op_apply(A, op_apply(B, g))
        hom.record(lhs == rhs, f"A={A}, B={B}, g={g}")
        f = random_poly(rng, n, k)
        t = rng.randint(0, 5)
        i = rng.randint(1, n)
        prod.record(
            op_mul(DiffOp.D(t, i, n, k), DiffOp.from_poly(f)) == product_formula_op(t, i, f),
            f"t={t}, i={i}, f={f}",
        )
    return [hom, prod]


def check_relations(rng, k, cases, max_n=3) -> list[CheckResult]:
    out = check_homomorphism(rng, k, cases, max_n)
    assoc = CheckResult(f"(AB)C == A(BC) over {k}")
    submul = CheckResult(f"bernstein degree is submultiplicative over {k}")
    rnf = CheckResult(f"right normal form round trip over {k}")
    leib = CheckResult(f"product rule on R over {k}")
    compo = CheckResult(f"D_s D_t == C(s+t,s) D_(s+t) on R over {k}")
    for _ in range(max(1, cases // 4)):
        n = rng.randint(1, max_n)
        A, B, C = (random_op(rng, n, k, 3, 2) for _ in range(3))
        assoc.record(op_mul(op_mul(A, B), C) == op_mul(A, op_mul(B, C)), f"{A} | {B} | {C}")
        AB = op_mul(A, B)
        if A and B and AB:
            submul.record(
                AB.bernstein_degree() <= A.bernstein_degree() + B.bernstein_degree(), f"{A} | {B}"
            )
        rnf.record(from_right_normal_form(right_normal_form(A), n, k) == A, f"{A}")
        f, g = random_poly(rng, n, k, 5, 3), random_poly(rng, n, k, 5, 3)
        t, s, i = rng.randint(0, 5), rng.randint(0, 5), rng.randint(1, n)
        rhs = Polynomial.zero(n, k)
        for r in range(t + 1):
            rhs = rhs + f.divided_derivative(r, i) * g.divided_derivative(t - r, i)
        leib.record((f * g).divided_derivative(t, i) == rhs, f"t={t}, f={f}, g={g}")
        compo.record(
            g.divided_derivative(t, i).divided_derivative(s, i)
            == g.divided_derivative(s + t, i).scale(comb(s + t, s)),
            f"s={s}, t={t}, g={g}",
        )
    return out + [assoc, submul, rnf, leib, compo]


def inverse_power_identity(k: FieldSpec, t_max: int = 6) -> CheckResult:
    res = CheckResult(f"D_(t,1)(1/x1) == (-1)^t / x1^(t+1) over {k}")
    ctx = LocalizedContext(Polynomial.var(1, 1, k))
    u = ctx.fraction(1, 1)
    for t in range(t_max + 1):
        got = frac_act(t, 1, u)
        want = ctx.fraction((-1) ** t, t + 1)
        res.record(frac_eq(got, want), f"t={t}: got {got}")
    return res


def check_localization(rng, k, cases, max_n=2) -> list[CheckResult]:
    prod = CheckResult(f"product rule on R_f over {k}")
    clear = CheckResult(f"D_t(f^j * m/f^j) == D_t(m) over {k}")
    axiom = CheckResult(f"module axiom for D_s D_t on R_f over {k}")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        f = random_nonzero_poly(rng, n, k, 3)
        if f.degree() < 1:
            f = f + Polynomial.var(1, n, k)
        ctx = LocalizedContext(f)
        u = LocalizedFraction(random_poly(rng, n, k, 4, 3), rng.randint(0, 3), ctx)
        g = random_poly(rng, n, k, 3, 3)
        t, i = rng.randint(0, 4), rng.randint(1, n)
        lhs = frac_act(t, i, frac_scale(g, u))
        rhs = ctx.fraction(0)
        for s in range(t + 1):
            rhs = rhs + frac_scale(g.divided_derivative(s, i), frac_act(t - s, i, u))
        prod.record(frac_eq(lhs, rhs), f"f={f}, u={u}, g={g}, t={t}, i={i}")

        j = u.exp
        m = u.num
        cleared = LocalizedFraction(m * ctx.power(j), j, ctx)
        clear.record(
            frac_eq(frac_act(t, i, cleared), ctx.fraction(m.divided_derivative(t, i))),
            f"f={f}, m={m}, j={j}, t={t}",
        )

        s = rng.randint(0, 3)
        twice = frac_act(s, i, frac_act(t, i, u))
        once = frac_act(s + t, i, u)
        ok = frac_eq(twice, LocalizedFraction(once.num.scale(comb(s + t, s)), once.exp, ctx))
        if n > 1:
            i2 = 1 + (i % n)
            ok = ok and frac_eq(frac_act(s, i2, frac_act(t, i, u)), frac_act(t, i, frac_act(s, i2, u)))
        axiom.record(ok, f"f={f}, u={u}, s={s}, t={t}")
    return [inverse_power_identity(k), prod, clear, axiom]


def check_divisibility(f: Polynomial, j_max: int = 4) -> CheckResult:
    """D_{s,i}(f^j) = f^(j-s) f_s with deg f_s <= ds - s, all 1 <= s <= j."""
    res = CheckResult(f"f^(j-s) divides D_s(f^j), deg f_s <= ds-s, f = {f}")
    d = f.degree()
    for j in range(1, j_max + 1):
        fj = f**j
        for s in range(1, j + 1):
            for i in range(1, f.n + 1):
                try:
                    fs = divide_exact(fj.divided_derivative(s, i), f ** (j - s))
                except ArithmeticError:
                    res.record(False, f"j={j}, s={s}, i={i}: not divisible")
                    continue
                # deg D_s(f^j) <= dj - s; equality can fail (f = x1^2 + x2, i = 2)
                res.record(
                    (not fs) or fs.degree() <= d * s - s,
                    f"j={j}, s={s}, i={i}: deg f_s = {fs.degree()} vs {d * s - s}",
                )
    return res


def check_mf_containments(f: Polynomial, j_max: int = 3, t_max: int = 3) -> CheckResult:
    """x_u M'_j in M'_(j+1) and D_(t,u) M'_j in M'_(j+t) on spanning sets."""
    res = CheckResult(f"M'_j containments for f = {f}")
    ctx = LocalizedContext(f)
    n = f.n
    for j in range(j_max + 1):
        for u in filtration_spanning_set(ctx, j):
            res.record(in_filtration_level(u, j), f"{u} not in M'_{j}")
            for v in range(1, n + 1):
                xu = frac_scale(Polynomial.var(v, n, f.field), u)
                res.record(in_filtration_level(xu, j + 1), f"x{v}*{u} not in M'_{j + 1}")
                for t in range(1, t_max + 1):
                    w = frac_act(t, v, u)
                    res.record(in_filtration_level(w, j + t), f"D_({t},{v}) {u} not in M'_{j + t}")
    return res


def check_exhaustion(rng, k, cases, max_n=2) -> CheckResult:
    res = CheckResult(f"every m/f^w lies in M'_(v+w) over {k}")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        f = random_nonzero_poly(rng, n, k, 3)
        if f.degree() < 1:
            f = f + Polynomial.var(1, n, k)
        ctx = LocalizedContext(f)
        u = LocalizedFraction(random_poly(rng, n, k, 7, 3), rng.randint(0, 3), ctx)
        lvl = exhaustion_level(u)
        res.record(in_filtration_level(u, lvl), f"f={f}, u={u}, level {lvl}")
    return res


def check_quotient(rng, k, cases, max_n=2) -> list[CheckResult]:
    ann = CheckResult(f"x_i^(t_i+1) kills Dbar^t over {k}")
    for n in range(1, min(max_n, 3) + 1):
        pt = RationalPoint.origin(n, k)
        top = 4 if n < 3 else 2
        for t in _boxes(n, top):
            z = QuotientElem.basis(t, k)
            for i in range(1, n + 1):
                ann.record(not left_act(DiffOp.x(i, n, k, t[i - 1] + 1), z, pt), f"t={t}, i={i}")
    soc = check_socle(rng, k, cases, max_n)
    cor = check_socle_containments(k)
    trans = CheckResult(f"reduce_mod_Dm is translation invariant over {k}")
    for _ in range(max(1, cases // 5)):
        n = rng.randint(1, max_n)
        A = random_op(rng, n, k, 4, 3)
        c = tuple(random_scalar(rng, k) for _ in range(n))
        pt = RationalPoint(c, k)
        trans.record(
            reduce_mod_Dm(A, pt) == reduce_mod_Dm(A.translate(c), RationalPoint.origin(n, k)),
            f"A={A}, c={c}",
        )
    return [ann, soc, cor, trans, check_independence(k)]


def _boxes(n, top):
    if n == 0:
        yield ()
        return
    for rest in _boxes(n - 1, top):
        for a in range(top + 1):
            yield rest + (a,)


def check_socle(rng, k, cases, max_n=2) -> CheckResult:
    res = CheckResult(f"x^t z == lambda * 1bar, lambda != 0 over {k}")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        z = random_quotient_elem(rng, n, k)
        pt = RationalPoint.origin(n, k)
        try:
            t, lam = socle_multiplier(z)
        except RuntimeError as exc:
            res.record(False, str(exc))
            continue
        img = left_act(DiffOp.monomial(t, (0,) * n, k), z, pt)
        res.record(lam != 0 and img == QuotientElem.one(n, k).scale(lam), f"z={z}")
    return res


def check_socle_containments(k: FieldSpec, top: int = 5) -> CheckResult:
    """x_i^w D_(t,i) reduces to 0 for w > t and to (-1)^t for w == t."""
    res = CheckResult(f"x^w D_t mod Dm table (w, t <= {top}) over {k}")
    for n in (1, 2):
        pt = RationalPoint.origin(n, k)
        for i in range(1, n + 1):
            for t in range(top + 1):
                for w in range(t, top + 1):
                    A = op_mul(DiffOp.x(i, n, k, w), DiffOp.D(t, i, n, k))
                    got = reduce_mod_Dm(A, pt)
                    want = QuotientElem.one(n, k).scale((-1) ** t) if w == t else QuotientElem(n, k)
                    res.record(got == want, f"n={n}, i={i}, w={w}, t={t}: {got}")
    return res


def check_independence(k: FieldSpec, t_max: int = 8) -> CheckResult:
    res = CheckResult(f"D_(t,1)(1/x1), t <= {t_max}, are independent over {k}")
    ctx = LocalizedContext(Polynomial.var(1, 1, k))
    z = ctx.fraction(1, 1)
    vecs = [frac_act(t, 1, z) for t in range(t_max + 1)]
    r = span_dim(vecs, FractionSpace(ctx, 1 + t_max))
    res.record(r == t_max + 1, f"rank {r}")
    return res


def witness_generators(n: int, k: FieldSpec):
    """(label, element, space factory) for generators with prime annihilator in R."""
    out = [("1 in R", Polynomial.one(n, k), lambda i_max: PolynomialSpace(n, k))]
    ctx1 = LocalizedContext(Polynomial.var(1, n, k))
    out.append(("1/x1 in R_x1", ctx1.fraction(1, 1), lambda i_max, c=ctx1: FractionSpace(c, 1 + i_max)))
    if n >= 2:
        f = Polynomial.var(1, n, k) * Polynomial.var(2, n, k) + 1
        ctx2 = LocalizedContext(f)
        out.append(
            ("1/(x1*x2+1) in R_f", ctx2.fraction(1, 1), lambda i_max, c=ctx2: FractionSpace(c, 1 + i_max))
        )
    pt = RationalPoint.origin(n, k)
    out.append(("1bar in D/Dm", QuotientElem.one(n, k), lambda i_max: QuotientSpace(pt)))
    return out


def check_bounds(k: FieldSpec, max_n: int = 2, i_max: int = 4, corrupt: bool = False) -> list[CheckResult]:
    lower = CheckResult(f"dim F_i z >= C(n+i, i) over {k}")
    mono = CheckResult(f"dimension series are non-decreasing over {k}")
    for n in range(1, max_n + 1):
        for label, z, space in witness_generators(n, k):
            series = cyclic_filtration_dims(z, space(i_max), i_max, generator=label)
            dims = series.dims
            if corrupt:
                # negative-control hook: a series that stalls at 1
                series = DimensionSeries(n, (1,) * len(dims), series.field, "corrupted", label)
            bad = failed_levels(check_lower_bound(series))
            lower.record(not bad, f"n={n}, {label}: dims {series.dims} fail at level(s) {bad}")
            mono.record(all(a <= b for a, b in zip(dims, dims[1:])), f"{label}: {dims}")
    const = CheckResult(f"C' <= C (d+1)^n for M'_i over {k}")
    agree = CheckResult(f"dim M'_i closed form equals rank over {k}")
    for text, n in (("x1", 1), ("x1*x2+1", 2), ("x1^2+x2", 2)):
        if n > max_n:
            continue
        f = Polynomial.parse(text, n, k)
        ctx = LocalizedContext(f)
        try:
            ser = mf_filtration_dims(ctx, 2 if n > 1 else 4)
            agree.record(True, "")
        except AssertionError as exc:
            agree.record(False, str(exc))
            continue
        top = len(ser.dims) - 1
        base = degree_filtration_dims(n, k, top * (ctx.d + 1))
        Cp = holonomy_constant(ser)
        C = holonomy_constant(base)
        const.record(Cp <= C * (ctx.d + 1) ** n, f"f={f}: C'={Cp}, C={C}")
    return [lower, mono, agree, const]


SUITES = ("relations", "localization", "quotient", "bounds")


def run_suite(
    name: str, k: FieldSpec, seed: int = 0, n: int = 2, cases: int = 100, corrupt: bool = False
) -> list[CheckResult]:
    rng = random.Random(f"{name}:{seed}:{k.characteristic}:{n}")
    if name == "relations":
        return check_relations(rng, k, cases, max_n=n)
    if name == "localization":
        out = check_localization(rng, k, cases, max_n=min(n, 2))
        for text, m in (("x1", 1), ("x1*x2+1", 2), ("x1^2+x2", 2)):
            if m <= n:
                f = Polynomial.parse(text, m, k)
                out.append(check_divisibility(f))
                out.append(check_mf_containments(f, 3 if m == 1 else 2, 3))
        out.append(check_exhaustion(rng, k, cases, max_n=min(n, 2)))
        return out
    if name == "quotient":
        return check_quotient(rng, k, cases, max_n=n)
    if name == "bounds":
        return check_bounds(k, max_n=min(n, 2), corrupt=corrupt)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
