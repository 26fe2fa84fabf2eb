"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test records one PASS/FAIL line, printed in the terminal summary
(and to stdout when this file is run as a script).
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import factorial

import pytest
import sympy

from hasse_dmod import (
    BudgetExceeded,
    DimensionSeries,
    FieldError,
    FractionSpace,
    LocalizedContext,
    Polynomial,
    check_lower_bound,
    cyclic_filtration_dims,
    degree_filtration_dims,
    holonomy_constant,
    length_bound,
    make_field,
    mf_filtration_dims,
    multiplicity_series,
)
from hasse_dmod.cli import dim_growth_report, main
from hasse_dmod.filtration import chain_respects_bound, failed_levels
from hasse_dmod.poly import divide_exact
from hasse_dmod.suites import (
    check_homomorphism,
    check_localization,
    check_mf_containments,
    check_socle,
    check_socle_containments,
    inverse_power_identity,
    random_poly,
    witness_generators,
)

QQ, F2, F3, F5 = (make_field(p) for p in (0, 2, 3, 5))


@contextmanager
def criterion(log, number, title, limit):
    notes = []
    start = time.perf_counter()
    ok = False
    try:
        yield notes
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        detail = "; ".join(notes)
        log.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s / {limit}s){': ' + detail if detail else ''}")
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def _require(results, notes):
    bad = [r for r in results if not r.passed]
    notes.append(", ".join(f"{r.name}: {r.cases - len(r.failures)}/{r.cases}" for r in results))
    assert not bad, "\n".join(f"{r.name}: {r.failures[:3]}" for r in bad)


def test_criterion_01_relations(acceptance_log):
    with criterion(acceptance_log, 1, "homomorphism and product formula, 1000 triples per field", 60) as notes:
        results = []
        for k in (QQ, F2, F3, F5):
            results += check_homomorphism(random.Random(f"acc1:{k}"), k, 1000, max_n=3)
        _require(results, notes)


def _to_sympy(g: Polynomial, xs):
    return sum(
        (sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * sympy.prod([x**e for x, e in zip(xs, a)])
         for a, c in g.terms.items()),
        sympy.Integer(0),
    )


def test_criterion_02_divided_derivative(acceptance_log):
    with criterion(acceptance_log, 2, "t! D_(t,i) g equals the t-fold derivative, 500 cases", 10) as notes:
        rng = random.Random("acc2")
        wrong = 0
        for _ in range(500):
            n = rng.randint(1, 3)
            xs = sympy.symbols(f"x1:{n + 1}")
            g = random_poly(rng, n, QQ)
            t, i = rng.randint(0, 5), rng.randint(1, n)
            want = sympy.diff(_to_sympy(g, xs), xs[i - 1], t)
            got = _to_sympy(g.divided_derivative(t, i).scale(factorial(t)), xs)
            wrong += sympy.expand(got - want) != 0
        notes.append(f"{500 - wrong}/500 agree")
        assert wrong == 0


def test_criterion_03_socle_table(acceptance_log):
    with criterion(acceptance_log, 3, "x_i^w D_(t,i) mod Dm table, w, t <= 5", 5) as notes:
        _require([check_socle_containments(k, 5) for k in (QQ, F2, F5)], notes)


def test_criterion_04_socle_multiplier(acceptance_log):
    with criterion(acceptance_log, 4, "socle multiplier on 500 random quotient elements", 30) as notes:
        _require([check_socle(random.Random(f"acc4:{k}"), k, 500, 2) for k in (QQ, F2, F5)], notes)


def test_criterion_05_lower_bound(acceptance_log):
    with criterion(acceptance_log, 5, "dim F_i z >= C(n+i, i) for the witnesses, i <= 6", 300) as notes:
        bad = []
        for k in (QQ, F5):
            for n in (1, 2):
                for label, z, space in witness_generators(n, k):
                    s = cyclic_filtration_dims(z, space(6), 6, generator=label)
                    fails = failed_levels(check_lower_bound(s))
                    if fails:
                        bad.append(f"{k} n={n} {label}: {s.dims} at {fails}")
                    if n == 1 and "R_x1" in label:
                        if s.dims != tuple(2 * i + 1 for i in range(7)):
                            bad.append(f"{k}: R_x1 series {s.dims}")
                        notes.append(f"{k} R_x1 dims {s.dims}")
        assert not bad, bad


def test_criterion_06_localization(acceptance_log):
    with criterion(acceptance_log, 6, "quotient-rule action on R_f, 300 cases per field", 60) as notes:
        results = []
        for k in (QQ, F2, F5):
            results.append(inverse_power_identity(k, 6))
            results += check_localization(random.Random(f"acc6:{k}"), k, 300, max_n=2)[1:]
        _require(results, notes)


def _divisibility_with_exact_degree(f: Polynomial, j_max: int = 4):
    """Failures of D_(s,i)(f^j) = f^(j-s) f_s with deg f_s = ds - s (f_s != 0)."""
    d, out = f.degree(), []
    for j in range(1, j_max + 1):
        for s in range(1, j + 1):
            for i in range(1, f.n + 1):
                try:
                    fs = divide_exact((f**j).divided_derivative(s, i), f ** (j - s))
                except ArithmeticError:
                    out.append(f"j={j} s={s} i={i}: not divisible")
                    continue
                if fs and fs.degree() != d * s - s:
                    out.append(f"f={f} j={j} s={s} i={i}: deg f_s={fs.degree()}, ds-s={d * s - s}")
    return out


def test_criterion_07_mf_filtration(acceptance_log):
    with criterion(acceptance_log, 7, "M'_j containments, divisibility with deg f_s = ds-s, C' <= C(d+1)^n", 180) as notes:
        problems = []
        for text, n in (("x1", 1), ("x1*x2+1", 2), ("x1^2+x2", 2)):
            f = Polynomial.parse(text, n, QQ)
            cont = check_mf_containments(f, 3, 3)
            if not cont.passed:
                problems.append(f"containment {cont.failures[:2]}")
            deg_fail = _divisibility_with_exact_degree(f)
            problems += deg_fail
            ctx = LocalizedContext(f)
            top = 3 if n == 1 else 2
            Cp = holonomy_constant(mf_filtration_dims(ctx, top))
            C = holonomy_constant(degree_filtration_dims(n, QQ, top * (ctx.d + 1)))
            if Cp > C * (ctx.d + 1) ** n:
                problems.append(f"f={text}: C'={Cp} > {C}*{(ctx.d + 1) ** n}")
            notes.append(f"{text}: containments {cont.cases} ok={cont.passed}, "
                         f"deg mismatches {len(deg_fail)}, C'={Cp} <= {C * (ctx.d + 1) ** n}")
        if problems:
            notes.append("first mismatch " + problems[0])
        assert not problems, problems


def test_criterion_08_length_bound(acceptance_log):
    with criterion(acceptance_log, 8, "holonomy constants and length bounds for R and R_x1", 1) as notes:
        ctx = LocalizedContext(Polynomial.parse("x1", 1, QQ))
        C_rx = holonomy_constant(mf_filtration_dims(ctx, 6))
        C_r = holonomy_constant(degree_filtration_dims(1, QQ, 6))
        assert (C_rx, length_bound(C_rx, 1)) == (3, 3)
        assert (C_r, length_bound(C_r, 1)) == (2, 2)
        # 0 < R < R_x1 has length 2, 0 < R has length 1
        assert chain_respects_bound(2, C_rx, 1) and chain_respects_bound(1, C_r, 1)
        notes.append(f"R_x1: C={C_rx}, bound {length_bound(C_rx, 1)}; R: C={C_r}, bound {length_bound(C_r, 1)}")


def test_criterion_09_multiplicity(acceptance_log):
    with criterion(acceptance_log, 9, "multiplicity series and byte-identical CSV", 1) as notes:
        ctx = LocalizedContext(Polynomial.parse("x1", 1, QQ))
        m_rx = multiplicity_series(mf_filtration_dims(ctx, 6))
        m_r = multiplicity_series(degree_filtration_dims(1, QQ, 6))
        assert m_rx == [Fraction(2 * i + 1, i) for i in range(1, 7)]
        assert m_rx[:4] == [3, Fraction(5, 2), Fraction(7, 3), Fraction(9, 4)]
        assert m_r == [Fraction(i + 1, i) for i in range(1, 7)]
        first = dim_growth_report(1, 0, "x1", 6).to_csv()
        assert first == dim_growth_report(1, 0, "x1", 6).to_csv()
        notes.append("R_x1: " + ", ".join(map(str, m_rx[:4])) + "; R: " + ", ".join(map(str, m_r[:3])))


def test_criterion_10_negative_controls(acceptance_log, capsys):
    with criterion(acceptance_log, 10, "non-prime characteristic, corrupted series, budget overrun", 60) as notes:
        for p in (4, 6, 9, 1, -3):
            with pytest.raises(FieldError):
                make_field(p)
        assert main(["calc", "x1", "--char", "4"]) == 2
        bad = failed_levels(check_lower_bound(DimensionSeries(1, (1, 1, 1, 1, 1))))
        assert bad == [1, 2, 3, 4]
        capsys.readouterr()
        assert main(["verify", "--suite", "bounds", "--corrupt-series"]) == 1
        assert "fail at level(s) [1, 2, 3, 4]" in capsys.readouterr().out
        ctx = LocalizedContext(Polynomial.parse("x1", 1, QQ))
        with pytest.raises(BudgetExceeded):
            cyclic_filtration_dims(ctx.fraction(1, 1), FractionSpace(ctx, 2), 10**6)
        with pytest.raises(BudgetExceeded):
            mf_filtration_dims(ctx, 10**6)
        assert main(["dim-growth", "--f", "x1", "--i-max", "1000000"]) == 2
        out = capsys.readouterr()
        assert out.out == "" and "budget" in out.err
        notes.append(f"corrupted series fails at levels {bad}; budget error leaves stdout empty")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
