"""Filtration dimensions: exact ranks, growth series and the holonomic bounds.

Everything here is exact.  Ranks come from sparse row reduction over k
(fraction-free with content removal over Q, plain elimination over F_p).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence

from .field import FieldSpec
from .localize import (
    LocalizedContext,
    LocalizedFraction,
    frac_apply,
    monomials_of_degree,
)
from .poly import NotDivisible, Polynomial, divide_exact
from .quotient import QuotientElem, RationalPoint, left_act
from .weyl import DiffOp, _exact_degree_monomials, op_apply

MAX_OPERATORS = 5000


class BudgetExceeded(RuntimeError):
    """The requested computation is larger than the configured hard cap."""


class AmbientError(ValueError):
    """An element does not embed in the chosen coordinate space."""


# -- exact rank ----------------------------------------------------------------


class RowEchelon:
    """Incremental exact row reduction; ``add`` reports whether the rank grew.

    Column keys are arbitrary hashables; they are numbered on first sight and
    the pivot of a row is its smallest column number.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self._col: dict = {}
        self._pivots: dict[int, dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _index(self, vec) -> dict[int, object]:
        out = {}
        col = self._col
        for key, c in vec.items():
            if c:
                j = col.get(key)
                if j is None:
                    j = col[key] = len(col)
                out[j] = c
        return out

    def add(self, vec) -> bool:
        row = self._index(vec)
        if not row:
            return False
        if self.field.characteristic:
            return self._add_modp(row)
        return self._add_rational(row)

    def _add_modp(self, row) -> bool:
        p = self.field.characteristic
        pivots = self._pivots
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {j: c * inv % p for j, c in row.items()}
                return True
            f = row[lead]
            for j, c in piv.items():
                v = (row.get(j, 0) - f * c) % p
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        return False

    def _add_rational(self, row) -> bool:
        den = 1
        for c in row.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        row = {j: int(c * den) for j, c in row.items()}
        row = _primitive(row)
        pivots = self._pivots
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                return True
            a, b = piv[lead], row[lead]
            new = {j: a * c for j, c in row.items()}
            for j, c in piv.items():
                v = new.get(j, 0) - b * c
                if v:
                    new[j] = v
                else:
                    new.pop(j, None)
            row = _primitive(new)
        return False


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return row
    if g > 1:
        return {j: c // g for j, c in row.items()}
    return row


# -- coordinate spaces -----------------------------------------------------------


class PolynomialSpace:
    """R with monomial coordinates; operators act by evaluation."""

    kind = "polynomials"

    def __init__(self, n: int, field: FieldSpec):
        self.n, self.field = n, field

    def coordinates(self, g: Polynomial):
        if not isinstance(g, Polynomial) or g.n != self.n or g.field != self.field:
            raise AmbientError(f"{g!r} is not a polynomial in this space")
        return g.terms

    def act(self, A: DiffOp, g: Polynomial) -> Polynomial:
        return op_apply(A, g)

    def describe(self) -> str:
        return f"R = k[x1..x{self.n}]"


class FractionSpace:
    """Fractions written over the common denominator f^N; coordinates of the numerator.

    u -> numerator of its representative over f^N is injective since R is a domain.
    """

    kind = "fractions"

    def __init__(self, context: LocalizedContext, N: int):
        self.context, self.N = context, N
        self.n, self.field = context.n, context.field

    def coordinates(self, u: LocalizedFraction):
        if not isinstance(u, LocalizedFraction) or u.context != self.context:
            raise AmbientError(f"{u!r} is not a fraction over this localization")
        if u.exp <= self.N:
            return u.lift(self.N).terms
        try:
            return divide_exact(u.num, self.context.power(u.exp - self.N)).terms
        except NotDivisible:
            raise AmbientError(f"{u} does not lie over f^{self.N}") from None

    def act(self, A: DiffOp, u: LocalizedFraction) -> LocalizedFraction:
        return frac_apply(A, u)

    def describe(self) -> str:
        return f"R_f, f = {self.context.f}, common denominator f^{self.N}"


class QuotientSpace:
    """D / D m with coordinates on the classes of D^t."""

    kind = "quotient"

    def __init__(self, point: RationalPoint):
        self.point = point
        self.n, self.field = point.n, point.field

    def coordinates(self, z: QuotientElem):
        if not isinstance(z, QuotientElem) or z.n != self.n or z.field != self.field:
            raise AmbientError(f"{z!r} is not an element of D/Dm here")
        return z.terms

    def act(self, A: DiffOp, z: QuotientElem) -> QuotientElem:
        return left_act(A, z, self.point)

    def describe(self) -> str:
        return f"D/Dm, m at {self.point.coords}"


def span_dim(vectors: Iterable, ambient) -> int:
    """dim_k of the span of the given elements."""
    ech = RowEchelon(ambient.field)
    for v in vectors:
        ech.add(ambient.coordinates(v))
    return ech.rank


# -- series and reports -----------------------------------------------------------


@dataclass(frozen=True)
class DimensionSeries:
    """dim_k M_i for consecutive levels i = 0, 1, ..."""

    n: int
    dims: tuple[int, ...]
    field: str = "QQ"
    module: str = ""
    generator: str = ""

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions are non-negative")
        if any(b < a for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError(f"filtration dimensions must be non-decreasing: {self.dims}")

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(enumerate(self.dims))


def _check_budget(count: int, budget: int, what: str):
    if count > budget:
        raise BudgetExceeded(f"{what} needs {count} items, over the limit of {budget}")


def cyclic_filtration_dims(
    z, ambient, i_max: int, budget: int = MAX_OPERATORS, generator: str | None = None
) -> DimensionSeries:
    """dim_k(F_i z) for i = 0..i_max, F_i the Bernstein filtration level.

    Levels are nested, so one incremental echelon form serves all of them.
    """
    if i_max < 0:
        raise ValueError("i_max must be non-negative")
    n, k = ambient.n, ambient.field
    _check_budget(comb(2 * n + i_max, 2 * n), budget, f"F_{i_max} with n={n}")
    if not ambient.coordinates(z):
        raise ValueError("the generator must be nonzero")
    ech = RowEchelon(k)
    dims = []
    for deg in range(i_max + 1):
        for a, b in _exact_degree_monomials(deg, n):
            ech.add(ambient.coordinates(ambient.act(DiffOp.monomial(a, b, k), z)))
        dims.append(ech.rank)
    return DimensionSeries(n, tuple(dims), str(k), ambient.describe(), generator or str(z))


@dataclass(frozen=True)
class LevelCheck:
    i: int
    dim: int
    bound: int
    passed: bool


def lower_bound_value(n: int, i: int, j: int) -> int:
    """C(n + i - j, i - j), or 0 below the offset."""
    return comb(n + i - j, i - j) if i >= j else 0


def check_lower_bound(series: DimensionSeries, j: int = 0) -> list[LevelCheck]:
    """Compare each dim_i, i >= j, against C(n + i - j, i - j)."""
    if j < 0:
        raise ValueError("offset must be non-negative")
    out = []
    for i, d in series.entries:
        if i < j:
            continue
        b = lower_bound_value(series.n, i, j)
        out.append(LevelCheck(i, d, b, d >= b))
    return out


def failed_levels(checks: Sequence[LevelCheck]) -> list[int]:
    return [c.i for c in checks if not c.passed]


def smallest_offset(series: DimensionSeries) -> int | None:
    """Least j for which every observed level i >= j meets the offset bound."""
    for j in range(len(series.dims)):
        if not failed_levels(check_lower_bound(series, j)):
            return j
    return None


def holonomy_constant(series: DimensionSeries) -> Fraction:
    """Smallest C with dim_i <= C i^n on the observed levels i >= 1.

    A lower estimate of any constant valid for all i; finite data cannot certify more.
    """
    ratios = [Fraction(d, i**series.n) for i, d in series.entries if i >= 1]
    if not ratios:
        raise ValueError("need at least one level i >= 1")
    return max(ratios)


def length_bound(C, n: int) -> Fraction:
    """n! * C, the bound on the length of a module with dim M_i <= C i^n."""
    C = Fraction(C)
    if C <= 0:
        raise ValueError("the holonomy constant must be positive")
    return factorial(n) * C


def chain_respects_bound(chain_length: int, C, n: int) -> bool:
    """Whether a known strict chain of submodules is consistent with the length bound."""
    return chain_length <= length_bound(C, n)


def multiplicity_series(series: DimensionSeries) -> list[Fraction]:
    """n! dim_i / i^n for i >= 1."""
    nf = factorial(series.n)
    return [Fraction(nf * d, i**series.n) for i, d in series.entries if i >= 1]


def degree_filtration_dims(n: int, field: FieldSpec, i_max: int) -> DimensionSeries:
    """The degree filtration on R: dim = C(n + i, n)."""
    dims = [comb(n + i, n) for i in range(i_max + 1)]
    return DimensionSeries(n, tuple(dims), str(field), f"R = k[x1..x{n}], degree filtration", "1")


def mf_filtration_dims(context: LocalizedContext, i_max: int, budget: int = MAX_OPERATORS) -> DimensionSeries:
    """dim M'_i for M'_i = {g / f^i : deg g <= i (d + 1)} on M = R.

    Computed by the closed form C(n + i(d+1), n) and by an exact rank of the
    spanning monomials over f^i; a disagreement is an error.
    """
    n, d = context.n, context.d
    _check_budget(comb(n + i_max * (d + 1), n), budget, f"M'_{i_max}")
    dims = []
    for i in range(i_max + 1):
        closed = comb(n + i * (d + 1), n)
        space = FractionSpace(context, i)
        brute = span_dim(
            (
                LocalizedFraction(Polynomial._raw(n, context.field, {a: 1}), i, context)
                for deg in range(i * (d + 1) + 1)
                for a in monomials_of_degree(deg, n)
            ),
            space,
        )
        if brute != closed:
            raise AssertionError(f"dim M'_{i}: closed form {closed} != rank {brute}")
        dims.append(closed)
    return DimensionSeries(
        n, tuple(dims), str(context.field), f"R_f, f = {context.f}, filtration M'_i", "1/f^0"
    )


def _fmt(q) -> str:
    return str(Fraction(q))


@dataclass
class FiltrationReport:
    series: DimensionSeries
    offset: int
    checks: list[LevelCheck]
    holonomy_constant: Fraction
    length_bound: Fraction
    multiplicities: list[Fraction]
    minimal_offset: int | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def csv_rows(self) -> list[list[str]]:
        n = self.series.n
        j = self.offset
        rows = []
        for i, d in self.series.entries:
            ratio = _fmt(Fraction(factorial(n) * d, i**n)) if i >= 1 else ""
            rows.append([str(i), str(d), str(lower_bound_value(n, i, j)), str(comb(n + i, i)), ratio])
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(self.csv_rows())
        return buf.getvalue()

    def to_dict(self) -> dict:
        s = self.series
        return {
            "series": {
                "n": s.n,
                "field": s.field,
                "module": s.module,
                "generator": s.generator,
                "dims": list(s.dims),
            },
            "offset": self.offset,
            "minimal_offset": self.minimal_offset,
            "lower_bound": [
                {"i": c.i, "dim": c.dim, "bound": c.bound, "passed": c.passed} for c in self.checks
            ],
            "holonomy_constant": _fmt(self.holonomy_constant),
            "length_bound": _fmt(self.length_bound),
            "multiplicity_series": [_fmt(q) for q in self.multiplicities],
            "passed": self.passed,
            **self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


CSV_HEADER = ["i", "dim", "lower_bound", "binom_ref", "ratio_n_fact_dim_over_i_pow_n"]


def build_report(series: DimensionSeries, j: int = 0) -> FiltrationReport:
    """Bundle the lower-bound checks at offset j, the constant C, n!C and the multiplicity samples."""
    C = holonomy_constant(series)
    return FiltrationReport(
        series=series,
        offset=j,
        checks=check_lower_bound(series, j),
        holonomy_constant=C,
        length_bound=length_bound(C, series.n),
        multiplicities=multiplicity_series(series),
        minimal_offset=smallest_offset(series),
    )
