"""The D-module R_f: fractions m / f^j and the divided-power action on them.

Fractions are never reduced.  Two fractions are equal when they cross-multiply
to the same polynomial, which is valid because R is a domain and f != 0.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .field import FieldSpec
from .poly import (
    AmbientMismatch,
    NotDivisible,
    Polynomial,
    _check_var,
    divide_exact,
)
from .weyl import DiffOp


class LocalizationBug(RuntimeError):
    """An exact division that must succeed did not.  Never expected in practice."""


class LocalizedContext:
    """Fixes the denominator f (nonzero) and caches its powers.

    ``d`` is the total degree of f.
    """

    def __init__(self, f: Polynomial):
        if not f:
            raise ValueError("cannot localize at the zero polynomial")
        self.f = f
        self.d = f.degree()
        self.n = f.n
        self.field = f.field
        self._powers = [Polynomial.one(f.n, f.field), f]
        self._shift_cache: dict[tuple[int, int, int], Polynomial] = {}

    def power(self, j: int) -> Polynomial:
        """f^j, cached."""
        while len(self._powers) <= j:
            self._powers.append(self._powers[-1] * self.f)
        return self._powers[j]

    def shifted_coefficient(self, s: int, i: int, j: int) -> Polynomial:
        """The polynomial c with f^{-j} D_{s,i}(f^j) = c / f^s.

        For s <= j this is the exact quotient D_{s,i}(f^j) / f^{j-s}; for s > j
        it is D_{s,i}(f^j) * f^{s-j}.
        """
        key = (s, i, j)
        hit = self._shift_cache.get(key)
        if hit is not None:
            return hit
        g = self.power(j).divided_derivative(s, i)
        if s <= j:
            try:
                c = divide_exact(g, self.power(j - s))
            except NotDivisible as exc:
                raise LocalizationBug(
                    f"D_{{{s},{i}}}(f^{j}) is not divisible by f^{j - s} for f = {self.f}"
                ) from exc
        else:
            c = g * self.power(s - j)
        self._shift_cache[key] = c
        return c

    def fraction(self, num, exp: int = 0) -> LocalizedFraction:
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num, self.n, self.field)
        return LocalizedFraction(num, exp, self)

    def parse(self, text: str) -> LocalizedFraction:
        from .grammar import parse_fraction

        return parse_fraction(text, self)

    def __eq__(self, other):
        return isinstance(other, LocalizedContext) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"LocalizedContext(f={self.f}, d={self.d}, {self.field})"


class LocalizedFraction:
    """The element num / f^exp of R_f."""

    __slots__ = ("num", "exp", "context")

    def __init__(self, num: Polynomial, exp: int, context: LocalizedContext):
        if num.n != context.n or num.field != context.field:
            raise AmbientMismatch("numerator does not live in the context's ring")
        if exp < 0:
            raise ValueError("exponent must be non-negative")
        self.num = num
        self.exp = exp if num else 0
        self.context = context

    def _check(self, other: LocalizedFraction):
        if self.context is not other.context and self.context != other.context:
            raise AmbientMismatch("fractions from different localizations")

    def __eq__(self, other):
        if not isinstance(other, LocalizedFraction):
            return NotImplemented
        return frac_eq(self, other)

    __hash__ = None  # equality is semantic

    def __bool__(self):
        return bool(self.num)

    def lift(self, exp: int) -> Polynomial:
        """Numerator of the representative over f^exp (requires exp >= self.exp)."""
        if exp < self.exp:
            raise ValueError("cannot lift to a smaller exponent")
        return self.num * self.context.power(exp - self.exp)

    def __add__(self, other):
        return frac_arith(self, other, "add")

    def __sub__(self, other):
        return frac_arith(self, other, "sub")

    def __neg__(self):
        return LocalizedFraction(-self.num, self.exp, self.context)

    def __rmul__(self, g):
        return frac_scale(g, self)

    def __str__(self):
        return f"{_wrap(self.num)}/f^{self.exp}"

    def __repr__(self):
        return f"LocalizedFraction({self}, f={self.context.f})"


def _wrap(p: Polynomial) -> str:
    s = str(p)
    return f"({s})" if len(p.terms) > 1 else s


def frac_eq(u: LocalizedFraction, v: LocalizedFraction) -> bool:
    u._check(v)
    ctx = u.context
    return u.num * ctx.power(v.exp) == v.num * ctx.power(u.exp)


def frac_arith(u: LocalizedFraction, v: LocalizedFraction, kind: str) -> LocalizedFraction:
    """Sum or difference over the common denominator f^max(u.exp, v.exp)."""
    u._check(v)
    e = max(u.exp, v.exp)
    a, b = u.lift(e), v.lift(e)
    if kind == "add":
        num = a + b
    elif kind == "sub":
        num = a - b
    else:
        raise ValueError(f"unknown fraction operation {kind!r}")
    return LocalizedFraction(num, e, u.context)


def frac_scale(g, u: LocalizedFraction) -> LocalizedFraction:
    """g * u for a polynomial or scalar g; the exponent is unchanged."""
    return LocalizedFraction(u.num * g, u.exp, u.context)


def frac_act(t: int, i: int, u: LocalizedFraction) -> LocalizedFraction:
    """D_{t,i}(m / f^j), returned over the denominator f^(j+t).

    Bottom-up over the order tau = 1..t, using
    D_tau(m/f^j) = f^{-j} D_tau(m) - sum_{s=1}^{tau} f^{-j} D_s(f^j) D_{tau-s}(m/f^j)
    with every term written over f^(j+tau).
    """
    ctx = u.context
    _check_var(i, ctx.n)
    if t < 0:
        raise ValueError("order must be non-negative")
    if t == 0:
        return u
    m, j = u.num, u.exp
    if not m:
        return LocalizedFraction(m, 0, ctx)
    # nums[tau] is the numerator of D_tau(u) over f^(j+tau)
    nums = [m]
    for tau in range(1, t + 1):
        acc = m.divided_derivative(tau, i) * ctx.power(tau)
        for s in range(1, tau + 1):
            prev = nums[tau - s]
            if prev:
                acc = acc - ctx.shifted_coefficient(s, i, j) * prev
        nums.append(acc)
    return LocalizedFraction(nums[t], j + t, ctx)


def frac_apply(A: DiffOp, u: LocalizedFraction) -> LocalizedFraction:
    """Apply a normal-form operator: each x^a D^b acts as D^b first, then x^a.

    The result is written over f^(u.exp + max |b|).
    """
    ctx = u.context
    if A.n != ctx.n or A.field != ctx.field:
        raise AmbientMismatch("operator and fraction over different rings")
    cache: dict = {}
    parts = []
    for (a, b), c in A.terms.items():
        v = _apply_d_monomial(b, u, cache)
        parts.append(frac_scale(Polynomial._raw(ctx.n, ctx.field, {a: c}), v))
    if not parts:
        return LocalizedFraction(Polynomial.zero(ctx.n, ctx.field), 0, ctx)
    e = max(p.exp for p in parts)
    num = Polynomial.zero(ctx.n, ctx.field)
    for p in parts:
        num = num + p.lift(e)
    return LocalizedFraction(num, e, ctx)


def _apply_d_monomial(b, u, cache):
    b = tuple(b)
    hit = cache.get(b)
    if hit is not None:
        return hit
    # peel the last nonzero index so prefixes get reused
    last = max((i for i, t in enumerate(b) if t), default=None)
    if last is None:
        out = u
    else:
        prefix = b[:last] + (0,) + b[last + 1:]
        out = frac_act(b[last], last + 1, _apply_d_monomial(prefix, u, cache))
    cache[b] = out
    return out


def in_filtration_level(u: LocalizedFraction, i: int) -> bool:
    """Whether u = m / f^i for some m of degree <= i (d + 1)."""
    ctx = u.context
    bound = i * (ctx.d + 1)
    if not u.num:
        return True
    if u.exp <= i:
        return u.lift(i).degree() <= bound
    try:
        q = divide_exact(u.num, ctx.power(u.exp - i))
    except NotDivisible:
        return False
    return q.degree() <= bound


def exhaustion_level(u: LocalizedFraction, num_degree: int | None = None) -> int:
    """A level containing u, by the case split of the exhaustion argument.

    With m of degree u (as an element of the degree filtration) over f^w:
    level w when u <= w(d+1), otherwise v + w where v = u - w(d+1).
    """
    ctx = u.context
    deg = u.num.degree() if num_degree is None else num_degree
    deg = max(deg, 0)
    w = u.exp
    cap = w * (ctx.d + 1)
    if deg <= cap:
        return w
    return (deg - cap) + w


def filtration_spanning_set(context: LocalizedContext, j: int) -> list[LocalizedFraction]:
    """Monomials over f^j of degree <= j (d + 1); they span M'_j."""
    n, k = context.n, context.field
    return [
        LocalizedFraction(Polynomial._raw(n, k, {a: 1}), j, context)
        for deg in range(j * (context.d + 1) + 1)
        for a in monomials_of_degree(deg, n)
    ]


@lru_cache(maxsize=None)
def monomials_of_degree(deg: int, n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for slots in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for s in slots:
            e[s] += 1
        out.append(tuple(e))
    return tuple(out)


def make_context(f: Polynomial | str, n: int | None = None, field: FieldSpec | None = None) -> LocalizedContext:
    if isinstance(f, str):
        f = Polynomial.parse(f, n, field)
    return LocalizedContext(f)
