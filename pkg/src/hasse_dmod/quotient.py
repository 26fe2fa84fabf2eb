"""The cyclic module D / D m for a k-rational maximal ideal m = (x1 - c1, ..., xn - cn).

Elements are k-combinations of the classes of D^t = D_{t1,1} ... D_{tn,n}.
Reduction goes through the right normal form: after translating so that the
point is the origin, write A = sum_b D^b g_b(x); then A mod D m is
sum_b g_b(0) * class(D^b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .field import FieldSpec, Scalar
from .poly import AmbientMismatch, Monomial, format_terms
from .weyl import DiffOp, op_mul, right_normal_form


@dataclass(frozen=True)
class RationalPoint:
    """The point (c1, ..., cn) in k^n; its maximal ideal is (x_i - c_i)."""

    coords: tuple
    field: FieldSpec

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.field.reduce(c) for c in self.coords))
        if not self.coords:
            raise ValueError("a rational point needs at least one coordinate")

    @classmethod
    def origin(cls, n: int, field: FieldSpec) -> RationalPoint:
        return cls((0,) * n, field)

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_origin(self) -> bool:
        return not any(self.coords)

    def generators(self) -> list[DiffOp]:
        """x_i - c_i as operators."""
        n, k = self.n, self.field
        return [DiffOp.x(i, n, k) - self.coords[i - 1] for i in range(1, n + 1)]


class QuotientElem:
    """sum_t c_t * class(D^t) in D / D m."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n: int, field: FieldSpec, terms: Mapping[Monomial, object] | None = None):
        self.n = n
        self.field = field
        red = field.reduce
        clean = {}
        for t, c in (terms or {}).items():
            t = tuple(t)
            if len(t) != n or min(t) < 0:
                raise ValueError(f"bad D-exponent {t} for n={n}")
            c = red(clean.get(t, 0) + red(c))
            if c:
                clean[t] = c
            else:
                clean.pop(t, None)
        self.terms = clean

    @classmethod
    def basis(cls, t, field: FieldSpec, coeff=1) -> QuotientElem:
        t = tuple(t)
        return cls(len(t), field, {t: coeff})

    @classmethod
    def one(cls, n: int, field: FieldSpec) -> QuotientElem:
        return cls.basis((0,) * n, field)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, QuotientElem):
            return self.n == other.n and self.field == other.field and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.field, frozenset(self.terms.items())))

    def __add__(self, other: QuotientElem) -> QuotientElem:
        acc = dict(self.terms)
        for t, c in other.terms.items():
            acc[t] = acc.get(t, 0) + c
        return QuotientElem(self.n, self.field, acc)

    def scale(self, c) -> QuotientElem:
        return QuotientElem(self.n, self.field, {t: v * c for t, v in self.terms.items()})

    def lift(self) -> DiffOp:
        """The operator sum_t c_t D^t."""
        z = (0,) * self.n
        return DiffOp(self.n, self.field, {(z, t): c for t, c in self.terms.items()})

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        return format_terms(items, lambda t: ["Dbar[" + ",".join(map(str, t)) + "]"])

    def __repr__(self):
        return f"QuotientElem({self})"


def _check(A, pt: RationalPoint):
    if A.n != pt.n or A.field != pt.field:
        raise AmbientMismatch(f"n={A.n}/{A.field} does not match the point's n={pt.n}/{pt.field}")


def reduce_mod_Dm(A: DiffOp, pt: RationalPoint) -> QuotientElem:
    """The class of A in D / D m."""
    _check(A, pt)
    moved = A if pt.is_origin() else A.translate(pt.coords)
    terms = {}
    for b, g in right_normal_form(moved).items():
        c = g.constant_term()
        if c:
            terms[b] = c
    return QuotientElem(A.n, A.field, terms)


def left_act(A: DiffOp, z: QuotientElem, pt: RationalPoint) -> QuotientElem:
    """A * z; well defined since D m is a left ideal."""
    _check(A, pt)
    if z.n != A.n or z.field != A.field:
        raise AmbientMismatch("quotient element over a different ring")
    return reduce_mod_Dm(op_mul(A, z.lift()), pt)


def annihilator_power(z: QuotientElem, pt: RationalPoint, limit: int | None = None) -> int:
    """The least N with m^N z = 0.

    m^N z is spanned by the products of N generators x_i - c_i applied to z,
    so we push a frontier of nonzero images one generator at a time.
    """
    if not z:
        raise ValueError("the zero element is killed by m^0")
    gens = pt.generators()
    if limit is None:
        # x_i^(t_i+1) kills class(D^t), so N <= sum_i (max t_i + 1)
        limit = sum(max(t[i] for t in z.terms) + 1 for i in range(z.n))
    frontier = {z}
    N = 0
    while frontier:
        if N > limit:
            raise RuntimeError(f"m^{N} z != 0 beyond the guaranteed bound {limit}")
        N += 1
        nxt = set()
        for w in frontier:
            for g in gens:
                y = left_act(g, w, pt)
                if y:
                    nxt.add(y)
        frontier = nxt
    return N


def socle_multiplier(z: QuotientElem) -> tuple[Monomial, Scalar]:
    """Exponents t and a nonzero lambda with x^t * z = lambda * class(1), at the origin.

    Picks a term of z of maximal |t| (ties: grlex-largest t).  Every other term
    t' has some t'_j < t_j, so x^t kills it, and x^t class(D^t) = (-1)^|t| class(1).
    The claim is checked by actually acting.
    """
    if not z:
        raise ValueError("the zero element cannot be moved to the socle")
    k = z.field
    t = max(z.terms, key=lambda s: (sum(s), s))
    lam = k.reduce((-1) ** sum(t) * z.terms[t])
    pt = RationalPoint.origin(z.n, k)
    xt = DiffOp.monomial(t, (0,) * z.n, k)
    image = left_act(xt, z, pt)
    if image != QuotientElem.one(z.n, k).scale(lam):
        raise RuntimeError(f"socle multiplier check failed: x^{t} * ({z}) = {image}, expected {lam}")
    return t, lam
