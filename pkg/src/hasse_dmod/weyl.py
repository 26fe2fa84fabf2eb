"""The ring of divided-power differential operators on k[x1, ..., xn].

An operator is stored in left normal form: a k-combination of monomials
``x^a * D^b`` (all multiplications on the left, all divided powers
``D_{b_i,i}`` on the right).  Products are renormalised with the commutation
rules

* ``D_{t,i}`` commutes with ``x_j`` (j != i) and with every ``D_{s,j}`` (j != i);
* ``D_{t,i} * x_i^w = sum_s C(w, s) * x_i^(w-s) * D_{t-s,i}``;
* ``D_{t,i} * D_{s,i} = C(s+t, s) * D_{t+s,i}``.

All binomials are integers computed over Z and only then mapped into k, which
is what makes the construction work in every characteristic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterable, Mapping

from .field import FieldSpec, Scalar
from .poly import AmbientMismatch, Monomial, Polynomial, _check_var, format_terms

OpMonomial = tuple[Monomial, Monomial]  # (x-exponents a, D-exponents b)


@lru_cache(maxsize=None)
def _pass_d_over_x(t: int, w: int, e: int) -> tuple[tuple[int, int, int], ...]:
    """``D_t * x^w * D_e`` in one variable as ``((x-exp, D-exp, integer coeff), ...)``."""
    out = []
    for s in range(min(t, w) + 1):
        c = comb(w, s) * comb(t - s + e, e)
        out.append((w - s, t - s + e, c))
    return tuple(out)


@lru_cache(maxsize=None)
def _pass_x_over_d(w: int, t: int) -> tuple[tuple[int, int, int], ...]:
    """``x^w * D_t`` in one variable, rewritten as ``((D-exp, x-exp, coeff), ...)`` meaning D first.

    Isolating ``x^w D_t`` from the commutation rule gives
    ``x^w D_t = D_t x^w - sum_{s>=1} C(w, s) x^(w-s) D_(t-s)``; recurse on the tail.
    """
    acc = {(t, w): 1}
    for s in range(1, min(w, t) + 1):
        cws = comb(w, s)
        for dt, xw, c in _pass_x_over_d(w - s, t - s):
            acc[(dt, xw)] = acc.get((dt, xw), 0) - cws * c
    return tuple((dt, xw, c) for (dt, xw), c in acc.items() if c)


class DiffOp:
    """A differential operator in left normal form ``sum c * x^a * D^b``."""

    __slots__ = ("n", "field", "terms", "_hash")

    def __init__(self, n: int, field: FieldSpec, terms: Mapping[OpMonomial, object] | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        self.field = field
        red = field.reduce
        clean: dict[OpMonomial, Scalar] = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != n or len(b) != n or min(a + b) < 0:
                raise ValueError(f"bad operator monomial {(a, b)} for n={n}")
            c = red(clean.get((a, b), 0) + red(c))
            if c:
                clean[(a, b)] = c
            else:
                clean.pop((a, b), None)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, field, terms):
        op = object.__new__(cls)
        op.n, op.field, op.terms, op._hash = n, field, terms, None
        return op

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> DiffOp:
        return cls._raw(n, field, {})

    @classmethod
    def scalar(cls, c, n: int, field: FieldSpec) -> DiffOp:
        z = (0,) * n
        return cls(n, field, {(z, z): c})

    @classmethod
    def one(cls, n: int, field: FieldSpec) -> DiffOp:
        return cls.scalar(1, n, field)

    @classmethod
    def x(cls, i: int, n: int, field: FieldSpec, power: int = 1) -> DiffOp:
        _check_var(i, n)
        a = [0] * n
        a[i - 1] = power
        return cls._raw(n, field, {(tuple(a), (0,) * n): 1})

    @classmethod
    def D(cls, t: int, i: int, n: int, field: FieldSpec) -> DiffOp:
        """The divided power D_{t,i} = (1/t!) d^t/dx_i^t."""
        _check_var(i, n)
        b = [0] * n
        b[i - 1] = t
        return cls._raw(n, field, {((0,) * n, tuple(b)): 1})

    @classmethod
    def monomial(cls, a: Iterable[int], b: Iterable[int], field: FieldSpec, coeff=1) -> DiffOp:
        a, b = tuple(a), tuple(b)
        return cls(len(a), field, {(a, b): coeff})

    @classmethod
    def from_poly(cls, g: Polynomial) -> DiffOp:
        z = (0,) * g.n
        return cls._raw(g.n, g.field, {(m, z): c for m, c in g.terms.items()})

    @classmethod
    def parse(cls, text: str, n: int, field: FieldSpec) -> DiffOp:
        from .grammar import parse_operator

        return parse_operator(text, n, field)

    # -- queries ------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DiffOp):
            return self.n == other.n and self.field == other.field and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.field, frozenset(self.terms.items())))
        return self._hash

    def bernstein_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero operator lies in every filtration level")
        return max(sum(a) + sum(b) for a, b in self.terms)

    def is_polynomial(self) -> bool:
        return all(not any(b) for _, b in self.terms)

    def to_poly(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a multiplication operator")
        return Polynomial._raw(self.n, self.field, {a: c for (a, _), c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> DiffOp:
        if isinstance(other, DiffOp):
            if other.n != self.n or other.field != self.field:
                raise AmbientMismatch("operators over different rings")
            return other
        if isinstance(other, Polynomial):
            if other.n != self.n or other.field != self.field:
                raise AmbientMismatch("operator and polynomial over different rings")
            return DiffOp.from_poly(other)
        return DiffOp.scalar(other, self.n, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        red = self.field.reduce
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = red(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffOp._raw(self.n, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return DiffOp._raw(self.n, self.field, {m: red(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> DiffOp:
        red = self.field.reduce
        c = red(c)
        if not c:
            return DiffOp.zero(self.n, self.field)
        return DiffOp._raw(self.n, self.field, {m: red(c * v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (DiffOp, Polynomial)):
            return op_mul(self, self._coerce(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return op_mul(self._coerce(other), self)
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = DiffOp.one(self.n, self.field)
        for _ in range(e):
            out = op_mul(out, self)
        return out

    def __call__(self, g: Polynomial) -> Polynomial:
        return op_apply(self, g)

    def translate(self, shift) -> DiffOp:
        """Substitute x_i -> x_i + shift[i-1]; the D_{t,i} are translation invariant."""
        if len(shift) != self.n:
            raise AmbientMismatch("shift vector has the wrong length")
        acc: dict[OpMonomial, object] = {}
        for (a, b), c in self.terms.items():
            moved = Polynomial._raw(self.n, self.field, {a: c}).translate(shift)
            for m, v in moved.terms.items():
                acc[(m, b)] = acc.get((m, b), 0) + v
        return DiffOp(self.n, self.field, acc)

    def __str__(self):
        def factors(key):
            a, b = key
            fs = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(a, 1) if e]
            fs += [f"D[{i},{t}]" for i, t in enumerate(b, 1) if t]
            return fs

        items = sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0][0], kv[0][1]),
            reverse=True,
        )
        return format_terms(items, factors)

    def __repr__(self):
        return f"DiffOp({self}, n={self.n}, {self.field})"


def _check_same(a, b):
    if a.n != b.n or a.field != b.field:
        raise AmbientMismatch(f"ambient mismatch: n={a.n}/{a.field} vs n={b.n}/{b.field}")


def op_mul(A: DiffOp, B: DiffOp) -> DiffOp:
    """Composition A*B in End_k(R), returned in left normal form.

    For monomials ``x^a D^b * x^c D^e`` each variable is independent, and in
    variable i the middle ``D_{b_i} x^{c_i}`` is moved past with the x-over-D
    rule, then the two divided powers merge.
    """
    _check_same(A, B)
    n, k = A.n, A.field
    red = k.reduce
    acc: dict[OpMonomial, object] = {}
    for (a, b), ca in A.terms.items():
        for (c, e), cb in B.terms.items():
            factors = [_pass_d_over_x(b[i], c[i], e[i]) for i in range(n)]
            coeff0 = ca * cb
            for combo in product(*factors):
                x = tuple(a[i] + combo[i][0] for i in range(n))
                d = tuple(combo[i][1] for i in range(n))
                v = coeff0
                for item in combo:
                    v *= item[2]
                key = (x, d)
                acc[key] = acc.get(key, 0) + v
    out = {}
    for key, v in acc.items():
        v = red(v)
        if v:
            out[key] = v
    return DiffOp._raw(n, k, out)


def op_apply(A: DiffOp, g: Polynomial) -> Polynomial:
    """Evaluate the endomorphism A on g."""
    _check_same(A, g)
    n, k = A.n, A.field
    red = k.reduce
    acc: dict[Monomial, object] = {}
    for (a, b), ca in A.terms.items():
        for v, cg in g.terms.items():
            if any(v[i] < b[i] for i in range(n)):
                continue
            c = ca * cg
            for i in range(n):
                if b[i]:
                    c *= comb(v[i], b[i])
            m = tuple(a[i] + v[i] - b[i] for i in range(n))
            acc[m] = acc.get(m, 0) + c
    out = {}
    for m, c in acc.items():
        c = red(c)
        if c:
            out[m] = c
    return Polynomial._raw(n, k, out)


def bernstein_degree(A: DiffOp) -> int:
    """Least s with A in the Bernstein filtration level F_s."""
    return A.bernstein_degree()


def enumerate_filtration_basis(s: int, n: int) -> list[OpMonomial]:
    """All normal-form monomials x^a D^b with |a| + |b| <= s, by increasing degree.

    There are C(2n + s, 2n) of them.
    """
    if s < 0:
        raise ValueError("filtration level must be non-negative")
    out = []
    for deg in range(s + 1):
        out.extend(_exact_degree_monomials(deg, n))
    return out


def _exact_degree_monomials(deg: int, n: int) -> list[OpMonomial]:
    out = []
    for slots in combinations_with_replacement(range(2 * n), deg):
        e = [0] * (2 * n)
        for j in slots:
            e[j] += 1
        out.append((tuple(e[:n]), tuple(e[n:])))
    return out


def right_normal_form(A: DiffOp) -> dict[Monomial, Polynomial]:
    """Write A as ``sum_b D^b * g_b`` with the polynomials on the right.

    Returns ``{b: g_b}`` with zero ``g_b`` omitted.
    """
    n, k = A.n, A.field
    red = k.reduce
    acc: dict[Monomial, dict[Monomial, object]] = {}
    for (a, b), c in A.terms.items():
        factors = [_pass_x_over_d(a[i], b[i]) for i in range(n)]
        for combo in product(*factors):
            d = tuple(item[0] for item in combo)
            x = tuple(item[1] for item in combo)
            v = c
            for item in combo:
                v *= item[2]
            slot = acc.setdefault(d, {})
            slot[x] = slot.get(x, 0) + v
    out = {}
    for d, poly_terms in acc.items():
        g = Polynomial(n, k, {m: red(v) for m, v in poly_terms.items()})
        if g:
            out[d] = g
    return out


def from_right_normal_form(parts: Mapping[Monomial, Polynomial], n: int, field: FieldSpec) -> DiffOp:
    """Inverse of :func:`right_normal_form`: multiply out ``sum_b D^b * g_b``."""
    total = DiffOp.zero(n, field)
    for b, g in parts.items():
        total = total + op_mul(DiffOp.monomial((0,) * n, b, field), DiffOp.from_poly(g))
    return total
