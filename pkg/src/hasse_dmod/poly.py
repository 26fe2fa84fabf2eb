"""Sparse multivariate polynomials over an exact field, with divided-power derivatives."""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping

from .field import FieldSpec, Scalar, binom_in_k

Monomial = tuple[int, ...]


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    """Graded-lex sort key; the global monomial order."""
    return (sum(m), m)


class NotDivisible(ArithmeticError):
    """Raised by :func:`divide_exact` when the divisor does not divide exactly."""


class AmbientMismatch(ValueError):
    """Operands live over different fields or different numbers of variables."""


def _check_compatible(a, b):
    if a.n != b.n or a.field != b.field:
        raise AmbientMismatch(
            f"ambient mismatch: n={a.n} over {a.field} vs n={b.n} over {b.field}"
        )


def _check_var(i: int, n: int):
    if not (isinstance(i, int) and 1 <= i <= n):
        raise IndexError(f"variable index {i} out of range 1..{n}")


class Polynomial:
    """An element of k[x1, ..., xn] stored as ``{exponent tuple: coefficient}``.

    Instances are immutable and canonical: zero coefficients are never stored,
    so equality is equality of the term maps.
    """

    __slots__ = ("n", "field", "terms", "_hash")

    def __init__(self, n: int, field: FieldSpec, terms: Mapping[Monomial, object] | None = None):
        if n < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        self.n = n
        self.field = field
        clean = {}
        if terms:
            red = field.reduce
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for n={n}")
                c = red(c)
                if c:
                    clean[m] = red(clean.get(m, 0) + c)
                    if not clean[m]:
                        del clean[m]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, field, terms):
        # terms must already be canonical
        p = object.__new__(cls)
        p.n, p.field, p.terms, p._hash = n, field, terms, None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> Polynomial:
        return cls._raw(n, field, {})

    @classmethod
    def constant(cls, c, n: int, field: FieldSpec) -> Polynomial:
        return cls(n, field, {(0,) * n: c})

    @classmethod
    def one(cls, n: int, field: FieldSpec) -> Polynomial:
        return cls.constant(1, n, field)

    @classmethod
    def var(cls, i: int, n: int, field: FieldSpec) -> Polynomial:
        _check_var(i, n)
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, field, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Iterable[int], field: FieldSpec, coeff=1) -> Polynomial:
        exps = tuple(exps)
        return cls(len(exps), field, {exps: coeff})

    @classmethod
    def parse(cls, text: str, n: int, field: FieldSpec) -> Polynomial:
        from .grammar import parse_polynomial

        return parse_polynomial(text, n, field)

    # -- queries ------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def coeff(self, m: Monomial) -> Scalar:
        return self.terms.get(tuple(m), 0)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.n, 0)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.field == other.field and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({(0,) * self.n: self.field.reduce(other)} if self.field.reduce(other) else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.field, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            _check_compatible(self, other)
            return other
        return Polynomial.constant(other, self.n, self.field)

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
        return Polynomial._raw(self.n, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return Polynomial._raw(self.n, self.field, {m: red(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> Polynomial:
        red = self.field.reduce
        c = red(c)
        if not c:
            return Polynomial.zero(self.n, self.field)
        return Polynomial._raw(self.n, self.field, {m: red(c * v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        _check_compatible(self, other)
        red = self.field.reduce
        acc: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        out = {}
        for m, c in acc.items():
            c = red(c)
            if c:
                out[m] = c
        return Polynomial._raw(self.n, self.field, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.n, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- operators ------------------------------------------------------------

    def divided_derivative(self, t: int, i: int) -> Polynomial:
        """D_{t,i}: x_i^v -> C(v, t) x_i^(v-t), identity in the other variables."""
        _check_var(i, self.n)
        if t < 0:
            raise ValueError("order must be non-negative")
        if t == 0:
            return self
        k = self.field
        red = k.reduce
        j = i - 1
        out = {}
        for m, c in self.terms.items():
            v = m[j]
            if v < t:
                continue
            b = binom_in_k(v, t, k)
            if not b:
                continue
            c = red(c * b)
            if c:
                m2 = m[:j] + (v - t,) + m[j + 1:]
                out[m2] = c
        return Polynomial._raw(self.n, k, out)

    def translate(self, shift) -> Polynomial:
        """Substitute x_i -> x_i + shift[i-1]."""
        shift = [self.field.reduce(c) for c in shift]
        if len(shift) != self.n:
            raise AmbientMismatch("shift vector has the wrong length")
        if not any(shift):
            return self
        result = Polynomial.zero(self.n, self.field)
        for m, c in self.terms.items():
            result = result + Polynomial(self.n, self.field, _expand_shifted_monomial(m, shift, c))
        return result

    def evaluate(self, point) -> Scalar:
        red = self.field.reduce
        point = [red(c) for c in point]
        total = 0
        for m, c in self.terms.items():
            v = c
            for e, a in zip(m, point):
                if e:
                    v = v * a**e
            total = red(total + v)
        return total

    def __str__(self):
        return format_terms(
            ((m, c) for m, c in sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)),
            lambda m: _x_factors(m),
        )

    def __repr__(self):
        return f"Polynomial({self}, n={self.n}, {self.field})"


def _expand_shifted_monomial(m: Monomial, shift, c) -> dict:
    # prod_i (x_i + s_i)^{m_i}, expanded with binomial coefficients
    terms = {(): c}
    for e, s in zip(m, shift):
        nxt = {}
        for prefix, v in terms.items():
            if s == 0:
                nxt[prefix + (e,)] = v
                continue
            for r in range(e + 1):
                nxt[prefix + (r,)] = nxt.get(prefix + (r,), 0) + v * comb(e, r) * s ** (e - r)
        terms = nxt
    return terms


def _x_factors(m: Monomial) -> list[str]:
    return [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m, 1) if e]


def format_terms(items, factors) -> str:
    """Render ``(key, coeff)`` pairs as ``c*f1*f2 + ...`` in the input grammar."""
    parts = []
    for key, c in items:
        fs = factors(key)
        neg = c < 0
        mag = -c if neg else c
        if not fs:
            body = str(mag)
        elif mag == 1:
            body = "*".join(fs)
        else:
            body = "*".join([str(mag)] + fs)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


# -- functional surface ---------------------------------------------------------


def poly_arith(a: Polynomial, b: Polynomial, kind: str) -> Polynomial:
    """``kind`` is one of ``"add"``, ``"sub"``, ``"mul"``."""
    _check_compatible(a, b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {kind!r}")


def apply_divided_derivative(t: int, i: int, g: Polynomial) -> Polynomial:
    return g.divided_derivative(t, i)


def degree(g: Polynomial) -> int:
    return g.degree()


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """Return q with g == q*f, or raise :class:`NotDivisible`.

    Leading-term reduction in grlex order. In a domain, if f divides g then
    every intermediate remainder is a multiple of f, so its leading monomial
    is divisible by LM(f); failing that test proves non-divisibility.
    """
    _check_compatible(g, f)
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    k = f.field
    red = k.reduce
    lm_f = f.leading_monomial()
    lc_inv = k.inv(f.terms[lm_f])
    n = g.n
    rem = dict(g.terms)
    quot = {}
    while rem:
        lm = max(rem, key=grlex_key)
        shift = tuple(a - b for a, b in zip(lm, lm_f))
        if any(e < 0 for e in shift):
            raise NotDivisible(f"{f} does not divide {g}")
        c = red(rem[lm] * lc_inv)
        quot[shift] = c
        for m, v in f.terms.items():
            mm = tuple(a + b for a, b in zip(m, shift))
            r = red(rem.get(mm, 0) - c * v)
            if r:
                rem[mm] = r
            else:
                rem.pop(mm, None)
    return Polynomial._raw(n, k, quot)


def divides(f: Polynomial, g: Polynomial) -> bool:
    try:
        divide_exact(g, f)
    except NotDivisible:
        return False
    return True
