"""Exact coefficient fields: the rationals and prime fields F_p.

Scalars are plain Python numbers so that hot loops stay cheap:

* over Q a scalar is an ``int`` when it is integral and a reduced
  :class:`fractions.Fraction` otherwise (``Fraction`` keeps lowest terms and
  a positive denominator, and ``Fraction(3) == 3`` hashes equal, so dict keys
  and equality stay canonical);
* over F_p a scalar is an ``int`` in ``range(p)``.

All coefficient arithmetic goes through :meth:`FieldSpec.reduce`, which maps
any integer or rational into the canonical representative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational

Scalar = int | Fraction

# Machine-word bound for the characteristic of F_p.
MAX_CHARACTERISTIC = 2**63 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, exact for every m < 3.3e24."""
    if m < 2:
        return False
    for q in _MR_BASES:
        if m % q == 0:
            return m == q
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


class FieldError(ValueError):
    """Invalid field descriptor or a scalar that does not belong to the field."""


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field k: ``characteristic == 0`` is Q, a prime p is F_p."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError(f"characteristic must be an integer, got {p!r}")
        if p < 0:
            raise FieldError(f"characteristic must be non-negative, got {p}")
        if p > MAX_CHARACTERISTIC:
            raise FieldError(f"characteristic {p} does not fit a machine word")
        if p != 0 and not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")

    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    def reduce(self, x) -> Scalar:
        """Canonical representative of an integer or rational ``x`` in k."""
        p = self.characteristic
        if p:
            if isinstance(x, int):
                return x % p
            if not isinstance(x, Rational):
                raise FieldError(f"cannot map {x!r} into F_{p}")
            num, den = x.numerator, x.denominator
            if den % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes in F_{p}")
            return num * pow(den, -1, p) % p
        if isinstance(x, int):
            return x
        if not isinstance(x, Rational):
            raise FieldError(f"cannot map {x!r} into Q")
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    __call__ = reduce

    def neg(self, a: Scalar) -> Scalar:
        return self.reduce(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return self.reduce(Fraction(1) / a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        p = self.characteristic
        if p:
            return a * pow(b, -1, p) % p
        return self.reduce(Fraction(a) / b)

    def format(self, a: Scalar) -> str:
        return str(a)

    def parse(self, text: str) -> Scalar:
        """Parse ``"7"``, ``"-3"`` or ``"a/b"`` into k."""
        m = _SCALAR_RE.fullmatch(text.strip())
        if not m:
            raise FieldError(f"malformed scalar {text!r}")
        num = int(m.group(1).replace(" ", ""))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return self.reduce(Fraction(num, den))

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


_SCALAR_RE = re.compile(r"([+-]?\s*\d+)\s*(?:/\s*(\d+))?")


def make_field(characteristic: int) -> FieldSpec:
    """Validated descriptor for Q (``0``) or F_p (a prime ``p``)."""
    return FieldSpec(characteristic)


QQ = FieldSpec(0)


def binom_in_k(v: int, t: int, k: FieldSpec) -> Scalar:
    """The integer binomial coefficient C(v, t) mapped into k; zero when t > v."""
    if t < 0 or v < 0 or t > v:
        return 0
    return k.reduce(comb(v, t))


def lucas_binomial(v: int, t: int, p: int) -> int:
    """C(v, t) mod p digit by digit in base p (Lucas)."""
    out = 1
    while v or t:
        vd, td = v % p, t % p
        if td > vd:
            return 0
        out = out * comb(vd, td) % p
        v //= p
        t //= p
    return out
