"""Rational functions as num/den pairs of Laurent polynomials.

No polynomial gcd is attempted.  Normalization only strips the unit
(monomial) content: the lexicographically least term of the denominator is
scaled to the constant 1.  Equality is decided by cross multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .field import SingularPoint
from .laurent import LaurentPoly, Ring


class NotSubtractionFree(ValueError):
    pass


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ring != den.ring:
            raise ValueError("ring mismatch")
        lead = min(den.terms)
        c = den.terms[lead]
        shift = tuple(-x for x in lead)
        inv = 1 / Fraction(c)
        self.den = den.shift(shift) * inv
        self.num = num.shift(shift) * inv

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @classmethod
    def const(cls, ring: Ring, c) -> "RatFunc":
        return cls(ring.const(c))

    def _co(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.ring.const(other))
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def eval(self, point):
        d = self.den.eval(point)
        if not d:
            raise SingularPoint("denominator vanishes")
        return self.num.eval(point) / d

    def eval_roots(self, roots):
        d = self.den.eval_roots(roots)
        if not d:
            raise SingularPoint("denominator vanishes")
        return self.num.eval_roots(roots) / d

    def derivative(self, v) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative(v) * d - n * d.derivative(v), d * d)

    def euler(self, v) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.euler(v) * d - n * d.euler(v), d * d)

    def substitute(self, images: Mapping) -> "RatFunc":
        """Compose: replace variables by RatFuncs (or anything ring-like)."""
        num = self.num.substitute(images)
        den = self.den.substitute(images)
        return num / den

    def to_ring(self, ring: Ring, mapping: Mapping | None = None) -> "RatFunc":
        return RatFunc(self.num.to_ring(ring, mapping), self.den.to_ring(ring, mapping))

    def __repr__(self):
        if self.den == 1:
            return f"({self.num!r})"
        return f"({self.num!r}) / ({self.den!r})"

    def nterms(self) -> int:
        return len(self.num) + len(self.den)


def trop_degree(f) -> tuple:
    """Tropical degree of a subtraction-free rational function.

    Returns componentwise-min exponent of the numerator minus that of the
    denominator, in lattice units of the ring.
    """
    if isinstance(f, LaurentPoly):
        f = RatFunc(f)
    for part in (f.num, f.den):
        if any(c < 0 for c in part.terms.values()):
            raise NotSubtractionFree("negative coefficient present")
    a = f.num.min_exponent()
    b = f.den.min_exponent()
    return tuple(x - y for x, y in zip(a, b))
