"""Prime-field scalars used for randomized identity checks.

Elements carry their modulus so several primes can coexist in one process.
Division by zero raises :class:`SingularPoint`, which callers treat as a
signal to redraw the evaluation point.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 4611686018427387847


class SingularPoint(ZeroDivisionError):
    """A required quantity vanished at the chosen point."""


def is_probable_prime(p: int) -> bool:
    # deterministic Miller-Rabin for p < 3.3e24
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


_checked: set[int] = set()


def check_prime(p: int) -> int:
    if p not in _checked:
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        _checked.add(p)
    return p


class Fp:
    """Residue modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int = DEFAULT_PRIME):
        self.p = p
        if isinstance(v, Fp):
            self.v = v.v
        elif isinstance(v, Fraction):
            den = v.denominator % p
            if den == 0:
                raise SingularPoint("denominator divisible by p")
            self.v = v.numerator * pow(den, -1, p) % p
        else:
            self.v = int(v) % p

    def _co(self, other) -> "Fp":
        if isinstance(other, Fp):
            return other
        return Fp(other, self.p)

    def __add__(self, other):
        o = self._co(other)
        return Fp((self.v + o.v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return Fp((self.v - o.v) % self.p, self.p)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return Fp(self.v * o.v % self.p, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise SingularPoint("inverse of zero")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __neg__(self):
        return Fp(-self.v % self.p, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Fp)):
            try:
                return self.v == self._co(other).v
            except SingularPoint:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v})"


def sqrt_fp(a: Fp) -> Fp | None:
    """A square root of ``a`` when ``p % 4 == 3`` and one exists."""
    p = a.p
    if p % 4 != 3:
        raise NotImplementedError("only p = 3 mod 4 supported")
    r = Fp(pow(a.v, (p + 1) // 4, p), p)
    return r if r * r == a else None


class Dual:
    """First-order jet ``a + b*eps`` with ``eps**2 = 0``.

    Evaluating a polynomial at a point whose coordinates are duals yields
    the value together with one directional derivative.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    def _co(self, other):
        return other if isinstance(other, Dual) else Dual(other, 0 * other)

    def __add__(self, other):
        o = self._co(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self):
        ia = 1 / self.a if not isinstance(self.a, Fp) else self.a.inverse()
        return Dual(ia, -self.b * ia * ia)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Dual(1 + 0 * self.a, 0 * self.b)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self):
        return f"Dual({self.a!r}, {self.b!r})"
