"""Sparse multivariate Laurent polynomials with rational coefficients.

Exponents live on the lattice ``(1/D) Z^N``: a term is keyed by an integer
vector ``e`` and stands for ``prod X_i ** (e_i / D)``.  The denominator ``D``
belongs to the :class:`Ring`, so all polynomials of one ring share it.
"""

from __future__ import annotations

import contextvars
from fractions import Fraction
from typing import Iterable, Mapping

Scalar = int | Fraction

DEFAULT_BUDGET = 200_000
_budget = contextvars.ContextVar("term_budget", default=DEFAULT_BUDGET)


class BudgetExceeded(RuntimeError):
    """A symbolic computation grew past the configured term budget."""


class FractionalExponent(ValueError):
    pass


class MissingVariable(KeyError):
    pass


def term_budget() -> int:
    return _budget.get()


class budget:
    """Context manager temporarily changing the symbolic term budget."""

    def __init__(self, terms: int):
        self.terms = terms

    def __enter__(self):
        self._tok = _budget.set(self.terms)
        return self

    def __exit__(self, *exc):
        _budget.reset(self._tok)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Ring:
    """Variable names plus the lattice denominator."""

    __slots__ = ("names", "D", "index", "_key")

    def __init__(self, names: Iterable[str], D: int = 1):
        self.names = tuple(names)
        if D < 1:
            raise ValueError("lattice denominator must be positive")
        self.D = D
        self.index = {s: i for i, s in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate variable names")
        self._key = (self.names, D)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Ring({len(self.names)} vars, D={self.D})"

    def zero_exp(self) -> tuple:
        return (0,) * len(self.names)

    def _idx(self, v) -> int:
        if isinstance(v, int):
            return v
        try:
            return self.index[v]
        except KeyError:
            raise MissingVariable(v) from None

    def const(self, c: Scalar) -> "LaurentPoly":
        return LaurentPoly(self, {self.zero_exp(): c})

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def var(self, v, power: Scalar = 1) -> "LaurentPoly":
        return self.monomial({v: power})

    def gens(self) -> list["LaurentPoly"]:
        return [self.var(i) for i in range(self.nvars)]

    def lattice_exp(self, powers: Mapping) -> tuple:
        """Integer key for the monomial ``prod v**p`` (p may be fractional)."""
        e = [0] * len(self.names)
        for v, p in powers.items():
            k = Fraction(p) * self.D
            if k.denominator != 1:
                raise FractionalExponent(f"{v}**{p} not on the 1/{self.D} lattice")
            e[self._idx(v)] += k.numerator
        return tuple(e)

    def monomial(self, powers: Mapping, coeff: Scalar = 1) -> "LaurentPoly":
        return LaurentPoly(self, {self.lattice_exp(powers): coeff})

    def from_exp(self, e: Iterable[int], coeff: Scalar = 1) -> "LaurentPoly":
        return LaurentPoly(self, {tuple(e): coeff})

    def with_denominator(self, D: int) -> "Ring":
        return Ring(self.names, D)


class LaurentPoly:
    """Immutable sparse Laurent polynomial; zero coefficients never stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple, Scalar] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[e] = _norm(c)
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # ---- coercion -------------------------------------------------------
    def _co(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # ---- predicates -----------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp() in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get(self.ring.zero_exp(), 0)

    def coefficients_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    # ---- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return LaurentPoly._raw(self.ring, {e: _norm(c * other) for e, c in self.terms.items()})
        o = self._co(other)
        if o is NotImplemented:
            return o
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        limit = _budget.get()
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
            if len(out) > limit:
                raise BudgetExceeded(f"product exceeds {limit} terms")
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be inverted")
            return self.monomial_inverse() ** (-k)
        if self.is_monomial():
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.ring, {tuple(x * k for x in e): _norm(Fraction(c) ** k)})
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def monomial_inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ValueError("not a monomial")
        (e, c), = self.terms.items()
        return LaurentPoly._raw(self.ring, {tuple(-x for x in e): _norm(1 / Fraction(c))})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._co(other)
        if o is not NotImplemented and o.is_monomial():
            return self * o.monomial_inverse()
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # ---- calculus -------------------------------------------------------
    def derivative(self, v) -> "LaurentPoly":
        i = self.ring._idx(v)
        D = self.ring.D
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= D
                out[tuple(ne)] = c * Fraction(e[i], D)
        return LaurentPoly(self.ring, out)

    def euler(self, v) -> "LaurentPoly":
        """``X_v * d/dX_v``; stays on the same lattice."""
        i = self.ring._idx(v)
        D = self.ring.D
        return LaurentPoly(self.ring, {e: c * Fraction(e[i], D) for e, c in self.terms.items()})

    # ---- evaluation -----------------------------------------------------
    def _values(self, point, roots: bool):
        names = self.ring.names
        vals = []
        used = [any(e[i] for e in self.terms) for i in range(len(names))]
        for i, s in enumerate(names):
            if not used[i]:
                vals.append(None)
                continue
            if isinstance(point, Mapping):
                if s in point:
                    vals.append(point[s])
                elif i in point:
                    vals.append(point[i])
                else:
                    raise MissingVariable(s)
            else:
                vals.append(point[i])
        return vals

    def eval(self, point):
        """Value at ``point`` (mapping name/index -> value, or a sequence).

        Requires every exponent to be integral.
        """
        D = self.ring.D
        if D != 1:
            for e in self.terms:
                if any(x % D for x in e):
                    raise FractionalExponent("exponent not integral at evaluation")
        vals = self._values(point, False)
        return _eval_terms(self.terms, vals, D)

    def eval_roots(self, roots):
        """Value when ``roots[i]`` is a chosen ``D``-th root of variable ``i``."""
        vals = self._values(roots, True)
        return _eval_terms(self.terms, vals, 1)

    # ---- structure ------------------------------------------------------
    def min_exponent(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponent(self) -> tuple:
        return tuple(max(col) for col in zip(*self.terms))

    def val(self) -> tuple:
        """Unique componentwise-minimal exponent (lattice units)."""
        m = self.min_exponent()
        if m not in self.terms:
            raise ValueError("no unique minimal multidegree")
        return m

    def shift(self, e: Iterable[int]) -> "LaurentPoly":
        e = tuple(e)
        return LaurentPoly._raw(
            self.ring, {tuple(x + y for x, y in zip(k, e)): c for k, c in self.terms.items()}
        )

    def rescale(self, D: int) -> "LaurentPoly":
        if D % self.ring.D:
            raise ValueError("new denominator must be a multiple of the old one")
        f = D // self.ring.D
        ring = self.ring.with_denominator(D)
        return LaurentPoly._raw(ring, {tuple(x * f for x in e): c for e, c in self.terms.items()})

    def coarsen(self) -> "LaurentPoly":
        """Move to the smallest lattice denominator that still holds every exponent."""
        from math import gcd

        g = self.ring.D
        for e in self.terms:
            for x in e:
                g = gcd(g, x)
        if g <= 1:
            return self
        ring = self.ring.with_denominator(self.ring.D // g)
        return LaurentPoly._raw(ring, {tuple(x // g for x in e): c for e, c in self.terms.items()})

    def to_ring(self, ring: Ring, mapping: Mapping | None = None) -> "LaurentPoly":
        """Re-express in ``ring``; variables map by name unless ``mapping`` given.

        Several source variables may map onto one target variable (exponents add).
        The lattice denominators must be compatible.
        """
        if ring.D % self.ring.D:
            raise ValueError("target lattice too coarse")
        f = ring.D // self.ring.D
        target = []
        for s in self.ring.names:
            t = mapping.get(s, s) if mapping else s
            target.append(None if t is None else ring._idx(t))
        out: dict = {}
        zero = [0] * ring.nvars
        for e, c in self.terms.items():
            ne = list(zero)
            for i, x in enumerate(e):
                if x:
                    t = target[i]
                    if t is None:
                        raise MissingVariable(self.ring.names[i])
                    ne[t] += x * f
            k = tuple(ne)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(ring, out)

    def substitute(self, images: Mapping, one=None):
        """Evaluate with each variable replaced by an element of any ring-like type.

        ``images`` maps variable name/index to a value supporting ``*`` and
        integer powers.  Variables not listed stay as themselves.
        """
        D = self.ring.D
        if D != 1:
            for e in self.terms:
                if any(x % D for x in e):
                    raise FractionalExponent("substitution needs integral exponents")
        acc = None
        for e, c in self.terms.items():
            t = None
            rest = [0] * self.ring.nvars
            for i, x in enumerate(e):
                if not x:
                    continue
                s = self.ring.names[i]
                img = images.get(s, images.get(i))
                if img is None:
                    rest[i] = x
                    continue
                p = img ** (x // D)
                t = p if t is None else t * p
            mono = LaurentPoly._raw(self.ring, {tuple(rest): c})
            t = mono if t is None else t * mono
            acc = t if acc is None else acc + t
        if acc is None:
            return self.ring.zero() if one is None else one * 0
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{self.ring.names[i]}" + ("" if x == self.ring.D else f"^{Fraction(x, self.ring.D)}")
                for i, x in enumerate(e)
                if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __iter__(self):
        return iter(self.terms.items())


def _eval_terms(terms, vals, D):
    total = None
    cache: dict = {}
    for e, c in terms.items():
        t = None
        for i, x in enumerate(e):
            if not x:
                continue
            k = (i, x // D)
            p = cache.get(k)
            if p is None:
                p = vals[i] ** (x // D)
                cache[k] = p
            t = p if t is None else t * p
        if t is None:
            term = c
        else:
            term = t * c
        total = term if total is None else total + term
    return 0 if total is None else total
