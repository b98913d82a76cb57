"""Half-lattice functions pulled back along one mutation, and the M^(1/2) L test."""

from __future__ import annotations

from fractions import Fraction

from ..cluster import Seed
from ..exact import LaurentPoly


class NotLaurent(ValueError):
    pass


def _divide_one_plus(f: LaurentPoly, k: int) -> LaurentPoly:
    """Exact quotient f / (1 + X_k); raises NotLaurent on a remainder."""
    D = f.ring.D
    groups: dict = {}
    for e, c in f.terms.items():
        rest = e[:k] + (0,) + e[k + 1:]
        groups.setdefault(rest, {})[e[k]] = c
    out = {}
    for rest, poly in groups.items():
        poly = dict(poly)
        top = max(poly)
        while poly:
            a = min(poly)
            if a + D > top:
                raise NotLaurent("remainder after dividing by (1 + X_k)")
            c = poly.pop(a)
            key = rest[:k] + (a,) + rest[k + 1:]
            out[key] = c
            b = poly.get(a + D, 0) - c
            if b:
                poly[a + D] = b
            else:
                poly.pop(a + D, None)
    return LaurentPoly(f.ring, out)


def pullback_one(f: LaurentPoly, seed: Seed, k: int) -> LaurentPoly:
    """Rewrite ``f`` (in the variables of ``seed``) in those of ``seed.mutate(k)``.

    This is ``pullback_x`` of the mutated seed (mutation is an involution):
    X_k -> X_k^-1 and X_i -> X_i (1 + X_k^(-sgn e_ki))^(-e_ki) with the
    exchange matrix of ``seed``.  Half-integer exponents are fine as long as
    the resulting powers of (1 + X_k) are integral.
    """
    ring = f.ring
    D = ring.D
    eps = [seed.eps(k, i) for i in range(seed.size)]
    one_plus = ring.one() + ring.from_exp([D if t == k else 0 for t in range(ring.nvars)])
    parts = []
    for e, c in f.terms.items():
        power = Fraction(0)
        shift = Fraction(0)
        for i, ei in enumerate(e):
            if i == k or not ei or not eps[i]:
                continue
            x = eps[i] * Fraction(ei, D)
            power -= x
            if eps[i] > 0:
                shift += x
        if power.denominator != 1:
            raise NotLaurent(f"fractional power of (1 + X_k) in term {e}")
        e2 = list(e)
        e2[k] = -e[k] + shift * D
        if Fraction(e2[k]).denominator != 1:
            raise NotLaurent("off-lattice exponent")
        e2[k] = int(e2[k])
        parts.append((ring.from_exp(e2, c), int(power)))
    pmin = min(p for _, p in parts)
    N = ring.zero()
    for m, p in parts:
        N = N + m * one_plus ** (p - pmin)
    for _ in range(-pmin):
        N = _divide_one_plus(N, k)
    if pmin > 0:
        N = N * one_plus ** pmin
    return N


def has_half_form(f: LaurentPoly) -> bool:
    """f / (min monomial) has positive integer coefficients and integral exponents."""
    if not f.terms:
        return False
    low = f.min_exponent()
    D = f.ring.D
    for e, c in f.terms.items():
        if not (Fraction(c).denominator == 1 and c > 0):
            return False
        if any((a - b) % D for a, b in zip(e, low)):
            return False
    return True


def half_form_stability(n: int) -> list[tuple[int, int, int]]:
    """(i, j, k) for every geodesic A[i,j] that loses the half form under mu_k.

    Empty means every geodesic keeps it after every single mutation.
    """
    from ..an_quiver import build_an_quiver
    from .geodesics import geodesic

    seed, _ = build_an_quiver(n)
    bad = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            f = geodesic(n, i, j)
            for k in seed.mutable():
                try:
                    ok = has_half_form(pullback_one(f, seed, k))
                except NotLaurent:
                    ok = False
                if not ok:
                    bad.append((i, j, k))
    return bad
