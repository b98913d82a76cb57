"""Formal geodesic functions in the cycle variables X[l,j].

Everything lives in ``an_ring(n, D=2)``: exponents are half-integers.  The
parallelogram of ``A[i,j]`` is read off the glued lattice: position
``(alpha, beta)`` with ``beta`` in ``[i, j-1]`` and ``alpha + beta`` in
``[j-1, n+i-2]``.  In the coordinates ``(beta, s = alpha + beta)`` it is a
rectangle, ordered componentwise; each down-set contributes the monomial
with exponent +1/2 on its members and -1/2 elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..an_quiver import an_ring, lattice_label, x_label
from ..exact import LaurentPoly, Ring

HALF = Fraction(1, 2)


def geodesic_ring(n: int) -> Ring:
    return an_ring(n, 2)


def bracket_symbol(vars: Sequence[str], ring: Ring) -> LaurentPoly:
    """<a1 ... ak> = (a1...ak)^(1/2) (1 + 1/a1 + 1/(a1 a2) + ... + 1/(a1...ak))."""
    if not vars:
        raise ValueError("bracket symbol needs at least one variable")
    k = len(vars)
    out = ring.zero()
    for r in range(k + 1):
        powers: dict = {}
        for t, v in enumerate(vars):
            powers[v] = powers.get(v, 0) + (-HALF if t < r else HALF)
        out = out + ring.monomial(powers)
    return out


def _check_pair(n: int, i: int, j: int):
    if not (1 <= i < j <= n):
        raise ValueError(f"bad geodesic indices ({i},{j}) for n={n}")


def parallelogram(n: int, i: int, j: int) -> dict[tuple[int, int], str]:
    """(beta, s) -> X label for the cells of the parallelogram of A[i,j]."""
    _check_pair(n, i, j)
    cells = {}
    for beta in range(i, j):
        for s in range(j - 1, n + i - 1):
            l, jj = lattice_label(n, s - beta, beta)
            cells[(beta, s)] = x_label(l, jj)
    return cells


def elementary_path(n: int, q: int) -> list[str]:
    """Variables of A[q,q+1] in bracket order (top of the lattice first)."""
    if not 1 <= q <= n - 1:
        raise ValueError(f"bad q={q} for n={n}")
    return [x_label(*lattice_label(n, alpha, q)) for alpha in range(n - 2, -1, -1)]


def elementary_geodesic(n: int, q: int, ring: Ring | None = None) -> LaurentPoly:
    return bracket_symbol(elementary_path(n, q), ring or geodesic_ring(n))


def _thresholds(width: int, lo: int, hi: int):
    """Nonincreasing sequences t_0 >= ... >= t_{width-1} in [lo-1, hi]."""
    def rec(k, cap):
        if k == width:
            yield ()
            return
        for t in range(cap, lo - 2, -1):
            for rest in rec(k + 1, t):
                yield (t,) + rest
    yield from rec(0, hi)


def geodesic_parallelogram(n: int, i: int, j: int, ring: Ring | None = None) -> LaurentPoly:
    ring = ring or geodesic_ring(n)
    cells = parallelogram(n, i, j)
    lo, hi = j - 1, n + i - 2
    out = ring.zero()
    for ts in _thresholds(j - i, lo, hi):
        powers: dict = {}
        for k, beta in enumerate(range(i, j)):
            for s in range(lo, hi + 1):
                v = cells[(beta, s)]
                powers[v] = powers.get(v, 0) + (HALF if s <= ts[k] else -HALF)
        out = out + ring.monomial(powers)
    return out


def parallelogram_val(n: int, i: int, j: int) -> dict[str, Fraction]:
    """Minimal multidegree: -1/2 on every parallelogram cell."""
    out: dict = {}
    for v in parallelogram(n, i, j).values():
        out[v] = out.get(v, 0) - HALF
    return out


@lru_cache(maxsize=None)
def _geodesic_table(n: int) -> dict:
    ring = geodesic_ring(n)
    return {(i, j): geodesic_parallelogram(n, i, j, ring) for i in range(1, n) for j in range(i + 1, n + 1)}


def geodesic(n: int, i: int, j: int) -> LaurentPoly:
    _check_pair(n, i, j)
    return _geodesic_table(n)[(i, j)]


def a_matrix_x(n: int) -> list[list]:
    """Unipotent upper-triangular matrix of geodesic functions."""
    ring = geodesic_ring(n)
    A = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        A[i - 1][i - 1] = ring.one()
        for j in range(i + 1, n + 1):
            A[i - 1][j - 1] = geodesic(n, i, j)
    return A


def geodesic_recursion(n: int, i: int, j: int) -> LaurentPoly:
    """A[i,j] = 1/2 A[i,i+1] A[i+1,j] - {A[i,i+1], A[i+1,j]}, recursively."""
    from ..an_quiver import build_an_quiver
    from .poisson import bracket_symbolic

    _check_pair(n, i, j)
    seed, _ = build_an_quiver(n)
    ring = geodesic_ring(n)

    @lru_cache(maxsize=None)
    def rec(a: int, b: int) -> LaurentPoly:
        if b == a + 1:
            return elementary_geodesic(n, a, ring)
        left, right = rec(a, a + 1), rec(a + 1, b)
        return left * right * HALF - bracket_symbolic(left, right, seed)

    return rec(i, j)
