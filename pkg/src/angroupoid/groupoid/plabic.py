"""Layered plabic graphs dual to the triangle quiver and their path weights.

Geometry used here: horizontal line ``k`` (1..n) runs between quiver rows
``c = n-k+1`` (above) and ``c = n-k`` (below).  A vertical edge leaving line
``k`` at gap ``a`` crosses row ``c = n-k`` between the vertices with first
coordinate ``a`` and ``a+1``; larger ``a`` is further west.

In ``P`` the horizontal edges run west and a path from the right port ``i``
collects every vertex north or west of it.  In ``P_hat`` the horizontal
edges run east and a path from the left port ``i'`` collects the vertices
south-west of it.  Either way the weight of a path is the product of the
quiver variables on its right-hand side, and that product is pushed onto
single edges so transport entries come from a plain DP.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from ..exact import LaurentPoly, Ring

Variant = Literal["P", "Phat"]


def z_points(n: int) -> list[tuple[int, int, int]]:
    return [
        (a, b, n - a - b)
        for c in range(n, -1, -1)
        for a in range(n - c, -1, -1)
        for b in [n - c - a]
        if max(a, b, n - a - b) < n
    ]


def z_ring(n: int) -> Ring:
    """Triangle variables on the 1/(2n) lattice (room for the D scalars)."""
    return Ring([f"Z[{a},{b},{c}]" for a, b, c in z_points(n)], 2 * n)


@dataclass
class PlabicGraph:
    n: int
    variant: str
    ring: Ring
    # node -> list of (target, weight); nodes are tuples
    edges: dict = field(default_factory=dict)

    def add(self, s, t, w: LaurentPoly):
        self.edges.setdefault(s, []).append((t, w))
        self.edges.setdefault(t, [])

    def sources(self) -> list:
        kind = "R" if self.variant == "P" else "L"
        return [(kind, i) for i in range(1, self.n + 1)]

    def topo_order(self) -> list:
        seen, order = set(), []

        def visit(u):
            if u in seen:
                return
            seen.add(u)
            for v, _ in self.edges.get(u, []):
                visit(v)
            order.append(u)

        for u in list(self.edges):
            visit(u)
        return order[::-1]

    def paths(self, src, dst) -> list[LaurentPoly]:
        """Explicit enumeration of path weights (small n only)."""
        out = []

        def walk(u, w):
            if u == dst:
                out.append(w)
                return
            for v, ew in self.edges.get(u, []):
                walk(v, w * ew)

        walk(src, self.ring.one())
        return out

    def path_sums(self, src) -> dict:
        """Sum of path weights from ``src`` to every reachable node (DP)."""
        acc = {src: self.ring.one()}
        for u in self.topo_order():
            if u not in acc:
                continue
            for v, w in self.edges.get(u, []):
                t = acc[u] * w
                acc[v] = acc[v] + t if v in acc else t
        return acc


def _row_west_of(ring: Ring, n: int, c: int, a: int) -> LaurentPoly:
    """Product of the row-``c`` vertices with first coordinate > a."""
    k = n - c
    out = ring.one()
    for ap in range(a + 1, k + 1):
        p = (ap, k - ap, c)
        if max(p) < n:
            out = out * ring.var(f"Z[{ap},{k - ap},{c}]")
    return out


def _rows_above(ring: Ring, n: int, i: int) -> LaurentPoly:
    out = ring.one()
    for a, b, c in z_points(n):
        if c >= n - i + 1:
            out = out * ring.var(f"Z[{a},{b},{c}]")
    return out


def build_plabic(n: int, variant: Variant = "P") -> PlabicGraph:
    if n < 2:
        raise ValueError("n must be at least 2")
    ring = z_ring(n)
    g = PlabicGraph(n, variant, ring)
    one = ring.one()
    if variant == "P":
        for k in range(1, n + 1):
            g.add(("R", k), ("H", k, 0), _rows_above(ring, n, k))
            for a in range(k):
                g.add(("H", k, a), ("H", k, a + 1), one)
            g.add(("H", k, k), ("L", k), one)
            for a in range(k):
                if k < n:
                    g.add(("H", k, a), ("H", k + 1, a + 1), _row_west_of(ring, n, n - k, a))
                else:
                    g.add(("H", k, a), ("B", n - a), _row_west_of(ring, n, 0, a))
    elif variant == "Phat":
        for k in range(1, n + 1):
            g.add(("L", k), ("H", k, k - 1), one)
            for a in range(k - 1, 0, -1):
                g.add(("H", k, a), ("H", k, a - 1), one)
            for a in range(k):
                if k < n:
                    g.add(("H", k, a), ("H", k + 1, a), _row_west_of(ring, n, n - k, a))
                else:
                    g.add(("H", k, a), ("B", n - a), _row_west_of(ring, n, 0, a))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return g
