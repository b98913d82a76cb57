"""Log-canonical Poisson brackets and the Bondal relations.

With {X_a, X_b} = eps_ab X_a X_b the bracket of two functions is
sum_ab eps_ab (E_a f)(E_b g), where E_a = X_a d/dX_a.  Euler operators keep
half-integer lattices intact, so no change of variables is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..cluster import Seed
from ..exact import LaurentPoly, RatFunc, Sampler

HALF = Fraction(1, 2)


def _eulers(f, names):
    return [f.euler(v) for v in names]


def bracket_symbolic(f, g, seed: Seed):
    """Exact bracket of two Laurent polynomials / rational functions."""
    names = f.ring.names
    Ef, Eg = _eulers(f, names), _eulers(g, names)
    eps = seed.eps_matrix()
    out = f.ring.zero() if isinstance(f, LaurentPoly) else None
    for a in range(len(names)):
        if Ef[a] == 0:
            continue
        for b in range(len(names)):
            e = eps[a][b]
            if e == 0 or Eg[b] == 0:
                continue
            t = Ef[a] * Eg[b] * e
            out = t if out is None else out + t
    return out if out is not None else f.ring.zero()


def poisson_bracket(f, g, seed: Seed, x):
    """{f, g} at the point whose D-th roots are ``x`` (D = ring denominator)."""
    names = f.ring.names
    Ef = [f.euler(v).eval_roots(x) for v in names]
    Eg = [g.euler(v).eval_roots(x) for v in names]
    eps = seed.eps_matrix()
    total = 0
    for a in range(len(names)):
        for b in range(len(names)):
            if eps[a][b]:
                total = total + Ef[a] * Eg[b] * eps[a][b]
    return total


# ---- Bondal relations ---------------------------------------------------------
def bondal_relations(n: int):
    """Yield (family, (i,j,k,l) data, lhs pair, rhs builder) for all tuples.

    rhs is a list of (coeff, [pairs...]) meaning sum coeff * prod A[pair].
    """
    idx = range(1, n + 1)
    for i, k, j, l in combinations(idx, 4):
        # i<k<j<l
        yield "zero-nested", ((i, k), (j, l)), []
    for i, j, l, k in combinations(idx, 4):
        # i<j<l<k
        yield "zero-disjoint", ((i, k), (j, l)), []
    for i, j, k, l in combinations(idx, 4):
        yield "crossing", ((i, k), (j, l)), [(1, [(i, j), (k, l)]), (-1, [(i, l), (j, k)])]
    for i, k, l in combinations(idx, 3):
        yield "chain", ((i, k), (k, l)), [(HALF, [(i, k), (k, l)]), (-1, [(i, l)])]
    for i, j, k in combinations(idx, 3):
        yield "common-end", ((i, k), (j, k)), [(-HALF, [(i, k), (j, k)]), (1, [(i, j)])]
    for i, k, l in combinations(idx, 3):
        yield "common-start", ((i, k), (i, l)), [(-HALF, [(i, k), (i, l)]), (1, [(k, l)])]


@dataclass
class BondalReport:
    n: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def _entry(table, pair, one):
    i, j = pair
    if i == j:
        return one
    if i < j:
        return table[(i, j)]
    raise KeyError(pair)


def bondal_check(
    n: int,
    trials: int = 8,
    *,
    seed: int = 0,
    prime: int | None = None,
    symbolic: bool | None = None,
    table: dict | None = None,
) -> BondalReport:
    """Check every Bondal relation; symbolic for n == 3 unless told otherwise."""
    from ..an_quiver import build_an_quiver
    from .geodesics import geodesic, geodesic_ring

    qs, _ = build_an_quiver(n)
    ring = geodesic_ring(n)
    if table is None:
        table = {(i, j): geodesic(n, i, j) for i in range(1, n) for j in range(i + 1, n + 1)}
    rels = list(bondal_relations(n))
    rep = BondalReport(n)
    if symbolic if symbolic is not None else n <= 3:
        for fam, (p, q), rhs in rels:
            lhs = bracket_symbolic(table[p], table[q], qs)
            r = ring.zero()
            for c, prs in rhs:
                t = ring.const(c)
                for pr in prs:
                    t = t * table[pr]
                r = r + t
            rep.checked += 1
            if lhs != r:
                rep.failures.append((fam, p, q))
        return rep
    s = Sampler(seed, prime) if prime else Sampler(seed)
    names = ring.names
    eps = qs.eps_matrix()
    euler = {k: [f.euler(v) for v in names] for k, f in table.items()}
    for _ in range(trials):
        u = s.point(len(names))
        vals = {k: f.eval_roots(u) for k, f in table.items()}
        ev = {k: [e.eval_roots(u) for e in es] for k, es in euler.items()}
        for fam, (p, q), rhs in rels:
            lhs = 0
            for a in range(len(names)):
                for b in range(len(names)):
                    if eps[a][b]:
                        lhs = lhs + ev[p][a] * ev[q][b] * eps[a][b]
            r = 0
            for c, prs in rhs:
                t = c
                for pr in prs:
                    t = t * vals[pr]
                r = r + t
            rep.checked += 1
            if lhs != r and (fam, p, q) not in rep.failures:
                rep.failures.append((fam, p, q))
    return rep
