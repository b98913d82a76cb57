"""Triangle quivers, the A_n quiver, its glued and doubled versions.

Vertex conventions
------------------
``Z[a,b,c]`` with ``a+b+c = n`` are the triangle vertices.  Cycle variables
``X[l,j]`` carry the cycle number ``l`` and a cyclic position ``j``
(``1 <= j <= N_l``); the linear index is ``n*(l-1) + j``.

The glued quiver lives on lattice positions ``(alpha, beta)`` with
``0 <= alpha <= n-2`` and ``0 <= beta <= n``; every unit triangle carries
the arrows ``(a,b) -> (a,b+1) -> (a+1,b) -> (a,b)``.  Wrapping ``beta``
modulo ``n`` gives the doubled quiver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .cluster import Seed, _freeze
from .exact import LaurentPoly, Ring


class UnsupportedN(ValueError):
    pass


class TemplateInvalid(ValueError):
    pass


def _check_n(n: int):
    if n < 3:
        raise UnsupportedN(f"unsupported-n: n={n} (need n >= 3)")


# ---- indexing -----------------------------------------------------------
def cycle_count(n: int) -> int:
    return n // 2


def cycle_length(n: int, l: int) -> int:
    if not 1 <= l <= n // 2:
        raise ValueError(f"cycle {l} out of range for n={n}")
    return n // 2 if 2 * l == n else n


def wrap(j: int, N: int) -> int:
    """Cyclic position in 1..N."""
    return (j - 1) % N + 1


def linear_index(n: int, l: int, j: int) -> int:
    """1-based linear index of X[l,j]."""
    return n * (l - 1) + wrap(j, cycle_length(n, l))


def cycle_indices(n: int, l: int) -> list[int]:
    N = cycle_length(n, l)
    return [n * (l - 1) + j for j in range(1, N + 1)]


def x_label(l: int, j: int, tilde: bool = False) -> str:
    return f"{'Xt' if tilde else 'X'}[{l},{j}]"


def z_label(a: int, b: int, c: int) -> str:
    return f"Z[{a},{b},{c}]"


def an_labels(n: int) -> list[str]:
    out = []
    for l in range(1, n // 2 + 1):
        for j in range(1, cycle_length(n, l) + 1):
            out.append(x_label(l, j))
    return out


def an_ring(n: int, D: int = 1) -> Ring:
    return Ring(an_labels(n), D)


def parse_label(s: str) -> tuple:
    head, rest = s.split("[", 1)
    nums = tuple(int(x) for x in rest.rstrip("]").split(","))
    return head, nums


@dataclass(frozen=True)
class AnIndex:
    n: int
    l: int
    j: int

    def __post_init__(self):
        N = cycle_length(self.n, self.l)
        if not 1 <= self.j <= N:
            object.__setattr__(self, "j", wrap(self.j, N))

    @property
    def linear(self) -> int:
        return linear_index(self.n, self.l, self.j)

    @property
    def label(self) -> str:
        return x_label(self.l, self.j)


# ---- SL_n triangle -----------------------------------------------------------
def triangle_points(n: int, keep_corners: bool = False) -> list[tuple[int, int, int]]:
    """Rows from the top (c = n) down; within a row from left (b = 0) to right."""
    pts = []
    for c in range(n, -1, -1):
        k = n - c
        for a in range(k, -1, -1):
            p = (a, k - a, c)
            if not keep_corners and max(p) == n:
                continue
            pts.append(p)
    return pts


def _on_common_side(p, q) -> bool:
    return any(p[i] == 0 and q[i] == 0 for i in range(3))


def build_sln_quiver(n: int, keep_corners: bool = False) -> Seed:
    """The triangle quiver with frozen boundary and half arrows along the sides.

    Only arrows running along a side of the triangle (both ends sharing a
    zero coordinate) carry weight 1/2.
    """
    _check_n(n)
    pts = triangle_points(n, keep_corners)
    idx = {p: i for i, p in enumerate(pts)}
    arrows = []
    for a in range(n):
        for b in range(n - a):
            c = n - 1 - a - b
            tri = [(a, b, c + 1), (a, b + 1, c), (a + 1, b, c)]
            for s, t in zip(tri, tri[1:] + tri[:1]):
                if s in idx and t in idx:
                    w = Fraction(1, 2) if _on_common_side(s, t) else Fraction(1)
                    arrows.append((idx[s], idx[t], w))
    frozen = [0 in p for p in pts]
    return Seed.from_arrows(len(pts), arrows, labels=[z_label(*p) for p in pts], frozen=frozen)


def z_to_x(n: int) -> dict[tuple[int, int, int], tuple[int, int]]:
    """Which cycle variable each kept triangle vertex becomes."""
    out = {}
    for l in range(1, n // 2 + 1):
        if 2 * l == n:
            for b in range(l + 1):
                out[(l, b, l - b)] = (l, wrap(b + 2, l))
            continue
        for b in range(n - l + 1):
            out[(l, b, n - l - b)] = (l, wrap(l + 2 + b, n))
        for b in range(l + 1):
            out[(n - l, b, l - b)] = (l, wrap(b + 2, n))
    return out


def build_an_quiver(n: int) -> tuple[Seed, dict]:
    """Amalgamate the two glued sides, drop the third side, unfreeze.

    Returns the seed (vertices in linear-index order) and the map from
    triangle vertices to cycle indices ``(l, j)``.
    """
    _check_n(n)
    sl = build_sln_quiver(n)
    pts = triangle_points(n)
    zx = z_to_x(n)
    labels = an_labels(n)
    pos = {s: i for i, s in enumerate(labels)}
    N = len(labels)
    b = [[0] * N for _ in range(N)]
    for i, p in enumerate(pts):
        if p[0] == 0:
            continue
        for j, q in enumerate(pts):
            if q[0] == 0:
                continue
            u = pos[x_label(*zx[p])]
            v = pos[x_label(*zx[q])]
            if u != v:
                b[u][v] += sl.exchange[i][j]
    seed = Seed(_freeze(b), (False,) * N, tuple(labels))
    return seed, zx


# ---- lattice model -----------------------------------------------------------
def lattice_cycle(n: int, alpha: int) -> int:
    return min(alpha + 1, n - 1 - alpha)


def lattice_label(n: int, alpha: int, beta: int) -> tuple[int, int]:
    """Cycle index (l, j) sitting at lattice position (alpha, beta)."""
    l = lattice_cycle(n, alpha)
    off = alpha + 3 if 2 * (alpha + 1) < n else 2
    return l, wrap(beta + off, cycle_length(n, l))


def lattice_is_tilde(n: int, alpha: int, beta: int) -> bool:
    if 2 * (alpha + 1) < n:
        return False
    if 2 * (alpha + 1) > n:
        return True
    m = n // 2
    return not ((beta + 1) % n < m)


def build_glued(n: int) -> Seed:
    """Planar glued quiver; vertices carry their position in the label."""
    _check_n(n)
    pos = [(a, b) for a in range(n - 1) for b in range(n + 1)]
    idx = {p: i for i, p in enumerate(pos)}
    arrows = []
    for a in range(n - 1):
        for b in range(n + 1):
            if b + 1 <= n:
                arrows.append((idx[(a, b)], idx[(a, b + 1)], 1))
            if a + 1 <= n - 2:
                if b + 1 <= n:
                    arrows.append((idx[(a, b + 1)], idx[(a + 1, b)], 1))
                w = Fraction(1, 2) if b in (0, n) else 1
                arrows.append((idx[(a + 1, b)], idx[(a, b)], w))
    labels = []
    for a, b in pos:
        l, j = lattice_label(n, a, b)
        labels.append(f"{x_label(l, j, lattice_is_tilde(n, a, b))}@{a},{b}")
    frozen = [b in (0, n) for a, b in pos]
    return Seed.from_arrows(len(pos), arrows, labels=labels, frozen=frozen)


def doubled_labels(n: int) -> list[str]:
    out = []
    for tilde in (False, True):
        for l in range(1, n // 2 + 1):
            for j in range(1, cycle_length(n, l) + 1):
                out.append(x_label(l, j, tilde))
    return out


def generate_doubled(n: int) -> Seed:
    """Doubled quiver from the cylinder lattice (any n >= 3)."""
    _check_n(n)
    labels = doubled_labels(n)
    idx = {s: i for i, s in enumerate(labels)}

    def v(a, b):
        l, j = lattice_label(n, a, b % n)
        return idx[x_label(l, j, lattice_is_tilde(n, a, b % n))]

    N = len(labels)
    b2 = [[0] * N for _ in range(N)]

    def add(s, t):
        b2[s][t] += 2
        b2[t][s] -= 2

    for a in range(n - 1):
        for b in range(n):
            add(v(a, b), v(a, b + 1))
            if a + 1 <= n - 2:
                add(v(a, b + 1), v(a + 1, b))
                add(v(a + 1, b), v(a, b))
    return Seed(_freeze(b2), (False,) * N, tuple(labels))


@lru_cache(maxsize=None)
def _templates() -> dict:
    with resources.files("angroupoid.data").joinpath("doubled_templates.json").open() as fh:
        return json.load(fh)


def registered_templates() -> list[int]:
    return sorted(int(k) for k in _templates())


def template_seed(n: int) -> Seed:
    t = _templates().get(str(n))
    if t is None:
        raise UnsupportedN(f"unsupported-n: no doubled template for n={n}")
    want = doubled_labels(n)
    if sorted(t["labels"]) != sorted(want):
        raise TemplateInvalid("template labels do not match the doubled index set")
    src = {s: i for i, s in enumerate(t["labels"])}
    perm = [src[s] for s in want]
    b = t["exchange_x2"]
    rows = [[b[perm[i]][perm[j]] for j in range(len(want))] for i in range(len(want))]
    return Seed(_freeze(rows), (False,) * len(want), tuple(want))


def doubled_cycles(n: int) -> list[tuple[str, list[str]]]:
    """Main cycles of the doubled quiver as (name, labels in cycle order)."""
    m = n // 2
    out = []
    for l in range(1, m + 1):
        N = cycle_length(n, l)
        if 2 * l == n:
            seq = [x_label(l, j, True) for j in range(1, N + 1)] + [x_label(l, j) for j in range(1, N + 1)]
            out.append((f"f{l}", seq))
        else:
            out.append((f"f{l}", [x_label(l, j) for j in range(1, N + 1)]))
            out.append((f"ft{l}", [x_label(l, j, True) for j in range(1, N + 1)]))
    return out


def validate_doubled(seed: Seed, n: int) -> list[str]:
    """Run the V1-V3 battery; returns a list of problems (empty when valid)."""
    problems = []
    pos = {s: i for i, s in enumerate(seed.labels)}
    b = seed.exchange
    for name, cyc in doubled_cycles(n):
        ids = [pos[s] for s in cyc]
        N = len(ids)
        for a in range(N):
            for c in range(N):
                want = 2 if c == (a + 1) % N else (-2 if a == (c + 1) % N else 0)
                if b[ids[a]][ids[c]] != want:
                    problems.append(f"V1 {name}: bad arrow {cyc[a]}->{cyc[c]}")
        inside = set(ids)
        for v in range(seed.size):
            if v in inside:
                continue
            if sum(b[v][j] for j in ids) != 0:
                problems.append(f"V2 {name}: unbalanced against {seed.labels[v]}")
    an, _ = build_an_quiver(n)
    proj = project_doubled_exchange(seed, n)
    for i in range(an.size):
        for j in range(an.size):
            x, y = an.exchange[i][j], proj[i][j]
            if (x > 0) != (y > 0) or (x < 0) != (y < 0):
                problems.append(f"V3 sign mismatch at {an.labels[i]},{an.labels[j]}")
    return problems


def project_doubled_exchange(seed: Seed, n: int) -> list[list[int]]:
    labels = an_labels(n)
    pos = {s: i for i, s in enumerate(labels)}
    N = len(labels)
    out = [[0] * N for _ in range(N)]
    tgt = [pos[s.replace("Xt[", "X[")] for s in seed.labels]
    for i in range(seed.size):
        for j in range(seed.size):
            if tgt[i] != tgt[j]:
                out[tgt[i]][tgt[j]] += seed.exchange[i][j]
    return out


def build_doubled(n: int, generated: bool = False) -> tuple[Seed, dict[str, str]]:
    """Doubled quiver plus the projection map (tilde label -> plain label).

    Registered templates cover n = 3..6; ``generated=True`` uses the
    cylinder construction instead, for any n.
    """
    seed = generate_doubled(n) if generated else template_seed(n)
    problems = validate_doubled(seed, n)
    if problems:
        raise TemplateInvalid("; ".join(problems[:5]))
    proj = {s: s.replace("Xt[", "X[") for s in seed.labels}
    return seed, proj


def locus_restrict(f, n: int, ring: Ring | None = None):
    """Substitute tilde variables by their plain counterparts."""
    ring = ring or an_ring(n, (f.ring.D if isinstance(f, LaurentPoly) else f.num.ring.D))
    mapping = {s: s.replace("Xt[", "X[") for s in (f.ring.names)}
    return f.to_ring(ring, mapping)


def shift_relabel(n: int, m: int) -> list[int]:
    """0-based permutation sigma with X[l,j] -> X[l,j+m]."""
    labels = an_labels(n)
    pos = {s: i for i, s in enumerate(labels)}
    out = []
    for s in labels:
        _, (l, j) = parse_label(s)
        out.append(pos[x_label(l, wrap(j + m, cycle_length(n, l)))])
    return out


def is_automorphism(seed: Seed, sigma: list[int]) -> bool:
    b = seed.exchange
    n = seed.size
    return all(b[sigma[i]][sigma[j]] == b[i][j] for i in range(n) for j in range(n))
