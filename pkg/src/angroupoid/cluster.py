"""Seeds, quiver mutation, X/A pullbacks, framing and C-matrix tracking.

Exchange matrices are stored doubled (``b = 2*eps``) so that the half
arrows between frozen vertices stay integral.  ``eps[i][j] > 0`` means
arrows point from ``i`` to ``j``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import LaurentPoly, RatFunc, Ring, SingularPoint
from .exact.laurent import BudgetExceeded

Matrix = tuple[tuple[int, ...], ...]


class FrozenTarget(ValueError):
    pass


class HalfIntegerEntries(ValueError):
    pass


def _freeze(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class Seed:
    exchange: Matrix  # 2 * eps
    frozen: tuple[bool, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.exchange)
        if len(self.frozen) != n or len(self.labels) != n:
            raise ValueError("size mismatch")
        for i in range(n):
            if len(self.exchange[i]) != n:
                raise ValueError("exchange matrix must be square")
            for j in range(n):
                b = self.exchange[i][j]
                if b != -self.exchange[j][i]:
                    raise ValueError("exchange matrix not skew-symmetric")
                if b % 2 and not (self.frozen[i] and self.frozen[j]):
                    raise ValueError(f"half arrow between {i} and {j} needs both frozen")

    @classmethod
    def from_eps(cls, eps, frozen=None, labels=None) -> "Seed":
        n = len(eps)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                v = Fraction(eps[i][j]) * 2
                if v.denominator != 1:
                    raise ValueError("entries must be half-integers")
                b[i][j] = v.numerator
        frozen = tuple(frozen) if frozen is not None else (False,) * n
        labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))
        return cls(_freeze(b), frozen, labels)

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[tuple], labels=None, frozen=None) -> "Seed":
        """Arrows as (i, j) or (i, j, weight) with 0-based vertices."""
        b = [[0] * n for _ in range(n)]
        for a in arrows:
            i, j = a[0], a[1]
            w = Fraction(a[2]) if len(a) > 2 else Fraction(1)
            d = w * 2
            b[i][j] += int(d)
            b[j][i] -= int(d)
        return cls(
            _freeze(b),
            tuple(frozen) if frozen is not None else (False,) * n,
            tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n)),
        )

    # ---- access ---------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.exchange)

    def eps(self, i: int, j: int) -> Fraction:
        return Fraction(self.exchange[i][j], 2)

    def eps_int(self, i: int, j: int) -> int:
        b = self.exchange[i][j]
        if b % 2:
            raise HalfIntegerEntries(f"eps[{i}][{j}] is half-integral")
        return b // 2

    def eps_matrix(self) -> list[list[Fraction]]:
        return [[self.eps(i, j) for j in range(self.size)] for i in range(self.size)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def mutable(self) -> list[int]:
        return [i for i in range(self.size) if not self.frozen[i]]

    def is_integral(self) -> bool:
        return all(x % 2 == 0 for r in self.exchange for x in r)

    # ---- mutation -------------------------------------------------------
    def mutate(self, k: int) -> "Seed":
        if self.frozen[k]:
            raise FrozenTarget(f"vertex {k} is frozen")
        b = self.exchange
        n = self.size
        out = [list(r) for r in b]
        for i in range(n):
            for j in range(n):
                if i == k or j == k:
                    out[i][j] = -b[i][j]
                else:
                    out[i][j] = b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 4
        return Seed(_freeze(out), self.frozen, self.labels)

    def swap(self, j: int, k: int) -> "Seed":
        perm = list(range(self.size))
        perm[j], perm[k] = k, j
        return self.permute(perm)

    def permute(self, perm: Sequence[int]) -> "Seed":
        """New seed whose vertex ``i`` is old vertex ``perm[i]``."""
        b = self.exchange
        out = [[b[perm[i]][perm[j]] for j in range(self.size)] for i in range(self.size)]
        return Seed(
            _freeze(out),
            tuple(self.frozen[p] for p in perm),
            tuple(self.labels[p] for p in perm),
        )

    def subseed(self, idx: Sequence[int]) -> "Seed":
        b = self.exchange
        return Seed(
            _freeze([[b[i][j] for j in idx] for i in idx]),
            tuple(self.frozen[i] for i in idx),
            tuple(self.labels[i] for i in idx),
        )

    def unfreeze(self) -> "Seed":
        return Seed(self.exchange, (False,) * self.size, self.labels)

    # ---- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.size,
            "labels": list(self.labels),
            "frozen": list(self.frozen),
            "exchange_x2": [list(r) for r in self.exchange],
        }

    @classmethod
    def from_json(cls, data) -> "Seed":
        if isinstance(data, str):
            data = json.loads(data)
        if len(data["exchange_x2"]) != data["n"]:
            raise ValueError("n does not match exchange matrix")
        return cls(_freeze(data["exchange_x2"]), tuple(data["frozen"]), tuple(data["labels"]))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for i, lab in enumerate(self.labels):
            shape = "box" if self.frozen[i] else "ellipse"
            lines.append(f'  v{i} [label="{lab}", shape={shape}];')
        for i in range(self.size):
            for j in range(self.size):
                b = self.exchange[i][j]
                if b <= 0:
                    continue
                attrs = []
                if b % 2:
                    attrs.append("style=dashed")
                if b == 4:
                    attrs.append('arrowhead="normalnormal"')
                if b > 2 and b != 4:
                    attrs.append(f'label="{Fraction(b, 2)}"')
                extra = f" [{', '.join(attrs)}]" if attrs else ""
                lines.append(f"  v{i} -> v{j}{extra};")
        lines.append("}")
        return "\n".join(lines)


def ring_for(seed: Seed, D: int = 1) -> Ring:
    return Ring(seed.labels, D)


# ---- X / A dynamics -------------------------------------------------------
def pullback_x(s: Seed, k: int, ring: Ring | None = None) -> list[RatFunc]:
    """Components of (mu_k^X)^*: X_i' as rational functions of the X_i.

    X_i' = X_i (1 + X_k^(-sgn e_ik))^(-e_ik), the Poisson-compatible form
    for {X_i, X_j} = e_ij X_i X_j.
    """
    if s.frozen[k]:
        raise FrozenTarget(f"vertex {k} is frozen")
    ring = ring or ring_for(s)
    gens = ring.gens()
    out = []
    for i in range(s.size):
        if i == k:
            out.append(RatFunc(gens[k] ** -1))
            continue
        e = s.eps_int(i, k)
        if e == 0:
            out.append(RatFunc(gens[i]))
            continue
        sg = 1 if e > 0 else -1
        base = RatFunc(1 + gens[k] ** (-sg))
        out.append(RatFunc(gens[i]) * base ** (-e))
    return out


def step_point_x(s: Seed, k: int, x: Sequence) -> list:
    if s.frozen[k]:
        raise FrozenTarget(f"vertex {k} is frozen")
    xk = x[k]
    if not xk:
        raise SingularPoint("x_k = 0")
    out = list(x)
    plus = 1 + xk
    minus = 1 + 1 / xk
    for i in range(s.size):
        if i == k:
            out[i] = 1 / xk
            continue
        e = s.eps_int(i, k)
        if e == 0:
            continue
        base = minus if e > 0 else plus
        if not base:
            raise SingularPoint("1 + x_k^{+-1} = 0")
        out[i] = x[i] * base ** (-abs(e)) if e > 0 else x[i] * base ** abs(e)
    return out


def pullback_a(s: Seed, k: int, ring: Ring | None = None) -> list[RatFunc]:
    if s.frozen[k]:
        raise FrozenTarget(f"vertex {k} is frozen")
    ring = ring or ring_for(s)
    gens = ring.gens()
    pos = ring.one()
    neg = ring.one()
    for j in range(s.size):
        e = s.eps_int(k, j)
        if e > 0:
            pos = pos * gens[j] ** e
        elif e < 0:
            neg = neg * gens[j] ** (-e)
    out = [RatFunc(g) for g in gens]
    out[k] = RatFunc(pos + neg) / RatFunc(gens[k])
    return out


def step_point_a(s: Seed, k: int, a: Sequence) -> list:
    if s.frozen[k]:
        raise FrozenTarget(f"vertex {k} is frozen")
    pos = 1
    neg = 1
    for j in range(s.size):
        e = s.eps_int(k, j)
        if e > 0:
            pos = pos * a[j] ** e
        elif e < 0:
            neg = neg * a[j] ** (-e)
    if not a[k]:
        raise SingularPoint("a_k = 0")
    out = list(a)
    out[k] = (pos + neg) / a[k]
    return out


def ensemble_pullback(s: Seed, ring: Ring | None = None) -> list[LaurentPoly]:
    """p^*(X_i) = prod_k A_k^{eps_ik}, the orientation that intertwines the X and A mutations."""
    if not s.is_integral():
        raise HalfIntegerEntries("ensemble map needs integral eps")
    ring = ring or ring_for(s)
    return [
        ring.from_exp([s.exchange[i][k] // 2 * ring.D for k in range(s.size)])
        for i in range(s.size)
    ]


def ensemble_point(s: Seed, a: Sequence) -> list:
    if not s.is_integral():
        raise HalfIntegerEntries("ensemble map needs integral eps")
    out = []
    for i in range(s.size):
        v = 1
        for k in range(s.size):
            e = s.exchange[i][k] // 2
            if e:
                v = v * a[k] ** e
        out.append(v)
    return out


def frame(s: Seed) -> Seed:
    """Add a frozen copy k^ of every vertex with one arrow k -> k^."""
    n = s.size
    b = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            b[i][j] = s.exchange[i][j]
        b[i][n + i] = 2
        b[n + i][i] = -2
    return Seed(
        _freeze(b),
        tuple(s.frozen) + (True,) * n,
        tuple(s.labels) + tuple(lab + "^" for lab in s.labels),
    )


def det_int(m) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return det


# ---- words and C-matrices ---------------------------------------------------
@dataclass(frozen=True)
class Mutate:
    k: int


@dataclass(frozen=True)
class Swap:
    j: int
    k: int


Step = Mutate | Swap


def word(*steps) -> tuple:
    """Build a word from ints (mutations) and pairs (swaps)."""
    out = []
    for s in steps:
        if isinstance(s, (Mutate, Swap)):
            out.append(s)
        elif isinstance(s, tuple):
            out.append(Swap(*s))
        else:
            out.append(Mutate(s))
    return tuple(out)


class SignCoherenceError(AssertionError):
    pass


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def c_mutate(C: list[list[int]], s_cur: Seed, k: int) -> list[list[int]]:
    """One step of the C-matrix recursion.

    ``s_cur`` is the seed reached so far, before mutating at ``k``.
    """
    n = len(C)
    out = [row[:] for row in C]
    for i in range(n):
        cik = C[i][k]
        for j in range(n):
            if j == k:
                out[i][j] = -C[i][j]
            else:
                e = s_cur.exchange[j][k] // 2
                out[i][j] = C[i][j] + cik * max(0, e) + max(0, -cik) * e
    return out


def column_sign_coherent(C, j: int) -> bool:
    col = [C[i][j] for i in range(len(C))]
    if not any(col):
        return False
    return all(x >= 0 for x in col) or all(x <= 0 for x in col)


def is_sign_coherent(C) -> bool:
    return all(column_sign_coherent(C, j) for j in range(len(C)))


@dataclass
class WordResult:
    seed: Seed
    C: list[list[int]]
    xmap: list[RatFunc] | None = None
    green: list[bool] | None = None


def apply_word(
    s: Seed,
    w: Iterable[Step],
    *,
    with_xmap: bool = False,
    check_coherence: bool = False,
    ring: Ring | None = None,
) -> WordResult:
    """Run a word, tracking the C-matrix and optionally the composed X-pullback.

    The X-pullback is dropped (left ``None``) if it outgrows the term budget.
    ``green`` records, per mutation step, whether the mutated column was
    nonnegative before the step.
    """
    C = identity(s.size)
    cur = s
    xmap = None
    if with_xmap:
        ring = ring or ring_for(s)
        xmap = [RatFunc(g) for g in ring.gens()]
    green = []
    for step in w:
        if isinstance(step, Swap):
            j, k = step.j, step.k
            cur = cur.swap(j, k)
            for row in C:
                row[j], row[k] = row[k], row[j]
            if xmap is not None:
                xmap[j], xmap[k] = xmap[k], xmap[j]
            continue
        k = step.k
        green.append(all(C[i][k] >= 0 for i in range(len(C))))
        if xmap is not None:
            try:
                xmap = _compose_step(cur, k, xmap)
            except BudgetExceeded:
                xmap = None
        C = c_mutate(C, cur, k)
        cur = cur.mutate(k)
        if check_coherence and not is_sign_coherent(C):
            raise SignCoherenceError(f"C-matrix lost sign coherence at step {step}")
    return WordResult(cur, C, xmap, green)


def _compose_step(s: Seed, k: int, images: list[RatFunc]) -> list[RatFunc]:
    out = list(images)
    xk = images[k]
    out[k] = xk.inverse()
    inv = None
    for i in range(s.size):
        if i == k:
            continue
        e = s.eps_int(i, k)
        if e == 0:
            continue
        if e > 0:
            if inv is None:
                inv = 1 + xk.inverse()
            out[i] = images[i] * inv ** (-e)
        else:
            out[i] = images[i] * (1 + xk) ** (-e)
    return out


def apply_word_point(s: Seed, w: Iterable[Step], x: Sequence, normalize=None) -> tuple[Seed, list]:
    """Push a point through a word.

    Values only need field operations, so symbolic entries work too;
    ``normalize`` (e.g. a cancel routine) is then applied after every step.
    """
    cur = s
    x = list(x)
    for step in w:
        if isinstance(step, Swap):
            cur = cur.swap(step.j, step.k)
            x[step.j], x[step.k] = x[step.k], x[step.j]
        else:
            x = step_point_x(cur, step.k, x)
            if normalize is not None:
                x = [normalize(v) for v in x]
            cur = cur.mutate(step.k)
    return cur, x


def apply_word_seed(s: Seed, w: Iterable[Step]) -> Seed:
    cur = s
    for step in w:
        cur = cur.swap(step.j, step.k) if isinstance(step, Swap) else cur.mutate(step.k)
    return cur


def is_reddening(C) -> bool:
    return all(x <= 0 for row in C for x in row)


def is_dt(C) -> bool:
    n = len(C)
    return all(C[i][j] == (-1 if i == j else 0) for i in range(n) for j in range(n))


def find_markov_subquiver(s: Seed) -> tuple[int, int, int] | None:
    """Three mutable vertices spanning a cyclic triangle of double arrows."""
    mut = s.mutable()
    b = s.exchange
    for i, j, k in itertools.combinations(mut, 3):
        if b[i][j] == 4 and b[j][k] == 4 and b[k][i] == 4:
            return (i, j, k)
        if b[j][i] == 4 and b[k][j] == 4 and b[i][k] == 4:
            return (i, k, j)
    return None


def is_isomorphic(a: Seed, b: Seed) -> bool:
    """Brute-force exchange-matrix isomorphism (small quivers only)."""
    if a.size != b.size:
        return False
    n = a.size
    for perm in itertools.permutations(range(n)):
        if all(a.exchange[perm[i]][perm[j]] == b.exchange[i][j] for i in range(n) for j in range(n)):
            return True
    return False


def random_seed(rng, size: int, bound: int = 2) -> Seed:
    eps = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            e = rng.randint(-bound, bound)
            eps[i][j], eps[j][i] = e, -e
    return Seed.from_eps(eps)


def random_sign_coherence(count: int = 1000, *, seed: int = 0, max_size: int = 6, max_len: int = 20) -> list:
    """Run random words on random quivers; return the (quiver, word) pairs that fail."""
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        size = rng.randint(2, max_size)
        s = random_seed(rng, size)
        w = [Mutate(rng.randrange(size)) for _ in range(rng.randint(1, max_len))]
        try:
            apply_word(s, w, check_coherence=True)
        except SignCoherenceError:
            bad.append((s.to_json(), [m.k for m in w]))
    return bad
