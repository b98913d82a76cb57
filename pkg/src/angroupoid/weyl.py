"""Cycle mutations, the birational Weyl group action and DT / reddening results.

Point conventions: ``x`` lists the values of the cluster variables (not
roots).  A Weyl word ``[a, b, ...]`` acts on points left to right, so
``[a, b]`` applies ``s_a`` first; on functions this is the reverse
composition ``s_b^* s_a^*``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .an_quiver import (
    an_labels,
    build_an_quiver,
    build_doubled,
    cycle_count,
    cycle_indices,
    cycle_length,
    doubled_cycles,
    registered_templates,
    x_label,
)
from .cluster import (
    Mutate,
    Seed,
    Swap,
    apply_word,
    apply_word_point,
    apply_word_seed,
    find_markov_subquiver,
    is_dt,
)
from .exact import DEFAULT_PRIME, LaurentPoly, RatFunc, Ring, Sampler, SingularPoint


class InvalidCycle(ValueError):
    pass


class Unbalanced(InvalidCycle):
    pass


class OddInnermost(ValueError):
    """The innermost cycle for odd n has chords; use the doubled route."""


class WitnessNotFound(RuntimeError):
    pass


# ---- cycles ---------------------------------------------------------------
@dataclass(frozen=True)
class CycleSpec:
    seed: Seed
    J: tuple[int, ...]

    @classmethod
    def from_labels(cls, seed: Seed, labels: Sequence[str]) -> "CycleSpec":
        spec = cls(seed, tuple(seed.index(s) for s in labels))
        spec.validate()
        return spec

    @property
    def N(self) -> int:
        return len(self.J)

    def validate(self):
        b, J, N = self.seed.exchange, self.J, self.N
        if N < 2 or len(set(J)) != N:
            raise InvalidCycle("a cycle needs at least two distinct vertices")
        for a in range(N):
            for c in range(N):
                if N == 2:
                    continue
                nxt = c == (a + 1) % N
                prv = a == (c + 1) % N
                if nxt and b[J[a]][J[c]] <= 0:
                    raise InvalidCycle(f"missing arrow {J[a]}->{J[c]}")
                if not nxt and not prv and b[J[a]][J[c]] != 0:
                    raise InvalidCycle(f"chord {J[a]}-{J[c]}")
        inside = set(J)
        for v in range(self.seed.size):
            if v not in inside and sum(b[v][j] for j in J) != 0:
                raise Unbalanced(f"vertex {v} is not balanced against the cycle")


def cycle_word(spec: CycleSpec, order: Sequence[int] | None = None) -> tuple:
    """mu_{j1} ... mu_{j(N-1)} pi mu_{j(N-1)} ... mu_{j1} (palindromic)."""
    js = list(order) if order is not None else list(spec.J)
    if sorted(js) != sorted(spec.J):
        raise InvalidCycle("order must be a permutation of the cycle")
    head = [Mutate(j) for j in js[:-1]]
    return tuple(head + [Swap(js[-2], js[-1])] + head[::-1])


def c_vector(spec: CycleSpec, v: int) -> list[int]:
    """c_t - c_(t-1) = eps(v, J[t]) cyclically, normalised to min 0."""
    if v in spec.J:
        raise ValueError("v must lie outside the cycle")
    steps = [spec.seed.eps_int(v, j) for j in spec.J]
    if sum(steps):
        raise Unbalanced(f"vertex {v} is not balanced against the cycle")
    c, acc = [], 0
    for s in steps:
        acc += s
        c.append(acc)
    lo = min(c)
    return [x - lo for x in c]


def f_polys(spec: CycleSpec, ring: Ring) -> list[LaurentPoly]:
    """F_t = 1 + X_t + X_t X_(t-1) + ... (N-1 factors at most)."""
    N = spec.N
    out = []
    for t in range(N):
        acc, term = ring.one(), ring.one()
        for r in range(N - 1):
            term = term * ring.var(spec.J[(t - r) % N])
            acc = acc + term
        out.append(acc)
    return out


def y_functions(spec: CycleSpec, ring: Ring) -> list[RatFunc]:
    """Y_t = X_t F_(t-1) / F_t with the backward F."""
    F = f_polys(spec, ring)
    return [RatFunc(ring.var(spec.J[t]) * F[t - 1], F[t]) for t in range(spec.N)]


def _f_values(spec: CycleSpec, x: Sequence) -> list:
    N = spec.N
    F = []
    for t in range(N):
        acc, term = 1, 1
        for r in range(N - 1):
            term = term * x[spec.J[(t - r) % N]]
            acc = acc + term
        if acc == 0:
            raise SingularPoint("F vanishes")
        F.append(acc)
    return F


def y_values(spec: CycleSpec, x: Sequence) -> list:
    F = _f_values(spec, x)
    return [x[spec.J[t]] * F[t - 1] / F[t] for t in range(spec.N)]


@dataclass
class ClosedFormAction:
    spec: CycleSpec
    images: list  # RatFunc per variable

    def __call__(self, x):
        return [f.eval(x) for f in self.images]


def closed_form_images(spec: CycleSpec, ring: Ring | None = None) -> list[RatFunc]:
    ring = ring or Ring(spec.seed.labels)
    Y = y_functions(spec, ring)
    pos = {j: t for t, j in enumerate(spec.J)}
    out = []
    for v in range(spec.seed.size):
        X = RatFunc(ring.var(v))
        if v in pos:
            t = pos[v]
            out.append(X / (Y[t] * Y[t - 1]))
            continue
        img = X
        for t, c in enumerate(c_vector(spec, v)):
            if c:
                img = img * Y[t] ** c
        out.append(img)
    return out


def closed_form_point(spec: CycleSpec, x: Sequence) -> list:
    Y = y_values(spec, x)
    pos = {j: t for t, j in enumerate(spec.J)}
    out = []
    for v in range(spec.seed.size):
        if v in pos:
            t = pos[v]
            out.append(x[v] / (Y[t] * Y[t - 1]))
            continue
        img = x[v]
        for t, c in enumerate(c_vector(spec, v)):
            if c:
                img = img * Y[t] ** c
        out.append(img)
    return out


# ---- the A_n cycles -----------------------------------------------------------
@lru_cache(maxsize=None)
def an_seed(n: int) -> Seed:
    return build_an_quiver(n)[0]


def an_cycle(n: int, l: int) -> CycleSpec:
    if n % 2 and l == n // 2:
        raise OddInnermost(f"cycle {l} of A_{n} is not chordless")
    seed = an_seed(n)
    return CycleSpec.from_labels(seed, [x_label(l, j) for j in range(1, cycle_length(n, l) + 1)])


def tau_word(n: int, l: int, order: Sequence[int] | None = None) -> tuple:
    return cycle_word(an_cycle(n, l), order)


def closed_form_tau(n: int, l: int) -> ClosedFormAction:
    spec = an_cycle(n, l)
    return ClosedFormAction(spec, closed_form_images(spec))


# ---- doubled quiver -----------------------------------------------------------
@lru_cache(maxsize=None)
def doubled_seed(n: int) -> Seed:
    """Registered template when available, otherwise the generated quiver."""
    return build_doubled(n, generated=n not in registered_templates())[0]


def doubled_cycle(n: int, name: str) -> CycleSpec:
    seed = doubled_seed(n)
    for nm, labels in doubled_cycles(n):
        if nm == name:
            return CycleSpec.from_labels(seed, labels)
    raise KeyError(name)


def doubled_word(n: int, names: Iterable[str]) -> tuple:
    out: list = []
    for nm in names:
        out.extend(cycle_word(doubled_cycle(n, nm)))
    return tuple(out)


def reflection_raw(n: int, i: int) -> list[str]:
    """s_i as doubled cycle names (applied left to right on points)."""
    m = n // 2
    if not 1 <= i <= m:
        raise ValueError(f"no generator s_{i} for n={n}")
    if 2 * i == n:
        return [f"f{i}"]
    if i == m:
        return [f"f{i}", f"ft{i}", f"f{i}"]
    return [f"f{i}", f"ft{i}"]


def lift_point(n: int, x: Sequence) -> list:
    """A_n point -> doubled point on the locus Xt = X."""
    pos = {s: t for t, s in enumerate(an_labels(n))}
    return [x[pos[s.replace("Xt[", "X[")]] for s in doubled_seed(n).labels]


def project_point(n: int, y: Sequence, tilde: bool = False) -> list:
    idx = doubled_seed(n).index
    return [y[idx(s.replace("X[", "Xt[") if tilde else s)] for s in an_labels(n)]


def _tilde_label_exists(n: int, s: str) -> bool:
    return s.replace("X[", "Xt[") in doubled_seed(n).labels


def doubled_reflection_point(n: int, i: int, x: Sequence, *, check: bool = True, normalize=None) -> list:
    y = lift_point(n, x)
    _, y = apply_word_point(doubled_seed(n), doubled_word(n, reflection_raw(n, i)), y, normalize)
    plain = project_point(n, y)
    if check:
        labels = an_labels(n)
        seed = doubled_seed(n)
        for t, s in enumerate(labels):
            ts = s.replace("X[", "Xt[")
            if ts in seed.labels and y[seed.index(ts)] != plain[t]:
                raise AssertionError(f"s_{i}: images of {s} and its copy differ on the locus")
    return plain


def uses_doubled(n: int, i: int) -> bool:
    return n % 2 == 1 and i == n // 2


def reflection_point(n: int, i: int, x: Sequence, normalize=None) -> list:
    if uses_doubled(n, i):
        return doubled_reflection_point(n, i, x, normalize=normalize)
    _, y = apply_word_point(an_seed(n), tau_word(n, i), x, normalize)
    return y


def reflection_action(n: int, i: int) -> ClosedFormAction | None:
    """Closed form when one exists; None signals the doubled point route."""
    if uses_doubled(n, i):
        return None
    return closed_form_tau(n, i)


def parse_weyl_word(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        if not tok.startswith("s") or not tok[1:].isdigit():
            raise ValueError(f"bad generator {tok!r}")
        out.append(int(tok[1:]))
    return out


def apply_weyl_point(n: int, w: Sequence[int], x: Sequence) -> list:
    x = list(x)
    for i in w:
        x = reflection_point(n, i, x)
    return x


def _sampler(seed: int, prime: int | None) -> Sampler:
    return Sampler(seed, prime or DEFAULT_PRIME)


def _random_point(n: int, s: Sampler) -> list:
    return s.point(n * (n - 1) // 2)


def robust(fn, s: Sampler, draw, retries: int = 64):
    """Evaluate fn(point) at a fresh point, redrawing on singular points."""
    for _ in range(retries):
        pt = draw(s)
        try:
            return pt, fn(pt)
        except SingularPoint:
            continue
    raise SingularPoint("too many singular draws")


# ---- relations, invariance -------------------------------------------------
def weyl_relations(n: int) -> list[tuple[str, list[int]]]:
    m = n // 2
    rels = [(f"s{i}^2", [i, i]) for i in range(1, m + 1)]
    for i in range(1, m + 1):
        for j in range(i + 2, m + 1):
            rels.append((f"(s{i}s{j})^2", [i, j] * 2))
    for i in range(1, m - 1):
        rels.append((f"(s{i}s{i + 1})^3", [i, i + 1] * 3))
    if m >= 2:
        rels.append((f"(s{m}s{m - 1})^4", [m, m - 1] * 4))
    return rels


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def verify_relations(n: int, trials: int = 8, *, seed: int = 0, prime: int | None = None) -> Report:
    rep = Report(f"weyl-relations n={n}")
    s = _sampler(seed, prime)
    for name, w in weyl_relations(n):
        for _ in range(trials):
            pt, img = robust(lambda x: apply_weyl_point(n, w, x), s, lambda r: _random_point(n, r))
            rep.checked += 1
            if img != pt:
                rep.failures.append(name)
                break
    return rep


def verify_geodesic_invariance(
    n: int, i: int | None = None, trials: int = 8, *, seed: int = 0, prime: int | None = None
) -> Report:
    """A(s_i x)^2 == A(x)^2 for every geodesic and every (or the given) generator.

    Squares have integral exponents, so both sides are plain field values;
    the M^(1/2) L form makes equality of squares the natural exact test.
    """
    from .groupoid.geodesics import geodesic

    gens = [i] if i is not None else list(range(1, n // 2 + 1))
    sq = {(p, q): geodesic(n, p, q) ** 2 for p in range(1, n) for q in range(p + 1, n + 1)}
    rep = Report(f"geodesic-invariance n={n}")
    s = _sampler(seed, prime)
    for g in gens:
        for _ in range(trials):
            pt, img = robust(lambda x: reflection_point(n, g, x), s, lambda r: _random_point(n, r))
            for key, f in sq.items():
                rep.checked += 1
                if f.eval(pt) != f.eval(img):
                    rep.failures.append((g, key))
    return rep


# ---- Casimirs ------------------------------------------------------------------
def casimir_exponents(n: int, which: str, i: int) -> dict[str, int]:
    """Exponent dict of C_i (cycle product) or K_i (= prod_{j>=i} C_j)."""
    m = n // 2
    ls = [i] if which == "C" else list(range(i, m + 1))
    out: dict = {}
    for l in ls:
        for j in range(1, cycle_length(n, l) + 1):
            out[x_label(l, j)] = out.get(x_label(l, j), 0) + 1
    return out


class NotMonomial(ValueError):
    pass


def cycle_on_monomial(spec: CycleSpec, a: dict[int, int]) -> dict[int, int]:
    """tau^* of the monomial prod X_v^a_v, when the result is a monomial.

    tau^* X^a = X^a prod_t Y_t^(e_t) with e_t = sum_v a_v c_vt - a_J[t] - a_J[t+1];
    if e is constant E the product telescopes to (prod_J X)^E.
    """
    N = spec.N
    e = [0] * N
    pos = {j: t for t, j in enumerate(spec.J)}
    for v, av in a.items():
        if not av:
            continue
        if v in pos:
            t = pos[v]
            e[t] -= av
            e[t - 1] -= av
        else:
            for t, c in enumerate(c_vector(spec, v)):
                e[t] += av * c
    if len(set(e)) != 1:
        raise NotMonomial(f"exponent pattern {e} is not constant")
    E = e[0]
    out = dict(a)
    for j in spec.J:
        out[j] = out.get(j, 0) + E
    return {k: v for k, v in out.items() if v}


def reflection_on_monomial(n: int, i: int, a: dict[str, int]) -> dict[str, int]:
    """s_i^* of a monomial given by label exponents.

    Uses the A_n cycle directly, or the doubled quiver for the odd
    innermost generator.
    """
    if not uses_doubled(n, i):
        spec = an_cycle(n, i)
        cur = cycle_on_monomial(spec, {spec.seed.index(k): v for k, v in a.items()})
        return {spec.seed.labels[k]: v for k, v in cur.items()}
    seed = doubled_seed(n)
    cur = {seed.index(k): v for k, v in a.items()}
    # pullbacks compose in reverse order of the point action
    for nm in reversed(reflection_raw(n, i)):
        cur = cycle_on_monomial(doubled_cycle(n, nm), cur)
    out: dict = {}
    for k, v in cur.items():
        lab = seed.labels[k].replace("Xt[", "X[")
        out[lab] = out.get(lab, 0) + v
    return {k: v for k, v in out.items() if v}


def casimir_action(n: int, i: int) -> dict[str, str]:
    """Where s_i^* sends each K_j, as a symbolic record like {'K1': 'K2'}."""
    m = n // 2
    K = {f"K{j}": casimir_exponents(n, "K", j) for j in range(1, m + 1)}
    inv = {f"K{j}^-1": {k: -v for k, v in e.items()} for j, e in ((j, K[f"K{j}"]) for j in range(1, m + 1))}
    named = {**K, **inv}
    out = {}
    for name, e in K.items():
        img = reflection_on_monomial(n, i, e)
        hit = [nm for nm, ee in named.items() if ee == img]
        out[name] = hit[0] if hit else repr(img)
    return out


def telescoping_check(n: int) -> bool:
    """prod_t Y_t == prod_t X_t symbolically for every chordless main cycle."""
    for l in range(1, n // 2 + 1):
        if n % 2 and l == n // 2:
            specs = [doubled_cycle(n, f"f{l}")]
        else:
            specs = [an_cycle(n, l)]
        for spec in specs:
            ring = Ring(spec.seed.labels)
            Xp = ring.one()
            for j in spec.J:
                Xp = Xp * ring.var(j)
            prod = RatFunc(ring.one())
            for y in y_functions(spec, ring):
                prod = prod * y
            if prod != RatFunc(Xp):
                return False
    return True


def f_recursion_check(n: int) -> bool:
    """F_t + X_(t-1) F_(t-2) == F_(t-1) (1 + X_t) for all main cycles."""
    for l in range(1, n // 2 + 1):
        spec = doubled_cycle(n, f"f{l}") if n % 2 and l == n // 2 else an_cycle(n, l)
        ring = Ring(spec.seed.labels)
        F = f_polys(spec, ring)
        N = spec.N
        for t in range(N):
            X = lambda r: ring.var(spec.J[r % N])
            if F[t] + X(t - 1) * F[t - 2] != F[t - 1] * (1 + X(t)):
                return False
    return True


# ---- DT and reddening ---------------------------------------------------------
def w0_word(n: int) -> tuple:
    """(tau_1 ... tau_m)^m as a mutation word, for even n."""
    if n % 2:
        raise ValueError("w0 is only defined here for even n")
    m = n // 2
    one = []
    for l in range(1, m + 1):
        one.extend(tau_word(n, l))
    return tuple(one * m)


@dataclass
class DTResult:
    n: int
    is_dt: bool
    casimirs_inverted: bool
    length: int
    green: list


def dt_check(n: int, trials: int = 4, *, seed: int = 0, prime: int | None = None) -> DTResult:
    w = w0_word(n)
    res = apply_word(an_seed(n), w)
    ok_c = True
    s = _sampler(seed, prime)
    for _ in range(trials):
        pt, (_, img) = robust(lambda x: apply_word_point(an_seed(n), w, x), s, lambda r: _random_point(n, r))
        for l in range(1, n // 2 + 1):
            e = casimir_exponents(n, "C", l)
            idx = an_seed(n).index
            before = after = 1
            for k, v in e.items():
                before = before * pt[idx(k)] ** v
                after = after * img[idx(k)] ** v
            if after * before != 1:
                ok_c = False
    return DTResult(n, is_dt(res.C), ok_c, sum(isinstance(t, Mutate) for t in w), res.green)


def innermost_subquiver(n: int) -> Seed:
    """Full subquiver of A_n on the innermost cycle (odd n)."""
    if n % 2 == 0 or n < 5:
        raise ValueError("odd n >= 5 expected")
    seed = an_seed(n)
    m = n // 2
    keep = [seed.index(x_label(m, j)) for j in range(1, n + 1)]
    return seed.subseed(keep)


@dataclass
class Witness:
    n: int
    word: list[int]
    triple: tuple[str, str, str]
    trail: list[list[list[int]]]


def zigzag_numbering(n: int) -> list[int]:
    """Vertex index (in cycle order) of the subquiver vertex numbered k = 1..n.

    In this numbering the innermost cycle runs 1 -> 3 -> 5 -> ... and the
    chords point k -> k-1, so X[m, t] carries the number 2(t-1) mod n + 1.
    """
    out = [0] * n
    for t in range(n):
        out[(2 * t) % n] = t
    return out


def default_reddening_word(n: int) -> list[int]:
    """mu_(2m) ... mu_3, then mu_(2m+1) mu_(2m) mu_(2m-2) ... mu_6 (leftmost first)."""
    m = n // 2
    return list(range(2 * m, 2, -1)) + [2 * m + 1, 2 * m] + list(range(2 * m - 2, 5, -2))


def reddening_witness_odd(n: int, word: Sequence[int] | None = None, numbering: str = "zigzag") -> Witness:
    """Mutate the innermost-cycle subquiver, then look for a Markov triple.

    ``word`` uses 1-based vertex numbers, leftmost mutation first.  With
    ``numbering="zigzag"`` they follow :func:`zigzag_numbering`; with
    ``"cycle"`` vertex k is X[m, k].
    """
    if n == 3:
        q = an_seed(3)
        hit = find_markov_subquiver(q)
        if not hit:
            raise WitnessNotFound("A_3 should be the Markov quiver")
        return Witness(3, [], tuple(q.labels[t] for t in hit), [[list(r) for r in q.exchange]])
    q = innermost_subquiver(n)
    if word is None:
        word = default_reddening_word(n)
    if numbering == "zigzag":
        where = zigzag_numbering(n)
    elif numbering == "cycle":
        where = list(range(n))
    else:
        raise ValueError(f"unknown numbering {numbering!r}")
    trail = [[list(r) for r in q.exchange]]
    cur = q
    for k in word:
        if not 1 <= k <= n:
            raise ValueError(f"vertex {k} out of range")
        cur = cur.mutate(where[k - 1])
        trail.append([list(r) for r in cur.exchange])
    hit = find_markov_subquiver(cur)
    if not hit:
        raise WitnessNotFound(f"no Markov triple after {list(word)}")
    return Witness(n, list(word), tuple(cur.labels[t] for t in hit), trail)


# ---- suite helpers -------------------------------------------------------------
def main_cycle_specs(n: int) -> list[tuple[str, CycleSpec]]:
    """Chordless main cycles: A_n cycles, plus the doubled cycles for odd n."""
    out = [(f"tau{l}", an_cycle(n, l)) for l in range(1, n // 2 + 1) if not uses_doubled(n, l)]
    if n % 2:
        out += [(nm, doubled_cycle(n, nm)) for nm, _ in doubled_cycles(n)]
    return out


def cycle_symmetry_check(n: int, trials: int = 8, *, seed: int = 0, prime: int | None = None) -> Report:
    """Two mutation orders per cycle give the same seed and the same point map."""
    rep = Report(f"cycle-symmetry n={n}")
    s = _sampler(seed, prime)
    rng = random.Random(seed)
    for name, spec in main_cycle_specs(n):
        J = list(spec.J)
        other = J[:]
        while other == J and len(J) > 2:
            rng.shuffle(other)
        w1, w2 = cycle_word(spec), cycle_word(spec, other)
        rep.checked += 1
        if apply_word_seed(spec.seed, w1).exchange != apply_word_seed(spec.seed, w2).exchange:
            rep.failures.append((name, "seed"))
            continue
        for _ in range(trials):
            _, (a, b) = robust(
                lambda x: (apply_word_point(spec.seed, w1, x)[1], apply_word_point(spec.seed, w2, x)[1]),
                s,
                lambda r: r.point(spec.seed.size),
            )
            rep.checked += 1
            if a != b:
                rep.failures.append((name, "point"))
                break
    return rep


def closed_form_check(n: int, trials: int = 8, *, seed: int = 0, prime: int | None = None) -> Report:
    """Closed-form cycle action against the raw mutation word, per chordless cycle."""
    rep = Report(f"closed-form n={n}")
    s = _sampler(seed, prime)
    for name, spec in main_cycle_specs(n):
        w = cycle_word(spec)
        for _ in range(trials):
            _, (a, b) = robust(
                lambda x: (closed_form_point(spec, x), apply_word_point(spec.seed, w, x)[1]),
                s,
                lambda r: r.point(spec.seed.size),
            )
            rep.checked += 1
            if a != b:
                rep.failures.append(name)
                break
    return rep


def expected_casimir_action(n: int, i: int) -> dict[str, str]:
    """Type B_m pattern: s_i swaps K_i and K_(i+1) for i < m, s_m inverts K_m."""
    m = n // 2
    out = {f"K{j}": f"K{j}" for j in range(1, m + 1)}
    if i < m:
        out[f"K{i}"], out[f"K{i + 1}"] = f"K{i + 1}", f"K{i}"
    else:
        out[f"K{m}"] = f"K{m}^-1"
    return out


def casimir_action_check(n: int) -> Report:
    rep = Report(f"casimir-action n={n}")
    for i in range(1, n // 2 + 1):
        rep.checked += 1
        got = casimir_action(n, i)
        if got != expected_casimir_action(n, i):
            rep.failures.append((i, got))
    return rep
