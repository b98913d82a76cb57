"""Named verification suites and the report they produce.

A suite is a list of independent checks.  Each check gets its own seed
derived from (seed, suite, check name), so results do not depend on
scheduling.  A check returns True (pass), False (fail) or None (skipped).
"""

from __future__ import annotations

import contextvars
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .exact import DEFAULT_PRIME, Sampler, budget
from .exact.verify import child_seed

Check = tuple[str, Callable[[], "bool | None"]]


class UnknownSuite(KeyError):
    pass


class UnsupportedSuiteN(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    n: int
    seed: int = 0
    trials: int = 8
    prime: int = DEFAULT_PRIME

    def sub(self, label: str) -> int:
        return child_seed(self.seed, label)

    def sampler(self, label: str) -> Sampler:
        return Sampler(self.sub(label), self.prime)


# ---- suite builders -----------------------------------------------------------
def _bondal(p: Params) -> list[Check]:
    from .groupoid.poisson import bondal_check

    return [("relations", lambda: bondal_check(p.n, p.trials, seed=p.sub("bondal"), prime=p.prime).ok)]


def n3_closed_forms() -> bool:
    """s_1 on A_3 reproduces the explicit rational closed forms, symbolically."""
    import sympy as sp

    from .weyl import reflection_point

    _, x, y, z = sp.field("x,y,z", sp.QQ)
    P = x**2 * y**2 * z**2 + x**2 * y * z**2 + 2 * x**2 * y * z + x**2 * y + 2 * x * y + y + 1
    Q = x**2 * y**2 * z**2 + x**2 * y**2 * z + 2 * x * y**2 * z + y**2 * z + 2 * y * z + z + 1
    R = x**2 * y**2 * z**2 + x * y**2 * z**2 + 2 * x * y * z**2 + x * z**2 + 2 * x * z + x + 1
    want = [P**2 / (x * Q**2), Q**2 / (y * R**2), R**2 / (z * P**2)]
    return reflection_point(3, 1, [x, y, z]) == want


def n3_symbolic_invariance() -> bool:
    """A[i,j]^2 is fixed by s_1 on A_3 as a rational function."""
    import sympy as sp

    from .groupoid.geodesics import geodesic
    from .weyl import reflection_point

    K, *xs = sp.field("x,y,z", sp.QQ)
    img = reflection_point(3, 1, xs)

    def subs(f, vals):
        # squares of geodesics have integral exponents
        out = K(0)
        for e, c in f.terms.items():
            t = K(sp.Rational(c.numerator, c.denominator))
            for v, a in zip(vals, e):
                t = t * v ** (a // f.ring.D)
            out += t
        return out

    for i, j in ((1, 2), (1, 3), (2, 3)):
        sq = geodesic(3, i, j) ** 2
        if subs(sq, img) != subs(sq, xs):
            return False
    return True


def _geodesic_invariance(p: Params) -> list[Check]:
    from .groupoid.mform import half_form_stability
    from .weyl import verify_geodesic_invariance

    checks: list[Check] = []
    for i in range(1, p.n // 2 + 1):
        checks.append((f"s{i}-fixes-all", lambda i=i: verify_geodesic_invariance(
            p.n, i, p.trials, seed=p.sub(f"inv-s{i}"), prime=p.prime).ok))
    if p.n == 3:
        checks.append(("n3-closed-forms", n3_closed_forms))
        checks.append(("n3-symbolic", n3_symbolic_invariance))
    checks.append(("half-form-one-step", lambda: not half_form_stability(p.n) if p.n <= 6 else None))
    return checks


def _relation_check(p: Params, name: str, w: list[int]) -> bool:
    from .weyl import _random_point, apply_weyl_point, robust

    s = p.sampler(f"rel-{name}")
    for _ in range(p.trials):
        pt, img = robust(lambda x: apply_weyl_point(p.n, w, x), s, lambda r: _random_point(p.n, r))
        if img != pt:
            return False
    return True


def _weyl_relations(p: Params) -> list[Check]:
    from .weyl import weyl_relations

    return [(name, lambda name=name, w=w: _relation_check(p, name, w)) for name, w in weyl_relations(p.n)]


def _casimir_action(p: Params) -> list[Check]:
    from .invariants import CasimirSet, global_monomiality_check
    from .weyl import casimir_action, expected_casimir_action, telescoping_check

    checks: list[Check] = [
        (f"s{i}-signed-permutation", lambda i=i: casimir_action(p.n, i) == expected_casimir_action(p.n, i))
        for i in range(1, p.n // 2 + 1)
    ]
    checks.append(("casimir-property", lambda: CasimirSet.of(p.n).check()))
    checks.append(("global-monomiality", lambda: global_monomiality_check(p.n) if p.n <= 6 else None))
    checks.append(("telescoping", lambda: telescoping_check(p.n)))
    return checks


N4_A_DEG = [
    [-1, 0, 0, -1, 0, -1],
    [-1, -1, 0, 0, -1, 0],
    [0, -1, -1, 0, 0, -1],
    [0, 0, -1, -1, -1, 0],
    [-1, 0, -1, 0, -1, -1],
    [0, -1, 0, -1, -1, -1],
]  # doubled
N4_B_DEG_T = [
    [-1, -1, 0, 0, 0, 1],
    [0, -1, -1, 0, 1, 0],
    [0, 0, -1, -1, 0, 1],
    [-1, 0, 0, -1, 1, 0],
    [1, 0, 1, 0, -1, -1],
    [0, 1, 0, 1, -1, -1],
]


def _degree_inverse(p: Params) -> list[Check]:
    from .invariants import a_deg, b_deg, degree_inverse_check, tiny_polygon_pairing_check

    checks: list[Check] = [
        ("BtA=I", lambda: degree_inverse_check(p.n)),
        ("tiny-polygon-pairing", lambda: tiny_polygon_pairing_check(p.n) if p.n <= 6 else None),
    ]
    if p.n == 4:
        checks.append(("printed-A-deg", lambda: [list(r) for r in a_deg(4).doubled] == N4_A_DEG))
        checks.append(("printed-Bt-deg", lambda: b_deg(4).transpose() == N4_B_DEG_T))
    return checks


def _random_l(p: Params, label: str) -> list[list[int]]:
    from .an_quiver import an_labels

    rng = random.Random(p.sub(label))
    size = len(an_labels(p.n))
    return [[rng.randint(-6, 6) for _ in range(size)] for _ in range(p.trials)]


def _hl_examples(p: Params) -> list[Check]:
    from .invariants import block_zero_check, orbit_sum, q_orbit, solve_h, weyl_on_h

    checks: list[Check] = []
    if p.n == 4:
        l1, l2 = (1, 2, 1, 4, 2, 5), (1, 2, 1, 4, -4, -1)
        want_p = (5, 2, 3, 0, 1, 5)
        checks += [
            ("example-q2=3", lambda: (solve_h(4, l1).q, solve_h(4, l1).p) == ((6, 3), want_p)),
            ("example-q2=-3", lambda: (solve_h(4, l2).q, solve_h(4, l2).p) == ((6, -3), want_p)),
            ("s2-maps-example", lambda: weyl_on_h(4, [2], solve_h(4, l1)) == solve_h(4, l2)),
            ("orbit-sizes", lambda: (len(orbit_sum(4, l1).members), len(q_orbit(4, (0, 0))), len(q_orbit(4, (3, 3))))
             == (8, 1, 4)),
        ]

    def random_solutions():
        for l in _random_l(p, "hl"):
            sol = solve_h(p.n, l)
            if not block_zero_check(sol):
                return False
            for i in range(1, p.n // 2 + 1):
                weyl_on_h(p.n, [i], sol)  # asserts closure
        return True

    checks.append(("random-l-blocks-and-closure", random_solutions))
    return checks


def _charpoly(p: Params) -> list[Check]:
    from .an_quiver import an_labels
    from .exact import Fp
    from .groupoid.charpoly import charpoly_factor_check
    from .invariants import elementary_symmetric_check

    size = len(an_labels(p.n))

    def at_points(fn, label):
        s = p.sampler(label)
        return all(fn(p.n, s.point(size)) for _ in range(p.trials))

    checks: list[Check] = [
        ("factorization-palindromic", lambda: at_points(charpoly_factor_check, "charpoly")),
        ("elementary-symmetric", lambda: at_points(elementary_symmetric_check, "esym")),
    ]
    if p.n == 4:
        checks.append(("all-ones", lambda: elementary_symmetric_check(4, [Fp(1, p.prime)] * size)))
    return checks


def _dt(p: Params) -> list[Check]:
    from .cluster import apply_word, random_sign_coherence
    from .weyl import an_seed, dt_check, w0_word

    checks: list[Check] = []
    even = p.n % 2 == 0
    res = {}

    def dt():
        if "r" not in res:
            res["r"] = dt_check(p.n, p.trials, seed=p.sub("dt"), prime=p.prime)
        return res["r"]

    checks.append(("c-matrix=-I", lambda: dt().is_dt if even else None))
    checks.append(("casimir-inversion", lambda: dt().casimirs_inverted if even else None))

    def along():
        if not even:
            return None
        from .cluster import SignCoherenceError

        try:
            apply_word(an_seed(p.n), w0_word(p.n), check_coherence=True)
        except SignCoherenceError:
            return False
        return True

    checks.append(("sign-coherence-along-word", along))
    checks.append(("sign-coherence-random-1000", lambda: not random_sign_coherence(1000, seed=p.sub("coh"))))
    return checks


def _reddening(p: Params) -> list[Check]:
    from .weyl import WitnessNotFound, reddening_witness_odd

    def witness(**kw):
        if p.n % 2 == 0:
            return None
        try:
            reddening_witness_odd(p.n, **kw)
        except WitnessNotFound:
            return False
        return True

    checks: list[Check] = [("markov-witness", witness)]
    if p.n == 5:
        checks.append(("example-word-4-1-2", lambda: witness(word=[4, 1, 2], numbering="cycle")))
    return checks


def _laminations(p: Params) -> list[Check]:
    from .invariants import LaminationCurve, chebyshev_check, lamination_trace, trace_identities_n4

    if p.n != 4:
        raise UnsupportedSuiteN("laminations-n4 is defined for n = 4 only")
    rep = {}

    def identity(idx):
        if "r" not in rep:
            rep["r"] = trace_identities_n4().checks
        return rep["r"][idx][1] != "fail"

    names = [c[0] for c in trace_identities_n4().checks]
    checks: list[Check] = [(nm, lambda i=i: identity(i)) for i, nm in enumerate(names)]
    checks.append(("weight-0-trace", lambda: lamination_trace(
        LaminationCurve((("X[1,1]", "L"),), weight=0)).is_constant()
        and lamination_trace(LaminationCurve((("X[1,1]", "L"),), weight=0)).constant_term() == 2))
    checks.append(("chebyshev-200", lambda: chebyshev_check(200, 8, seed=p.sub("cheb"), prime=p.prime)))
    return checks


def _groupoid(p: Params) -> list[Check]:
    from .groupoid.transport import groupoid_condition_check

    return [("M2=M3M1", lambda: groupoid_condition_check(p.n, p.trials, seed=p.sub("gc"), prime=p.prime))]


def _cycle_symmetry(p: Params) -> list[Check]:
    from .weyl import closed_form_check, cycle_symmetry_check

    return [
        ("order-independence", lambda: cycle_symmetry_check(p.n, p.trials, seed=p.sub("cyc"), prime=p.prime).ok),
        ("closed-form-vs-word", lambda: closed_form_check(p.n, p.trials, seed=p.sub("cf"), prime=p.prime).ok),
    ]


def _f_recursion(p: Params) -> list[Check]:
    from .weyl import f_recursion_check

    return [("recursion", lambda: f_recursion_check(p.n))]


def _telescoping(p: Params) -> list[Check]:
    from .weyl import telescoping_check

    return [("product-of-Y", lambda: telescoping_check(p.n))]


SUITES: dict[str, Callable[[Params], list[Check]]] = {
    "bondal": _bondal,
    "geodesic-invariance": _geodesic_invariance,
    "weyl-relations": _weyl_relations,
    "casimir-action": _casimir_action,
    "degree-inverse": _degree_inverse,
    "hl-examples": _hl_examples,
    "charpoly": _charpoly,
    "dt": _dt,
    "reddening-odd": _reddening,
    "laminations-n4": _laminations,
    "groupoid-condition": _groupoid,
    "cycle-symmetry": _cycle_symmetry,
    "lemma421": _f_recursion,
    "telescoping": _telescoping,
}


# ---- running -------------------------------------------------------------------
@dataclass
class CheckResult:
    name: str
    status: str
    ms: int | None
    error: str | None = field(default=None, compare=False)


def _run_one(name: str, fn, budget_terms: int | None) -> CheckResult:
    t = time.perf_counter()
    err = None
    try:
        if budget_terms:
            with budget(budget_terms):
                out = fn()
        else:
            out = fn()
        status = "skipped" if out is None else "pass" if out else "fail"
    except Exception as e:  # a crashing check is a failing check
        status, err = "fail", f"{type(e).__name__}: {e}"
    return CheckResult(name, status, int((time.perf_counter() - t) * 1000), err)


def run_suite(
    suite: str,
    n: int,
    *,
    seed: int = 0,
    trials: int = 8,
    prime: int = DEFAULT_PRIME,
    serial: bool = False,
    budget_terms: int | None = None,
) -> list[CheckResult]:
    if suite not in SUITES:
        raise UnknownSuite(suite)
    checks = SUITES[suite](Params(n, seed, trials, prime))
    if serial or len(checks) < 2:
        results = [_run_one(nm, fn, budget_terms) for nm, fn in checks]
    else:
        with ThreadPoolExecutor() as ex:
            futs = [ex.submit(contextvars.copy_context().run, _run_one, nm, fn, budget_terms) for nm, fn in checks]
            results = [f.result() for f in futs]
    return sorted(results, key=lambda r: r.name)


def report(suite: str, n: int, seed: int, prime: int, trials: int, results: list[CheckResult],
           timings: bool = False) -> dict:
    return {
        "suite": suite,
        "n": n,
        "seed": seed,
        "prime": prime,
        "trials": trials,
        "checks": [{"name": r.name, "status": r.status, "ms": r.ms if timings else None} for r in results],
        "pass": all(r.status != "fail" for r in results),
    }
