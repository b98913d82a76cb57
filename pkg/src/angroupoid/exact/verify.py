"""Seeded random evaluation points and identity checking over a prime field."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Callable

from .field import DEFAULT_PRIME, Fp, SingularPoint, check_prime
from .laurent import LaurentPoly

DEFAULT_TRIALS = 8
DEFAULT_RETRIES = 64


def lp_eval(f: LaurentPoly, x):
    """Field value of ``f`` at ``x``; exponents must be integral."""
    return f.eval(x)


def lp_derivative(f: LaurentPoly, v) -> LaurentPoly:
    return f.derivative(v)


def child_seed(seed: int, label: str) -> int:
    h = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(h[:8], "big")


@dataclass
class Sampler:
    """Draws uniformly random nonzero field elements from a seeded stream."""

    seed: int = 0
    prime: int = DEFAULT_PRIME
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        check_prime(self.prime)
        self.rng = random.Random(self.seed)

    def elem(self) -> Fp:
        return Fp(self.rng.randrange(1, self.prime), self.prime)

    def point(self, n: int) -> list[Fp]:
        return [self.elem() for _ in range(n)]

    def child(self, label: str) -> "Sampler":
        return Sampler(child_seed(self.seed, label), self.prime)


@dataclass
class IdentityResult:
    ok: bool
    trials: int
    redraws: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_at_points(
    check: Callable[[list], bool],
    nvars: int,
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    retries: int = DEFAULT_RETRIES,
    draw: Callable | None = None,
) -> IdentityResult:
    """Run ``check(point)`` at ``trials`` random points.

    A point where some denominator vanishes (``SingularPoint``) is discarded
    and redrawn, at most ``retries`` times overall.
    """
    s = Sampler(seed, prime)
    done = redraws = 0
    failures = []
    while done < trials:
        pt = draw(s) if draw else s.point(nvars)
        try:
            good = check(pt)
        except SingularPoint:
            redraws += 1
            if redraws > retries:
                raise
            continue
        if not good:
            failures.append(pt)
        done += 1
    return IdentityResult(not failures, trials, redraws, failures)
