"""Command-line driver: builders, computations and verification suites.

Exit codes: 0 when everything passes, 1 when a check fails, 2 on usage
errors (bad arguments, unsupported n, unknown suite).
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .exact import DEFAULT_PRIME, Fp, Sampler, SingularPoint

SUITE_NAMES = [
    "bondal",
    "geodesic-invariance",
    "weyl-relations",
    "casimir-action",
    "degree-inverse",
    "hl-examples",
    "charpoly",
    "dt",
    "reddening-odd",
    "laminations-n4",
    "groupoid-condition",
    "cycle-symmetry",
    "lemma421",
    "telescoping",
]


def _dump(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _frac(x) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _terms(f) -> list[dict]:
    D = f.ring.D
    out = []
    for e in sorted(f.terms):
        exps = {v: _frac(Fraction(a, D)) for v, a in zip(f.ring.names, e) if a}
        out.append({"coeff": _frac(f.terms[e]), "exponents": exps})
    return out


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected integers, got {text!r}")


def _check_n(n: int, lo: int = 3, hi: int | None = None) -> None:
    if n < lo or (hi is not None and n > hi):
        raise click.UsageError(f"unsupported-n: n={n}")


@click.group()
def main():
    """Exact cluster computations for the A_n groupoid."""


# ---- build ------------------------------------------------------------------
@main.command()
@click.argument("kind", type=click.Choice(["sln", "an", "doubled", "glued"]))
@click.option("--n", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
def build(kind, n, fmt):
    """Serialize one of the quivers."""
    from .an_quiver import UnsupportedN, build_an_quiver, build_doubled, build_glued, build_sln_quiver

    _check_n(n)
    try:
        if kind == "sln":
            seed = build_sln_quiver(n)
        elif kind == "an":
            seed = build_an_quiver(n)[0]
        elif kind == "doubled":
            seed = build_doubled(n)[0]
        else:
            seed = build_glued(n)
    except UnsupportedN as e:
        raise click.UsageError(str(e))
    if fmt == "dot":
        click.echo(seed.to_dot(f"{kind}{n}"))
    else:
        _dump(seed.to_json())


# ---- verify -----------------------------------------------------------------
@main.command()
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=8, show_default=True)
@click.option("--prime", type=int, default=DEFAULT_PRIME, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--serial", is_flag=True, help="Run checks one after another.")
@click.option("--budget-terms", type=int, default=None, help="Symbolic term budget.")
@click.option("--timings", is_flag=True, help="Fill in per-check milliseconds.")
def verify(suite, n, seed, trials, prime, fmt, serial, budget_terms, timings):
    """Run a named verification suite."""
    from .exact import check_prime
    from .suites import UnsupportedSuiteN, report, run_suite

    _check_n(n)
    if trials < 1:
        raise click.BadParameter("trials must be positive")
    try:
        check_prime(prime)
    except ValueError as e:
        raise click.BadParameter(str(e))
    try:
        results = run_suite(suite, n, seed=seed, trials=trials, prime=prime, serial=serial, budget_terms=budget_terms)
    except UnsupportedSuiteN as e:
        raise click.UsageError(f"unsupported-n: {e}")
    rep = report(suite, n, seed, prime, trials, results, timings)
    if fmt == "json":
        _dump(rep)
    else:
        for r in results:
            line = f"{r.status:8} {r.name}"
            if timings:
                line += f"  ({r.ms} ms)"
            click.echo(line)
        click.echo("PASS" if rep["pass"] else "FAIL")
    for r in results:
        if r.error:
            click.echo(f"{r.name}: {r.error}", err=True)
    sys.exit(0 if rep["pass"] else 1)


# ---- compute ----------------------------------------------------------------
def _parse_mutation_word(n: int, text: str):
    """Tokens t<l> (cycle mutation tau_l) and m<k> (single mutation at vertex k, 1-based)."""
    from .cluster import Mutate
    from .weyl import OddInnermost, tau_word

    out = []
    for tok in text.replace(",", " ").split():
        head, num = tok[:1], tok[1:]
        if not num.isdigit() or head not in "tm":
            raise click.BadParameter(f"bad token {tok!r}; use t<l> or m<k>")
        k = int(num)
        if head == "t":
            if not 1 <= k <= n // 2:
                raise click.BadParameter(f"no cycle t{k} for n={n}")
            try:
                out.extend(tau_word(n, k))
            except OddInnermost as e:
                raise click.UsageError(str(e))
        else:
            if not 1 <= k <= n * (n - 1) // 2:
                raise click.BadParameter(f"vertex {k} out of range")
            out.append(Mutate(k - 1))
    return out


def _weyl_certificate(n: int, word: str, point: str, seed: int, prime: int) -> dict:
    from .weyl import parse_weyl_word, reflection_point

    try:
        w = parse_weyl_word(word)
    except ValueError as e:
        raise click.BadParameter(str(e))
    for i in w:
        if not 1 <= i <= n // 2:
            raise click.BadParameter(f"no generator s{i} for n={n}")
    size = n * (n - 1) // 2
    s = Sampler(seed, prime)
    for _ in range(64):
        if point == "random":
            x = s.point(size)
        else:
            vals = _parse_ints(point)
            if len(vals) != size:
                raise click.BadParameter(f"point needs {size} values")
            x = [Fp(v, prime) for v in vals]
        trail = []
        try:
            cur = x
            for i in w:
                cur = reflection_point(n, i, cur)
                trail.append({"generator": f"s{i}", "point": [int(v) for v in cur]})
            break
        except SingularPoint:
            if point != "random":
                raise click.UsageError("singular-point")
    else:
        raise click.UsageError("singular-point: too many redraws")
    return {
        "n": n,
        "word": [f"s{i}" for i in w],
        "seed": seed,
        "prime": prime,
        "point": [int(v) for v in x],
        "seed-trail": trail,
        "result": [int(v) for v in cur],
    }


def _curve_product(word: str):
    from .exact.special import mat2_adj, mat2_mul
    from .groupoid.geodesics import geodesic_ring
    from .invariants import N4_CURVES, monodromy

    ring = geodesic_ring(4)
    M = None
    for tok in word.split():
        name, inv = (tok[:-3], True) if tok.endswith("^-1") else (tok, False)
        if name not in N4_CURVES:
            raise click.BadParameter(f"unknown curve {name!r}; known: {', '.join(sorted(N4_CURVES))}")
        R = monodromy(N4_CURVES[name], ring)
        if inv:
            R = mat2_adj(R)
        M = R if M is None else mat2_mul(M, R)
    if M is None:
        raise click.BadParameter("empty curve word")
    return M


def _hl_json(n: int, l: str) -> dict:
    from .invariants import solve_h

    vals = _parse_ints(l)
    try:
        sol = solve_h(n, vals)
    except ValueError as e:
        raise click.BadParameter(str(e))
    d = sol.to_json()
    return {"n": n, "l": d["l"], "q": d["q"], "p": d["p"], "factorization": d["factorization"]}


@main.command()
@click.argument("what", type=click.Choice(["geodesic", "casimir", "cmatrix", "weyl-apply", "hl", "trace"]))
@click.option("--n", type=int, required=True)
@click.option("--i", "i", type=int)
@click.option("--j", "j", type=int)
@click.option("--word", default="")
@click.option("--l", "l", default="")
@click.option("--point", default="random")
@click.option("--seed", type=int, default=0)
@click.option("--prime", type=int, default=DEFAULT_PRIME)
def compute(what, n, i, j, word, l, point, seed, prime):
    """Run one computation and print JSON."""
    _check_n(n)
    if what == "geodesic":
        from .groupoid.geodesics import elementary_path, geodesic

        if i is None or j is None or not 1 <= i < j <= n:
            raise click.BadParameter("need 1 <= i < j <= n")
        out = {"n": n, "i": i, "j": j, "terms": _terms(geodesic(n, i, j))}
        if j == i + 1:
            out["bracket"] = elementary_path(n, i)
        _dump(out)
    elif what == "casimir":
        from .weyl import casimir_exponents

        m = n // 2
        _dump({
            "n": n,
            "C": [casimir_exponents(n, "C", k) for k in range(1, m + 1)],
            "K": [casimir_exponents(n, "K", k) for k in range(1, m + 1)],
        })
    elif what == "cmatrix":
        from .cluster import apply_word, is_dt, is_reddening, is_sign_coherent
        from .weyl import an_seed

        res = apply_word(an_seed(n), _parse_mutation_word(n, word))
        _dump({
            "n": n,
            "word": word,
            "C": res.C,
            "is_minus_identity": is_dt(res.C),
            "reddening": is_reddening(res.C),
            "sign_coherent": is_sign_coherent(res.C),
            "green": res.green,
        })
    elif what == "weyl-apply":
        _dump(_weyl_certificate(n, word, point, seed, prime))
    elif what == "hl":
        _dump(_hl_json(n, l))
    else:
        from .exact.special import mat2_trace

        if n != 4:
            raise click.UsageError("unsupported-n: traces are available for n=4")
        _dump({"n": 4, "word": word, "terms": _terms(mat2_trace(_curve_product(word)))})


# ---- weyl / hl / deg ----------------------------------------------------------
@main.group()
def weyl():
    """Weyl group actions."""


@weyl.command("apply")
@click.option("--n", type=int, required=True)
@click.option("--word", required=True)
@click.option("--point", default="random", help='"random" or comma-separated values')
@click.option("--seed", type=int, default=0)
@click.option("--prime", type=int, default=DEFAULT_PRIME)
def weyl_apply(n, word, point, seed, prime):
    """Apply a Weyl word to a point (left to right) and print a certificate."""
    _check_n(n)
    _dump(_weyl_certificate(n, word, point, seed, prime))


@main.group()
def hl():
    """The h_l basis elements."""


@hl.command("solve")
@click.option("--n", type=int, required=True)
@click.option("--l", "l", required=True)
def hl_solve(n, l):
    """Minimal Casimir exponents and geodesic powers with multidegree l."""
    _check_n(n)
    _dump(_hl_json(n, l))


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--which", type=click.Choice(["A", "B"]), required=True)
def deg(n, which):
    """Degree matrix as CSV (rows: X variables)."""
    from .invariants import a_deg, b_deg

    _check_n(n, 3, 8)
    click.echo((a_deg(n) if which == "A" else b_deg(n)).to_csv(), nl=False)


if __name__ == "__main__":
    main()
