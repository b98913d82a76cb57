import csv
import io
import json

import pytest
from click.testing import CliRunner

from angroupoid.cli import SUITE_NAMES, main
from angroupoid.suites import SUITES


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, [str(a) for a in args])

    return _run


def test_every_suite_is_registered():
    assert sorted(SUITE_NAMES) == sorted(SUITES)


def test_build_json(run):
    r = run("build", "an", "--n", 4)
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["labels"][0] == "X[1,1]" and len(data["labels"]) == 6


def test_build_dot(run):
    r = run("build", "an", "--n", 3, "--format", "dot")
    assert r.exit_code == 0 and r.output.startswith("digraph")


def test_build_doubled_unsupported(run):
    r = run("build", "doubled", "--n", 7)
    assert r.exit_code == 2
    assert "unsupported-n" in r.output


def test_small_n_is_usage_error(run):
    r = run("verify", "dt", "--n", 2)
    assert r.exit_code == 2 and "unsupported-n" in r.output


def test_unknown_suite(run):
    assert run("verify", "nope", "--n", 4).exit_code == 2


def test_bad_prime(run):
    assert run("verify", "dt", "--n", 4, "--prime", 91).exit_code == 2


def test_verify_dt_json(run):
    r = run("verify", "dt", "--n", 4)
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert rep["pass"] is True
    assert set(rep) == {"suite", "n", "seed", "prime", "trials", "checks", "pass"}
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)
    assert all(c["ms"] is None for c in rep["checks"])


def test_verify_is_byte_identical(run):
    a = run("verify", "hl-examples", "--n", 4, "--seed", 5)
    b = run("verify", "hl-examples", "--n", 4, "--seed", 5, "--serial")
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output


def test_timings_fill_ms(run):
    rep = json.loads(run("verify", "degree-inverse", "--n", 4, "--timings").output)
    assert all(isinstance(c["ms"], int) for c in rep["checks"])


def test_verify_text(run):
    r = run("verify", "geodesic-invariance", "--n", 4, "--format", "text", "--trials", 2)
    assert r.exit_code == 0
    assert r.output.splitlines()[-1] == "PASS"


def test_laminations_needs_n4(run):
    assert run("verify", "laminations-n4", "--n", 5).exit_code == 2


def test_laminations_reports_the_printed_cubic_trace(run):
    r = run("verify", "laminations-n4", "--n", 4, "--format", "text")
    assert r.exit_code == 1
    failing = [ln for ln in r.output.splitlines() if ln.startswith("fail")]
    assert failing == ["fail     tr g5^-1 g4 g3 = -sqrt(K1)(1+1/K1)"]


def test_cmatrix(run):
    r = run("compute", "cmatrix", "--n", 4, "--word", "t1 t2 t1 t2")
    out = json.loads(r.output)
    assert out["is_minus_identity"] and out["sign_coherent"] and out["reddening"]


def test_cmatrix_bad_token(run):
    assert run("compute", "cmatrix", "--n", 4, "--word", "x1").exit_code == 2


def test_compute_geodesic_bracket(run):
    out = json.loads(run("compute", "geodesic", "--n", 6, "--i", 5, "--j", 6).output)
    assert out["bracket"] == ["X[1,1]", "X[2,1]", "X[3,1]", "X[2,3]", "X[1,2]"]
    assert all(t["coeff"] == 1 for t in out["terms"])


def test_compute_casimir(run):
    out = json.loads(run("compute", "casimir", "--n", 4).output)
    assert out["K"][1] == {"X[2,1]": 1, "X[2,2]": 1}


def test_compute_trace_matches_geodesic(run):
    a = json.loads(run("compute", "trace", "--n", 4, "--word", "g3").output)["terms"]
    b = json.loads(run("compute", "geodesic", "--n", 4, "--i", 1, "--j", 2).output)["terms"]
    assert sorted(map(json.dumps, a)) == sorted(map(json.dumps, b))


def test_hl_solve(run):
    out = json.loads(run("hl", "solve", "--n", 4, "--l", "1,2,1,4,2,5").output)
    assert out["q"] == [6, 3] and out["p"] == [5, 2, 3, 0, 1, 5]
    assert out["factorization"].startswith("K1^6 K2^3")


def test_hl_solve_wrong_length(run):
    assert run("hl", "solve", "--n", 4, "--l", "1,2,3").exit_code == 2


def test_weyl_apply_certificate(run):
    out = json.loads(run("weyl", "apply", "--n", 4, "--word", "s1 s1", "--seed", 3).output)
    assert [t["generator"] for t in out["seed-trail"]] == ["s1", "s1"]
    assert out["result"] == out["point"]


def test_weyl_apply_bad_generator(run):
    assert run("weyl", "apply", "--n", 4, "--word", "s3").exit_code == 2


def test_deg_csv(run):
    rows = list(csv.reader(io.StringIO(run("deg", "--n", 4, "--which", "B").output)))
    assert len(rows) == 7 and rows[0][1] == "B[1,1]"
