import pytest
import sympy as sp

from angroupoid.cluster import Mutate, Seed, apply_word, find_markov_subquiver, is_sign_coherent
from angroupoid.exact import Sampler
from angroupoid.invariants import casimir_monomial
from angroupoid.weyl import (
    OddInnermost,
    an_seed,
    apply_weyl_point,
    casimir_action,
    closed_form_check,
    cycle_symmetry_check,
    dt_check,
    f_recursion_check,
    parse_weyl_word,
    reddening_witness_odd,
    reflection_point,
    tau_word,
    telescoping_check,
    uses_doubled,
    verify_geodesic_invariance,
    verify_relations,
    w0_word,
    weyl_relations,
)

P = 4611686018427387847


def test_parse_weyl_word():
    assert parse_weyl_word("s1 s2,s1") == [1, 2, 1]
    with pytest.raises(ValueError):
        parse_weyl_word("s1 t2")


def test_relation_list_n6():
    names = [name for name, _ in weyl_relations(6)]
    assert names == ["s1^2", "s2^2", "s3^2", "(s1s3)^2", "(s1s2)^3", "(s3s2)^4"]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_weyl_relations(n):
    rep = verify_relations(n, 8, seed=n)
    assert rep.ok, rep.failures


def test_odd_innermost_goes_through_doubled():
    assert uses_doubled(5, 2) and not uses_doubled(5, 1) and not uses_doubled(6, 3)
    with pytest.raises(OddInnermost):
        tau_word(5, 2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_geodesics_are_invariant(n):
    rep = verify_geodesic_invariance(n, trials=8, seed=2 * n)
    assert rep.ok, rep.failures


def test_n3_closed_forms():
    K, x, y, z = sp.field("x,y,z", sp.QQ)
    P_ = x**2 * y**2 * z**2 + x**2 * y * z**2 + 2 * x**2 * y * z + x**2 * y + 2 * x * y + y + 1
    Q_ = x**2 * y**2 * z**2 + x**2 * y**2 * z + 2 * x * y**2 * z + y**2 * z + 2 * y * z + z + 1
    R_ = x**2 * y**2 * z**2 + x * y**2 * z**2 + 2 * x * y * z**2 + x * z**2 + 2 * x * z + x + 1
    got = reflection_point(3, 1, [x, y, z])
    assert got == [P_**2 / (x * Q_**2), Q_**2 / (y * R_**2), R_**2 / (z * P_**2)]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cycle_mutation_order_independence(n):
    rep = cycle_symmetry_check(n, 8, seed=n)
    assert rep.ok and rep.checked > 0, rep.failures


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_closed_form_matches_raw_word(n):
    rep = closed_form_check(n, 8, seed=n)
    assert rep.ok and rep.checked > 0, rep.failures


EXPECTED_ACTION = {
    4: {1: {"K1": "K2", "K2": "K1"}, 2: {"K1": "K1", "K2": "K2^-1"}},
    5: {1: {"K1": "K2", "K2": "K1"}, 2: {"K1": "K1", "K2": "K2^-1"}},
    6: {
        1: {"K1": "K2", "K2": "K1", "K3": "K3"},
        2: {"K1": "K1", "K2": "K3", "K3": "K2"},
        3: {"K1": "K1", "K2": "K2", "K3": "K3^-1"},
    },
}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_casimir_action_is_type_b(n):
    for i, want in EXPECTED_ACTION[n].items():
        assert casimir_action(n, i) == want


@pytest.mark.parametrize("n", [7, 8])
def test_casimir_action_large_n(n):
    m = n // 2
    for i in range(1, m + 1):
        got = casimir_action(n, i)
        if i < m:
            assert got[f"K{i}"] == f"K{i + 1}" and got[f"K{i + 1}"] == f"K{i}"
        else:
            assert got[f"K{m}"] == f"K{m}^-1"
        assert sum(got[f"K{j}"] != f"K{j}" for j in range(1, m + 1)) == (2 if i < m else 1)


def test_casimir_action_at_points():
    # independent of the monomial route: evaluate K_j before and after s_i
    n = 6
    s = Sampler(4, P)
    x = s.point(15)
    K = [casimir_monomial(n, "K", j) for j in (1, 2, 3)]
    before = [k.eval(x) for k in K]
    after = [k.eval(reflection_point(n, 1, x)) for k in K]
    assert after == [before[1], before[0], before[2]]
    after = [k.eval(reflection_point(n, 3, x)) for k in K]
    assert after == [before[0], before[1], 1 / before[2]]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_telescoping_and_recursion(n):
    assert telescoping_check(n)
    assert f_recursion_check(n)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_longest_element_is_dt(n):
    r = dt_check(n, 2, seed=n)
    assert r.is_dt and r.casimirs_inverted
    # swaps are relabelings, not mutations
    assert r.length == sum(isinstance(t, Mutate) for t in w0_word(n))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_sign_coherence_along_dt_word(n):
    res = apply_word(an_seed(n), w0_word(n), check_coherence=True)
    assert is_sign_coherent(res.C)


def test_tau_tau_tau_tau_n4():
    w = tau_word(4, 1) + tau_word(4, 2) + tau_word(4, 1) + tau_word(4, 2)
    C = apply_word(an_seed(4), w).C
    assert C == [[-1 if i == j else 0 for j in range(6)] for i in range(6)]


def test_w0_needs_even_n():
    with pytest.raises(ValueError):
        w0_word(5)


@pytest.mark.parametrize("n", [5, 7])
def test_markov_witness(n):
    wit = reddening_witness_odd(n)
    assert len(wit.trail) == len(wit.word) + 1
    last = wit.trail[-1]
    size = len(last)
    final = Seed(tuple(map(tuple, last)), (False,) * size, tuple(map(str, range(size))))
    assert find_markov_subquiver(final) is not None


def test_n5_example_word():
    wit = reddening_witness_odd(5, [4, 1, 2], numbering="cycle")
    assert len(wit.triple) == 3


def test_n3_is_already_markov():
    assert find_markov_subquiver(an_seed(3)) is not None
    assert reddening_witness_odd(3).word == []


def test_apply_weyl_word_left_to_right():
    x = Sampler(1, P).point(6)
    y = apply_weyl_point(4, [1, 2], x)
    assert y == reflection_point(4, 2, reflection_point(4, 1, x))
