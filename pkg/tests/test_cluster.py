import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from angroupoid.cluster import (
    FrozenTarget,
    Mutate,
    Seed,
    Swap,
    apply_word,
    apply_word_point,
    ensemble_point,
    find_markov_subquiver,
    frame,
    is_dt,
    is_isomorphic,
    is_reddening,
    is_sign_coherent,
    random_seed,
    random_sign_coherence,
    step_point_a,
    step_point_x,
)
from angroupoid.exact import Fp, Sampler, trop_degree

P = 4611686018427387847

A2 = Seed.from_arrows(2, [(0, 1)])
A3_LINEAR = Seed.from_arrows(3, [(0, 1), (1, 2)])
MARKOV = Seed.from_arrows(3, [(0, 1, 2), (1, 2, 2), (2, 0, 2)])


def eps_mutation_oracle(eps, k):
    """Textbook matrix mutation, written out on Fractions."""
    n = len(eps)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if k in (i, j):
                out[i][j] = -eps[i][j]
            else:
                out[i][j] = eps[i][j] + (abs(eps[i][k]) * eps[k][j] + eps[i][k] * abs(eps[k][j])) / 2
    return out


seeds = st.builds(
    lambda size, r: random_seed(random.Random(r), size),
    st.integers(2, 6),
    st.integers(0, 10**6),
)


@settings(max_examples=80, deadline=None)
@given(seeds, st.data())
def test_mutation_matches_oracle_and_is_involutive(s, data):
    k = data.draw(st.integers(0, s.size - 1))
    assert s.mutate(k).eps_matrix() == eps_mutation_oracle(s.eps_matrix(), k)
    assert s.mutate(k).mutate(k) == s


def test_seed_validation():
    with pytest.raises(ValueError):
        Seed.from_eps([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        Seed.from_eps([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
    # half arrows are fine between frozen vertices
    Seed.from_eps([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]], frozen=[True, True])


def test_frozen_vertices_cannot_mutate():
    s = frame(A2)
    assert s.size == 4 and s.frozen == (False, False, True, True)
    with pytest.raises(FrozenTarget):
        s.mutate(3)
    with pytest.raises(FrozenTarget):
        step_point_x(s, 2, [Fp(2, P)] * 4)


def test_x_mutation_on_a2():
    # eps_01 = 1: X_0 gets the factor (1 + X_1^{-1})^{-1}, X_1 is inverted
    x = [Fp(3, P), Fp(5, P)]
    y = step_point_x(A2, 1, x)
    assert y[1] == Fp(1, P) / 5
    assert y[0] == x[0] / (1 + 1 / x[1])


def test_a2_pentagon():
    # five alternating mutations return the point with the labels swapped
    x = Sampler(3, P).point(2)
    _, y = apply_word_point(A2, [Mutate(k % 2) for k in range(5)], x)
    assert y == [x[1], x[0]]


def test_ensemble_map_intertwines():
    s = random_seed(random.Random(5), 5)
    a = Sampler(11, P).point(5)
    for k in range(5):
        lhs = ensemble_point(s.mutate(k), step_point_a(s, k, a))
        rhs = step_point_x(s, k, ensemble_point(s, a))
        assert lhs == rhs


def test_swap_relabels():
    s = A3_LINEAR.swap(0, 2)
    assert s.labels == ("3", "2", "1")
    assert s.exchange[2][1] == 2


def test_c_matrix_is_tropical_degree_of_x_pullback():
    rng = random.Random(2)
    for _ in range(30):
        s = random_seed(rng, rng.randint(2, 4), bound=1)
        w = [Mutate(rng.randrange(s.size)) for _ in range(rng.randint(1, 5))]
        res = apply_word(s, w, with_xmap=True)
        for i in range(s.size):
            assert trop_degree(res.xmap[i]) == tuple(res.C[j][i] for j in range(s.size))


def test_source_first_green_sequence_on_a2():
    # mutating the source, then the other vertex, is DT for a linear A_2
    res = apply_word(A2, [Mutate(0), Mutate(1)])
    assert res.green == [True, True]
    assert res.seed == A2
    assert is_dt(res.C)


def test_sink_first_needs_a_swap():
    res = apply_word(A2, [Mutate(1), Mutate(0), Mutate(1)])
    assert res.green == [True, True, True]
    assert is_reddening(res.C) and not is_dt(res.C)
    assert res.C == [[0, -1], [-1, 0]]
    res = apply_word(A2, [Mutate(1), Mutate(0), Mutate(1), Swap(0, 1)])
    assert is_dt(res.C) and res.seed.exchange == A2.exchange


def test_markov_detection():
    assert find_markov_subquiver(MARKOV) is not None
    assert find_markov_subquiver(A3_LINEAR) is None
    # the Markov quiver is mutation-invariant up to isomorphism
    assert is_isomorphic(MARKOV.mutate(0), MARKOV)
    assert not is_isomorphic(MARKOV, A3_LINEAR)


def test_sign_coherence_random_words():
    assert random_sign_coherence(300, seed=9) == []


def test_sign_coherent_predicate():
    assert is_sign_coherent([[1, 0], [0, -1]])
    assert not is_sign_coherent([[1, 0], [-1, 1]])


def test_json_roundtrip():
    s = frame(MARKOV)
    assert Seed.from_json(s.to_json()) == s
