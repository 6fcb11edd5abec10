from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cominuscule.rootdata import (
    RootDataError,
    act,
    cartan_type,
    fixed_words,
    fundamental_weight,
    inverse_word,
    inversion_roots,
    is_reduced,
    length,
    multiply_key,
    positive_roots,
    reduced_subexpressions,
    reflect,
    w_prime,
)

E6 = cartan_type("E6")
E7 = cartan_type("E7")


def test_cartan_matrix_is_simply_laced():
    for name in ("A3", "D4", "D5", "E6", "E7"):
        ct = cartan_type(name)
        n = ct.rank
        for i in range(n):
            assert ct.cartan[i][i] == 2
            for j in range(n):
                assert ct.cartan[i][j] == ct.cartan[j][i]
                if i != j:
                    assert ct.cartan[i][j] in (0, -1)


def test_bad_type_rejected():
    with pytest.raises(RootDataError):
        cartan_type("G2")


def test_reflect_examples():
    assert reflect(E7, 7, fundamental_weight(E7, 7)) == (0, 0, 0, 0, 0, 1, -1)
    assert reflect(E6, 1, fundamental_weight(E6, 1)) == (-1, 0, 1, 0, 0, 0)
    assert reflect(E6, 2, fundamental_weight(E6, 5)) == fundamental_weight(E6, 5)


def test_reflect_index_out_of_range():
    with pytest.raises(RootDataError):
        reflect(E6, 7, fundamental_weight(E6, 1))


@given(st.lists(st.integers(-4, 4), min_size=7, max_size=7), st.integers(1, 7))
def test_reflect_is_involution(mu, i):
    mu = tuple(mu)
    assert reflect(E7, i, reflect(E7, i, mu)) == mu


def test_fixed_words_match_the_tables():
    assert fixed_words(E6, 6).wP == (1, 3, 4, 2, 5, 4, 3, 1, 6, 5, 4, 3, 2, 4, 5, 6)
    assert fixed_words(E7, 7).wP == (7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 2, 5, 7, 4, 3, 1, 6, 5, 4, 2, 3, 4, 5, 6, 7)
    assert len(fixed_words(E6, 6).w0) == 36
    assert len(fixed_words(E7, 7).w0) == 63
    for ct, k in ((E6, 6), (E7, 7)):
        fw = fixed_words(ct, k)
        assert is_reduced(ct, fw.wP) and is_reduced(ct, fw.w0)
        assert fw.w0 == tuple(reversed(fw.r))


def test_grassmannian_word_length_by_brute_force():
    # inversions of the Grassmannian permutation of Gr(2,4): 2-subset {3,4} against {1,2}
    perm = (3, 4, 1, 2)
    inv = sum(1 for i, j in combinations(range(4), 2) if perm[i] > perm[j])
    assert len(fixed_words(cartan_type("A3"), 2).wP) == inv == 4


def test_fixed_words_reject_non_cominuscule():
    with pytest.raises(RootDataError):
        fixed_words(E6, 4)


def test_inversion_roots_examples():
    assert inversion_roots(cartan_type("A2"), (1, 2)) == [(0, 1), (1, 1)]
    betas = inversion_roots(E6, fixed_words(E6, 6).wP)
    assert betas[0] == (0, 0, 0, 0, 0, 1)
    assert len(set(betas)) == 16
    assert all(b[5] == 1 for b in betas)


def test_inversion_roots_reject_non_reduced():
    with pytest.raises(RootDataError):
        inversion_roots(E6, (1, 1))


@pytest.mark.parametrize("ct,k", [(E6, 6), (E7, 7)])
def test_inversion_roots_split_by_k_coefficient(ct, k):
    fw = fixed_words(ct, k)
    all_roots = inversion_roots(ct, fw.w0)
    assert len(all_roots) == len(set(all_roots)) == len(positive_roots(ct)) == len(fw.w0)
    assert all(min(b) >= 0 for b in all_roots)
    with_k = {b for b in all_roots if b[k - 1] == 1}
    without_k = {b for b in all_roots if b[k - 1] == 0}
    assert with_k | without_k == set(all_roots)
    assert with_k == set(inversion_roots(ct, fw.wP))


def test_w_prime_lengths():
    # the quantum numerators are p5'' (E6) and p10 (E7)
    assert length(E6, w_prime(E6, 6)) == 5
    assert length(E7, w_prime(E7, 7)) == 10
    assert w_prime(cartan_type("A1"), 1) == ()


def test_reduced_subexpressions_examples():
    within = inverse_word(fixed_words(E6, 6).wP)
    assert len(reduced_subexpressions(E6, (6, 5, 4, 2, 3, 4, 5), within)) == 4
    assert reduced_subexpressions(E6, (), (1, 2)) == [()]
    assert reduced_subexpressions(cartan_type("A3"), (2,), (1, 2, 1, 2)) == [(2,), (4,)]


def test_reduced_subexpressions_agree_with_brute_force():
    ct = cartan_type("A3")
    within = (1, 2, 3, 1, 2, 1)
    target = (2, 1)
    key = multiply_key(ct, target)
    brute = [
        tuple(p + 1 for p in S)
        for S in combinations(range(len(within)), len(target))
        if multiply_key(ct, [within[p] for p in S]) == key
    ]
    assert sorted(reduced_subexpressions(ct, target, within)) == sorted(brute)


@settings(max_examples=50)
@given(st.lists(st.integers(1, 6), max_size=10))
def test_action_respects_inverse(word):
    mu = tuple(range(1, 7))
    assert act(E6, inverse_word(word), act(E6, word, mu)) == mu
