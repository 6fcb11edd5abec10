import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cominuscule import cluster
from cominuscule.expansion import expand_minor, expand_plucker
from cominuscule.minuscule import label, plucker_diagram
from cominuscule.plucker import builtin_tables, eval_on_torus, parse_poly
from cominuscule.rootdata import cartan_type, fixed_words, inverse_word
from cominuscule.subduction import (
    IterationLimit,
    NoMatchingPlucker,
    ValuationVector,
    leaf_reduce,
    min_term,
    min_term_index,
    subduce,
    valuation,
)
from cominuscule.torus import TorusPoly

E6 = cartan_type("E6")
E7 = cartan_type("E7")
EXAMPLE_EXPRESSION = "p5''*(p18 - p1*p17) - p6''*(p17' - p1*p16)"
TAIL = "a13*a14*a16*a17*a18^2*a19*a20*a21*a22*a23^2*a24^2*a25^2*a26^2*a27^3"


def _example_target():
    seed = cluster.initial_seed(E7, 7)
    return cluster.seed_minor(E7, 7, seed.by_position(23))


def _vec(text: str, n: int = 27) -> ValuationVector:
    return min_term(TorusPoly.parse(n, text))[1]


def test_example_steps_in_degrevlex():
    target = _example_target()
    res = subduce(E7, 7, target, order="degrevlex")
    expected = [
        ("a11*a12*" + TAIL, 1, ("p1", "p6''", "p16"), 1),
        ("a10*a11*a12*a13*a14*a16*a17*a18*a19*a20*a21*a22*a23^2*a24^2*a25^2*a26^2*a27^3", -1, ("p1", "p5''", "p17"), -1),
        ("a11*a12*a13*a14*a15*a16*a17*a18^2*a19*a20*a21*a22*a23^2*a24^2*a25^2*a26^2*a27^2", -1, ("p6''", "p17'"), -1),
        ("a10*a11*a12*a13*a14*a15*a16*a17*a18*a19*a20*a21*a22*a23^2*a24^2*a25^2*a26^2*a27^2", 1, ("p5''", "p18"), 1),
    ]
    assert len(res.steps) == 4
    for step, (mono, coeff, labels, mult) in zip(res.steps, expected):
        assert step.min_term == _vec(mono)
        assert step.coeff == coeff
        assert step.labels == tuple(sorted(label(x) for x in labels))
        assert step.multiplier == mult
    assert res.expression == parse_poly(EXAMPLE_EXPRESSION)
    assert eval_on_torus(E7, 7, res.expression) == target


def test_example_in_deglex_swaps_middle_steps():
    target = _example_target()
    lex = subduce(E7, 7, target)
    rev = subduce(E7, 7, target, order="degrevlex")
    assert lex.expression == rev.expression
    assert [s.labels for s in lex.steps] == [rev.steps[i].labels for i in (0, 2, 1, 3)]
    assert lex.steps[0].min_term == rev.steps[0].min_term


def test_min_term_examples():
    assert min_term(_example_target())[1] == _vec("a11*a12*" + TAIL)
    assert min_term(TorusPoly.parse(3, "-2*a1*a3"))[0] == -2
    assert valuation(expand_plucker(E6, 6, "p5''")).digits() == "0000000100010111"
    assert valuation(expand_plucker(E6, 6, "p1")).digits() == "0000000000000001"
    assert valuation(expand_plucker(E6, 6, "p0")).digits() == "0" * 16
    assert valuation(expand_plucker(E6, 6, "p16")).digits() == "1" * 16
    prod = expand_plucker(E6, 6, "p1") * expand_plucker(E6, 6, "p16")
    assert valuation(prod) == valuation(expand_plucker(E6, 6, "p1")) + valuation(expand_plucker(E6, 6, "p16"))


def test_valuation_vector_parsing():
    v = ValuationVector((0, 1, 12))
    assert ValuationVector.parse(v.digits()) == v
    assert ValuationVector.parse("0101") == ValuationVector((0, 1, 0, 1))


def test_small_subductions():
    res = subduce(E6, 6, expand_plucker(E6, 6, "p3"))
    assert len(res.steps) == 1 and res.expression == parse_poly("p3")
    winv = inverse_word(fixed_words(E6, 6).wP)
    target = expand_minor(E6, 2, winv)
    assert subduce(E6, 6, target).expression == parse_poly("p1*p11'' - p12''")
    assert subduce(E6, 6, target, degree=2).expression == parse_poly("p1*p11'' - p0*p12''")
    with pytest.raises(ValueError):
        subduce(E6, 6, target, degree=1)
    assert subduce(E6, 6, TorusPoly.zero(16)).expression == parse_poly("0")


def test_failures():
    with pytest.raises(NoMatchingPlucker):
        subduce(E6, 6, TorusPoly.var(16, 1))
    with pytest.raises(IterationLimit):
        subduce(E7, 7, _example_target(), limit=1)
    with pytest.raises(ValueError):
        subduce(E6, 6, TorusPoly.one(3))


@pytest.mark.parametrize("t,k", [("E6", 6), ("E7", 7)])
@pytest.mark.parametrize("order", ["deglex", "degrevlex"])
def test_min_terms_are_injective(t, k, order):
    index = min_term_index(cartan_type(t), k, order)
    assert len(index) == len(plucker_diagram(t, k))


@pytest.mark.parametrize("t", ["E6", "E7"])
def test_round_trip_on_tabulated_polynomials(t):
    tables = builtin_tables(t)
    for name in sorted(tables.polys):
        target = eval_on_torus(t, tables.k, tables.polys[name])
        res = subduce(t, tables.k, target)
        assert eval_on_torus(t, tables.k, res.expression) == target


def test_round_trip_on_e6_seed():
    seed = cluster.initial_seed(E6, 6)
    for var in seed.variables:
        target = seed.minor(var)
        assert eval_on_torus(E6, 6, subduce(E6, 6, target).expression) == target


LABELS_E6 = [str(x) for x in plucker_diagram("E6", 6).labels]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(LABELS_E6), min_size=1, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_random_products_subduce(labels, coeffs):
    target = TorusPoly.zero(16)
    rng = random.Random(sum(coeffs))
    for c in coeffs:
        mono = TorusPoly.one(16)
        for lab in rng.sample(labels, len(labels)):
            mono = mono * expand_plucker(E6, 6, lab)
        target = target + mono.scale(c)
    res = subduce(E6, 6, target)
    assert eval_on_torus(E6, 6, res.expression) == target


def test_leaf_reduce():
    p = expand_plucker(E6, 6, "p1") * expand_plucker(E6, 6, "p7'")
    q = expand_plucker(E6, 6, "p1") * expand_plucker(E6, 6, "p7'")
    c, r = leaf_reduce(p, q.scale(2))
    assert c == 0.5 and not r
    with pytest.raises(ValueError):
        leaf_reduce(expand_plucker(E6, 6, "p1"), expand_plucker(E6, 6, "p2"))
