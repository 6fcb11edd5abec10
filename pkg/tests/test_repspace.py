from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cominuscule.repspace import (
    LOWER,
    RAISE,
    Adjoint,
    Exterior,
    Minuscule,
    RealizationError,
    SparseVec,
    Symmetric,
    Tensor,
    apply_chevalley,
    basis_vector,
    extreme_vector,
    highest_weight_vector,
    recommended_realization,
    vector_weight,
)
from cominuscule.rootdata import add, cartan_type, fixed_words, fundamental_weight, inverse_word, simple_root_weight

E6 = cartan_type("E6")
E7 = cartan_type("E7")
V1 = Minuscule(E6, 1)
V6 = Minuscule(E6, 6)
V7 = Minuscule(E7, 7)
ADJ6 = Adjoint(E6)

MODULES = {
    "min_e6": V1,
    "min_e7": V7,
    "adj_e6": ADJ6,
    "ext2_e6": Exterior(2, V1),
    "ext3_e6": Exterior(3, V1),
    "sym2_e6": Symmetric(2, V6),
    "tensor_e6": Tensor(V1, V6),
}


def _basis(module):
    if isinstance(module, Exterior):
        return tuple(combinations(module.base.basis(), module.p))
    if isinstance(module, Symmetric):
        return tuple(combinations_with_replacement(module.base.basis(), module.p))
    return module.basis()


BASES = {name: _basis(m) for name, m in MODULES.items()}


def test_lowering_examples():
    d = V1.diagram
    assert apply_chevalley(V1, LOWER, 6, 1, basis_vector(d.vertex("p1"))) == {d.vertex("p0"): 1}
    d = V7.diagram
    ext = Exterior(2, V7)
    top = tuple(sorted((d.vertex("p27"), d.vertex("p26"))))
    assert apply_chevalley(ext, LOWER, 7, 1, {top: 1}) == {}
    moved = tuple(sorted((d.vertex("p27"), d.vertex("p25"))))
    assert apply_chevalley(ext, LOWER, 6, 1, {top: 1}) == {moved: 1}


def test_bad_direction_and_power():
    with pytest.raises(ValueError):
        apply_chevalley(V1, "sideways", 1, 1, {0: 1})
    with pytest.raises(ValueError):
        apply_chevalley(V1, LOWER, 1, 0, {0: 1})


@settings(max_examples=150)
@given(st.sampled_from(sorted(MODULES)), st.data())
def test_weight_bookkeeping(name, data):
    module = MODULES[name]
    lab = data.draw(st.sampled_from(BASES[name]))
    i = data.draw(st.integers(1, module.ct.rank))
    for direction, sign in ((LOWER, -1), (RAISE, 1)):
        v = apply_chevalley(module, direction, i, 1, basis_vector(lab))
        if v:
            assert vector_weight(module, v) == add(module.weight(lab), simple_root_weight(module.ct, i), sign)


@settings(max_examples=150)
@given(st.sampled_from(sorted(MODULES)), st.data())
def test_commutator_of_raising_and_lowering(name, data):
    module = MODULES[name]
    lab = data.draw(st.sampled_from(BASES[name]))
    i = data.draw(st.integers(1, module.ct.rank))
    j = data.draw(st.integers(1, module.ct.rank))
    v = basis_vector(lab)
    ef = apply_chevalley(module, RAISE, i, 1, apply_chevalley(module, LOWER, j, 1, v))
    fe = apply_chevalley(module, LOWER, j, 1, apply_chevalley(module, RAISE, i, 1, v))
    diff = SparseVec(ef)
    for k, c in fe.items():
        diff.add_term(k, -c)
    expected = {lab: module.weight(lab)[i - 1]} if i == j and module.weight(lab)[i - 1] else {}
    assert dict(diff) == expected


@pytest.mark.parametrize("module", [V1, V6, V7])
def test_serre_vanishing_on_minuscule(module):
    for lab in module.basis():
        for i in range(1, module.ct.rank + 1):
            for direction in (RAISE, LOWER):
                once = apply_chevalley(module, direction, i, 1, basis_vector(lab))
                assert not apply_chevalley(module, direction, i, 1, once)


def _bracket_vec(adj, x: dict, y: dict) -> SparseVec:
    out = SparseVec()
    for a, ca in x.items():
        for b, cb in y.items():
            for c, cc in adj.bracket(a, b).items():
                out.add_term(c, ca * cb * cc)
    return out


@settings(max_examples=200)
@given(st.data())
def test_adjoint_antisymmetry_and_jacobi(data):
    n = len(ADJ6.basis())
    x, y, z = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    xy = _bracket_vec(ADJ6, {x: 1}, {y: 1})
    yx = _bracket_vec(ADJ6, {y: 1}, {x: 1})
    assert xy == SparseVec({k: -c for k, c in yx.items()})
    total = SparseVec()
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        for k, v in _bracket_vec(ADJ6, {a: 1}, _bracket_vec(ADJ6, {b: 1}, {c: 1})).items():
            total.add_term(k, v)
    assert not total


def test_highest_weight_examples():
    d = V7.diagram
    ext2 = Exterior(2, V7)
    top2 = tuple(sorted(d.vertex(x) for x in ("p27", "p26")))
    assert highest_weight_vector(ext2, fundamental_weight(E7, 6)) == {top2: 1}
    lam = tuple(4 * x for x in fundamental_weight(E7, 7))
    for c, i in ((3, 7), (2, 6), (1, 5)):
        lam = add(lam, simple_root_weight(E7, i), -c)
    assert lam == fundamental_weight(E7, 4)
    top4 = tuple(sorted(d.vertex(x) for x in ("p27", "p26", "p25", "p24")))
    assert highest_weight_vector(Exterior(4, V7), lam) == {top4: 1}
    adj = Adjoint(E7)
    assert highest_weight_vector(adj, fundamental_weight(E7, 1)) == {0: 1}


@pytest.mark.parametrize("name", ["adj_e6", "ext2_e6", "ext3_e6", "tensor_e6"])
def test_highest_weight_vector_is_killed_by_raising(name):
    module = MODULES[name]
    for i in range(1, 7):
        lam = fundamental_weight(E6, i)
        try:
            v = highest_weight_vector(module, lam)
        except RealizationError:
            continue
        assert min(v) in v and v[min(v)] == 1
        for j in range(1, 7):
            assert not apply_chevalley(module, RAISE, j, 1, v)


def test_multiplicity_error_names_dimension():
    adj = Adjoint("A2")
    with pytest.raises(RealizationError, match="dimension 2"):
        highest_weight_vector(Tensor(adj, adj), (1, 1))
    with pytest.raises(RealizationError, match="does not occur"):
        highest_weight_vector(V1, fundamental_weight(E6, 6))


def test_extreme_vector_examples():
    winv = inverse_word(fixed_words(E6, 6).wP)
    hv = highest_weight_vector(V6, fundamental_weight(E6, 6))
    assert extreme_vector(V6, hv, winv) == {V6.diagram.vertex("p8"): 1}
    assert extreme_vector(V6, hv, ()) == hv
    hv2 = highest_weight_vector(ADJ6, fundamental_weight(E6, 2))
    v = SparseVec(hv2)
    for i in reversed((6, 6, 5, 4, 2, 3, 4, 5, 1, 3, 4, 2)):
        v = apply_chevalley(ADJ6, LOWER, i, 1, v)
    assert extreme_vector(ADJ6, hv2, winv) == v.scaled(Fraction(1, 2))


def test_recommended_realizations():
    assert repr(recommended_realization(E7, 3)) == repr(Exterior(2, Adjoint(E7)))
    assert repr(recommended_realization(E7, 4)) == repr(Exterior(4, V7))
    assert repr(recommended_realization(E6, 4)) == repr(Exterior(3, V1))
    assert comb(56, 4) == 367290 == 365750 + 1539 + 1
    assert comb(27, 3) == 2925
