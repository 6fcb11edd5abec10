from collections import Counter
from itertools import combinations

import pytest

from cominuscule.minuscule import (
    DiagramError,
    PluckerLabel,
    build_diagram,
    fixture_edges,
    label,
    paths_to_lowest,
    plucker_diagram,
)
from cominuscule.rootdata import add, cartan_type, simple_root_weight


def test_vertex_counts():
    assert len(build_diagram("E6", 1)) == 27
    assert len(build_diagram("E6", 6)) == 27
    assert len(build_diagram("E7", 7)) == 56


def test_gr24_has_six_vertices():
    assert len(build_diagram("A3", 2)) == len(list(combinations(range(4), 2))) == 6


def test_non_minuscule_rejected():
    with pytest.raises(DiagramError):
        build_diagram("E6", 2)


def test_top_chain_of_e6():
    d = build_diagram("E6", 1)
    v = d.top
    assert d.labels[v] == label("p16")
    seen = []
    for _ in range(3):
        (dst, i), = [(b, i) for a, b, i in d.edges if a == v]
        seen.append(i)
        v = dst
    assert seen == [1, 3, 4]
    assert d.labels[v] == label("p13")


@pytest.mark.parametrize("t,k", [("E6", 6), ("E7", 7)])
def test_edges_match_fixture(t, k):
    d = plucker_diagram(t, k)
    ours = {(str(d.labels[b]), str(d.labels[a]), i) for a, b, i in d.edges}
    assert ours == set(fixture_edges(t))


@pytest.mark.parametrize("t,k", [("E6", 1), ("E6", 6), ("E7", 7), ("A4", 2), ("D5", 5), ("D4", 1)])
def test_diagram_invariants(t, k):
    d = build_diagram(t, k)
    ct = cartan_type(t)
    assert len(set(d.weights)) == len(d)
    for a, b, i in d.edges:
        assert d.weights[b] == add(d.weights[a], simple_root_weight(ct, i), -1)
        assert d.degree(a) == d.degree(b) + 1
    outs = Counter((a, i) for a, b, i in d.edges)
    ins = Counter((b, i) for a, b, i in d.edges)
    assert max(outs.values()) == 1 and max(ins.values()) == 1
    sources = {a for a, _, _ in d.edges} - {b for _, b, _ in d.edges}
    sinks = {b for _, b, _ in d.edges} - {a for a, _, _ in d.edges}
    assert sources == {d.top} and sinks == {d.bottom}
    assert d.labels[d.bottom] == label("p0")
    for v in range(len(d)):
        assert d.labels[v].degree == d.degree(v)


def test_longest_chain():
    assert plucker_diagram("E6", 6).degree(plucker_diagram("E6", 6).top) == 16
    assert plucker_diagram("E7", 7).degree(plucker_diagram("E7", 7).top) == 27


def test_paths_examples():
    d = plucker_diagram("E6", 6)
    assert sorted(paths_to_lowest(d, d.vertex("p7'"))) == [(6, 5, 4, 2, 3, 4, 5), (6, 5, 4, 3, 2, 4, 5)]
    assert paths_to_lowest(d, d.vertex("p1")) == [(6,)]
    assert paths_to_lowest(d, d.bottom) == [()]


def test_paths_are_walks_to_the_bottom():
    d = plucker_diagram("E7", 7)
    up = d.up
    for v in range(len(d)):
        paths = paths_to_lowest(d, v)
        assert len(set(paths)) == len(paths)
        for p in paths:
            assert len(p) == d.degree(v)
            u = d.bottom
            for i in p:
                u = up[(u, i)]
            assert u == v


def test_label_parse_round_trip():
    for text in ("p0", "p5'", "p12''"):
        assert str(PluckerLabel.parse(text)) == text
