import random
import time
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import pytest

from cominuscule import cluster, nobody, oracle
from cominuscule.expansion import expand_minor, expand_plucker, minor_sequences
from cominuscule.minuscule import build_diagram, fixture_edges, plucker_diagram
from cominuscule.plucker import (
    eval_on_torus,
    parse_poly,
    verify_minor_identities,
    verify_relations,
    verify_superpotential,
)
from cominuscule.rootdata import cartan_type, fixed_words, multiply_key
from cominuscule.subduction import leaf_reduce, precedes, subduce, valuation
from cominuscule.torus import TorusPoly

E6_FVECTOR = (27, 297, 1858, 7598, 21884, 46415, 74521, 92095, 88372, 65979, 38160, 16900, 5612, 1349, 221, 22)
TAIL = "a13*a14*a16*a17*a18^2*a19*a20*a21*a22*a23^2*a24^2*a25^2*a26^2*a27^3"


def _failed(*reports):
    return [x.name for rep in reports for x in rep.items if not x.ok]


def test_c01_diagrams(record):
    t0 = time.perf_counter()
    sizes = (len(build_diagram("E6", 1)), len(build_diagram("E6", 6)), len(build_diagram("E7", 7)))
    edges_ok = True
    for t, k in (("E6", 6), ("E7", 7)):
        d = plucker_diagram(t, k)
        ours = {(str(d.labels[b]), str(d.labels[a]), i) for a, b, i in d.edges}
        edges_ok &= ours == set(fixture_edges(t))
    elapsed = time.perf_counter() - t0
    ok = sizes == (27, 27, 56) and edges_ok and elapsed < 1
    record(1, ok, f"diagram sizes {sizes}, fixture edges match: {edges_ok}, {elapsed:.2f}s")


def test_c02_e6_minor_identities(record):
    t0 = time.perf_counter()
    rep = verify_minor_identities("E6", transposed=True)
    elapsed = time.perf_counter() - t0
    record(2, rep.ok and len(rep.items) == 6 and elapsed < 60, f"E6 minors = p16, q12, q20, q24, q16, p8: failures {_failed(rep)}, {elapsed:.1f}s")


def test_c03_e7_minor_identities(record):
    t0 = time.perf_counter()
    rep = verify_minor_identities("E7", transposed=True)
    elapsed = time.perf_counter() - t0
    record(3, rep.ok and len(rep.items) == 7 and elapsed < 300, f"E7 minors = q18, q27, q36', q54, q45, q36, p27 (varpi4 included): failures {_failed(rep)}, {elapsed:.1f}s")


def test_c04_superpotential(record):
    t0 = time.perf_counter()
    e6, e7 = verify_superpotential("E6"), verify_superpotential("E7")
    elapsed = time.perf_counter() - t0
    counts = (len(e6.items) - 1, len(e7.items) - 1)
    ok = e6.ok and e7.ok and counts == (7, 8) and elapsed < 120
    record(4, ok, f"term quotients, quantum numerators and support partitions {counts}: failures {_failed(e6, e7)}, {elapsed:.1f}s")


def test_c05_relations(record):
    t0 = time.perf_counter()
    e6, e7 = verify_relations("E6"), verify_relations("E7")
    elapsed = time.perf_counter() - t0
    counts = (len(e6.items), len(e7.items))
    ok = e6.ok and e7.ok and counts == (10, 28) and elapsed < 120
    record(5, ok, f"Plücker relations hold {counts}: failures {_failed(e6, e7)}, {elapsed:.1f}s")


def test_c06_long_e7_minor_expansion(record):
    t0 = time.perf_counter()
    ct = cartan_type("E7")
    fw = fixed_words(ct, 7)
    u = multiply_key(ct, fw.w0[: len(fw.w0) - 22], fw.w0)
    p = expand_minor(ct, 3, u, transposed=True)
    seqs = minor_sequences(ct, 3, u)
    trailing = [TorusPoly.parse(27, f"{h}*{TAIL}").min_term()[1] for h in ("a5*a7", "a5*a12", "a11*a12")]
    has_tail = all(p.coefficient(e) == 1 for e in trailing)
    elapsed = time.perf_counter() - t0
    ok = len(p) == 45 and len(seqs) == 43 and has_tail and len(p.degrees()) == 1 and elapsed < 60
    record(6, ok, f"{len(p)} terms, {len(seqs)} sequences, trailing monomials present: {has_tail}, degrees {sorted(p.degrees())}, {elapsed:.1f}s")


def test_c07_example_subduction(record):
    t0 = time.perf_counter()
    seed = cluster.initial_seed("E7", 7)
    target = cluster.seed_minor("E7", 7, seed.by_position(23))
    res = subduce("E7", 7, target, order="degrevlex")
    products = [(s.product(), s.multiplier) for s in res.steps]
    expected = [("p1*p6''*p16", 1), ("p1*p5''*p17", -1), ("p6''*p17'", -1), ("p5''*p18", 1)]
    final = parse_poly("p5''*(p18 - p1*p17) - p6''*(p17' - p1*p16)")
    round_trip = eval_on_torus("E7", 7, res.expression) == target
    elapsed = time.perf_counter() - t0
    ok = products == expected and res.expression == final and round_trip and elapsed < 10
    record(7, ok, f"steps {products}, round trip {round_trip}, {elapsed:.1f}s (deg-revlex tie order)")


@pytest.mark.xfail(strict=True, reason="printed q15 (E6) and q30 (E7) are misprints; see the decisions ledger")
def test_c08_cluster_seeds(record):
    t0 = time.perf_counter()
    exch = (
        cluster.exchangeable_indices("E6") == set(range(1, 37)) - {1, 2, 3, 4, 5, 9}
        and cluster.exchangeable_indices("E7") == set(range(1, 64)) - {1, 2, 3, 4, 5, 6, 10}
    )
    e6 = cluster.verify_cluster_expressions("E6")
    e7 = cluster.verify_cluster_expressions("E7")
    quivers = all(
        cluster.compare_quiver(build(t), cluster.fixture_arrows(t, kind)).ok
        for t in ("E6", "E7")
        for kind, build in (("gls", cluster.build_gls_quiver), ("cmp", cluster.build_cmp_quiver))
    )
    elapsed = time.perf_counter() - t0
    ok = exch and e6.ok and e7.ok and quivers and elapsed < 300
    record(8, ok, f"exchangeable sets {exch}, quivers {quivers}, printed expressions failing {_failed(e6, e7)}, {elapsed:.1f}s")


@pytest.mark.xfail(strict=True, reason="12 E7 rows of the printed table need a commuted wP word; see the decisions ledger")
def test_c09_valuations(record):
    t0 = time.perf_counter()
    bad = []
    for t in ("E6", "E7"):
        ref = nobody.tabulated_valuations(t)
        for lab, v in nobody.plucker_valuation_table(t).items():
            if ref[str(lab)] != v.digits():
                bad.append(f"{t}:{lab}")
    elapsed = time.perf_counter() - t0
    record(9, not bad and elapsed < 60, f"{83 - len(bad)}/83 valuations match, mismatches {bad}, {elapsed:.1f}s")


def test_c10_newton_okounkov_bodies(record):
    t0 = time.perf_counter()
    e6 = nobody.convex_hull([v.exps for v in nobody.plucker_valuation_table("E6").values()])
    fvec = nobody.f_vector(e6)
    lattice = nobody.zero_one_lattice_points(e6)
    e6_ok = (e6.dim, e6.volume) == (16, 78) and fvec == E6_FVECTOR and lattice == sorted(e6.points) and len(lattice) == 27
    t1 = time.perf_counter()
    e7 = nobody.convex_hull([v.exps for v in nobody.plucker_valuation_table("E7").values()])
    e7_ok = (e7.dim, e7.volume) == (27, 13110)
    t2 = time.perf_counter()
    ok = e6_ok and e7_ok and t1 - t0 < 300
    record(10, ok, f"E6 dim {e6.dim} volume {e6.volume} f-vector match {fvec == E6_FVECTOR} 0/1 points {len(lattice)} ({t1 - t0:.1f}s); E7 dim {e7.dim} volume {e7.volume} ({t2 - t1:.1f}s)")


def _equal_valuation_buckets(t, k, degrees):
    labels = plucker_diagram(t, k).labels
    nu = {lab: valuation(expand_plucker(t, k, lab)) for lab in labels}
    buckets = defaultdict(list)
    for d in degrees:
        for mono in combinations_with_replacement(labels, d):
            v = nu[mono[0]]
            for lab in mono[1:]:
                v = v + nu[lab]
            buckets[v].append(mono)
    return [b for b in buckets.values() if len(b) > 1]


@lru_cache(maxsize=None)
def _product(t, k, mono):
    p = expand_plucker(t, k, mono[0])
    for lab in mono[1:]:
        p = p * expand_plucker(t, k, lab)
    return p


def test_c11_one_dimensional_leaves(record):
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    pools = {"E6": (6, _equal_valuation_buckets("E6", 6, (2, 3))), "E7": (7, _equal_valuation_buckets("E7", 7, (2,)))}
    failures = 0
    for n in range(1000):
        t = "E6" if n % 2 == 0 else "E7"
        k, buckets = pools[t]
        m1, m2 = rng.sample(rng.choice(buckets), 2)
        c1, c2 = rng.choice((-3, -2, -1, 1, 2, 3)), rng.choice((-3, -2, -1, 1, 2, 3))
        p, q = _product(t, k, m1).scale(c1), _product(t, k, m2).scale(c2)
        c, r = leaf_reduce(p, q)
        if c != Fraction(c1, c2) or (r and not precedes(valuation(p), valuation(r))):
            failures += 1
    elapsed = time.perf_counter() - t0
    record(11, failures == 0 and elapsed < 60, f"1000 equal-valuation pairs reduced, {failures} failures, {elapsed:.1f}s")


def test_c12_type_a_oracle(record):
    t0 = time.perf_counter()
    rep = oracle.run_typea()
    elapsed = time.perf_counter() - t0
    record(12, rep.ok and len(rep.items) == 17 and elapsed < 10, f"Gr(2,4), Gr(2,5) minors and A3 quantum numerator: {len(rep.items)} checks, failures {_failed(rep)}, {elapsed:.1f}s")


def test_c08_errata_and_remaining_checks():
    for t, name in (("E6", "q15"), ("E7", "q30")):
        assert cluster.verify_cluster_expressions(t, corrected=True).ok
        printed = cluster.verify_cluster_expressions(t)
        assert [x.name.split(" = ")[-1] for x in printed.items if not x.ok] == [name]


def test_c09_commuted_word_reproduces_table():
    assert {str(k): v.digits() for k, v in nobody.plucker_valuation_table("E6").items()} == nobody.tabulated_valuations("E6")
    commuted = nobody.plucker_valuation_table("E7", word=nobody.commuted_word("E7"))
    assert {str(k): v.digits() for k, v in commuted.items()} == nobody.tabulated_valuations("E7")
