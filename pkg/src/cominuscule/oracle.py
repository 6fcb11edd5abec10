"""Independent type-A checks: Plücker coordinates of Gr(k, n) as symbolic matrix
minors of a product of lower elementary matrices, and the quantum numerator by
brute-force enumeration of subwords with permutations."""

from __future__ import annotations

from itertools import combinations

import sympy

from .expansion import expand_plucker
from .minuscule import plucker_diagram
from .plucker import Report, quantum_numerator
from .rootdata import cartan_type, fixed_words, w_prime
from .torus import TorusPoly


def _subset_weight(subset: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Fundamental coordinates of e_{i1} ^ ... ^ e_{ik}: e_a has weight varpi_a - varpi_{a-1}."""
    c = [0] * (n - 1)
    for a in subset:
        if a <= n - 1:
            c[a - 1] += 1
        if a >= 2:
            c[a - 2] -= 1
    return tuple(c)


def lower_product(word: tuple[int, ...], n: int) -> tuple[sympy.Matrix, list[sympy.Symbol]]:
    """y_{r_l}(a_l) ... y_{r_1}(a_1) with y_i(a) = 1 + a E_{i+1, i}."""
    syms = list(sympy.symbols(f"a1:{len(word) + 1}"))
    m = sympy.eye(n)
    for j in range(len(word) - 1, -1, -1):
        y = sympy.eye(n)
        y[word[j], word[j] - 1] = syms[j]
        m = m * y
    return m, syms


def matrix_plucker(n: int, k: int) -> dict[tuple[int, ...], TorusPoly]:
    """Subset I of size n - k -> minor of u_+^T on the rows {k+1..n} and the
    columns I.  The coordinates of Gr(k, n) live in the (n-k)-th exterior power,
    the representation dual to the k-th."""
    word = fixed_words(cartan_type(f"A{n - 1}"), k).wP
    m, syms = lower_product(word, n)
    rows = list(range(k, n))
    out = {}
    for cols in combinations(range(n), n - k):
        minor = sympy.expand(m.extract(rows, list(cols)).det())
        terms = {}
        if minor != 0:
            for mono, c in sympy.Poly(minor, *syms).terms():
                terms[tuple(mono)] = int(c)
        out[tuple(c + 1 for c in cols)] = TorusPoly(len(word), terms)
    return out


def check_grassmannian(n: int, k: int = 2) -> Report:
    ct = cartan_type(f"A{n - 1}")
    diagram = plucker_diagram(ct, k)
    rep = Report(f"Gr({k},{n}) Plücker coordinates against matrix minors")
    for subset, poly in matrix_plucker(n, k).items():
        lab = diagram.labels[diagram.index[_subset_weight(subset, n)]]
        ours = expand_plucker(ct, k, lab)
        rep.add(f"{lab} = minor{subset}", ours == poly, f"{len(poly)} term(s)")
    return rep


def _perm(word, n: int) -> tuple[int, ...]:
    p = list(range(n))
    for s in word:
        p[s - 1], p[s] = p[s], p[s - 1]
    return tuple(p)


def _inversions(p: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def brute_quantum_numerator(n: int, k: int) -> TorusPoly:
    """Sum of a_S over position sets S whose subword of wP is a reduced word for w'."""
    ct = cartan_type(f"A{n - 1}")
    wP = fixed_words(ct, k).wP
    target = _perm(w_prime(ct, k), n)
    length = _inversions(target)
    terms: dict[tuple[int, ...], int] = {}
    for S in combinations(range(len(wP)), length):
        if _perm([wP[i] for i in S], n) == target:
            e = tuple(1 if i in S else 0 for i in range(len(wP)))
            terms[e] = terms.get(e, 0) + 1
    return TorusPoly(len(wP), terms)


def check_quantum_numerator(n: int, k: int = 2) -> Report:
    ct = cartan_type(f"A{n - 1}")
    rep = Report(f"Gr({k},{n}) quantum numerator against subword enumeration")
    ours = quantum_numerator(ct, k)
    brute = brute_quantum_numerator(n, k)
    rep.add(f"numerator = {brute.pretty()}", ours == brute)
    return rep


def run_typea() -> Report:
    rep = Report("type A oracle")
    for sub in (check_grassmannian(4), check_grassmannian(5), check_quantum_numerator(4)):
        rep.items.extend(sub.items)
    return rep
