"""Newton-Okounkov bodies spanned by Plücker valuations: exact placing
triangulations, normalized volumes, facets, f-vectors and 0/1 lattice points."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Iterable, Sequence

from .expansion import default_k, expand_plucker
from .minuscule import PluckerLabel, plucker_diagram
from .rootdata import CartanType, RootDataError, cartan_type, fixed_words
from .subduction import ValuationVector, valuation

Point = tuple[int, ...]


class DegenerateHull(ValueError):
    def __init__(self, dim: int, ambient: int):
        super().__init__(f"points span an affine subspace of dimension {dim} in R^{ambient}")
        self.dim = dim


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------------ valuation tables


def plucker_valuation_table(
    ct: CartanType | str,
    k: int | None = None,
    word: Sequence[int] | None = None,
    order: str = "deglex",
) -> dict[PluckerLabel, ValuationVector]:
    """label -> valuation of its torus expansion, in diagram order."""
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    out = {}
    for lab in plucker_diagram(ct, k).labels:
        out[lab] = valuation(expand_plucker(ct, k, lab, word=word), order)
    return out


@lru_cache(maxsize=None)
def tabulated_valuations(ct: CartanType | str) -> dict[str, str]:
    """The digit strings shipped in data/valuations_<type>.json."""
    ct = cartan_type(ct)
    try:
        text = resources.files("cominuscule").joinpath(f"data/valuations_{ct}.json").read_text()
    except FileNotFoundError:
        raise RootDataError(f"no valuation table for {ct}") from None
    return json.loads(text)["valuations"]


def commuted_word(ct: CartanType | str, k: int | None = None) -> tuple[int, ...]:
    """wP with the letters at positions 13-15 of the E7 word reordered (7, 5, 2);
    a commutation-equivalent word under which the shipped E7 table is reproduced."""
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    w = list(fixed_words(ct, k).wP)
    if str(ct) != "E7" or w[12:15] != [2, 5, 7]:
        raise RootDataError("only defined for the fixed E7 word")
    w[12:15] = [7, 5, 2]
    return tuple(w)


# ------------------------------------------------------------------ exact linear algebra


def _affine_basis(points: Sequence[Point]) -> list[int]:
    """Indices of a maximal affinely independent subset, chosen greedily in input order."""
    if not points:
        return []
    base = points[0]
    rows: list[list[Fraction]] = []  # echelon rows
    pivots: list[int] = []
    chosen = [0]
    for idx in range(1, len(points)):
        v = [Fraction(a - b) for a, b in zip(points[idx], base)]
        for row, piv in zip(rows, pivots):
            if v[piv]:
                f = v[piv] / row[piv]
                v = [x - f * y for x, y in zip(v, row)]
        nz = next((j for j, x in enumerate(v) if x), None)
        if nz is None:
            continue
        rows.append(v)
        pivots.append(nz)
        chosen.append(idx)
    return chosen


def _det(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _kernel_vector(rows: list[list[int]], dim: int) -> list[int]:
    """Primitive integer vector orthogonal to dim-1 independent integer rows."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = next(c for c in range(dim) if c not in pivots)
    v = [Fraction(0)] * dim
    v[free] = Fraction(1)
    for row, c in zip(m, pivots):
        v[c] = -row[free]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _primitive(n: list[int], b: int) -> tuple[tuple[int, ...], int]:
    g = abs(b)
    for x in n:
        g = gcd(g, x)
    return tuple(x // g for x in n), b // g


# ------------------------------------------------------------------ placing triangulation


@dataclass
class _Facet:
    verts: frozenset[int]
    normal: tuple[int, ...]
    offset: int
    lattice: int  # |det(F - f0, q - f0)| = lattice * |normal.q - offset|

    def height(self, p: Point) -> int:
        return sum(a * b for a, b in zip(self.normal, p)) - self.offset


@dataclass
class Polytope:
    points: list[Point]
    dim: int
    volume: int
    simplices: int
    hrep: list[tuple[tuple[int, ...], int]] = field(default_factory=list)  # normal.x <= offset

    @property
    def vertices(self) -> list[Point]:
        return _vertices(self)

    def contains(self, x: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(n, x)) <= b for n, b in self.hrep)

    def facet_sets(self) -> list[int]:
        """Bitmask over self.points of the points on each facet."""
        out = []
        for n, b in self.hrep:
            mask = 0
            for i, p in enumerate(self.points):
                if sum(a * c for a, c in zip(n, p)) == b:
                    mask |= 1 << i
            out.append(mask)
        return out

    def hrep_rows(self) -> list[str]:
        return [" ".join(map(str, n)) + f" <= {b}" for n, b in self.hrep]


def convex_hull(points: Iterable[Sequence[int]], budget: int | None = None) -> Polytope:
    """Exact hull of integer points by beneath-beyond placement in input order.

    The boundary is kept as a triangulation; each point strictly beyond some
    boundary simplices is coned over them (those cones form the placing
    triangulation) and the horizon ridges are joined to it."""
    pts: list[Point] = []
    seen = set()
    for p in points:
        t = tuple(int(x) for x in p)
        if t not in seen:
            seen.add(t)
            pts.append(t)
    if not pts:
        raise DegenerateHull(-1, 0)
    d = len(pts[0])
    basis = _affine_basis(pts)
    if len(basis) != d + 1:
        raise DegenerateHull(len(basis) - 1, d)

    simplex = [pts[i] for i in basis]
    p0 = simplex[0]
    mat = [[a - b for a, b in zip(q, p0)] for q in simplex[1:]]
    volume = abs(_det(mat))
    count = 1
    # interior reference: barycenter of the initial simplex, scaled to stay integral
    center = tuple(sum(q[j] for q in simplex) for j in range(d))
    scale = d + 1

    facets: dict[int, _Facet] = {}
    ridges: dict[frozenset, set[int]] = {}
    next_id = 0

    def add(f: _Facet) -> None:
        nonlocal next_id
        facets[next_id] = f
        for v in f.verts:
            ridges.setdefault(f.verts - {v}, set()).add(next_id)
        next_id += 1

    def drop(fid: int) -> None:
        f = facets.pop(fid)
        for v in f.verts:
            r = f.verts - {v}
            ridges[r].discard(fid)
            if not ridges[r]:
                del ridges[r]

    for skip in range(d + 1):
        ids = [basis[i] for i in range(d + 1) if i != skip]
        q0 = pts[ids[0]]
        rows = [[a - b for a, b in zip(pts[i], q0)] for i in ids[1:]]
        n = _kernel_vector(rows, d)
        b = sum(a * c for a, c in zip(n, q0))
        if sum(a * c for a, c in zip(n, center)) > b * scale:
            n, b = [-x for x in n], -b
        other = pts[basis[skip]]
        h = abs(sum(a * c for a, c in zip(n, other)) - b)
        add(_Facet(frozenset(ids), tuple(n), b, volume // h))

    placed = set(basis)
    for idx, p in enumerate(pts):
        if idx in placed:
            continue
        placed.add(idx)
        visible = {fid: f.height(p) for fid, f in facets.items() if f.height(p) > 0}
        if not visible:
            continue
        new: list[_Facet] = []
        for fid, s in visible.items():
            f = facets[fid]
            volume += f.lattice * s
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded(f"placing triangulation exceeded {budget} simplices")
            for v in f.verts:
                ridge = f.verts - {v}
                across = [g for g in ridges[ridge] if g != fid]
                if not across or across[0] in visible:
                    continue
                g = facets[across[0]]
                t = g.height(p)
                if t == 0:
                    normal, offset = g.normal, g.offset
                else:
                    normal, offset = _primitive(
                        [-t * a + s * c for a, c in zip(f.normal, g.normal)], -t * f.offset + s * g.offset
                    )
                apex = pts[v]
                h = abs(sum(a * c for a, c in zip(normal, apex)) - offset)
                new.append(_Facet(ridge | {idx}, tuple(normal), offset, f.lattice * s // h))
        for fid in visible:
            drop(fid)
        for f in new:
            add(f)

    planes = sorted({(f.normal, f.offset) for f in facets.values()})
    return Polytope(pts, d, volume, count, planes)


def hull_volume(points: Iterable[Sequence[int]]) -> tuple[int, int]:
    """(dimension, normalized volume d! vol)."""
    P = convex_hull(points)
    return P.dim, P.volume


# ------------------------------------------------------------------ faces


def _vertices(P: Polytope) -> list[Point]:
    sets = P.facet_sets()
    out = []
    for i, p in enumerate(P.points):
        inter = -1
        for m in sets:
            if m >> i & 1:
                inter &= m
        if inter == 1 << i:
            out.append(p)
    return out


def _maximal(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: -x.bit_count()):
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def f_vector(P: Polytope, budget: int | None = None) -> tuple[int, ...]:
    """Numbers of faces of dimension 0 .. d-1, descending the face lattice from the
    facets: the facets of a face F are the maximal sets F & G, G a facet, other
    than F itself and the empty set."""
    facets = sorted(set(P.facet_sets()))
    level = set(facets)
    counts = [len(level)]
    total = len(level)
    for _ in range(P.dim - 1):
        nxt: set[int] = set()
        for F in level:
            cands = [F & G for G in facets if F & G and F & G != F]
            nxt.update(_maximal(cands))
        total += len(nxt)
        if budget is not None and total > budget:
            raise BudgetExceeded(f"face enumeration exceeded {budget} faces")
        level = nxt
        counts.append(len(level))
    return tuple(reversed(counts))


def zero_one_lattice_points(P: Polytope, budget: int | None = None) -> list[Point]:
    """All 0/1 vectors satisfying the facet inequalities, by depth-first search over
    coordinates with partial-sum pruning."""
    if any(x not in (0, 1) for p in P.points for x in p):
        raise ValueError("the points do not all lie in {0,1}^d")
    d = P.dim
    rows = P.hrep
    # slack[j][c] = least possible contribution of coordinates j.. to row c
    rest = [[0] * len(rows) for _ in range(d + 1)]
    for j in range(d - 1, -1, -1):
        for c, (n, _) in enumerate(rows):
            rest[j][c] = rest[j + 1][c] + min(0, n[j])
    out: list[Point] = []
    visited = 0
    partial = [0] * len(rows)
    x: list[int] = []

    def rec(j: int) -> None:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(f"lattice search exceeded {budget} nodes")
        if j == d:
            out.append(tuple(x))
            return
        for bit in (0, 1):
            ok = True
            for c, (n, b) in enumerate(rows):
                if partial[c] + bit * n[j] + rest[j + 1][c] > b:
                    ok = False
                    break
            if not ok:
                continue
            if bit:
                for c, (n, _) in enumerate(rows):
                    partial[c] += n[j]
            x.append(bit)
            rec(j + 1)
            x.pop()
            if bit:
                for c, (n, _) in enumerate(rows):
                    partial[c] -= n[j]

    rec(0)
    return sorted(out)


# ------------------------------------------------------------------ oracle


def heap_poset(word: Sequence[int], ct: CartanType) -> list[set[int]]:
    """below[j] = positions i < j forced before j (equal or adjacent letters, closed)."""
    below: list[set[int]] = []
    for j, s in enumerate(word):
        b = set()
        for i in range(j):
            if word[i] == s or ct.a(word[i], s) < 0:
                b |= below[i] | {i}
        below.append(b)
    return below


def linear_extensions(ct: CartanType | str, k: int | None = None) -> int:
    """Number of linear extensions of the heap of wP, counted over order ideals."""
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    word = fixed_words(ct, k).wP
    below = heap_poset(word, ct)
    need = [sum(1 << i for i in b) for b in below]
    full = (1 << len(word)) - 1

    @lru_cache(maxsize=None)
    def count(ideal: int) -> int:
        if ideal == full:
            return 1
        return sum(
            count(ideal | 1 << j)
            for j in range(len(word))
            if not ideal >> j & 1 and need[j] & ideal == need[j]
        )

    return count(0)
