"""Torus expansions of Plücker coordinates and generalized minors.

The torus is u_+ = x_{r_1}(a_1) ... x_{r_l}(a_l) with r the fixed word for wP, and
u_+^T = y_{r_l}(a_l) ... y_{r_1}(a_1).  Plücker coordinates are evaluated on u_+^T,
generalized minors Delta_{lam, w lam} on u_+.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from .minuscule import PluckerLabel, WeightDiagram, label, paths_to_lowest, plucker_diagram
from .repspace import (
    LOWER,
    RAISE,
    Module,
    RealizationError,
    extreme_vector,
    highest_weight_vector,
    recommended_realization,
    vector_weight,
)
from .rootdata import (
    CartanType,
    RootDataError,
    Weight,
    act,
    add,
    cartan_type,
    fixed_words,
    fundamental_weight,
    highest_root,
    inverse_word,
    is_reduced,
    subword_embeddings,
    weight_to_root,
)
from .torus import InexactDivision, TorusPoly

__all__ = [
    "TorusPoly",
    "InexactDivision",
    "default_k",
    "torus_word",
    "expand_plucker",
    "expand_plucker_dp",
    "expand_minor",
    "minor_sequences",
    "exact_divide",
]


def default_k(ct: CartanType) -> int:
    name = str(ct)
    if name == "E6":
        return 6
    if name == "E7":
        return 7
    raise RootDataError(f"pass k explicitly for {ct}")


def torus_word(ct: CartanType | str, k: int | None = None) -> tuple[int, ...]:
    """The letters r_1 .. r_l carried by a_1 .. a_l."""
    ct = cartan_type(ct)
    return fixed_words(ct, default_k(ct) if k is None else k).wP


# ------------------------------------------------------------------ Plücker coordinates


def expand_plucker(ct: CartanType | str, k: int, lab: str | PluckerLabel, word: Sequence[int] | None = None) -> TorusPoly:
    """p(u_+^T) from lowering paths: every path b_1 .. b_d from v_0 up to the vertex
    and every occurrence of b_1 .. b_d as a subword of wP^{-1} contributes the product
    of the matched coordinates (position j of wP^{-1} carries a_{l+1-j})."""
    ct = cartan_type(ct)
    diagram = plucker_diagram(ct, k)
    v = diagram.vertex(lab)
    wP = tuple(word) if word is not None else fixed_words(ct, k).wP
    ell = len(wP)
    winv = inverse_word(wP)
    terms: dict[tuple, int] = defaultdict(int)
    for path in paths_to_lowest(diagram, v):
        for pos in subword_embeddings(path, winv):
            e = [0] * ell
            for p in pos:
                e[ell - p] += 1
            terms[tuple(e)] += 1
    return TorusPoly(ell, terms)


def expand_plucker_dp(ct: CartanType | str, k: int, lab: str | PluckerLabel, word: Sequence[int] | None = None) -> TorusPoly:
    """The same coordinate computed as the v_0-coefficient of u_+^T v by lowering."""
    ct = cartan_type(ct)
    diagram = plucker_diagram(ct, k)
    v = diagram.vertex(lab)
    wP = tuple(word) if word is not None else fixed_words(ct, k).wP
    engine = _Chain(_DiagramModule(diagram), wP, LOWER, diagram.bottom, 1)
    return engine.run({v: 1})


class _DiagramModule(Module):
    """Adapter exposing an arbitrary minuscule diagram as a module."""

    def __init__(self, diagram: WeightDiagram):
        self.ct = diagram.ct
        self.diagram = diagram

    def weight(self, lab: int) -> Weight:
        return self.diagram.weights[lab]

    def _act(self, direction: str, i: int, lab: int) -> dict:
        t = (self.diagram.up if direction == RAISE else self.diagram.down).get((lab, i))
        return {} if t is None else {t: 1}

    def weight_slice(self, mu: Weight) -> tuple:
        v = self.diagram.index.get(tuple(mu))
        return () if v is None else (v,)


# ------------------------------------------------------------------ chain engine


class _Chain:
    """Coefficient of a fixed reference label after a product of one-parameter
    subgroups, expanded as a polynomial.

    RAISE: value(b) = ref-coefficient of x_{r_1}(a_1) ... x_{r_l}(a_l) b.
    LOWER: value(b) = ref-coefficient of y_{r_l}(a_l) ... y_{r_1}(a_1) b.
    Partial results are memoized on (position, basis label); labels whose weight
    cannot reach the reference weight with the remaining letters are discarded.
    """

    def __init__(self, module: Module, letters: Sequence[int], direction: str, ref, scale):
        self.module = module
        self.ct = module.ct
        self.letters = tuple(letters)
        self.ell = len(self.letters)
        self.direction = direction
        self.ref = ref
        self.scale = scale
        self.ref_weight = module.weight(ref)
        self.memo: dict = {}
        n = self.ct.rank
        # remaining letter counts: for RAISE letters r_1..r_j remain, for LOWER r_j..r_l
        self.counts: list[tuple[int, ...]] = []
        if direction == RAISE:
            c = [0] * n
            self.counts.append(tuple(c))
            for s in self.letters:
                c[s - 1] += 1
                self.counts.append(tuple(c))
        else:
            c = [0] * n
            rev = [tuple(c)]
            for s in reversed(self.letters):
                c[s - 1] += 1
                rev.append(tuple(c))
            self.counts = list(reversed(rev))  # counts[j-1] covers r_j..r_l; counts[l] is empty
        self._delta_cache: dict[Weight, tuple | None] = {}

    def _delta(self, mu: Weight):
        hit = self._delta_cache.get(mu, 0)
        if hit != 0:
            return hit
        diff = add(self.ref_weight, mu, -1) if self.direction == RAISE else add(mu, self.ref_weight, -1)
        d = weight_to_root(self.ct, diff)
        out = None
        if all(x >= 0 and x.denominator == 1 for x in d):
            out = tuple(int(x) for x in d)
        self._delta_cache[mu] = out
        return out

    def _feasible(self, mu: Weight, counts: tuple[int, ...]) -> bool:
        d = self._delta(mu)
        if d is None:
            return False
        return all(x == 0 or c > 0 for x, c in zip(d, counts))

    def value(self, j: int, lab) -> dict:
        """RAISE: polynomial in a_1..a_j (prefix exponent tuples of length j).
        LOWER: polynomial in a_j..a_l (suffix tuples of length l-j+1)."""
        key = (j, lab)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        mu = self.module.weight(lab)
        raising = self.direction == RAISE
        done = j == 0 if raising else j == self.ell + 1
        if done:
            out = {(): 1} if lab == self.ref else {}
            self.memo[key] = out
            return out
        if not self._feasible(mu, self.counts[j] if raising else self.counts[j - 1]):
            self.memo[key] = {}
            return {}
        s = self.letters[j - 1]
        nxt = j - 1 if raising else j + 1
        out: dict[tuple, object] = {}
        d = self._delta(mu)
        m = 0
        while m <= d[s - 1]:
            image = {lab: 1} if m == 0 else self.module.divided_label(self.direction, s, m, lab)
            if m > 0 and not image:
                break
            for lab2, c in image.items():
                sub = self.value(nxt, lab2)
                for e, v in sub.items():
                    key2 = e + (m,) if raising else (m,) + e
                    t = out.get(key2, 0) + c * v
                    if t:
                        out[key2] = t
                    else:
                        out.pop(key2, None)
            m += 1
        self.memo[key] = out
        return out

    def run(self, vec: dict) -> TorusPoly:
        start = self.ell if self.direction == RAISE else 1
        total: dict[tuple, object] = {}
        for lab, c in vec.items():
            for e, v in self.value(start, lab).items():
                t = total.get(e, 0) + c * v
                if t:
                    total[e] = t
                else:
                    total.pop(e, None)
        out = {}
        for e, v in total.items():
            v = Fraction(v) / self.scale
            if v.denominator != 1:
                raise RealizationError(f"non-integral coefficient {v} in expansion")
            out[e] = int(v)
        return TorusPoly(self.ell, out)


# ------------------------------------------------------------------ generalized minors


def _minor_setup(ct, i, w, k, word, module):
    ct = cartan_type(ct)
    ct.check_index(i)
    w = tuple(w)
    if not is_reduced(ct, w):
        raise RootDataError("w must be a reduced word")
    letters = tuple(word) if word is not None else torus_word(ct, k)
    module = module or recommended_realization(ct, i)
    lam = fundamental_weight(ct, i)
    vplus = highest_weight_vector(module, lam)
    target = extreme_vector(module, vplus, w)
    return ct, letters, module, vplus, target


def _pick_ref(vec: dict):
    lab = min(vec)
    return lab, vec[lab]


def expand_minor(
    ct: CartanType | str,
    i: int,
    w: Sequence[int],
    transposed: bool = False,
    k: int | None = None,
    word: Sequence[int] | None = None,
    module: Module | None = None,
) -> TorusPoly:
    """Delta_{varpi_i, w varpi_i}(u_+) = <u_+ bar(w) v^+, v^+>.

    The default route raises bar(w) v^+ back to the highest weight line letter by
    letter.  With transposed=True the same number is read as the bar(w) v^+
    component of u_+^T v^+, found by lowering from v^+."""
    ct, letters, module, vplus, target = _minor_setup(ct, i, w, k, word, module)
    if not transposed:
        ref, scale = _pick_ref(vplus)
        return _Chain(module, letters, RAISE, ref, scale).run(target)
    ref, scale = _pick_ref(target)
    return _Chain(module, letters, LOWER, ref, scale).run(vplus)


def minor_sequences(
    ct: CartanType | str,
    i: int,
    w: Sequence[int],
    k: int | None = None,
    word: Sequence[int] | None = None,
    module: Module | None = None,
) -> dict[tuple[int, ...], TorusPoly]:
    """Split the raising expansion by the sequence of simple indices used.

    Keys are letter sequences e_{i_1} ... e_{i_k} (read in increasing torus position,
    divided powers written out), values are their nonzero summed contributions."""
    ct, letters, module, vplus, target = _minor_setup(ct, i, w, k, word, module)
    ref, scale = _pick_ref(vplus)
    chain = _Chain(module, letters, RAISE, ref, scale)
    ell = len(letters)
    out: dict[tuple[int, ...], dict] = defaultdict(dict)

    def alive(j: int, vec: dict) -> bool:
        return any(chain.value(j, lab) for lab in vec)

    def rec(j: int, vec: dict, exps: tuple, seq: tuple) -> None:
        if j == 0:
            c = Fraction(vec.get(ref, 0)) / scale
            if c:
                e = exps
                acc = out[seq]
                acc[e] = acc.get(e, 0) + c
            return
        s = letters[j - 1]
        m = 0
        cur = vec
        while True:
            if m > 0:
                nxt: dict = {}
                for lab, c in vec.items():
                    for lab2, c2 in module.divided_label(RAISE, s, m, lab).items():
                        t = nxt.get(lab2, 0) + c * c2
                        if t:
                            nxt[lab2] = t
                        else:
                            nxt.pop(lab2, None)
                cur = nxt
                if not cur:
                    break
            if alive(j - 1, cur):
                rec(j - 1, cur, (m,) + exps, (s,) * m + seq)
            m += 1

    rec(ell, dict(target), (), ())
    result = {}
    for seq, terms in out.items():
        p = TorusPoly(ell, {e: int(c) if Fraction(c).denominator == 1 else c for e, c in terms.items()})
        if p:
            result[seq] = p
    return dict(sorted(result.items()))


def exact_divide(num: TorusPoly, den: TorusPoly) -> TorusPoly:
    """q with num = den * q; raises InexactDivision otherwise."""
    q = num.divide_exact(den)
    if not q.is_integral():
        raise InexactDivision("quotient has non-integral coefficients")
    return q


def minor_weight_degree(ct: CartanType | str, i: int, w: Sequence[int]) -> int:
    """Height of varpi_i - w(varpi_i), the total degree of the minor's expansion."""
    ct = cartan_type(ct)
    lam = fundamental_weight(ct, i)
    d = weight_to_root(ct, add(lam, act(ct, w, lam), -1))
    return int(sum(d))


def max_string(ct: CartanType, i: int) -> int:
    return highest_root(ct)[i - 1]
