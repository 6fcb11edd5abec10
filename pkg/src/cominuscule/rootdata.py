"""Simply-laced root data, Weyl group words and the fixed reduced words used throughout.

Labeling follows Bourbaki.  Weights are integer tuples in the fundamental-weight
basis, roots are integer tuples in the simple-root basis.  Indices are 1-based
in every public function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Weight = tuple[int, ...]
Root = tuple[int, ...]
Word = tuple[int, ...]


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self) -> None:
        ok = (
            (self.series == "A" and self.rank >= 1)
            or (self.series == "D" and self.rank >= 4)
            or (self.series == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise RootDataError(f"unsupported Cartan type {self.series}{self.rank}")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        n = self.rank
        if self.series == "A":
            return tuple((i, i + 1) for i in range(1, n))
        if self.series == "D":
            return tuple((i, i + 1) for i in range(1, n - 1)) + ((n - 2, n),)
        # E_n: chain 1-3-4-...-n with 2 attached to 4
        chain = [1] + list(range(3, n + 1))
        return tuple(zip(chain, chain[1:])) + ((2, 4),)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in self.edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return tuple(tuple(r) for r in a)

    def a(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise RootDataError(f"index {i} out of range for {self}")

    @cached_property
    def diagram_involution(self) -> tuple[int, ...]:
        """sigma with w0(varpi_i) = -varpi_sigma(i); returned as a 1-based table (index 0 unused)."""
        n = self.rank
        if self.series == "A":
            sig = [0] + [n + 1 - i for i in range(1, n + 1)]
        elif self.series == "D" and n % 2 == 1:
            sig = [0] + list(range(1, n - 1)) + [n, n - 1]
        elif self.series == "E" and n == 6:
            sig = [0, 6, 2, 5, 4, 3, 1]
        else:
            sig = list(range(n + 1))
        return tuple(sig)

    def sigma(self, i: int) -> int:
        return self.diagram_involution[i]


def cartan_type(name: str | CartanType) -> CartanType:
    if isinstance(name, CartanType):
        return name
    m = re.fullmatch(r"\s*([ADE])_?(\d+)\s*", str(name).upper())
    if not m:
        raise RootDataError(f"cannot parse Cartan type {name!r}")
    return CartanType(m.group(1), int(m.group(2)))


# ---------------------------------------------------------------- weights


def fundamental_weight(ct: CartanType, i: int) -> Weight:
    ct.check_index(i)
    return tuple(1 if j == i else 0 for j in range(1, ct.rank + 1))


def simple_root_weight(ct: CartanType, i: int) -> Weight:
    """alpha_i in fundamental-weight coordinates (the i-th Cartan column)."""
    ct.check_index(i)
    return tuple(ct.cartan[j][i - 1] for j in range(ct.rank))


def reflect(ct: CartanType, i: int, mu: Sequence[int]) -> Weight:
    ct.check_index(i)
    c = mu[i - 1]
    if c == 0:
        return tuple(mu)
    col = [row[i - 1] for row in ct.cartan]
    return tuple(m - c * a for m, a in zip(mu, col))


def act(ct: CartanType, word: Sequence[int], mu: Sequence[int]) -> Weight:
    """w(mu) for w = s_{word[0]} ... s_{word[-1]} (rightmost letter acts first)."""
    out = tuple(mu)
    for i in reversed(word):
        out = reflect(ct, i, out)
    return out


def add(mu: Sequence[int], nu: Sequence[int], c: int = 1) -> Weight:
    return tuple(a + c * b for a, b in zip(mu, nu))


def root_to_weight(ct: CartanType, beta: Sequence[int]) -> Weight:
    n = ct.rank
    return tuple(sum(ct.cartan[j][i] * beta[i] for i in range(n)) for j in range(n))


def weight_to_root(ct: CartanType, mu: Sequence[int]) -> tuple:
    """Express a weight in the simple-root basis (exact rationals)."""
    from fractions import Fraction

    n = ct.rank
    m = [[Fraction(ct.cartan[j][i]) for i in range(n)] + [Fraction(mu[j])] for j in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(m[r][n] for r in range(n))


def rho(ct: CartanType) -> Weight:
    return (1,) * ct.rank


# ---------------------------------------------------------------- roots


def reflect_root(ct: CartanType, i: int, beta: Sequence[int]) -> Root:
    pairing = sum(beta[j] * ct.cartan[j][i - 1] for j in range(ct.rank))
    out = list(beta)
    out[i - 1] -= pairing
    return tuple(out)


@lru_cache(maxsize=None)
def positive_roots(ct: CartanType) -> tuple[Root, ...]:
    n = ct.rank
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(1, n + 1):
                gamma = reflect_root(ct, i, beta)
                if all(c >= 0 for c in gamma) and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return tuple(sorted(seen, key=lambda b: (sum(b), b)))


def highest_root(ct: CartanType) -> Root:
    return max(positive_roots(ct), key=lambda b: (sum(b), b))


def root_height(beta: Sequence[int]) -> int:
    return sum(beta)


# ---------------------------------------------------------------- words


def element_key(ct: CartanType, word: Sequence[int]) -> Weight:
    """Weyl group elements are identified by their action on rho."""
    return act(ct, word, rho(ct))


def reduced_word_of(ct: CartanType, key: Sequence[int]) -> Word:
    """A reduced word for the element w with w(rho) = key."""
    mu = list(key)
    letters = []
    while True:
        i = next((j for j in range(ct.rank) if mu[j] < 0), None)
        if i is None:
            break
        letters.append(i + 1)
        mu = list(reflect(ct, i + 1, mu))
    if tuple(mu) != rho(ct):
        raise RootDataError("not a Weyl group image of rho")
    return tuple(letters)


def length(ct: CartanType, word: Sequence[int]) -> int:
    return len(reduced_word_of(ct, element_key(ct, word)))


def is_reduced(ct: CartanType, word: Sequence[int]) -> bool:
    return length(ct, word) == len(word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in re.split(r"[,\s]+", text) if t)


def format_word(word: Iterable[int]) -> str:
    return ",".join(str(i) for i in word)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(reversed(word))


def inversion_roots(ct: CartanType, word: Sequence[int]) -> list[Root]:
    """beta_(1) = alpha_{r_l}, beta_(j) = s_{r_l} ... s_{r_{l-j+2}}(alpha_{r_{l-j+1}})."""
    if not is_reduced(ct, word):
        raise RootDataError("inversion roots need a reduced word")
    n = ct.rank
    out = []
    rev = list(reversed(word))
    for j, letter in enumerate(rev):
        beta = tuple(1 if t == letter - 1 else 0 for t in range(n))
        for i in reversed(rev[:j]):
            beta = reflect_root(ct, i, beta)
        out.append(beta)
    return out


def longest_word(ct: CartanType, subset: Iterable[int] | None = None) -> Word:
    """Reduced word for the longest element of the parabolic subgroup on `subset`."""
    subset = sorted(set(subset)) if subset is not None else list(range(1, ct.rank + 1))
    letters: list[int] = []
    mu = list(rho(ct))
    # w0 of the parabolic maps every simple root of the subset to a negative root;
    # greedily append letters s_i whose c_i(w(rho)) is still positive.
    while True:
        i = next((j for j in subset if mu[j - 1] > 0), None)
        if i is None:
            break
        mu = list(reflect(ct, i, mu))
        letters.append(i)
    # letters were applied left-to-right on rho, i.e. w = s_{l_k} ... s_{l_1}
    return tuple(reversed(letters))


def minimal_coset_rep(ct: CartanType, word: Sequence[int], parabolic: Iterable[int]) -> Word:
    """Minimal length representative of w W_P (strip right descents lying in W_P)."""
    parabolic = set(parabolic)
    w = list(reduced_word_of(ct, element_key(ct, word)))
    changed = True
    while changed:
        changed = False
        for j in sorted(parabolic):
            cand = w + [j]
            if length(ct, cand) < len(w):
                w = list(reduced_word_of(ct, element_key(ct, cand)))
                changed = True
                break
    return tuple(w)


def multiply_key(ct: CartanType, *words: Sequence[int]) -> Word:
    """Reduced word of a product of words."""
    flat: list[int] = []
    for w in words:
        flat.extend(w)
    return reduced_word_of(ct, element_key(ct, flat))


# ---------------------------------------------------------------- fixed words

_E6_WP = (1, 3, 4, 2, 5, 4, 3, 1, 6, 5, 4, 3, 2, 4, 5, 6)
_E7_WP = (7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 2, 5, 7, 4, 3, 1, 6, 5, 4, 2, 3, 4, 5, 6, 7)

# longest-word expressions, written left to right; the trailing letters spell wP^{-1}
_E6_W0 = (
    1, 2, 3, 1, 4, 3, 1, 2, 4, 3, 5, 4, 2, 3, 4, 5, 1, 3, 4, 2,
    6, 5, 4, 2, 3, 4, 5, 6, 1, 3, 4, 5, 2, 4, 3, 1,
)
_E7_W0 = (
    1, 2, 3, 1, 4, 2, 3, 1, 4, 3, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2, 6, 5, 4, 2, 3, 1, 4, 3, 5, 4,
    2, 6, 5, 4, 3, 1,
    7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 7, 5, 2, 4, 3, 1, 6, 5, 4, 2, 3, 4, 5, 6, 7,
)

COMINUSCULE = {
    "A": lambda n: set(range(1, n + 1)),
    "D": lambda n: {1, n - 1, n},
    "E": lambda n: {1, 6} if n == 6 else ({7} if n == 7 else set()),
}


def is_cominuscule(ct: CartanType, k: int) -> bool:
    return k in COMINUSCULE[ct.series](ct.rank)


@dataclass(frozen=True)
class FixedWords:
    wP: Word
    wop: Word
    w0: Word

    @property
    def r(self) -> Word:
        """The index sequence r_1 .. r_{l0} (wP followed by wop)."""
        return self.wP + self.wop


def _computed_words(ct: CartanType, k: int) -> FixedWords:
    others = [i for i in range(1, ct.rank + 1) if i != k]
    wop = longest_word(ct, others)
    w0 = longest_word(ct)
    wP = minimal_coset_rep(ct, w0, others)
    full = wP + wop
    return FixedWords(wP, wop, tuple(reversed(full)))


@lru_cache(maxsize=None)
def fixed_words(ct: CartanType, k: int) -> FixedWords:
    ct.check_index(k)
    if not is_cominuscule(ct, k):
        raise RootDataError(f"varpi_{k} is not cominuscule for {ct}")
    if str(ct) == "E6" and k == 6:
        wP, w0 = _E6_WP, _E6_W0
    elif str(ct) == "E7" and k == 7:
        wP, w0 = _E7_WP, _E7_W0
    else:
        return _computed_words(ct, k)
    lp = len(wP)
    assert tuple(reversed(w0[-lp:])) == wP
    wop = tuple(reversed(w0[:-lp]))
    return FixedWords(wP, wop, w0)


def w_prime(ct: CartanType, k: int) -> Word:
    """w' = wP (w'_P)^{-1}, w'_P the minimal representative of wop s_k W_P."""
    fw = fixed_words(ct, k)
    others = [i for i in range(1, ct.rank + 1) if i != k]
    wpp = minimal_coset_rep(ct, fw.wop + (k,), others)
    return multiply_key(ct, fw.wP, inverse_word(wpp))


def reduced_subexpressions(ct: CartanType, target: Sequence[int], within: Sequence[int]) -> list[tuple[int, ...]]:
    """All position subsets (1-based) of `within` whose letters, read left to right,
    form a reduced word for the same element as `target`."""
    if not is_reduced(ct, target):
        raise RootDataError("target word must be reduced")
    n = ct.rank
    L = len(target)
    # track x^{-1} for the remaining element x as a matrix on root coordinates
    # (columns = images of simple roots); s is a left descent of x iff x^{-1}(alpha_s) < 0.
    def apply_word_inverse(word: Sequence[int]) -> list[list[int]]:
        # columns j: x^{-1}(alpha_j) with x = s_{w1}...s_{wm}  =>  x^{-1} = s_{wm} ... s_{w1}
        cols = [tuple(1 if t == c else 0 for t in range(n)) for c in range(n)]
        out = []
        for c in cols:
            v = c
            for i in word:
                v = reflect_root(ct, i, v)
            out.append(v)
        return out

    def times_s(cols: list, s: int) -> list:
        # (x^{-1} s)(alpha_j) = x^{-1}(s(alpha_j)) = x^{-1}(alpha_j) - a_{s j} x^{-1}(alpha_s)
        xs = cols[s - 1]
        return [
            tuple(cj - ct.cartan[s - 1][j] * xv for cj, xv in zip(cols[j], xs)) if ct.cartan[s - 1][j] else cols[j]
            for j in range(n)
        ]

    results: list[tuple[int, ...]] = []
    within = list(within)

    def rec(pos: int, cols: list, remaining: int, chosen: list[int]) -> None:
        if remaining == 0:
            results.append(tuple(chosen))
            return
        if len(within) - pos < remaining:
            return
        for p in range(pos, len(within)):
            s = within[p]
            if all(v <= 0 for v in cols[s - 1]):
                chosen.append(p + 1)
                rec(p + 1, times_s(cols, s), remaining - 1, chosen)
                chosen.pop()

    rec(0, apply_word_inverse(target), L, [])
    return results


def subword_embeddings(word: Sequence[int], within: Sequence[int]) -> list[tuple[int, ...]]:
    """Positions (1-based, increasing) at which `word` occurs letter-for-letter inside `within`."""
    out: list[tuple[int, ...]] = []
    m = len(word)

    def rec(i: int, start: int, acc: list[int]) -> None:
        if i == m:
            out.append(tuple(acc))
            return
        for p in range(start, len(within) - (m - i) + 1):
            if within[p] == word[i]:
                acc.append(p + 1)
                rec(i + 1, p + 1, acc)
                acc.pop()

    rec(0, 0, [])
    return out
