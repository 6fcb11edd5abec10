"""Exact realizations of the fundamental representations needed for generalized minors.

A module is given by a basis of hashable, totally ordered labels, a weight for each
label and the action of e_i, f_i on basis labels.  Vectors are sparse dicts
label -> coefficient.  Composite modules (exterior, symmetric and tensor powers)
enumerate weight slices lazily and never materialize their full basis.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Hashable, Iterable

from .minuscule import build_diagram
from .rootdata import (
    CartanType,
    Weight,
    add,
    cartan_type,
    fundamental_weight,
    positive_roots,
    root_to_weight,
    simple_root_weight,
)

Label = Hashable
RAISE, LOWER = "raise", "lower"


class RealizationError(ValueError):
    pass


class SparseVec(dict):
    """label -> exact coefficient, never storing zeros."""

    def add_term(self, lab, c) -> None:
        v = self.get(lab, 0) + c
        if v:
            self[lab] = v
        else:
            self.pop(lab, None)

    def scaled(self, c) -> "SparseVec":
        return SparseVec({k: _norm(v * c) for k, v in self.items()}) if c else SparseVec()

    def format(self, module: "Module | None" = None) -> str:
        if not self:
            return "0"
        fmt = module.format_label if module else str
        return " + ".join(f"({c})·{fmt(lab)}" for lab, c in sorted(self.items()))


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _sorted_with_sign(items: list) -> tuple[tuple, int]:
    sign = 1
    a = list(items)
    for i in range(1, len(a)):
        j = i
        while j > 0 and a[j - 1] > a[j]:
            a[j - 1], a[j] = a[j], a[j - 1]
            sign = -sign
            j -= 1
    return tuple(a), sign


class Module(ABC):
    ct: CartanType

    @abstractmethod
    def weight(self, lab: Label) -> Weight: ...

    @abstractmethod
    def _act(self, direction: str, i: int, lab: Label) -> dict:
        """e_i or f_i applied to a basis label (single step)."""

    @abstractmethod
    def weight_slice(self, mu: Weight) -> tuple:
        """All basis labels of weight mu, sorted."""

    def format_label(self, lab: Label) -> str:
        return str(lab)

    def act_label(self, direction: str, i: int, lab: Label) -> dict:
        cache = self.__dict__.setdefault("_act_cache", {})
        key = (direction, i, lab)
        hit = cache.get(key)
        if hit is None:
            hit = self._act(direction, i, lab)
            cache[key] = hit
        return hit

    def divided_label(self, direction: str, i: int, m: int, lab: Label) -> dict:
        """(e_i)^m/m! or (f_i)^m/m! applied to one basis label."""
        cache = self.__dict__.setdefault("_div_cache", {})
        key = (direction, i, m, lab)
        hit = cache.get(key)
        if hit is None:
            v = SparseVec({lab: 1})
            for _ in range(m):
                v = self._apply_once(direction, i, v)
                if not v:
                    break
            hit = v.scaled(Fraction(1, factorial(m))) if m > 1 else v
            cache[key] = hit
        return hit

    def _apply_once(self, direction: str, i: int, v: dict) -> SparseVec:
        out = SparseVec()
        for lab, c in v.items():
            for lab2, c2 in self.act_label(direction, i, lab).items():
                out.add_term(lab2, c * c2)
        return out


def apply_chevalley(module: Module, direction: str, i: int, m: int, v: dict) -> SparseVec:
    """(e_i)^m/m! v or (f_i)^m/m! v."""
    if direction not in (RAISE, LOWER):
        raise ValueError(f"direction must be {RAISE!r} or {LOWER!r}")
    if m < 1:
        raise ValueError("divided power must be >= 1")
    module.ct.check_index(i)
    out = SparseVec()
    for lab, c in v.items():
        for lab2, c2 in module.divided_label(direction, i, m, lab).items():
            out.add_term(lab2, _norm(c * c2))
    return out


def basis_vector(lab: Label) -> SparseVec:
    return SparseVec({lab: 1})


def vector_weight(module: Module, v: dict) -> Weight:
    ws = {module.weight(lab) for lab in v}
    if len(ws) != 1:
        raise RealizationError("vector is zero or not a weight vector")
    return ws.pop()


# ------------------------------------------------------------------ base modules


class Minuscule(Module):
    """V(varpi_k) on its weight diagram; labels are vertex ids (0 = highest)."""

    def __init__(self, ct: CartanType | str, k: int):
        self.ct = cartan_type(ct)
        self.k = k
        self.diagram = build_diagram(self.ct, k)
        self._slices: dict[Weight, tuple] = {}
        for v, w in enumerate(self.diagram.weights):
            self._slices[w] = (v,)

    def __repr__(self) -> str:
        return f"Minuscule({self.ct}, {self.k})"

    def weight(self, lab: int) -> Weight:
        return self.diagram.weights[lab]

    def _act(self, direction: str, i: int, lab: int) -> dict:
        table = self.diagram.up if direction == RAISE else self.diagram.down
        t = table.get((lab, i))
        return {} if t is None else {t: 1}

    def weight_slice(self, mu: Weight) -> tuple:
        return self._slices.get(tuple(mu), ())

    def basis(self) -> tuple:
        return tuple(range(len(self.diagram)))

    def format_label(self, lab: int) -> str:
        return f"v[{self.diagram.labels[lab]}]"


class Adjoint(Module):
    """The adjoint representation in a Chevalley basis.

    Labels are integers: positive roots by decreasing height (0 = highest root),
    then the Cartan elements H_1..H_n, then negative roots by increasing height.
    Structure constants [E_a, E_b] = eps(a, b) E_{a+b} come from the bimultiplicative
    sign with eps_ii = -1 and eps_ij = -1 exactly when i < j and a_ij = -1.
    Generators are e_i = E_{alpha_i}, f_i = -E_{-alpha_i}, so [e_i, f_i] = H_i.
    """

    def __init__(self, ct: CartanType | str):
        self.ct = cartan_type(ct)
        n = self.ct.rank
        pos = sorted(positive_roots(self.ct), key=lambda b: (-sum(b), b))
        neg = [tuple(-x for x in b) for b in reversed(pos)]
        self.roots: list[tuple | None] = list(pos) + [None] * n + neg
        self.npos = len(pos)
        self.root_index = {b: j for j, b in enumerate(self.roots) if b is not None}
        self._weights = [
            root_to_weight(self.ct, b) if b is not None else (0,) * n for b in self.roots
        ]
        self._slices: dict[Weight, list] = {}
        for j, w in enumerate(self._weights):
            self._slices.setdefault(w, []).append(j)

    def __repr__(self) -> str:
        return f"Adjoint({self.ct})"

    def is_cartan(self, lab: int) -> bool:
        return self.roots[lab] is None

    def cartan_label(self, j: int) -> int:
        return self.npos + j - 1

    def eps(self, a, b) -> int:
        n = self.ct.rank
        s = sum(a[i] * b[i] for i in range(n))
        for i in range(n):
            for j in range(i + 1, n):
                if self.ct.cartan[i][j] == -1:
                    s += a[i] * b[j]
        return -1 if s % 2 else 1

    def form(self, a, b) -> int:
        n = self.ct.rank
        return sum(a[i] * self.ct.cartan[i][j] * b[j] for i in range(n) for j in range(n))

    def bracket_root(self, gamma: tuple, lab: int) -> dict:
        """[E_gamma, x] for a basis element x."""
        n = self.ct.rank
        b = self.roots[lab]
        if b is None:
            h = tuple(1 if t == lab - self.npos else 0 for t in range(n))
            c = -self.form(h, gamma)
            return {self.root_index[gamma]: c} if c else {}
        s = tuple(x + y for x, y in zip(gamma, b))
        if not any(s):
            return {self.cartan_label(j + 1): -gamma[j] for j in range(n) if gamma[j]}
        if s in self.root_index:
            return {self.root_index[s]: self.eps(gamma, b)}
        return {}

    def bracket(self, x: int, y: int) -> dict:
        """[x, y] for basis labels."""
        bx = self.roots[x]
        if bx is not None:
            return self.bracket_root(bx, y)
        by = self.roots[y]
        if by is None:
            return {}
        return {k: -c for k, c in self.bracket_root(by, x).items()}

    def _act(self, direction: str, i: int, lab: int) -> dict:
        n = self.ct.rank
        a = tuple(1 if t == i - 1 else 0 for t in range(n))
        if direction == RAISE:
            return self.bracket_root(a, lab)
        return {k: -c for k, c in self.bracket_root(tuple(-x for x in a), lab).items()}

    def weight(self, lab: int) -> Weight:
        return self._weights[lab]

    def weight_slice(self, mu: Weight) -> tuple:
        return tuple(self._slices.get(tuple(mu), ()))

    def basis(self) -> tuple:
        return tuple(range(len(self.roots)))

    def format_label(self, lab: int) -> str:
        b = self.roots[lab]
        if b is None:
            return f"H{lab - self.npos + 1}"
        return "E[" + ",".join(str(x) for x in b) + "]"


# ------------------------------------------------------------------ composite modules


class _Power(Module):
    def __init__(self, p: int, base: Module):
        if p < 1:
            raise RealizationError("power must be >= 1")
        self.ct = base.ct
        self.p = p
        self.base = base
        self._base_by_weight: dict[Weight, tuple] = {}
        for lab in base.basis():
            self._base_by_weight.setdefault(base.weight(lab), ())
            self._base_by_weight[base.weight(lab)] += (lab,)
        self._slice_cache: dict[Weight, tuple] = {}

    def basis(self) -> tuple:
        raise RealizationError("composite bases are enumerated by weight slice only")

    def weight(self, lab: tuple) -> Weight:
        w = (0,) * self.ct.rank
        for x in lab:
            w = add(w, self.base.weight(x))
        return w

    def format_label(self, lab: tuple) -> str:
        return self.sep.join(self.base.format_label(x) for x in lab)

    def weight_slice(self, mu: Weight) -> tuple:
        mu = tuple(mu)
        hit = self._slice_cache.get(mu)
        if hit is not None:
            return hit
        strict = isinstance(self, Exterior)
        order = sorted(self.base.basis())
        out: list[tuple] = []

        def rec(start: int, left: int, nu: Weight, acc: list) -> None:
            if left == 1:
                for x in self._base_by_weight.get(nu, ()):
                    if (x > acc[-1] if strict else x >= acc[-1]) if acc else True:
                        out.append(tuple(acc) + (x,))
                return
            for t in range(start, len(order)):
                x = order[t]
                acc.append(x)
                rec(t + 1 if strict else t, left - 1, add(nu, self.base.weight(x), -1), acc)
                acc.pop()

        rec(0, self.p, mu, [])
        hit = tuple(sorted(out))
        self._slice_cache[mu] = hit
        return hit


class Exterior(_Power):
    sep = "∧"

    def __repr__(self) -> str:
        return f"Exterior({self.p}, {self.base!r})"

    def _act(self, direction: str, i: int, lab: tuple) -> dict:
        out = SparseVec()
        for t, x in enumerate(lab):
            for y, c in self.base.act_label(direction, i, x).items():
                if y in lab:
                    continue
                new = list(lab)
                new[t] = y
                key, sign = _sorted_with_sign(new)
                out.add_term(key, sign * c)
        return dict(out)


class Symmetric(_Power):
    sep = "·"

    def __repr__(self) -> str:
        return f"Symmetric({self.p}, {self.base!r})"

    def _act(self, direction: str, i: int, lab: tuple) -> dict:
        out = SparseVec()
        seen = set()
        for t, x in enumerate(lab):
            if x in seen:
                continue
            seen.add(x)
            mult = lab.count(x)
            for y, c in self.base.act_label(direction, i, x).items():
                new = list(lab)
                new[t] = y
                out.add_term(tuple(sorted(new)), mult * c)
        return dict(out)


class Tensor(Module):
    def __init__(self, first: Module, second: Module):
        if first.ct != second.ct:
            raise RealizationError("tensor factors must share a Cartan type")
        self.ct = first.ct
        self.first = first
        self.second = second
        self._second_by_weight: dict[Weight, tuple] = {}
        for lab in second.basis():
            self._second_by_weight[second.weight(lab)] = self._second_by_weight.get(second.weight(lab), ()) + (lab,)
        self._slice_cache: dict[Weight, tuple] = {}

    def __repr__(self) -> str:
        return f"Tensor({self.first!r}, {self.second!r})"

    def basis(self) -> tuple:
        return tuple((x, y) for x in self.first.basis() for y in self.second.basis())

    def weight(self, lab: tuple) -> Weight:
        return add(self.first.weight(lab[0]), self.second.weight(lab[1]))

    def _act(self, direction: str, i: int, lab: tuple) -> dict:
        x, y = lab
        out = SparseVec()
        for x2, c in self.first.act_label(direction, i, x).items():
            out.add_term((x2, y), c)
        for y2, c in self.second.act_label(direction, i, y).items():
            out.add_term((x, y2), c)
        return dict(out)

    def weight_slice(self, mu: Weight) -> tuple:
        mu = tuple(mu)
        hit = self._slice_cache.get(mu)
        if hit is None:
            out = []
            for x in self.first.basis():
                for y in self._second_by_weight.get(add(mu, self.first.weight(x), -1), ()):
                    out.append((x, y))
            hit = tuple(sorted(out))
            self._slice_cache[mu] = hit
        return hit

    def format_label(self, lab: tuple) -> str:
        return f"{self.first.format_label(lab[0])}⊗{self.second.format_label(lab[1])}"


# ------------------------------------------------------------------ extraction


def _nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Rational kernel basis of an integer matrix by Gauss-Jordan elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((t for t in range(r, len(m)) if m[t][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for t in range(len(m)):
            if t != r and m[t][c]:
                f = m[t][c]
                m[t] = [a - f * b for a, b in zip(m[t], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][fc]
        basis.append(v)
    return basis


def highest_weight_vector(module: Module, lam: Weight) -> SparseVec:
    """The unique (up to scale) vector of weight lam killed by every e_i,
    scaled so the least label in its support has coefficient 1."""
    lam = tuple(lam)
    cache = module.__dict__.setdefault("_hw_cache", {})
    if lam in cache:
        return cache[lam]
    cols = module.weight_slice(lam)
    if not cols:
        raise RealizationError(f"weight {lam} does not occur in {module!r}")
    row_index: dict[tuple, int] = {}
    rows: list[dict[int, int]] = []
    for c, lab in enumerate(cols):
        for i in range(1, module.ct.rank + 1):
            for lab2, coef in module.act_label(RAISE, i, lab).items():
                key = (i, lab2)
                if key not in row_index:
                    row_index[key] = len(rows)
                    rows.append({})
                rows[row_index[key]][c] = coef
    dense = [[r.get(c, 0) for c in range(len(cols))] for r in rows]
    kernel = _nullspace(dense, len(cols))
    if len(kernel) != 1:
        raise RealizationError(
            f"highest weight space of weight {lam} in {module!r} has dimension {len(kernel)}, expected 1"
        )
    vec = kernel[0]
    lead = next(x for x in vec if x)
    out = SparseVec({cols[c]: _norm(x / lead) for c, x in enumerate(vec) if x})
    cache[lam] = out
    return out


def extreme_vector(module: Module, v_plus: dict, word: Iterable[int]) -> SparseVec:
    """bar(w) v_plus for w = s_{w1} ... s_{wm}: each letter, rightmost first, acts by
    f_i^(c) with c = c_i of the current weight."""
    v = SparseVec(v_plus)
    if not v:
        return v
    mu = vector_weight(module, v)
    for i in reversed(tuple(word)):
        c = mu[i - 1]
        if c < 0:
            raise RealizationError(f"letter s_{i} meets c_{i} = {c} < 0; word not adapted to the orbit walk")
        if c == 0:
            continue
        v = apply_chevalley(module, LOWER, i, c, v)
        mu = add(mu, simple_root_weight(module.ct, i), -c)
        if not v:
            raise RealizationError("extreme vector vanished; input is not an extreme weight vector")
    return v


# ------------------------------------------------------------------ recommended table


@lru_cache(maxsize=None)
def _minuscule(ct: CartanType, k: int) -> Minuscule:
    return Minuscule(ct, k)


@lru_cache(maxsize=None)
def _adjoint(ct: CartanType) -> Adjoint:
    return Adjoint(ct)


def _table(ct: CartanType, i: int) -> Module:
    name = str(ct)
    if name == "E6":
        v1, v6 = _minuscule(ct, 1), _minuscule(ct, 6)
        return {
            1: lambda: v1,
            6: lambda: v6,
            3: lambda: Exterior(2, v1),
            5: lambda: Exterior(2, v6),
            4: lambda: Exterior(3, v1),
            2: lambda: _adjoint(ct),
        }[i]()
    if name == "E7":
        v7 = _minuscule(ct, 7)
        return {
            7: lambda: v7,
            1: lambda: _adjoint(ct),
            6: lambda: Exterior(2, v7),
            5: lambda: Exterior(3, v7),
            4: lambda: Exterior(4, v7),
            3: lambda: Exterior(2, _adjoint(ct)),
            2: lambda: Tensor(v7, _adjoint(ct)),
        }[i]()
    raise RealizationError(f"no built-in realization table for {ct}")


def _generic(ct: CartanType, i: int) -> Module:
    """Small classical types: minuscule weights directly, otherwise the adjoint when
    varpi_i is the highest root, otherwise an exterior power of the first minuscule."""
    from .minuscule import is_minuscule

    if is_minuscule(ct, i):
        return _minuscule(ct, i)
    adj = _adjoint(ct)
    if adj.weight(0) == fundamental_weight(ct, i):
        return adj
    if ct.series == "A":
        return Exterior(i, _minuscule(ct, 1))
    if ct.series == "D" and i <= ct.rank - 2:
        return Exterior(i, _minuscule(ct, 1))
    raise RealizationError(f"no realization of varpi_{i} for {ct}")


@lru_cache(maxsize=None)
def recommended_realization(ct: CartanType | str, i: int) -> Module:
    """A module containing V(varpi_i) with multiplicity one; validated on construction."""
    ct = cartan_type(ct)
    ct.check_index(i)
    module = _table(ct, i) if str(ct) in ("E6", "E7") else _generic(ct, i)
    highest_weight_vector(module, fundamental_weight(ct, i))
    return module


def describe(module: Module) -> str:
    return repr(module)


def exterior_choose(labels: Iterable, p: int) -> Iterable[tuple]:
    """Helper used by tests: all p-multisets of labels in sorted order."""
    return combinations_with_replacement(sorted(labels), p)
