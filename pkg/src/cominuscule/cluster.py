"""Initial cluster seeds on G/P: generalized minors attached to a reduced word for
w0, the GLS quiver, the comparison quiver read off wP, and exact checks of the
tabulated Plücker expressions of the seed variables."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .expansion import default_k, expand_minor
from .plucker import PluckerPoly, Report, builtin_tables, eval_on_torus
from .rootdata import CartanType, RootDataError, cartan_type, fixed_words, multiply_key
from .torus import TorusPoly

EXTRA = 0  # vertex key of the additional frozen minor Delta_{varpi_k, varpi_k}


def exchangeable_indices(ct: CartanType | str, k: int | None = None) -> set[int]:
    """Positions i of r_1 .. r_{l0} whose minor is not identically 1 on the torus.

    The w0 word reads s_{r_l0} ... s_{r_1}, so its last occurrence of each letter is
    the first occurrence in r; those n positions are the non-exchangeable ones."""
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    r = fixed_words(ct, k).r
    first: dict[int, int] = {}
    for pos, s in enumerate(r, 1):
        first.setdefault(s, pos)
    return set(range(1, len(r) + 1)) - set(first.values())


@dataclass(frozen=True)
class SeedVariable:
    position: int  # 1..l0, -i for the virtual t_i = l0 + i, EXTRA for Delta_{varpi_k, varpi_k}
    index: int  # r_i, the fundamental weight of the minor
    frozen: bool
    prefix: tuple[int, ...]  # u_{>=i} as a word
    name: str | None = None

    def key(self, l0: int) -> int:
        """Position used by the arrow rules; virtual positions sit after l0."""
        return l0 - self.position if self.position < 0 else self.position

    def __str__(self) -> str:
        where = "extra" if self.position == EXTRA else str(self.position)
        return f"phi({where}, varpi{self.index})" + (f" = {self.name}" if self.name else "")


@dataclass
class Seed:
    ct: CartanType
    k: int
    variables: list[SeedVariable]

    @property
    def mutable(self) -> list[SeedVariable]:
        return [v for v in self.variables if not v.frozen]

    @property
    def frozen(self) -> list[SeedVariable]:
        return [v for v in self.variables if v.frozen]

    def by_position(self, pos: int) -> SeedVariable:
        for v in self.variables:
            if v.position == pos:
                return v
        raise KeyError(pos)

    def minor(self, var: SeedVariable) -> TorusPoly:
        return seed_minor(self.ct, self.k, var)

    def to_json(self) -> dict:
        return {
            "type": str(self.ct),
            "k": self.k,
            "variables": [
                {"position": v.position, "index": v.index, "frozen": v.frozen, "prefix": list(v.prefix), "name": v.name}
                for v in self.variables
            ],
        }


def frozen_positions(ct: CartanType, k: int) -> dict[int, int]:
    """i -> t_i, the first position after l(wP) carrying letter i; -i when i = k."""
    fw = fixed_words(ct, k)
    ell = len(fw.wP)
    out = {}
    for i in range(1, ct.rank + 1):
        if i == k:
            out[i] = -i
        else:
            out[i] = next(p for p in range(ell + 1, len(fw.r) + 1) if fw.r[p - 1] == i)
    return out


@lru_cache(maxsize=None)
def initial_seed(ct: CartanType | str, k: int | None = None) -> Seed:
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    fw = fixed_words(ct, k)
    r, l0, ell = fw.r, len(fw.r), len(fw.wP)
    exch = exchangeable_indices(ct, k)
    names: dict[int, str] = {}
    extra_name = None
    try:
        tables = builtin_tables(ct)
    except RootDataError:
        tables = None
    if tables is not None and tables.k == k:
        for pos, _, name in tables.seed_mutable + tables.seed_frozen:
            names[pos] = name
        extra_name = tables.seed_extra

    def prefix(pos: int) -> tuple[int, ...]:
        return () if pos < 0 else fw.w0[: l0 - pos + 1]

    variables = [
        SeedVariable(p, r[p - 1], False, prefix(p), names.get(p)) for p in range(1, ell + 1) if p in exch
    ]
    for i, t in frozen_positions(ct, k).items():
        variables.append(SeedVariable(t, i, True, prefix(t), names.get(t)))
    variables.append(SeedVariable(EXTRA, k, True, fw.w0, extra_name))
    if tables is not None and tables.k == k:
        expected = {p for p, _, _ in tables.seed_mutable + tables.seed_frozen}
        got = {v.position for v in variables if v.position != EXTRA}
        if expected != got:
            raise RootDataError(f"seed positions {sorted(got)} disagree with the table {sorted(expected)}")
    return Seed(ct, k, variables)


def seed_minor(ct: CartanType | str, k: int, var: SeedVariable) -> TorusPoly:
    """phi(i, varpi_r) = Delta_{u varpi_r, w0 varpi_r} restricted to the torus.

    On u_+ this is read as Delta_{varpi_s, u w0 varpi_s} with s = sigma(r), and
    expanded along the lowering route.  Delta_{varpi_k, varpi_k} is the u = w0 case."""
    ct = cartan_type(ct)
    fw = fixed_words(ct, k)
    w = multiply_key(ct, var.prefix, fw.w0)
    return expand_minor(ct, ct.sigma(var.index), w, transposed=True, k=k)


# ------------------------------------------------------------------ quivers


@dataclass
class Quiver:
    name: str
    vertices: dict[int, str]  # key -> display label
    frozen: set[int]
    arrows: set[tuple[int, int]] = field(default_factory=set)

    def labelled_arrows(self) -> set[tuple[str, str]]:
        return {(self.vertices[a], self.vertices[b]) for a, b in self.arrows}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": [{"key": key, "label": lab, "frozen": key in self.frozen} for key, lab in sorted(self.vertices.items())],
            "arrows": [list(a) for a in sorted(self.arrows)],
        }

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for key, lab in sorted(self.vertices.items()):
            shape = "box, style=filled, fillcolor=lightblue" if key in self.frozen else "ellipse"
            lines.append(f'  v{key} [label="{lab}", shape={shape}];')
        for a, b in sorted(self.arrows):
            lines.append(f"  v{a} -> v{b};")
        lines.append("}")
        return "\n".join(lines)


def _vertex_label(var: SeedVariable) -> str:
    return var.name or ("extra" if var.position == EXTRA else f"phi{var.position}")


def build_gls_quiver(ct: CartanType | str, k: int | None = None) -> Quiver:
    """Arrows m -> m^+ (previous position with the same letter) and l -> m for l < m
    when m^+ < l and l^+ < m^+ (or l has no predecessor) with a_{r_m r_l} < 0,
    kept when an endpoint is mutable; the extra vertex points at the second
    occurrence of sigma(k)."""
    ct = cartan_type(ct)
    seed = initial_seed(ct, k)
    k = seed.k
    fw = fixed_words(ct, k)
    l0 = len(fw.r)
    keyed = {v.key(l0): v for v in seed.variables if v.position != EXTRA}

    def letter(p: int) -> int:
        return p - l0 if p > l0 else fw.r[p - 1]

    def prev(p: int) -> int | None:
        s = letter(p)
        return max((q for q in range(1, min(p, l0 + 1)) if fw.r[q - 1] == s), default=None)

    q = Quiver(f"GLS {ct}/P{k}", {}, set())
    for key, v in keyed.items():
        q.vertices[key] = _vertex_label(v)
        if v.frozen:
            q.frozen.add(key)
    extra = seed.by_position(EXTRA)
    q.vertices[EXTRA] = _vertex_label(extra)
    q.frozen.add(EXTRA)

    for m in keyed:
        for l in keyed:
            if l >= m or (keyed[m].frozen and keyed[l].frozen):
                continue
            mp, lp = prev(m), prev(l)
            if mp == l:
                q.arrows.add((m, l))
            if mp is not None and l > mp and (lp is None or mp > lp) and ct.a(letter(m), letter(l)) < 0:
                q.arrows.add((l, m))
    occurrences = [p for p in range(1, l0 + 1) if fw.r[p - 1] == ct.sigma(k)]
    q.arrows.add((EXTRA, occurrences[1]))
    return q


def build_cmp_quiver(ct: CartanType | str, k: int | None = None) -> Quiver:
    """One vertex per letter of wP; each letter points to the first later occurrence
    of every adjacent letter, provided that comes before its own next occurrence."""
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    wP = fixed_words(ct, k).wP
    q = Quiver(f"CMP {ct}/P{k}", {p: f"s{s}@{p}" for p, s in enumerate(wP, 1)}, set())
    for p, s in enumerate(wP, 1):
        for j in range(1, ct.rank + 1):
            if ct.a(s, j) >= 0:
                continue
            later = next((t for t in range(p + 1, len(wP) + 1) if wP[t - 1] == j), None)
            if later is not None and s not in wP[p:later - 1]:
                q.arrows.add((p, later))
    return q


# ------------------------------------------------------------------ drawn quiver fixtures

# drawing column -> simple index; rows grow downward in occurrence order
_COLUMNS = {0: 1, 1: 3, 2: 4, 3: 2, 4: 5, 5: 6, 6: 7}


@lru_cache(maxsize=None)
def _quiver_fixtures() -> dict:
    return json.loads(resources.files("cominuscule").joinpath("data/quivers.json").read_text())


def fixture_arrows(ct: CartanType | str, kind: str) -> set[tuple[int, int]]:
    """The drawn quiver of the given kind ("gls" or "cmp") in this module's vertex keys."""
    ct = cartan_type(ct)
    data = _quiver_fixtures().get(f"{ct}_{kind}")
    if data is None:
        raise RootDataError(f"no {kind} quiver fixture for {ct}")
    k = default_k(ct)
    fw = fixed_words(ct, k)
    node_key: dict[str, int] = {}
    if kind == "gls":
        seed = initial_seed(ct, k)
        by_name = {v.name: v.key(len(fw.r)) if v.position != EXTRA else EXTRA for v in seed.variables}
        node_key = {node: by_name[name] for node, name in data["labels"].items()}
    else:
        columns: dict[int, list[tuple[float, str]]] = {}
        for node, (x, y) in data["nodes"].items():
            columns.setdefault(_COLUMNS[int(x)], []).append((-y, node))
        for s, nodes in columns.items():
            positions = [p for p, t in enumerate(fw.wP, 1) if t == s]
            for p, (_, node) in zip(positions, sorted(nodes)):
                node_key[node] = p
    out = set()
    for arrow in data["arrows"]:
        a, b = arrow.split(">")
        out.add((node_key[a], node_key[b]))
    return out


def compare_quiver(q: Quiver, expected: set[tuple[int, int]]) -> Report:
    rep = Report(f"{q.name} against the drawn quiver")
    missing = expected - q.arrows
    extra = q.arrows - expected
    rep.add(f"{len(q.arrows)} arrows generated, {len(expected)} drawn", not missing and not extra)
    for a, b in sorted(missing):
        rep.add(f"missing {q.vertices[a]} -> {q.vertices[b]}", False)
    for a, b in sorted(extra):
        rep.add(f"unexpected {q.vertices[a]} -> {q.vertices[b]}", False)
    return rep


# ------------------------------------------------------------------ seed expressions


def verify_cluster_expressions(
    ct: CartanType | str,
    k: int | None = None,
    positions: Iterable[int] | None = None,
    corrected: bool = False,
    skip_indices: Iterable[int] = (),
) -> Report:
    """Each named seed variable against the torus expansion of its Plücker expression.

    With corrected=True tabulated expressions with a known erratum are checked in
    their corrected form; otherwise a failure is followed by an erratum line."""
    ct = cartan_type(ct)
    seed = initial_seed(ct, k)
    tables = builtin_tables(ct)
    skip = set(skip_indices)
    wanted = None if positions is None else set(positions)
    rep = Report(f"seed expressions {ct}/P{seed.k}")
    for var in seed.variables:
        if var.name is None or (wanted is not None and var.position not in wanted):
            continue
        label = str(var)
        if ct.sigma(var.index) in skip:
            rep.add(label, True, "skipped (deep tier)")
            continue
        t0 = time.perf_counter()
        lhs = seed.minor(var)
        rhs = eval_on_torus(ct, seed.k, tables.poly(var.name, corrected=corrected))
        ok = lhs == rhs
        rep.add(label, ok, f"{len(lhs)} term(s), {time.perf_counter() - t0:.2f}s")
        if not ok and not corrected and var.name in tables.errata:
            fixed = eval_on_torus(ct, seed.k, tables.errata[var.name])
            text = tables.raw["errata"][var.name]
            rep.items[-1].detail += f"; erratum {text} {'matches' if fixed == lhs else 'also differs'}"
    return rep


def verify_trivial_minors(ct: CartanType | str, k: int | None = None) -> Report:
    """phi(i, varpi_{r_i}) == 1 on the torus for every non-exchangeable position."""
    ct = cartan_type(ct)
    k = default_k(ct) if k is None else k
    fw = fixed_words(ct, k)
    l0 = len(fw.r)
    ell = len(fw.wP)
    exch = exchangeable_indices(ct, k)
    rep = Report(f"non-exchangeable minors {ct}/P{k}")
    for pos in range(1, l0 + 1):
        if pos in exch:
            continue
        var = SeedVariable(pos, fw.r[pos - 1], True, fw.w0[: l0 - pos + 1])
        val = seed_minor(ct, k, var)
        rep.add(str(var), val == TorusPoly.one(ell))
    return rep


def plucker_expression(ct: CartanType | str, name: str, corrected: bool = False) -> PluckerPoly:
    return builtin_tables(ct).poly(name, corrected=corrected)
