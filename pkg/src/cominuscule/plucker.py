"""Polynomials in Plücker coordinates, the built-in tables for E6/P6 and E7/P7,
and exact checks of their torus expansions."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from .expansion import exact_divide, expand_plucker
from .minuscule import PluckerLabel, label, plucker_diagram
from .rootdata import (
    CartanType,
    RootDataError,
    add,
    cartan_type,
    fixed_words,
    fundamental_weight,
    inversion_roots,
    reduced_subexpressions,
    root_to_weight,
    w_prime,
)
from .torus import TorusPoly

Monomial = tuple[PluckerLabel, ...]


class PluckerPoly:
    """Integer polynomial in named Plücker coordinates; monomials are sorted label tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[PluckerLabel], int] | None = None):
        self.terms: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c:
                key = tuple(sorted(mono))
                v = self.terms.get(key, 0) + c
                if v:
                    self.terms[key] = v
                else:
                    self.terms.pop(key, None)

    @classmethod
    def coordinate(cls, lab: str | PluckerLabel) -> "PluckerPoly":
        return cls({(label(lab),): 1})

    @classmethod
    def const(cls, c: int) -> "PluckerPoly":
        return cls({(): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, PluckerPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "PluckerPoly") -> "PluckerPoly":
        out = PluckerPoly(self.terms)
        for m, c in other.terms.items():
            v = out.terms.get(m, 0) + c
            if v:
                out.terms[m] = v
            else:
                out.terms.pop(m, None)
        return out

    def __neg__(self) -> "PluckerPoly":
        return PluckerPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PluckerPoly") -> "PluckerPoly":
        return self + (-other)

    def __mul__(self, other) -> "PluckerPoly":
        if isinstance(other, int):
            return PluckerPoly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, 0) + c1 * c2
        return PluckerPoly(out)

    __rmul__ = __mul__

    def labels(self) -> set[PluckerLabel]:
        return {lab for m in self.terms for lab in m}

    def degrees(self) -> set[int]:
        return {sum(lab.degree for lab in m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def _sorted(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted():
            mono = "*".join(str(lab) for lab in m)
            body = mono if abs(c) == 1 and mono else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
            parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"PluckerPoly({self})"

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "labels": [str(lab) for lab in m]} for m, c in self._sorted()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "PluckerPoly":
        return cls({tuple(label(s) for s in t["labels"]): t["coeff"] for t in data})


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[pq]\d+'*)|(?P<int>\d+)|(?P<op>[-+*()]))")


def parse_poly(text: str, env: Mapping[str, PluckerPoly] | None = None) -> PluckerPoly:
    """Parse '+', '-', '*', parentheses, integers, p-labels and q-names (looked up in env)."""
    env = env or {}
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr() -> PluckerPoly:
        out = term()
        while peek()[1] in ("+", "-"):
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def term() -> PluckerPoly:
        out = factor()
        while peek()[1] == "*":
            take()
            out = out * factor()
        return out

    def factor() -> PluckerPoly:
        kind, val = take()
        if val == "-":
            return -factor()
        if val == "+":
            return factor()
        if val == "(":
            out = expr()
            if take()[1] != ")":
                raise ValueError("unbalanced parentheses")
            return out
        if kind == "int":
            return PluckerPoly.const(int(val))
        if kind == "name":
            if val.startswith("p"):
                return PluckerPoly.coordinate(val)
            if val not in env:
                raise KeyError(f"undefined polynomial {val}")
            return env[val]
        raise ValueError(f"unexpected token {val!r}")

    out = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


# ------------------------------------------------------------------ tables


@dataclass(frozen=True)
class SuperpotentialTerm:
    name: str
    numerator: PluckerPoly
    denominator: PluckerPoly
    quantum: bool = False
    laurent: str | None = None
    deep: bool = False


@dataclass(frozen=True)
class SuperpotentialSpec:
    terms: tuple[SuperpotentialTerm, ...]

    def classical(self) -> tuple[SuperpotentialTerm, ...]:
        return tuple(t for t in self.terms if not t.quantum)

    def quantum_term(self) -> SuperpotentialTerm:
        qs = [t for t in self.terms if t.quantum]
        assert len(qs) == 1
        return qs[0]


@dataclass(frozen=True)
class Relation:
    lhs: PluckerLabel
    rhs: PluckerPoly


@dataclass
class Tables:
    ct: CartanType
    k: int
    polys: dict[str, PluckerPoly]
    superpotential: SuperpotentialSpec
    relations: list[Relation]
    minor_identities: dict[int, str]
    seed_mutable: list[tuple[int, int, str]]
    seed_frozen: list[tuple[int, int, str]]
    seed_extra: str
    errata: dict[str, PluckerPoly] = field(default_factory=dict)
    raw: dict = field(repr=False, default_factory=dict)

    def poly(self, name: str, corrected: bool = False) -> PluckerPoly:
        """A named q-polynomial or a single coordinate.  With corrected=True the
        tabulated text is replaced by its erratum when one exists."""
        if corrected and name in self.errata:
            return self.errata[name]
        if name in self.polys:
            return self.polys[name]
        return PluckerPoly.coordinate(name)


def table_text(ct: CartanType | str) -> str:
    ct = cartan_type(ct)
    try:
        return resources.files("cominuscule").joinpath(f"data/tables_{ct}.json").read_text()
    except FileNotFoundError:
        raise RootDataError(f"no built-in Plücker tables for {ct}") from None


@lru_cache(maxsize=None)
def builtin_tables(ct: CartanType | str) -> Tables:
    ct = cartan_type(ct)
    raw = json.loads(table_text(ct))
    polys: dict[str, PluckerPoly] = {}
    pending = dict(raw["polys"])
    while pending:
        progressed = False
        for name, text in list(pending.items()):
            try:
                polys[name] = parse_poly(text, polys)
            except KeyError:
                continue
            del pending[name]
            progressed = True
        if not progressed:
            raise ValueError(f"circular definitions among {sorted(pending)}")

    def named(name: str) -> PluckerPoly:
        return polys[name] if name in polys else PluckerPoly.coordinate(name)

    terms = tuple(
        SuperpotentialTerm(
            name=f"{t['num']}/{t['den']}",
            numerator=named(t["num"]),
            denominator=named(t["den"]),
            quantum=bool(t.get("quantum", False)),
            laurent=t.get("laurent"),
            deep=bool(t.get("deep", False)),
        )
        for t in raw["superpotential"]
    )
    relations = [Relation(label(lhs), parse_poly(rhs)) for lhs, rhs in raw["relations"]]
    seed = raw["seed"]
    return Tables(
        ct=ct,
        k=raw["k"],
        polys=polys,
        superpotential=SuperpotentialSpec(terms),
        relations=relations,
        minor_identities={int(i): s for i, s in raw["minor_identities"].items()},
        seed_mutable=[tuple(x) for x in seed["mutable"]],
        seed_frozen=[tuple(x) for x in seed["frozen"]],
        seed_extra=seed["extra"],
        errata={name: parse_poly(text, polys) for name, text in raw.get("errata", {}).items()},
        raw=raw,
    )


# ------------------------------------------------------------------ torus evaluation


@lru_cache(maxsize=None)
def _plucker_expansion(ct: CartanType, k: int, lab: PluckerLabel) -> TorusPoly:
    return expand_plucker(ct, k, lab)


def eval_on_torus(ct: CartanType | str, k: int, poly: PluckerPoly) -> TorusPoly:
    """Substitute the torus expansion of every coordinate."""
    ct = cartan_type(ct)
    diagram = plucker_diagram(ct, k)
    ell = len(fixed_words(ct, k).wP)
    total = TorusPoly(ell)
    for mono, c in poly.terms.items():
        term = TorusPoly.const(ell, c)
        for lab in mono:
            diagram.vertex(lab)
            term = term * _plucker_expansion(ct, k, lab)
        total = total + term
    return total


def gls_correspondence(ct: CartanType | str, k: int) -> dict[int, PluckerLabel]:
    """m -> the coordinate whose vertex has weight -varpi_k + beta_(m)."""
    ct = cartan_type(ct)
    diagram = plucker_diagram(ct, k)
    base = tuple(-x for x in fundamental_weight(ct, k))
    out = {}
    for m, beta in enumerate(inversion_roots(ct, fixed_words(ct, k).wP), start=1):
        mu = add(base, root_to_weight(ct, beta))
        v = diagram.index.get(mu)
        if v is None:
            raise RootDataError(f"no vertex of weight {mu} for inversion root {beta}")
        out[m] = diagram.labels[v]
    return out


def quantum_numerator(ct: CartanType | str, k: int) -> TorusPoly:
    """Sum over reduced subexpressions of w' in the fixed word for wP of the product
    of the chosen coordinates a_i."""
    ct = cartan_type(ct)
    wP = fixed_words(ct, k).wP
    out: dict[tuple, int] = {}
    for pos in reduced_subexpressions(ct, w_prime(ct, k), wP):
        e = [0] * len(wP)
        for p in pos:
            e[p - 1] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + 1
    return TorusPoly(len(wP), out)


# ------------------------------------------------------------------ verification


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    items: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(x.ok for x in self.items)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.items.append(CheckResult(name, ok, detail))

    def render(self) -> str:
        width = max((len(x.name) for x in self.items), default=4)
        lines = [self.title]
        for x in self.items:
            lines.append(f"{'PASS' if x.ok else 'FAIL'}  {x.name.ljust(width)}  {x.detail}".rstrip())
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"title": self.title, "ok": self.ok, "items": [x.__dict__ for x in self.items]}


def term_name(t: SuperpotentialTerm) -> str:
    """p9'/p8 -> p_9'/p_8"""
    return re.sub(r"\b([pq])(\d+)", r"\1_\2", t.name)


def verify_superpotential(ct: CartanType | str, k: int | None = None, include_deep: bool = True) -> Report:
    ct = cartan_type(ct)
    tables = builtin_tables(ct)
    k = tables.k if k is None else k
    ell = len(fixed_words(ct, k).wP)
    rep = Report(f"superpotential {ct}/P{k}")
    seen: list[int] = []
    for t in tables.superpotential.terms:
        if t.quantum:
            num = eval_on_torus(ct, k, t.numerator)
            den = eval_on_torus(ct, k, t.denominator)
            qn = quantum_numerator(ct, k)
            prod_all = TorusPoly.from_indices(ell, range(1, ell + 1))
            ok = num == qn and den == prod_all
            rep.add(f"q*{term_name(t)}", ok, f"numerator has {len(qn)} subexpression terms; denominator = a1*...*a{ell}")
            continue
        expected = TorusPoly.parse(ell, t.laurent)
        seen.extend(sorted(expected.support_vars()))
        if t.deep and not include_deep:
            rep.add(term_name(t), True, "skipped (deep tier)")
            continue
        try:
            quo = exact_divide(eval_on_torus(ct, k, t.numerator), eval_on_torus(ct, k, t.denominator))
            ok = quo == expected
            name = f"{term_name(t)} = {quo.pretty().replace('*', ' ')}"
            detail = "" if ok else f"expected {expected.pretty()}"
        except ArithmeticError as exc:
            ok, name, detail = False, term_name(t), f"division failed: {exc}"
        rep.add(name, ok, detail)
    rep.add("supports partition 1..l", sorted(seen) == list(range(1, ell + 1)), f"l = {ell}")
    return rep


def verify_relations(ct: CartanType | str, k: int | None = None) -> Report:
    ct = cartan_type(ct)
    tables = builtin_tables(ct)
    k = tables.k if k is None else k
    rep = Report(f"Plücker relations {ct}/P{k}")
    for rel in tables.relations:
        lhs = eval_on_torus(ct, k, PluckerPoly.coordinate(rel.lhs))
        rhs = eval_on_torus(ct, k, rel.rhs)
        rep.add(f"{rel.lhs} = {rel.rhs}", lhs == rhs)
    return rep


def verify_minor_identities(ct: CartanType | str, indices: Iterable[int] | None = None, transposed: bool = False) -> Report:
    """expand_minor(i, wP^{-1}) against the tabulated Plücker polynomial for each i."""
    from .expansion import expand_minor
    from .rootdata import inverse_word

    ct = cartan_type(ct)
    tables = builtin_tables(ct)
    winv = inverse_word(fixed_words(ct, tables.k).wP)
    rep = Report(f"minor identities {ct}")
    for i in indices or sorted(tables.minor_identities):
        name = tables.minor_identities[i]
        lhs = expand_minor(ct, i, winv, transposed=transposed)
        rhs = eval_on_torus(ct, tables.k, tables.poly(name))
        rep.add(f"Delta(varpi_{i}, wP^-1 varpi_{i}) = {name}", lhs == rhs, f"{len(lhs)} term(s)")
    return rep
