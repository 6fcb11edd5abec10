"""Exact sparse integer polynomials in the torus coordinates a_1 .. a_l."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exps = tuple[int, ...]


class InexactDivision(ArithmeticError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def deglex_key(e: Exps) -> tuple[int, Exps]:
    """Sort key for the deg-lex order with a_1 > a_2 > ... (bigger key = bigger monomial)."""
    return (sum(e), e)


def degrevlex_key(e: Exps) -> tuple[int, Exps]:
    """Sort key for deg-revlex with a_1 > a_2 > ...: among equal degrees, more of
    the last variable makes a monomial smaller."""
    return (sum(e), tuple(-x for x in reversed(e)))


TERM_ORDERS = {"deglex": deglex_key, "degrevlex": degrevlex_key}


def order_key(order: str):
    try:
        return TERM_ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown term order {order!r}; choose from {sorted(TERM_ORDERS)}") from None


class TorusPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, int] | None = None):
        self.nvars = nvars
        self.terms: dict[Exps, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) < nvars:
                        e = e + (0,) * (nvars - len(e))
                    elif len(e) > nvars:
                        raise ValueError("exponent vector longer than nvars")
                    self.terms[e] = _norm(c)

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "TorusPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "TorusPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def const(cls, nvars: int, c) -> "TorusPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, j: int, power: int = 1) -> "TorusPoly":
        e = [0] * nvars
        e[j - 1] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, nvars: int, exps: Iterable[int], coeff=1) -> "TorusPoly":
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def from_indices(cls, nvars: int, idx: Iterable[int], coeff=1) -> "TorusPoly":
        e = [0] * nvars
        for j in idx:
            e[j - 1] += 1
        return cls(nvars, {tuple(e): coeff})

    # basic protocol
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Exps, int]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = TorusPoly.const(self.nvars, other)
        if not isinstance(other, TorusPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other: "TorusPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch {self.nvars} != {other.nvars}")

    def _coerce(self, other) -> "TorusPoly":
        if isinstance(other, (int, Fraction)):
            return TorusPoly.const(self.nvars, other)
        self._check(other)
        return other

    def __add__(self, other) -> "TorusPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        r = TorusPoly(self.nvars)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "TorusPoly":
        r = TorusPoly(self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other) -> "TorusPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TorusPoly":
        return (-self) + other

    def scale(self, c) -> "TorusPoly":
        if not c:
            return TorusPoly(self.nvars)
        r = TorusPoly(self.nvars)
        r.terms = {e: _norm(v * c) for e, v in self.terms.items()}
        return r

    def __mul__(self, other) -> "TorusPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        r = TorusPoly(self.nvars)
        r.terms = {e: _norm(c) for e, c in out.items()}
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TorusPoly":
        out = TorusPoly.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def mul_monomial(self, exps: Exps, c=1) -> "TorusPoly":
        r = TorusPoly(self.nvars)
        r.terms = {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()}
        return r

    # structure
    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def total_degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("not homogeneous")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_exponent(self) -> int:
        return max((max(e) for e in self.terms), default=0)

    def support_vars(self) -> set[int]:
        return {j + 1 for e in self.terms for j, x in enumerate(e) if x}

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]))

    def min_term(self, order: str = "deglex") -> tuple[int, Exps]:
        if not self.terms:
            raise ValueError("zero polynomial has no minimal term")
        e = min(self.terms, key=order_key(order))
        return self.terms[e], e

    def max_term(self) -> tuple[int, Exps]:
        if not self.terms:
            raise ValueError("zero polynomial has no maximal term")
        e = max(self.terms, key=deglex_key)
        return self.terms[e], e

    def coefficient(self, exps: Iterable[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def weight_grading(self, letters: Iterable[int]) -> set[tuple[int, ...]]:
        """Multidegree per simple root when a_j carries the letter r_j."""
        letters = list(letters)
        rank = max(letters)
        out = set()
        for e in self.terms:
            d = [0] * rank
            for j, x in enumerate(e):
                d[letters[j] - 1] += x
            out.add(tuple(d))
        return out

    # division
    def divide_exact(self, den: "TorusPoly") -> "TorusPoly":
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lc, le = den.max_term()
        rest = TorusPoly(den.nvars, {e: c for e, c in den.terms.items() if e != le})
        rem = dict(self.terms)
        quo: dict[Exps, int] = {}
        while rem:
            e = max(rem, key=deglex_key)
            c = rem[e]
            q_e = tuple(a - b for a, b in zip(e, le))
            if min(q_e) < 0:
                raise InexactDivision("leading monomial not divisible")
            q_c = _norm(Fraction(c) / lc)
            quo[q_e] = q_c
            del rem[e]
            for e2, c2 in rest.terms.items():
                t = tuple(a + b for a, b in zip(e2, q_e))
                v = rem.get(t, 0) - c2 * q_c
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return TorusPoly(self.nvars, quo)

    # rendering
    def term_str(self, e: Exps, c) -> str:
        mono = " ".join(f"a{j + 1}" + (f"^{x}" if x > 1 else "") for j, x in enumerate(e) if x)
        return f"{c} * {mono}" if mono else f"{c}"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.term_str(e, c) for e, c in self.sorted_terms())

    def pretty(self) -> str:
        """Compact human form, e.g. 'a9 + a16' or '2*a1*a2^2 - a3'."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True):
            mono = "*".join(f"a{j + 1}" + (f"^{x}" if x > 1 else "") for j, x in enumerate(e) if x)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[1:]

    def __repr__(self) -> str:
        return f"TorusPoly({self.nvars}, {self.pretty()})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"coeff": c, "exps": list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, d: dict) -> "TorusPoly":
        return cls(d["nvars"], {tuple(t["exps"]): t["coeff"] for t in d["terms"]})

    @classmethod
    def parse(cls, nvars: int, text: str) -> "TorusPoly":
        """Parse products/sums like '(a5+a10)*a11 - 2*a3^2'."""
        expr = text.replace("^", "**")
        if not re.fullmatch(r"[\sa0-9+\-*()]*", expr):
            raise ValueError(f"unexpected characters in {text!r}")
        expr = re.sub(r"a(\d+)", r"_v(\1)", expr)
        return eval(expr, {"__builtins__": {}}, {"_v": lambda j: cls.var(nvars, j)})  # noqa: S307


def prod_vars(nvars: int, idx: Iterable[int]) -> TorusPoly:
    return TorusPoly.from_indices(nvars, idx)


def sum_vars(nvars: int, idx: Iterable[int]) -> TorusPoly:
    out = TorusPoly(nvars)
    for j in idx:
        out = out + TorusPoly.var(nvars, j)
    return out
