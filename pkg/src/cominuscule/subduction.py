"""Deg-lex minimal terms, the valuation nu, and subduction of torus polynomials
into polynomials in Plücker coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .minuscule import PluckerLabel, label, plucker_diagram
from .plucker import PluckerPoly, _plucker_expansion
from .rootdata import CartanType, cartan_type, fixed_words
from .torus import TorusPoly, deglex_key, order_key


class SubductionError(RuntimeError):
    pass


class NoMatchingPlucker(SubductionError):
    pass


class IterationLimit(SubductionError):
    pass


@dataclass(frozen=True, order=True)
class ValuationVector:
    exps: tuple[int, ...]

    def digits(self) -> str:
        if any(x > 9 for x in self.exps):
            return ",".join(map(str, self.exps))
        return "".join(map(str, self.exps))

    def __str__(self) -> str:
        return self.digits()

    def __add__(self, other: "ValuationVector") -> "ValuationVector":
        return ValuationVector(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def key(self) -> tuple:
        return deglex_key(self.exps)

    @classmethod
    def parse(cls, text: str) -> "ValuationVector":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(x) for x in text.split(",")))
        return cls(tuple(int(c) for c in text))


def min_term(p: TorusPoly, order: str = "deglex") -> tuple[int, ValuationVector]:
    """The minimal term: lowest total degree, ties broken with a_1 heaviest
    (deg-lex), or with the last variable lightest (deg-revlex)."""
    c, e = p.min_term(order)
    return c, ValuationVector(e)


def valuation(p: TorusPoly, order: str = "deglex") -> ValuationVector:
    return min_term(p, order)[1]


def precedes(u: ValuationVector, v: ValuationVector, order: str = "deglex") -> bool:
    """u strictly smaller than v in the monomial order."""
    key = order_key(order)
    return key(u.exps) < key(v.exps)


@lru_cache(maxsize=None)
def min_term_index(ct: CartanType, k: int, order: str = "deglex") -> dict[tuple[int, ...], PluckerLabel]:
    """Minimal-term exponent vector -> coordinate; raises if two coordinates collide."""
    diagram = plucker_diagram(ct, k)
    out: dict[tuple[int, ...], PluckerLabel] = {}
    for lab in diagram.labels:
        c, e = _plucker_expansion(ct, k, lab).min_term(order)
        if e in out:
            raise SubductionError(f"{lab} and {out[e]} share the minimal term {e}")
        if c != 1:
            raise SubductionError(f"{lab} has leading coefficient {c}")
        out[e] = lab
    return out


@dataclass(frozen=True)
class SubductionStep:
    min_term: ValuationVector
    coeff: int
    labels: tuple[PluckerLabel, ...]
    multiplier: int

    @property
    def sign(self) -> int:
        return 1 if self.multiplier > 0 else -1

    def product(self) -> str:
        return "*".join(str(lab) for lab in self.labels) or "1"


@dataclass
class SubductionResult:
    expression: PluckerPoly
    steps: list[SubductionStep] = field(default_factory=list)


def factor_levels(e: tuple[int, ...]) -> list[tuple[int, ...]]:
    """L_j = product of the variables with exponent >= j, for j = 1 .. max exponent."""
    top = max(e, default=0)
    return [tuple(1 if x >= j else 0 for x in e) for j in range(1, top + 1)]


def subduce(
    ct: CartanType | str,
    k: int,
    target: TorusPoly,
    limit: int | None = None,
    order: str = "deglex",
    degree: int | None = None,
) -> SubductionResult:
    """Rewrite target as a Plücker polynomial by cancelling minimal terms.

    p0 is constant 1 on the torus, so it never appears unless degree is given;
    then every monomial is padded with p0 up to that many factors."""
    ct = cartan_type(ct)
    ell = len(fixed_words(ct, k).wP)
    if target.nvars != ell:
        raise ValueError(f"target has {target.nvars} variables, expected {ell}")
    index = min_term_index(ct, k, order)
    limit = max(10 * len(target), 1000) if limit is None else limit
    rem = target
    expr = PluckerPoly()
    steps: list[SubductionStep] = []
    while rem:
        if len(steps) >= limit:
            raise IterationLimit(f"no zero remainder after {limit} steps")
        c, e = rem.min_term(order)
        labels = []
        for lev in factor_levels(e):
            lab = index.get(lev)
            if lab is None:
                raise NoMatchingPlucker(f"{ValuationVector(lev)} is not the minimal term of any coordinate")
            labels.append(lab)
        if not labels:
            labels_t: tuple[PluckerLabel, ...] = ()
            prod = TorusPoly.one(ell)
        else:
            labels_t = tuple(sorted(labels))
            prod = TorusPoly.one(ell)
            for lab in labels_t:
                prod = prod * _plucker_expansion(ct, k, lab)
        lc, le = prod.min_term(order)
        assert le == e
        mult = Fraction(c, lc)
        if mult.denominator != 1:
            raise SubductionError(f"leading coefficient {c} not divisible by {lc}")
        mult = int(mult)
        rem = rem - prod.scale(mult)
        expr = expr + PluckerPoly({labels_t: mult})
        steps.append(SubductionStep(ValuationVector(e), c, labels_t, mult))
    if degree is not None:
        expr = pad_with_p0(expr, degree)
    return SubductionResult(expr, steps)


def pad_with_p0(expr: PluckerPoly, degree: int) -> PluckerPoly:
    p0 = label("p0")
    out = PluckerPoly()
    for mono, c in expr.terms.items():
        if len(mono) > degree:
            raise ValueError(f"monomial of {len(mono)} factors exceeds degree {degree}")
        out = out + PluckerPoly({tuple(sorted(mono + (p0,) * (degree - len(mono)))): c})
    return out


def leaf_reduce(p: TorusPoly, q: TorusPoly, order: str = "deglex") -> tuple[Fraction, TorusPoly]:
    """For p, q with equal valuation return c and p - c q, which is zero or has a
    strictly larger valuation."""
    key = order_key(order)
    cp, ep = p.min_term(order)
    cq, eq = q.min_term(order)
    if ep != eq:
        raise ValueError("valuations differ")
    c = Fraction(cp, cq)
    r = p - q.scale(c)
    if r and not key(r.min_term(order)[1]) > key(ep):
        raise AssertionError("leaf reduction did not raise the valuation")
    return c, r
