"""Valued rational function fields: ℚ(t) and ℚ(X,Y) with exact valuations.

Three valuation kinds are shipped.  DEGREE on ℚ(t) sends P/Q to
deg Q − deg P.  LEX_MULTIDEG on ℚ(X,Y) sends P/Q to the difference of the
lex-leading exponent vectors (X dominating Y), a rank-2 value.  FIRST_VAR is
the first coordinate of LEX_MULTIDEG.  The fields are ordered by declaring
the generators infinitely large (X ≫ Y ≫ constants), i.e. the sign of an
element is the sign of its lex-leading coefficient; all three valuations are
compatible with that order in the sense that 0 < x ≤ y forces v(x) ≥ v(y).

Elements are sympy FracField fractions: reduced, canonically normalized, and
structurally comparable, so equality is plain ==.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Optional, Tuple

import sympy
from sympy import QQ
from sympy.polys.fields import field as _sympy_field
from sympy.polys.orderings import lex as _lex_order

from . import linalg
from .ordered import (
    INFINITY, LT, LexValue, OrderedGroupMorphism, compare, lex_min, value_to_json,
)

Q = Fraction

DEGREE = "DEGREE"
LEX_MULTIDEG = "LEX_MULTIDEG"
FIRST_VAR = "FIRST_VAR"

IDENTITY_REVALUE = "IDENTITY_REVALUE"
VARIABLE_INCLUSION = "VARIABLE_INCLUSION"

_QT, _T_GEN = None, None
_QXY, _XY_GENS = None, None


def _qt():
    global _QT, _T_GEN
    if _QT is None:
        F, t = _sympy_field("t", QQ, _lex_order)
        _QT, _T_GEN = F, (t,)
    return _QT, _T_GEN


def _qxy():
    global _QXY, _XY_GENS
    if _QXY is None:
        F, X, Y = _sympy_field("X,Y", QQ, _lex_order)
        _QXY, _XY_GENS = F, (X, Y)
    return _QXY, _XY_GENS


class ValuedField:
    """A rational function field together with one of the shipped valuations."""

    def __init__(self, kind: str):
        if kind == DEGREE:
            self.fracfield, self.gens = _qt()
            gamma = OrderedGroupMorphism.identity(1)
        elif kind == LEX_MULTIDEG:
            self.fracfield, self.gens = _qxy()
            gamma = OrderedGroupMorphism.identity(2)
        elif kind == FIRST_VAR:
            self.fracfield, self.gens = _qxy()
            gamma = OrderedGroupMorphism.projection(2, 0)
        else:
            raise ValueError("unknown valuation kind %r" % (kind,))
        self.kind = kind
        self.gamma = gamma  # applied on top of the raw lex valuation
        self.value_rank = gamma.codomain_rank

    # -- basic element helpers -------------------------------------------

    @property
    def zero(self):
        return self.fracfield.zero

    @property
    def one(self):
        return self.fracfield.one

    def from_int(self, n: int):
        return self.one * n

    def coerce(self, x):
        """Field element from an int, Fraction, string, or element as-is."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.from_int(x.numerator) / self.from_int(x.denominator)
        if isinstance(x, int):
            return self.from_int(x)
        return x

    def parse(self, text: str):
        try:
            expr = sympy.sympify(text, convert_xor=True, rational=True)
            elem = self.fracfield.from_expr(expr)
        except Exception as exc:
            raise ValueError("cannot parse %r as an element of %s: %s"
                             % (text, self.fracfield, exc)) from exc
        return elem

    def format(self, x) -> str:
        return str(x).replace("**", "^")

    def sign_of(self, x) -> int:
        """Sign under the order where generators are infinitely large."""
        if x == 0:
            return 0
        lead = x.numer.LC * x.denom.LC
        return 1 if lead > 0 else -1

    def abs_of(self, x):
        return -x if self.sign_of(x) < 0 else x

    def is_monomial(self, x) -> bool:
        return x != 0 and len(x.numer.terms()) == 1 and len(x.denom.terms()) == 1

    # -- the valuation ----------------------------------------------------

    def _raw_lex_valuation(self, x) -> LexValue:
        num, den = x.numer, x.denom
        return LexValue(tuple(Q(b - a) for a, b in zip(num.LM, den.LM)))

    def valuation(self, x):
        if x == 0:
            return INFINITY
        return self.gamma.apply(self._raw_lex_valuation(x))

    def in_valuation_ring(self, x) -> bool:
        v = self.valuation(x)
        return v is INFINITY or v.sign() >= 0

    def element_with_valuation(self, lam):
        """The monomial witness x_λ with v(x_λ) = λ, when one exists."""
        if isinstance(lam, (int, Fraction)):
            lam = LexValue.from_rational(Q(lam))
        if lam.rank != self.value_rank:
            raise ValueError("value rank %d does not match field value rank %d"
                             % (lam.rank, self.value_rank))
        mu = linalg.solve(self.gamma.matrix, lam.coords)
        if mu is None or any(c.denominator != 1 for c in mu):
            raise ValueError("no monomial witness with valuation %r" % (lam,))
        x = self.one
        for g, e in zip(self.gens, mu):
            x = x * g ** (-int(e))
        assert self.valuation(x) == lam
        return x

    # -- sampling ----------------------------------------------------------

    def _random_poly(self, rng: Random, max_deg: int, max_terms: int,
                     allow_zero: bool):
        while True:
            p = self.fracfield.ring.zero
            for _ in range(rng.randint(1, max_terms)):
                c = rng.randint(-4, 4)
                if c == 0:
                    continue
                term = self.fracfield.ring.one * c
                for g in self.fracfield.ring.gens:
                    term = term * g ** rng.randint(0, max_deg)
                p = p + term
            if p or allow_zero:
                return p

    def random_element(self, rng: Random, max_deg: int = 2, max_terms: int = 3,
                       allow_zero: bool = False):
        num = self._random_poly(rng, max_deg, max_terms, allow_zero)
        if rng.random() < 0.4:
            den = self.fracfield.ring.one
        else:
            den = self._random_poly(rng, max_deg, max_terms, False)
        x = self.fracfield.new(num, den)
        if rng.random() < 0.3:
            # shift by a monomial so negative valuations show up more often
            g = self.gens[rng.randrange(len(self.gens))]
            x = x * g ** rng.randint(-2, 2)
        return x

    def random_unit(self, rng: Random, max_deg: int = 2):
        """A random element of valuation exactly 0."""
        while True:
            x = self.random_element(rng, max_deg=max_deg)
            v = self.valuation(x)
            if v is not INFINITY and v.is_zero():
                return x

    # -- sampled reports ---------------------------------------------------

    def valuation_axioms_check(self, sample_size: int, rng: Optional[Random] = None) -> dict:
        rng = rng or Random(0)
        violations = []
        for _ in range(sample_size):
            x = self.random_element(rng, allow_zero=True)
            y = self.random_element(rng, allow_zero=True)
            vx, vy = self.valuation(x), self.valuation(y)
            if (vx is INFINITY) != (x == 0):
                violations.append("v(x) infinite but x nonzero: x=%s" % self.format(x))
            if self.valuation(x * y) != vx + vy:
                violations.append("v(xy) != v(x)+v(y): x=%s y=%s"
                                  % (self.format(x), self.format(y)))
            vsum = self.valuation(x + y)
            low = lex_min([vx, vy])
            if compare(vsum, low) == LT:
                violations.append("v(x+y) < min: x=%s y=%s"
                                  % (self.format(x), self.format(y)))
            if compare(vx, vy) != 0 and compare(vsum, low) != 0:
                violations.append("v(x+y) != min despite v(x) != v(y): x=%s y=%s"
                                  % (self.format(x), self.format(y)))
        return {
            "kind": self.kind,
            "samples": sample_size,
            "violations": len(violations),
            "first_violation": violations[0] if violations else None,
            "ok": not violations,
        }

    def is_order_compatible(self, sample_size: int, rng: Optional[Random] = None) -> dict:
        """Sampled check that 0 < x ≤ y forces v(x) ≥ v(y)."""
        rng = rng or Random(0)
        violations = []
        for _ in range(sample_size):
            x = self.abs_of(self.random_element(rng))
            y = self.abs_of(self.random_element(rng))
            if self.sign_of(y - x) < 0:
                x, y = y, x
            if compare(self.valuation(x), self.valuation(y)) == LT:
                violations.append({"x": self.format(x), "y": self.format(y),
                                   "v_x": value_to_json(self.valuation(x)),
                                   "v_y": value_to_json(self.valuation(y))})
        return {
            "kind": self.kind,
            "samples": sample_size,
            "violations": len(violations),
            "first_violation": violations[0] if violations else None,
            "ok": not violations,
        }


_FIELDS = {}


def get_field(kind: str) -> ValuedField:
    if kind not in _FIELDS:
        _FIELDS[kind] = ValuedField(kind)
    return _FIELDS[kind]


class FieldMorphism:
    """Morphism of valued fields with its induced value-group morphism.

    Construction computes γ from monomial witnesses, validates the square
    γ∘v = v′∘η on a sample, and rejects the pair if no order-preserving γ
    makes the square commute.
    """

    def __init__(self, kind: str, source: ValuedField, target: ValuedField,
                 samples: int = 100, rng: Optional[Random] = None):
        if kind == IDENTITY_REVALUE:
            if source.fracfield is not target.fracfield:
                raise ValueError("IDENTITY_REVALUE needs both kinds on the same field")
            self._apply = lambda x: x
        elif kind == VARIABLE_INCLUSION:
            if source.kind != DEGREE or target.fracfield is not _qxy()[0]:
                raise ValueError("VARIABLE_INCLUSION goes from the one-variable "
                                 "field into the two-variable field")
            t_sym = sympy.Symbol("t")
            x_sym = sympy.Symbol("X")
            tgt = target.fracfield

            def incl(x):
                return tgt.from_expr(x.as_expr().subs(t_sym, x_sym))

            self._apply = incl
        else:
            raise ValueError("unknown field morphism kind %r" % (kind,))
        self.kind = kind
        self.source = source
        self.target = target
        self.gamma = induced_gamma(self, samples=samples, rng=rng)

    def apply(self, x):
        return self._apply(x)


def induced_gamma(eta: FieldMorphism, samples: int = 100,
                  rng: Optional[Random] = None) -> OrderedGroupMorphism:
    """The γ with γ∘v = v′∘η, validated on a sample; raises if none exists."""
    rng = rng or Random(0)
    src, tgt = eta.source, eta.target
    cols = []
    for i in range(src.value_rank):
        w = src.element_with_valuation(LexValue.unit(src.value_rank, i))
        col = tgt.valuation(eta.apply(w))
        cols.append(col.coords)
    gamma = OrderedGroupMorphism(linalg.from_rows(list(zip(*cols))))
    for _ in range(samples):
        x = src.random_element(rng)
        lhs = gamma.apply(src.valuation(x))
        rhs = tgt.valuation(eta.apply(x))
        if lhs != rhs:
            raise ValueError(
                "no induced value-group morphism: square fails at x=%s "
                "(gamma(v(x))=%r, v'(eta(x))=%r)" % (src.format(x), lhs, rhs))
    ok, witness = gamma.is_order_preserving()
    if not ok:
        raise ValueError("induced gamma is not order-preserving (witness %r)"
                         % (witness,))
    return gamma


def truncated_big_inf(fld: ValuedField, b, x, N: int) -> Optional[Q]:
    """min{p/q : x^q < b^p, 1 ≤ q ≤ N, |p| ≤ N(|deg x|+1)} for positive x."""
    deg = -fld.valuation(x).as_rational()
    bound = N * (abs(int(deg)) + 1)
    best = None
    xq = fld.one
    for q in range(1, N + 1):
        xq = xq * x
        # admissible p are upward-closed, so binary search the threshold
        lo, hi = -bound, bound
        if fld.sign_of(b ** hi - xq) <= 0:
            continue
        while lo < hi:
            mid = (lo + hi) // 2
            if fld.sign_of(b ** mid - xq) > 0:
                hi = mid
            else:
                lo = mid + 1
        ratio = Q(lo, q)
        if best is None or ratio < best:
            best = ratio
    return best


def big_element_valuation_check(b, kind: str, samples: int, N: int = 8,
                                rng: Optional[Random] = None) -> dict:
    """Recover a rank-1 valuation from the order via a big element.

    For positive x the set {p/q : x^q < b^p} has infimum deg_b(x) = −v(x);
    truncating to 1 ≤ q ≤ N and |p| ≤ N(|deg| + 1) must bracket it within
    1/N from above.
    """
    fld = get_field(kind)
    if fld.value_rank != 1:
        raise ValueError("big-element recovery only makes sense for rank-1 values")
    if fld.sign_of(b) <= 0 or fld.valuation(b).sign() >= 0:
        raise ValueError("%s is not big for the order" % fld.format(b))
    rng = rng or Random(0)
    cases = []
    violations = 0
    for _ in range(samples):
        x = fld.abs_of(fld.random_element(rng))
        deg = -fld.valuation(x).as_rational()
        best = truncated_big_inf(fld, b, x, N)
        ok = best is not None and deg <= best <= deg + Q(1, N)
        if not ok:
            violations += 1
        cases.append({"x": fld.format(x), "deg": str(deg),
                      "truncated_inf": None if best is None else str(best),
                      "ok": ok})
    return {
        "kind": kind,
        "big": fld.format(b),
        "N": N,
        "samples": samples,
        "violations": violations,
        "ok": violations == 0,
        "cases": cases[:5],
    }
