"""Lexicographically ordered value groups ℚ^k and morphisms between them.

A value lives in ℚ^k ordered lexicographically (earlier coordinates dominate);
INFINITY is the usual absorbing top element adjoined for valuations of zero.
Group morphisms ℚ^k → ℚ^m are rational matrices, and whether such a matrix is
monotone for the lex orders is decidable by looking at where the images of the
standard basis vectors have their leading entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import linalg

Q = Fraction

LT, EQ, GT = -1, 0, 1


class _Infinity:
    """Top element adjoined to every ℚ^k; absorbing for addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("lex-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("INFINITY has no additive inverse")


INFINITY = _Infinity()


class LexValue:
    """An element of ℚ^k with the lexicographic order."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        self.coords = tuple(Q(c) for c in coords)

    @classmethod
    def zero(cls, k: int) -> "LexValue":
        return cls((0,) * k)

    @classmethod
    def unit(cls, k: int, i: int) -> "LexValue":
        return cls(tuple(1 if j == i else 0 for j in range(k)))

    @classmethod
    def from_rational(cls, q) -> "LexValue":
        return cls((q,))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def as_rational(self) -> Q:
        if len(self.coords) != 1:
            raise ValueError("value has rank %d, not 1" % len(self.coords))
        return self.coords[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def sign(self) -> int:
        for c in self.coords:
            if c > 0:
                return 1
            if c < 0:
                return -1
        return 0

    def leading_index(self) -> Optional[int]:
        """Index of the first nonzero coordinate, or None for zero."""
        for i, c in enumerate(self.coords):
            if c != 0:
                return i
        return None

    def __abs__(self) -> "LexValue":
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        if other is INFINITY:
            return INFINITY
        return LexValue(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if other is INFINITY:
            raise ArithmeticError("cannot subtract INFINITY")
        return LexValue(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LexValue(tuple(-a for a in self.coords))

    def scale(self, c) -> "LexValue":
        c = Q(c)
        return LexValue(tuple(c * a for a in self.coords))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if other is INFINITY:
            return False
        return isinstance(other, LexValue) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        if other is INFINITY:
            return True
        return self.coords < other.coords  # tuple order on ℚ-tuples is lex

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if other is INFINITY:
            return False
        return self.coords > other.coords

    def __ge__(self, other):
        return self == other or self > other

    def __repr__(self):
        return "LexValue(%s)" % ", ".join(str(c) for c in self.coords)

    def to_json(self) -> list:
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, obj: Sequence[str]) -> "LexValue":
        return cls(tuple(Q(c) for c in obj))


def value_to_json(v):
    """JSON form of a LexValue or INFINITY."""
    return "INFINITY" if v is INFINITY else v.to_json()


def value_from_json(obj):
    return INFINITY if obj == "INFINITY" else LexValue.from_json(obj)


def compare(a, b) -> int:
    """Three-way lex comparison; accepts INFINITY on either side."""
    if a is INFINITY and b is INFINITY:
        return EQ
    if a is INFINITY:
        return GT
    if b is INFINITY:
        return LT
    if a.coords == b.coords:
        return EQ
    return GT if a.coords > b.coords else LT


def lex_min(values):
    it = iter(values)
    best = next(it)
    for v in it:
        if compare(v, best) == LT:
            best = v
    return best


class OrderedGroupMorphism:
    """Group morphism ℚ^k → ℚ^m given by a rational m×k matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: linalg.Matrix):
        self.matrix = linalg.qmat(matrix)

    @classmethod
    def identity(cls, k: int) -> "OrderedGroupMorphism":
        return cls(linalg.identity(k))

    @classmethod
    def projection(cls, k: int, i: int) -> "OrderedGroupMorphism":
        """pr_i : ℚ^k → ℚ^1."""
        return cls((tuple(Q(1) if j == i else Q(0) for j in range(k)),))

    @property
    def codomain_rank(self) -> int:
        return len(self.matrix)

    @property
    def domain_rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, v):
        if v is INFINITY:
            return INFINITY
        if v.rank != self.domain_rank:
            raise ValueError("value rank %d does not match domain rank %d"
                             % (v.rank, self.domain_rank))
        return LexValue(linalg.mat_vec(self.matrix, v.coords))

    def compose(self, other: "OrderedGroupMorphism") -> "OrderedGroupMorphism":
        """self ∘ other."""
        return OrderedGroupMorphism(linalg.mat_mul(self.matrix, other.matrix))

    def morphism_rank_flags(self) -> dict:
        r = linalg.rank(self.matrix)
        return {
            "rank": r,
            "injective": r == self.domain_rank,
            "surjective": r == self.codomain_rank,
        }

    def is_order_preserving(self) -> Tuple[bool, Optional[LexValue]]:
        """Decide monotonicity; on failure return a witness v > 0 with γ(v) < 0.

        Writing v_i for the image of the i-th standard basis vector, the map is
        monotone iff every v_i is lex-nonnegative and, for j > i, the column
        v_j vanishes at all coordinates up to the leading index of v_i (all of
        them when v_i = 0): any violation lets an unbounded multiple of e_j
        ride on top of e_i and flip the sign of the image.
        """
        k = self.domain_rank
        cols = [LexValue(col) for col in zip(*self.matrix)]
        for i in range(k):
            vi = cols[i]
            if vi.sign() < 0:
                witness = LexValue.unit(k, i)
                return self._fail(witness)
            lead = vi.leading_index()
            cutoff = self.codomain_rank if lead is None else lead + 1
            for j in range(i + 1, k):
                vj = cols[j]
                bad = next((t for t in range(cutoff) if vj.coords[t] != 0), None)
                if bad is None:
                    continue
                if lead is None or bad < lead:
                    c = Q(-1) if vj.coords[bad] > 0 else Q(1)
                else:  # bad == lead: overshoot the positive leading entry
                    c = -(vi.coords[lead] + 1) / vj.coords[lead]
                witness = LexValue(tuple(
                    Q(1) if t == i else (c if t == j else Q(0)) for t in range(k)))
                return self._fail(witness)
        return True, None

    def _fail(self, witness: LexValue):
        assert witness.sign() > 0 and self.apply(witness).sign() < 0
        return False, witness

    def to_json(self) -> dict:
        return linalg.matrix_to_json(self.matrix)

    @classmethod
    def from_json(cls, obj: dict) -> "OrderedGroupMorphism":
        return cls(linalg.matrix_from_json(obj))

    def __eq__(self, other):
        return isinstance(other, OrderedGroupMorphism) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "OrderedGroupMorphism(%r)" % (self.matrix,)
