"""Seeded random generators used by the verification commands and tests.

Everything takes an explicit random.Random so runs are reproducible from a
seed; nothing here reads global state.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Optional

from . import linalg
from .apartments import ApartmentPoint, ModelApartment
from .ordered import LexValue, OrderedGroupMorphism

Q = Fraction


def random_apartment_point(apartment: ModelApartment, rng: Random) -> ApartmentPoint:
    return apartment.point([
        LexValue([random_fraction(rng) for _ in range(apartment.lambda_dim)])
        for _ in range(apartment.root_system.rank)])


def random_fraction(rng: Random, lo: int = -6, hi: int = 6, max_den: int = 4) -> Q:
    return Q(rng.randint(lo, hi), rng.randint(1, max_den))


def random_lex_value(rng: Random, k: int) -> LexValue:
    return LexValue(tuple(random_fraction(rng) for _ in range(k)))


def random_lex_positive(rng: Random, k: int) -> LexValue:
    """A strictly lex-positive element of ℚ^k."""
    v = random_lex_value(rng, k)
    s = v.sign()
    if s < 0:
        v = -v
    elif s == 0:
        v = LexValue.unit(k, rng.randrange(k))
    return v


def random_rational_matrix(rng: Random, rows: int, cols: int) -> linalg.Matrix:
    return linalg.from_rows(
        [[random_fraction(rng) for _ in range(cols)] for _ in range(rows)])


def random_monotone_morphism(rng: Random, m: int, k: int) -> OrderedGroupMorphism:
    """A morphism ℚ^k → ℚ^m that is monotone by construction.

    Columns are built left to right; each column either vanishes or starts
    with a positive entry strictly below every leading index used so far,
    which is exactly the acceptance pattern of the monotonicity test.
    """
    cols = []
    floor = 0  # first codomain index the next column may touch
    for _ in range(k):
        col = [Q(0)] * m
        if floor < m and rng.random() < 0.85:
            lead = rng.randint(floor, m - 1)
            col[lead] = Q(rng.randint(1, 5), rng.randint(1, 3))
            for t in range(lead + 1, m):
                col[t] = random_fraction(rng)
            floor = lead + 1
        else:
            floor = m  # zero column: everything after must stay zero
        cols.append(col)
    return OrderedGroupMorphism(linalg.from_rows(list(zip(*cols))))


def sampled_order_violation(gamma: OrderedGroupMorphism, rng: Random,
                            samples: int) -> Optional[LexValue]:
    """Search for v > 0 with γ(v) < 0 by sampling; None if none found."""
    k = gamma.domain_rank
    for _ in range(samples):
        v = random_lex_positive(rng, k)
        if gamma.apply(v).sign() < 0:
            return v
    return None
