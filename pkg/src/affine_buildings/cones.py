"""Exact rational polyhedral cones at desk dimension (≤ 4).

Cones are given by homogeneous constraint rows a with meaning a·y ≥ 0, or
a·y > 0 for strict rows.  Feasibility is decided by Fourier–Motzkin
elimination, which is exact over ℚ and needs no pivoting choices; extreme
rays of pointed cones come from the classical active-set enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from . import linalg

Q = Fraction
Row = Tuple[Q, ...]
Constraint = Tuple[Row, bool]  # (coefficients, strict?)


def _normalize(row: Sequence[Q]) -> Row:
    """Primitive representative of the ray ℚ_{>0}·row (kills denominators)."""
    den = 1
    for x in row:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    if g == 0:
        return tuple(Q(0) for _ in row)
    return tuple(Q(v // g) for v in ints)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def feasible(constraints: Sequence[Constraint], dim: int) -> bool:
    """Whether some y ∈ ℚ^dim satisfies every constraint."""
    rows = {(_normalize(r), s) for r, s in constraints}
    for var in range(dim):
        pos, neg, rest = [], [], []
        for r, s in rows:
            if r[var] > 0:
                pos.append((r, s))
            elif r[var] < 0:
                neg.append((r, s))
            else:
                rest.append((r, s))
        new = set(rest)
        for p, sp in pos:
            for n, sn in neg:
                combined = tuple(p[i] * (-n[var]) + n[i] * p[var]
                                 for i in range(dim))
                new.add((_normalize(combined), sp or sn))
        rows = new
    for r, s in rows:
        if s and all(x == 0 for x in r):
            return False  # derived 0 > 0
    return True


def implicit_equalities(rows: Sequence[Row], dim: int) -> List[int]:
    """Indices j with a_j·y = 0 on all of {y : a·y ≥ 0 for every row a}."""
    base = [(r, False) for r in rows]
    out = []
    for j, r in enumerate(rows):
        if not feasible(base + [(r, True)], dim):
            out.append(j)
    return out


def extreme_rays(rows: Sequence[Row], dim: int) -> Tuple[Row, ...]:
    """Extreme rays of the pointed cone {y : a·y ≥ 0}.

    A ray is cut out by dim−1 independent active constraints; enumeration over
    row subsets is fine at desk scale.  For a non-pointed cone this under-
    reports, so callers must guarantee pointedness.
    """
    qrows = [linalg.qvec(r) for r in rows]
    if dim == 1:
        rays = []
        for cand in ((Q(1),), (Q(-1),)):
            if all(linalg.vec_dot(r, cand) >= 0 for r in qrows):
                rays.append(cand)
        return tuple(sorted(set(rays)))
    found = set()
    for subset in combinations(range(len(qrows)), dim - 1):
        mat = linalg.from_rows([qrows[i] for i in subset])
        kernel = linalg.nullspace(mat)
        if len(kernel) != 1:
            continue
        for cand in (kernel[0], linalg.vec_neg(kernel[0])):
            if all(linalg.vec_dot(r, cand) >= 0 for r in qrows):
                ray = _normalize(cand)
                if any(x != 0 for x in ray):
                    found.add(ray)
    return tuple(sorted(found))


def relative_interior_point(rows: Sequence[Row], dim: int,
                            avoid=None, attempts: int = 64) -> Optional[Row]:
    """A point in the relative interior of the pointed cone {a·y ≥ 0}.

    Sums the extreme rays with distinct prime weights; if `avoid` is given
    (a predicate), prime tuples are advanced until avoid(point) is False.
    Returns None for the trivial cone or if attempts run out.
    """
    rays = extreme_rays(rows, dim)
    if not rays:
        return None
    primes = _primes(len(rays) + attempts)
    for shift in range(attempts):
        weights = primes[shift:shift + len(rays)]
        point = tuple(
            sum((Q(w) * r[i] for w, r in zip(weights, rays)), Q(0))
            for i in range(dim))
        if avoid is None or not avoid(point):
            return point
    return None


def _primes(count: int) -> List[int]:
    out, n = [], 2
    while len(out) < count:
        if all(n % p for p in out):
            out.append(n)
        n += 1
    return out


def cone_span_basis(rows: Sequence[Row], dim: int) -> Tuple[Row, ...]:
    """Basis of span(cone): the nullspace of the implicit-equality rows."""
    qrows = [linalg.qvec(r) for r in rows]
    implicit = implicit_equalities(qrows, dim)
    if not implicit:
        return tuple(linalg.identity(dim))
    return linalg.nullspace(linalg.from_rows([qrows[j] for j in implicit]))
