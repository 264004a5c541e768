"""Homothety classes of full 𝒪-lattices and their apartment charts.

Lattices for SL_n over a valued field are column spans over the valuation
ring 𝒪.  Because 𝒪 is a valuation ring (every pair of elements divides one
way or the other), column reduction with valuation-minimal pivots always
succeeds, giving a triangular canonical representative per class and exact
elementary divisors for pairs of classes.  Charts send apartment points to
diagonal monomial lattices over a basis.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import apartments, linalg
from .fields import ValuedField
from .ordered import INFINITY, LexValue
from .roots import WeylElement, build_root_system

Q = Fraction


class LatticeError(ValueError):
    pass


def field_matrix(field: ValuedField, rows) -> tuple:
    return tuple(tuple(field.coerce(x) for x in row) for row in rows)


def _min_valuation(field: ValuedField, matrix):
    best = INFINITY
    for row in matrix:
        for entry in row:
            v = field.valuation(entry)
            if v is INFINITY:
                continue
            if best is INFINITY or v < best:
                best = v
    return best


_APARTMENTS: Dict[Tuple[str, int], apartments.ModelApartment] = {}


def standard_apartment(field: ValuedField, n: int) -> apartments.ModelApartment:
    """The A_{n-1} model apartment whose Λ matches the field's value rank."""
    key = (field.kind, n)
    if key not in _APARTMENTS:
        _APARTMENTS[key] = apartments.ModelApartment(
            build_root_system("A", n - 1), field.value_rank)
    return _APARTMENTS[key]


class Lattice:
    """Full 𝒪-lattice given by the column span of an invertible matrix."""

    __slots__ = ("field", "matrix")

    def __init__(self, field: ValuedField, matrix):
        self.field = field
        self.matrix = field_matrix(field, matrix)
        n = len(self.matrix)
        if any(len(r) != n for r in self.matrix):
            raise LatticeError("basis matrix must be square")
        if linalg.det(self.matrix) == 0:
            raise LatticeError("basis matrix is singular")

    @classmethod
    def standard(cls, field: ValuedField, n: int) -> "Lattice":
        return cls(field, [[1 if i == j else 0 for j in range(n)]
                           for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.matrix)

    def to_class(self) -> "LatticeClass":
        return canonical_form(self)

    def __repr__(self):
        return "Lattice(%s, n=%d)" % (self.field.kind, self.n)


class LatticeClass:
    """Homothety class, held by its canonical triangular representative.

    The canonical form is a fixed point of the reduction but not unique per
    class, so equality runs the two-sided unit test; the normalized
    elementary divisors are a true invariant and carry the hash.
    """

    __slots__ = ("field", "matrix", "divisors")

    def __init__(self, field: ValuedField, canonical_matrix):
        self.field = field
        self.matrix = canonical_matrix
        divs = _elementary_divisors(field, canonical_matrix)
        self.divisors = tuple(d - divs[0] for d in divs)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __eq__(self, other):
        if not isinstance(other, LatticeClass):
            return NotImplemented
        if self.field.kind != other.field.kind or self.n != other.n:
            return False
        if self.divisors != other.divisors:
            return False
        return _same_span_up_to_scalar(self.field, self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.field.kind, self.n, self.divisors))

    def __repr__(self):
        return "LatticeClass(%s, n=%d, divisors=%s)" % (
            self.field.kind, self.n, [str(d.coords) for d in self.divisors])


def _same_span_up_to_scalar(field: ValuedField, a, b) -> bool:
    """[a] = [b] iff b⁻¹a is a scalar times a unit of M_n(𝒪): detected by
    min v(M) + min v(M⁻¹) = 0 (always ≤ 0 since M·M⁻¹ = 1)."""
    m = linalg.mat_mul(linalg.inverse(b), a)
    lo = _min_valuation(field, m)
    hi = _min_valuation(field, linalg.inverse(m))
    return lo + hi >= LexValue.zero(field.value_rank)


def canonical_form(lattice: Lattice) -> LatticeClass:
    """Triangular 𝒪-column reduction with valuation-minimal pivots.

    Bottom row first: the minimal-valuation entry divides the rest of its
    row, so one sweep clears everything left of the pivot.  Pivots are then
    scaled to canonical monomials, divisible above-diagonal entries are
    cleared top-down, and the whole matrix is divided by the first pivot so
    its valuation is 0 (the homothety normalization).
    """
    field = lattice.field
    n = lattice.n
    cols = [[lattice.matrix[i][j] for i in range(n)] for j in range(n)]
    for i in range(n - 1, -1, -1):
        best, best_v = None, None
        for j in range(i + 1):
            v = field.valuation(cols[j][i])
            if v is INFINITY:
                continue
            if best is None or v < best_v:
                best, best_v = j, v
        if best is None:
            raise LatticeError("basis matrix is singular")
        cols[i], cols[best] = cols[best], cols[i]
        for j in range(i):
            if cols[j][i] == 0:
                continue
            ratio = cols[j][i] / cols[i][i]
            cols[j] = [cols[j][k] - ratio * cols[i][k] for k in range(n)]
    for i in range(n):
        unit = cols[i][i] / field.element_with_valuation(
            field.valuation(cols[i][i]))
        if unit != 1:
            cols[i] = [entry / unit for entry in cols[i]]
    for i in range(n - 1, -1, -1):
        pivot_v = field.valuation(cols[i][i])
        for j in range(i + 1, n):
            v = field.valuation(cols[j][i])
            if v is INFINITY or v < pivot_v:
                continue
            ratio = cols[j][i] / cols[i][i]
            cols[j] = [cols[j][k] - ratio * cols[i][k] for k in range(n)]
    scale = field.element_with_valuation(field.valuation(cols[0][0]))
    if scale != 1:
        cols = [[entry / scale for entry in col] for col in cols]
    matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return LatticeClass(field, matrix)


def class_of(field: ValuedField, matrix) -> LatticeClass:
    return canonical_form(Lattice(field, matrix))


def _elementary_divisors(field: ValuedField, matrix) -> List[LexValue]:
    """Valuations of the two-sided diagonal form, non-decreasing.

    Global minimal-valuation pivoting makes every clearing ratio lie in 𝒪,
    which is all the elementary divisor algorithm needs over a valuation
    ring; no remainder arithmetic exists or is used.
    """
    n = len(matrix)
    a = [list(row) for row in matrix]
    divisors = []
    for k in range(n):
        bi = bj = best = None
        for i in range(k, n):
            for j in range(k, n):
                v = field.valuation(a[i][j])
                if v is INFINITY:
                    continue
                if best is None or v < best:
                    bi, bj, best = i, j, v
        if best is None:
            raise LatticeError("matrix is singular")
        a[k], a[bi] = a[bi], a[k]
        for row in a:
            row[k], row[bj] = row[bj], row[k]
        pivot = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            ratio = a[i][k] / pivot
            a[i] = [a[i][c] - ratio * a[k][c] for c in range(n)]
        for j in range(k + 1, n):
            if a[k][j] == 0:
                continue
            ratio = a[k][j] / pivot
            for i in range(n):
                a[i][j] = a[i][j] - ratio * a[i][k]
        divisors.append(best)
    return divisors


# -- group action -------------------------------------------------------------

def act(field: ValuedField, g, c: LatticeClass, allow_gl: bool = False
        ) -> LatticeClass:
    """g·[L] as the class of g times the representative."""
    g = field_matrix(field, g)
    d = linalg.det(g)
    if d == 0:
        raise LatticeError("group element is singular")
    if d != 1 and not allow_gl:
        raise LatticeError("determinant must be 1 (pass allow_gl for GL_n)")
    return class_of(field, linalg.mat_mul(g, c.matrix))


# -- stabilizer predicates ----------------------------------------------------

def entries_in_valuation_ring(field: ValuedField, g) -> bool:
    return all(field.in_valuation_ring(x) for row in field_matrix(field, g)
               for x in row)


def stab_point_membership(field: ValuedField, g) -> bool:
    """Whether g fixes the class of the standard lattice (action route)."""
    g = field_matrix(field, g)
    base = Lattice.standard(field, len(g)).to_class()
    return act(field, g, base) == base


def random_sl(field: ValuedField, n: int, rng: random.Random,
              factors: int = 4):
    """Random SL_n element as a short product of elementary, diagonal, and
    sign-fixed permutation factors; entries roam outside 𝒪 freely."""
    g = linalg.identity(n)
    g = field_matrix(field, g)
    for _ in range(rng.randint(1, factors)):
        kind = rng.choice(("elem", "elem", "diag", "perm"))
        f = [[field.one if i == j else field.zero for j in range(n)]
             for i in range(n)]
        if kind == "elem":
            i, j = rng.sample(range(n), 2)
            f[i][j] = field.random_element(rng)
        elif kind == "diag":
            x = field.random_element(rng)
            if x == 0:
                x = field.one
            i, j = rng.sample(range(n), 2)
            f[i][i] = x
            f[j][j] = 1 / x
        else:
            i, j = rng.sample(range(n), 2)
            f[i][i] = f[j][j] = field.zero
            f[i][j] = field.one
            f[j][i] = -field.one
        g = linalg.mat_mul(g, tuple(tuple(r) for r in f))
    return g


def stab_theorem_check(field: ValuedField, n: int, samples: int = 200,
                       rng: Optional[random.Random] = None) -> dict:
    """Dual-route stabilizer check: acting trivially on the standard class
    must coincide with having all entries in 𝒪, sample by sample."""
    rng = rng or random.Random(0)
    disagreements = 0
    first = None
    for _ in range(samples):
        g = random_sl(field, n, rng)
        via_action = stab_point_membership(field, g)
        via_entries = entries_in_valuation_ring(field, g)
        if via_action != via_entries:
            disagreements += 1
            if first is None:
                first = [[field.format(x) for x in row] for row in g]
    return {"field": field.kind, "n": n, "samples": samples,
            "disagreements": disagreements, "first_disagreement": first,
            "ok": disagreements == 0}


# -- charts -------------------------------------------------------------------

class LatticeChart:
    """Chart over a basis E: an apartment point with simple-coordinate
    values (λ_1, …, λ_{n-1}) goes to the class of the lattice with diagonal
    monomial exponents (λ_1, λ_2−λ_1, …, −λ_{n-1}) in that basis."""

    __slots__ = ("field", "basis")

    def __init__(self, field: ValuedField, basis):
        self.field = field
        self.basis = field_matrix(field, basis)
        if linalg.det(self.basis) == 0:
            raise LatticeError("chart basis is singular")

    @classmethod
    def standard(cls, field: ValuedField, n: int) -> "LatticeChart":
        return cls(field, linalg.identity(n))

    @property
    def n(self) -> int:
        return len(self.basis)

    def apartment(self) -> apartments.ModelApartment:
        return standard_apartment(self.field, self.n)

    def ambient_exponents(self, point: apartments.ApartmentPoint
                          ) -> Tuple[LexValue, ...]:
        """Coordinates (λ_1, λ_2−λ_1, …, −λ_{n-1}) as the point's ambient
        vector; they sum to zero by construction."""
        apt = point.apartment
        if apt.root_system.ambient_dim != self.n:
            raise LatticeError("point does not belong to an A_{n-1} apartment "
                               "of matching rank")
        if apt.lambda_dim != self.field.value_rank:
            raise LatticeError("apartment Λ does not match the field's values")
        basis_cols = linalg.transpose(linalg.from_rows(apt.root_system.basis))
        return apartments.scale_values(basis_cols, point.coords)

    def eval(self, point: apartments.ApartmentPoint,
             unit_twists: Optional[Sequence] = None) -> LatticeClass:
        """Chart value; `unit_twists` multiplies the k-th monomial witness
        by a unit, which must not change the class (well-definedness)."""
        exps = self.ambient_exponents(point)
        witnesses = [self.field.element_with_valuation(e) for e in exps]
        if unit_twists is not None:
            for k, u in enumerate(unit_twists):
                u = self.field.coerce(u)
                v = self.field.valuation(u)
                if v is INFINITY or not v.is_zero():
                    raise LatticeError("twist %d is not a unit" % k)
                witnesses[k] = witnesses[k] * u
        cols = [[self.basis[i][k] * witnesses[k] for i in range(self.n)]
                for k in range(self.n)]
        matrix = tuple(tuple(cols[j][i] for j in range(self.n))
                       for i in range(self.n))
        return class_of(self.field, matrix)

    def __repr__(self):
        return "LatticeChart(%s, n=%d)" % (self.field.kind, self.n)


def stab_apartment_membership(field: ValuedField, g,
                              chart: LatticeChart) -> bool:
    """Pointwise chart stabilizer: E⁻¹gE diagonal with valuation-0 entries."""
    g = field_matrix(field, g)
    conj = linalg.mat_mul(linalg.inverse(chart.basis),
                          linalg.mat_mul(g, chart.basis))
    n = len(conj)
    for i in range(n):
        for j in range(n):
            if i == j:
                v = field.valuation(conj[i][i])
                if v is INFINITY or not v.is_zero():
                    return False
            elif conj[i][j] != 0:
                return False
    return True


# -- diagonal dictionary ------------------------------------------------------

def diag_to_point(field: ValuedField, diag) -> apartments.ApartmentPoint:
    """Apartment point of a diagonal a: simple coordinates λ_k = v(a_1…a_k)."""
    diag = [field.coerce(x) for x in diag]
    n = len(diag)
    vals = []
    for x in diag:
        v = field.valuation(x)
        if v is INFINITY:
            raise LatticeError("diagonal entry is zero")
        vals.append(v)
    apt = standard_apartment(field, n)
    coords = []
    acc = LexValue.zero(field.value_rank)
    for k in range(n - 1):
        acc = acc + vals[k]
        coords.append(acc)
    return apt.point(coords)


def point_to_diag(field: ValuedField, point: apartments.ApartmentPoint):
    """Canonical monomial diagonal with diag_to_point inverting it; the
    witnesses multiply to exactly 1, so the result is in SL_n."""
    chart = LatticeChart.standard(field, point.apartment.root_system.ambient_dim)
    exps = chart.ambient_exponents(point)
    return tuple(field.element_with_valuation(e) for e in exps)


def root_pairing_check(field: ValuedField, diag) -> bool:
    """α_{ij}(x) = v(a_i / a_j) for the point x attached to the diagonal."""
    diag = [field.coerce(x) for x in diag]
    point = diag_to_point(field, diag)
    apt = point.apartment
    n = len(diag)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            alpha = tuple(Q(1) if k == i else (Q(-1) if k == j else Q(0))
                          for k in range(n))
            expected = field.valuation(diag[i]) - field.valuation(diag[j])
            if apt.pairing_root(point, alpha) != expected:
                return False
    return True


# -- common apartments ---------------------------------------------------------

def common_apartment(c1: LatticeClass, c2: LatticeClass
                     ) -> Tuple[LatticeChart, apartments.ApartmentPoint,
                                apartments.ApartmentPoint]:
    """A chart containing both classes, with their coordinates.

    Two-sided reduction of M = rep(c1)⁻¹·rep(c2) over 𝒪 gives E and the
    relative divisors; homothety must shift their sum to zero, which needs
    v(det M) divisible by n inside the value group; for the fields here
    that is an honest obstruction and raises when it fails.
    """
    field = c1.field
    if field.kind != c2.field.kind or c1.n != c2.n:
        raise LatticeError("classes live in different buildings")
    n = c1.n
    m = linalg.mat_mul(linalg.inverse(c1.matrix), c2.matrix)
    a = [list(row) for row in m]
    u_inv = [list(row) for row in field_matrix(field, linalg.identity(n))]
    divisors = []
    for k in range(n):
        bi = bj = best = None
        for i in range(k, n):
            for j in range(k, n):
                v = field.valuation(a[i][j])
                if v is INFINITY:
                    continue
                if best is None or v < best:
                    bi, bj, best = i, j, v
        if best is None:
            raise LatticeError("matrix is singular")
        a[k], a[bi] = a[bi], a[k]
        for row in u_inv:
            row[k], row[bi] = row[bi], row[k]
        for row in a:
            row[k], row[bj] = row[bj], row[k]
        pivot = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            ratio = a[i][k] / pivot
            a[i] = [a[i][c] - ratio * a[k][c] for c in range(n)]
            for r in range(n):
                u_inv[r][k] = u_inv[r][k] + ratio * u_inv[r][i]
        for j in range(k + 1, n):
            if a[k][j] == 0:
                continue
            ratio = a[k][j] / pivot
            for i in range(n):
                a[i][j] = a[i][j] - ratio * a[i][k]
        divisors.append(best)
    total = divisors[0]
    for d in divisors[1:]:
        total = total + d
    shift_coords = [c / n for c in total.coords]
    if any(c.denominator != 1 for c in shift_coords):
        raise LatticeError(
            "no common chart: v(det) = %s is not divisible by n = %d in the "
            "value group" % (list(map(str, total.coords)), n))
    shift = LexValue(shift_coords)
    basis = linalg.mat_mul(c1.matrix, tuple(tuple(r) for r in u_inv))
    chart = LatticeChart(field, basis)
    apt = standard_apartment(field, n)
    x = apt.zero()
    coords = []
    acc = LexValue.zero(field.value_rank)
    for k in range(n - 1):
        acc = acc + (divisors[k] - shift)
        coords.append(acc)
    y = apt.point(coords)
    return chart, x, y


# -- monomial elements and the affine Weyl group --------------------------------

def monomial_to_affine_weyl(field: ValuedField, g, chart: LatticeChart,
                            samples: int = 25,
                            rng: Optional[random.Random] = None
                            ) -> apartments.AffineWeylElement:
    """The affine Weyl element w with g·f_E = f_E ∘ w.

    E⁻¹gE must be monomial; its permutation part is the spherical component
    and the conjugated diagonal part gives the translation.  Verified on
    sampled apartment points before returning.
    """
    rng = rng or random.Random(0)
    g = field_matrix(field, g)
    n = chart.n
    conj = linalg.mat_mul(linalg.inverse(chart.basis),
                          linalg.mat_mul(g, chart.basis))
    perm = [None] * n
    for j in range(n):
        nonzero = [i for i in range(n) if conj[i][j] != 0]
        if len(nonzero) != 1:
            raise LatticeError("conjugated element is not monomial")
        perm[j] = nonzero[0]
    if len(set(perm)) != n:
        raise LatticeError("conjugated element is not monomial")
    # conj = P·D with D[j][j] the unique entry of column j
    tilde = [conj[perm[j]][j] for j in range(n)]  # D diagonal
    conjugated = [None] * n  # P·D·P⁻¹
    for j in range(n):
        conjugated[perm[j]] = tilde[j]
    total = LexValue.zero(field.value_rank)
    for x in conjugated:
        v = field.valuation(x)
        if v is INFINITY:
            raise LatticeError("monomial entry is zero")
        total = total + v
    if not total.is_zero():
        raise LatticeError("determinant valuation must vanish")
    translation = diag_to_point(field, conjugated)
    apt = translation.apartment
    pmat = linalg.qmat([[1 if perm[j] == i else 0 for j in range(n)]
                        for i in range(n)])
    spherical = WeylElement(apt.root_system, pmat)
    w = apartments.AffineWeylElement(apt, translation, spherical)
    for _ in range(samples):
        point = _random_integral_point(apt, field.value_rank, rng)
        lhs = act(field, g, chart.eval(point), allow_gl=True)
        if lhs != chart.eval(w.act(point)):
            raise LatticeError("chart equivariance failed at a sample point")
    return w


def _random_integral_point(apt: apartments.ModelApartment, rank: int,
                           rng: random.Random) -> apartments.ApartmentPoint:
    coords = [LexValue([Q(rng.randint(-4, 4)) for _ in range(rank)])
              for _ in range(apt.root_system.rank)]
    return apt.point(coords)


def affine_weyl_preimage(field: ValuedField, w: apartments.AffineWeylElement,
                         chart: LatticeChart):
    """A monomial g with g·f_E = f_E ∘ w (the chart-atlas witness)."""
    diag = point_to_diag(field, w.translation)
    n = chart.n
    pmat = w.spherical.matrix
    g = [[field.zero] * n for _ in range(n)]
    for j in range(n):
        i = next(r for r in range(n) if pmat[r][j] != 0)
        g[i][j] = diag[i]
    mono = tuple(tuple(row) for row in g)
    return linalg.mat_mul(chart.basis,
                          linalg.mat_mul(mono, linalg.inverse(chart.basis)))
