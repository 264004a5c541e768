"""Model apartments Span_ℚ(Φ) ⊗ Λ with their affine Weyl group.

Points are stored in Δ-coordinates: x = Σ_{α∈Δ} λ_α α with λ_α ∈ Λ = ℚ^k
lex.  The spherical group acts through rational change-of-basis matrices
applied coordinate-wise to the LexValue entries; translations live in T,
which is either all of the apartment (FULL) or the ℤ-span of declared
generators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .ordered import LexValue
from .roots import RootSystem, WeylElement, identity_weyl

Q = Fraction


def scale_values(matrix: linalg.Matrix, values: Sequence[LexValue]) -> Tuple[LexValue, ...]:
    """Apply a rational matrix to a vector of LexValues."""
    k = values[0].rank if values else 0
    out = []
    for row in matrix:
        acc = LexValue.zero(k)
        for c, v in zip(row, values):
            if c != 0:
                acc = acc + v.scale(c)
        out.append(acc)
    return tuple(out)


class ApartmentPoint:
    __slots__ = ("apartment", "coords")

    def __init__(self, apartment: "ModelApartment", coords: Sequence[LexValue]):
        if len(coords) != apartment.root_system.rank:
            raise ValueError("expected %d coordinates" % apartment.root_system.rank)
        for c in coords:
            if c.rank != apartment.lambda_dim:
                raise ValueError("coordinate rank %d does not match Λ = ℚ^%d"
                                 % (c.rank, apartment.lambda_dim))
        self.apartment = apartment
        self.coords = tuple(coords)

    def __add__(self, other: "ApartmentPoint") -> "ApartmentPoint":
        return ApartmentPoint(self.apartment,
                              tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ApartmentPoint") -> "ApartmentPoint":
        return ApartmentPoint(self.apartment,
                              tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ApartmentPoint":
        return ApartmentPoint(self.apartment, tuple(-a for a in self.coords))

    def scale(self, c) -> "ApartmentPoint":
        return ApartmentPoint(self.apartment, tuple(v.scale(c) for v in self.coords))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, ApartmentPoint)
                and self.apartment is other.apartment
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "ApartmentPoint(%s)" % ", ".join(repr(c) for c in self.coords)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coords]


class ModelApartment:
    __slots__ = ("root_system", "lambda_dim", "translation_generators",
                 "_gram_delta", "_spherical_cache")

    def __init__(self, root_system: RootSystem, lambda_dim: int,
                 translation_generators: Optional[Sequence[Sequence[LexValue]]] = None):
        self.root_system = root_system
        self.lambda_dim = lambda_dim
        self._spherical_cache: Dict[linalg.Matrix, linalg.Matrix] = {}
        basis = root_system.basis
        self._gram_delta = linalg.from_rows(
            [[root_system.inner(a, b) for b in basis] for a in basis])
        if translation_generators is None:
            self.translation_generators = None  # FULL
        else:
            gens = [tuple(g) for g in translation_generators]
            for g in gens:
                if len(g) != root_system.rank or any(
                        v.rank != lambda_dim for v in g):
                    raise ValueError("generator shape does not match the apartment")
            flat = [self._flatten(g) for g in gens]
            if linalg.rank(linalg.from_rows(flat)) != len(gens):
                raise ValueError("translation generators must be ℚ-independent "
                                 "for exact membership tests")
            self.translation_generators = tuple(gens)
            self._check_weyl_normalizes()

    # -- translations -------------------------------------------------------

    def _flatten(self, coords: Sequence[LexValue]) -> Tuple[Q, ...]:
        out: List[Q] = []
        for v in coords:
            out.extend(v.coords)
        return tuple(out)

    def _unflatten(self, flat: Sequence[Q]) -> Tuple[LexValue, ...]:
        k = self.lambda_dim
        return tuple(LexValue(flat[i * k:(i + 1) * k])
                     for i in range(self.root_system.rank))

    def translation_contains(self, t: ApartmentPoint) -> bool:
        """Whether t lies in T (ℤ-combination of the generators)."""
        if self.translation_generators is None:
            return True
        cols = linalg.from_rows(list(zip(
            *[self._flatten(g) for g in self.translation_generators])))
        sol = linalg.solve(cols, self._flatten(t.coords))
        return sol is not None and all(c.denominator == 1 for c in sol)

    def _check_weyl_normalizes(self):
        for w in self.root_system.weyl_group():
            for g in self.translation_generators:
                image = self.act_spherical(w, self.point(g))
                if not self.translation_contains(image):
                    raise ValueError(
                        "translation subgroup is not normalized by %r" % (w,))

    # -- points -------------------------------------------------------------

    def zero(self) -> ApartmentPoint:
        return ApartmentPoint(self, tuple(LexValue.zero(self.lambda_dim)
                                          for _ in range(self.root_system.rank)))

    def point(self, coords: Sequence) -> ApartmentPoint:
        vals = [c if isinstance(c, LexValue) else LexValue(c) for c in coords]
        return ApartmentPoint(self, tuple(vals))

    def point_from_rationals(self, coords: Sequence) -> ApartmentPoint:
        """Rank-1 convenience: each coordinate a single rational."""
        return self.point([LexValue((Q(c),)) for c in coords])

    # -- spherical action ----------------------------------------------------

    def spherical_matrix(self, w: WeylElement) -> linalg.Matrix:
        """Matrix of w in Δ-coordinates (Δ is a basis of Span Φ)."""
        if w.matrix not in self._spherical_cache:
            basis = self.root_system.basis
            cols = []
            basis_cols = linalg.from_rows(list(zip(*basis)))
            for b in basis:
                image = w.act(b)
                coeffs = linalg.solve(basis_cols, image)
                if coeffs is None:
                    raise ValueError("Weyl image left the root span")
                cols.append(coeffs)
            self._spherical_cache[w.matrix] = linalg.from_rows(list(zip(*cols)))
        return self._spherical_cache[w.matrix]

    def act_spherical(self, w: WeylElement, x: ApartmentPoint) -> ApartmentPoint:
        return ApartmentPoint(self, scale_values(self.spherical_matrix(w), x.coords))

    # -- pairing and norm -----------------------------------------------------

    def pairing(self, x: ApartmentPoint, beta_coords: Sequence) -> LexValue:
        """⟨x, β⟩ for β = Σ q_δ δ given by its Δ-coordinates q."""
        q = linalg.qvec(beta_coords)
        weights = linalg.mat_vec(self._gram_delta, q)
        acc = LexValue.zero(self.lambda_dim)
        for wgt, lam in zip(weights, x.coords):
            if wgt != 0:
                acc = acc + lam.scale(wgt)
        return acc

    def pairing_root(self, x: ApartmentPoint, alpha: Sequence) -> LexValue:
        """⟨x, α⟩ for α given in ambient coordinates (must lie in Span Φ)."""
        rs = self.root_system
        acc = LexValue.zero(self.lambda_dim)
        for delta, lam in zip(rs.basis, x.coords):
            wgt = rs.inner(delta, alpha)
            if wgt != 0:
                acc = acc + lam.scale(wgt)
        return acc

    def norm(self, x: ApartmentPoint) -> LexValue:
        acc = LexValue.zero(self.lambda_dim)
        for alpha in self.root_system.roots:
            acc = acc + abs(self.pairing_root(x, alpha))
        return acc

    def __repr__(self):
        t = "FULL" if self.translation_generators is None else \
            "%d generators" % len(self.translation_generators)
        return "ModelApartment(%r, Λ=ℚ^%d, T=%s)" % (self.root_system,
                                                     self.lambda_dim, t)


class AffineWeylElement:
    """t^x ∘ w_s acting as y ↦ x + w_s(y)."""

    __slots__ = ("apartment", "translation", "spherical")

    def __init__(self, apartment: ModelApartment, translation: ApartmentPoint,
                 spherical: WeylElement):
        if not apartment.translation_contains(translation):
            raise ValueError("translation part is not in T")
        self.apartment = apartment
        self.translation = translation
        self.spherical = spherical

    @classmethod
    def identity(cls, apartment: ModelApartment) -> "AffineWeylElement":
        return cls(apartment, apartment.zero(),
                   identity_weyl(apartment.root_system))

    @classmethod
    def translation_by(cls, x: ApartmentPoint) -> "AffineWeylElement":
        return cls(x.apartment, x, identity_weyl(x.apartment.root_system))

    def act(self, x: ApartmentPoint) -> ApartmentPoint:
        return self.translation + self.apartment.act_spherical(self.spherical, x)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        t = self.translation + self.apartment.act_spherical(
            self.spherical, other.translation)
        return AffineWeylElement(self.apartment, t,
                                 self.spherical * other.spherical)

    def inverse(self) -> "AffineWeylElement":
        winv = self.spherical.inverse()
        t = -self.apartment.act_spherical(winv, self.translation)
        return AffineWeylElement(self.apartment, t, winv)

    def __eq__(self, other):
        return (isinstance(other, AffineWeylElement)
                and self.translation == other.translation
                and self.spherical == other.spherical)

    def __hash__(self):
        return hash((self.translation, self.spherical))

    def __repr__(self):
        return "AffineWeylElement(t=%r, w=%r)" % (self.translation.coords,
                                                  self.spherical)


class HalfApartment:
    """H^±_{α,k} = {x : ⟨x, α⟩ ≥ k} (sign +) or {x : ⟨x, α⟩ ≤ k} (sign −)."""

    __slots__ = ("apartment", "alpha", "threshold", "sign")

    def __init__(self, apartment: ModelApartment, alpha: Sequence,
                 threshold: LexValue, sign: int):
        alpha = linalg.qvec(alpha)
        if not apartment.root_system.is_root(alpha):
            raise ValueError("half-apartments are bounded by root walls")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.apartment = apartment
        self.alpha = alpha
        self.threshold = threshold
        self.sign = sign

    def contains(self, x: ApartmentPoint) -> bool:
        gap = self.apartment.pairing_root(x, self.alpha) - self.threshold
        return gap.sign() * self.sign >= 0

    def wall_contains(self, x: ApartmentPoint) -> bool:
        return (self.apartment.pairing_root(x, self.alpha) - self.threshold).is_zero()

    def opposite(self) -> "HalfApartment":
        return HalfApartment(self.apartment, self.alpha, self.threshold, -self.sign)


class ClosedSet:
    """Finite intersection of half-apartments; empty list = whole apartment."""

    __slots__ = ("halves",)

    def __init__(self, halves: Sequence[HalfApartment]):
        self.halves = tuple(halves)

    def contains(self, x: ApartmentPoint) -> bool:
        return all(h.contains(x) for h in self.halves)


def half_apartment_contains(h: HalfApartment, x: ApartmentPoint) -> bool:
    return h.contains(x)


def closed_set(halves: Sequence[HalfApartment]) -> ClosedSet:
    return ClosedSet(halves)


def fundamental_chamber(apartment: ModelApartment) -> ClosedSet:
    """C_0 = ⋂_{α∈Δ} H^+_{α,0}."""
    zero = LexValue.zero(apartment.lambda_dim)
    return ClosedSet([HalfApartment(apartment, a, zero, 1)
                      for a in apartment.root_system.basis])


def sector_contains(apartment: ModelApartment, w: WeylElement,
                    base: ApartmentPoint, x: ApartmentPoint) -> bool:
    """Membership in the sector w(C_0) + base."""
    y = x - base
    pulled = apartment.act_spherical(w.inverse(), y)
    return fundamental_chamber(apartment).contains(pulled)
