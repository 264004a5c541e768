"""Morphisms of model apartments: τ = L ⊗ γ with a compatible σ.

A morphism is a rational matrix L between the Δ-coordinate spaces, a value
group morphism γ, and a table σ_s assigning to each spherical element a
spherical element of the target.  Verification is exact: σ_s must be a group
homomorphism (checked on all pairs, the groups are finite), the diagram
τ ∘ w = σ_s(w) ∘ τ must hold as a matrix identity L·S_w = S_{σ_s(w)}·L, and
translations must map into the target translation group.  The affine
extension σ(t^x w) = t^{τ(x)} σ_s(w) is then a homomorphism; we re-check on
sampled affine pairs anyway.
"""

from __future__ import annotations

from random import Random
from typing import Dict, Optional

from . import linalg
from .apartments import AffineWeylElement, ApartmentPoint, ModelApartment, scale_values
from .ordered import OrderedGroupMorphism
from .roots import WeylElement, identity_weyl


class MorphismError(ValueError):
    pass


def same_apartment(a: ModelApartment, b: ModelApartment) -> bool:
    return (a.root_system.roots == b.root_system.roots
            and a.root_system.gram == b.root_system.gram
            and a.root_system.basis == b.root_system.basis
            and a.lambda_dim == b.lambda_dim
            and a.translation_generators == b.translation_generators)


class ApartmentMorphism:
    __slots__ = ("domain", "codomain", "L", "gamma", "sigma_s")

    def __init__(self, domain: ModelApartment, codomain: ModelApartment,
                 L: linalg.Matrix, gamma: OrderedGroupMorphism,
                 sigma_s: Dict[WeylElement, WeylElement], check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.L = linalg.qmat(L)
        self.gamma = gamma
        self.sigma_s = dict(sigma_s)
        if len(self.L) != codomain.root_system.rank or \
                len(self.L[0]) != domain.root_system.rank:
            raise MorphismError("L must be %d x %d"
                                % (codomain.root_system.rank,
                                   domain.root_system.rank))
        if gamma.domain_rank != domain.lambda_dim or \
                gamma.codomain_rank != codomain.lambda_dim:
            raise MorphismError("gamma must map ℚ^%d -> ℚ^%d"
                                % (domain.lambda_dim, codomain.lambda_dim))
        if check:
            report = self.verify()
            if not report["ok"]:
                raise MorphismError("morphism verification failed: %s"
                                    % (report,))

    # -- the two maps --------------------------------------------------------

    def apply_tau(self, x: ApartmentPoint) -> ApartmentPoint:
        pushed = [self.gamma.apply(lam) for lam in x.coords]
        return ApartmentPoint(self.codomain, scale_values(self.L, pushed))

    def apply_sigma(self, g: AffineWeylElement) -> AffineWeylElement:
        ws = self.sigma_s.get(g.spherical)
        if ws is None:
            raise MorphismError("sigma_s has no entry for %r" % (g.spherical,))
        return AffineWeylElement(self.codomain, self.apply_tau(g.translation), ws)

    # -- verification ----------------------------------------------------------

    def verify(self, samples: int = 100, rng: Optional[Random] = None) -> dict:
        rng = rng or Random(0)
        report = {"ok": True}

        group = self.domain.root_system.weyl_group()
        missing = [w for w in group if w not in self.sigma_s]
        report["table_complete"] = {"ok": not missing,
                                    "witness": repr(missing[0]) if missing else None}
        if missing:
            report["ok"] = False
            return report

        witness = None
        for u in group:
            for v in group:
                if self.sigma_s[u * v] != self.sigma_s[u] * self.sigma_s[v]:
                    witness = "sigma(uv) != sigma(u)sigma(v) at u=%r v=%r" % (u, v)
                    break
            if witness:
                break
        report["sigma_homomorphism"] = {"ok": witness is None, "witness": witness}

        diagram_witness = None
        for w in group:
            lhs = linalg.mat_mul(self.L, self.domain.spherical_matrix(w))
            rhs = linalg.mat_mul(self.codomain.spherical_matrix(self.sigma_s[w]),
                                 self.L)
            if lhs != rhs:
                diagram_witness = "L*S_w != S_sigma(w)*L at w=%r" % (w,)
                break
        report["diagram"] = {"ok": diagram_witness is None,
                             "witness": diagram_witness}

        t_witness = None
        if self.codomain.translation_generators is not None:
            if self.domain.translation_generators is None:
                t_witness = "domain translations are FULL, target is a lattice"
            else:
                for g in self.domain.translation_generators:
                    image = self.apply_tau(self.domain.point(g))
                    if not self.codomain.translation_contains(image):
                        t_witness = "generator %r maps outside T'" % (g,)
                        break
        report["translation_image"] = {"ok": t_witness is None,
                                       "witness": t_witness}

        report["ok"] = all(report[k]["ok"] for k in
                           ("sigma_homomorphism", "diagram", "translation_image"))
        if not report["ok"]:
            return report

        affine_witness = None
        for _ in range(samples):
            g = AffineWeylElement(self.domain,
                                  self._sample_translation(rng),
                                  rng.choice(group))
            h = AffineWeylElement(self.domain,
                                  self._sample_translation(rng),
                                  rng.choice(group))
            if self.apply_sigma(g * h) != self.apply_sigma(g) * self.apply_sigma(h):
                affine_witness = "sigma(gh) != sigma(g)sigma(h) at g=%r h=%r" % (g, h)
                break
        report["affine_samples"] = {"ok": affine_witness is None,
                                    "count": samples, "witness": affine_witness}
        report["ok"] = affine_witness is None
        return report

    def _sample_translation(self, rng: Random) -> ApartmentPoint:
        from .sampling import random_apartment_point
        if self.domain.translation_generators is None:
            return random_apartment_point(self.domain, rng)
        acc = self.domain.zero()
        for g in self.domain.translation_generators:
            acc = acc + self.domain.point(g).scale(rng.randint(-4, 4))
        return acc

    # -- category structure ---------------------------------------------------

    def flags(self) -> dict:
        l_rank = linalg.rank(self.L)
        g = self.gamma.morphism_rank_flags()
        return {
            "injective": l_rank == self.domain.root_system.rank and g["injective"],
            "surjective": l_rank == self.codomain.root_system.rank and g["surjective"],
        }

    def compose(self, other: "ApartmentMorphism") -> "ApartmentMorphism":
        """self ∘ other."""
        if not same_apartment(other.codomain, self.domain):
            raise MorphismError("composition needs matching apartments")
        table = {w: self.sigma_s[other.sigma_s[w]]
                 for w in other.domain.root_system.weyl_group()}
        return ApartmentMorphism(other.domain, self.codomain,
                                 linalg.mat_mul(self.L, other.L),
                                 self.gamma.compose(other.gamma), table)

    def inverse(self) -> "ApartmentMorphism":
        flags = self.flags()
        if not (flags["injective"] and flags["surjective"]):
            raise MorphismError("morphism is not invertible")
        values = set(self.sigma_s.values())
        if len(values) != len(self.sigma_s):
            raise MorphismError("sigma_s is not bijective")
        table = {v: w for w, v in self.sigma_s.items()}
        return ApartmentMorphism(self.codomain, self.domain,
                                 linalg.inverse(self.L),
                                 OrderedGroupMorphism(
                                     linalg.inverse(self.gamma.matrix)),
                                 table)

    @classmethod
    def identity(cls, apartment: ModelApartment) -> "ApartmentMorphism":
        table = {w: w for w in apartment.root_system.weyl_group()}
        return cls(apartment, apartment,
                   linalg.identity(apartment.root_system.rank),
                   OrderedGroupMorphism.identity(apartment.lambda_dim), table)

    def __repr__(self):
        return "ApartmentMorphism(L=%r, gamma=%r)" % (self.L, self.gamma)


def verify_morphism(m: ApartmentMorphism, samples: int = 100,
                    rng: Optional[Random] = None) -> dict:
    return m.verify(samples=samples, rng=rng)


def inversion_morphism(apartment: ModelApartment) -> ApartmentMorphism:
    """x ↦ −x: L = −Id, γ = Id, σ_s the identity table, σ(t^x) = t^{−x}."""
    rank = apartment.root_system.rank
    table = {w: w for w in apartment.root_system.weyl_group()}
    neg = linalg.scalar_mul(-1, linalg.identity(rank))
    return ApartmentMorphism(apartment, apartment, neg,
                             OrderedGroupMorphism.identity(apartment.lambda_dim),
                             table)
