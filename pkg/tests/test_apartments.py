"""Model apartments: pairing, norm, affine action, half-apartments."""

from fractions import Fraction
from random import Random

import pytest

from affine_buildings.apartments import (
    AffineWeylElement, ClosedSet, HalfApartment, ModelApartment,
    closed_set, fundamental_chamber, half_apartment_contains, sector_contains,
)
from affine_buildings.ordered import LexValue
from affine_buildings.roots import build_root_system, reflection

Q = Fraction

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)


def random_point(apartment, rng):
    return apartment.point([
        LexValue([Q(rng.randint(-6, 6), rng.randint(1, 3))
                  for _ in range(apartment.lambda_dim)])
        for _ in range(apartment.root_system.rank)])


class TestPairing:
    def test_a1_self_pairing(self):
        apt = ModelApartment(A1, 1)
        lam = LexValue((Q(3, 2),))
        x = apt.point([lam])
        assert apt.pairing(x, (1,)) == lam.scale(2)
        assert apt.pairing_root(x, A1.basis[0]) == lam.scale(2)

    def test_zero_point(self):
        apt = ModelApartment(A2, 2)
        assert apt.pairing(apt.zero(), (1, 0)) == LexValue.zero(2)

    def test_a2_cross_pairing(self):
        apt = ModelApartment(A2, 1)
        x = apt.point([LexValue((1,)), LexValue((0,))])  # α_1 ⊗ 1
        assert apt.pairing(x, (0, 1)) == LexValue((-1,))

    def test_pairing_is_bilinear(self):
        apt = ModelApartment(A2, 2)
        rng = Random(2)
        for _ in range(20):
            x, y = random_point(apt, rng), random_point(apt, rng)
            beta = (Q(rng.randint(-3, 3)), Q(rng.randint(-3, 3)))
            assert apt.pairing(x + y, beta) == apt.pairing(x, beta) + apt.pairing(y, beta)


class TestNorm:
    def test_zero(self):
        apt = ModelApartment(A2, 2)
        assert apt.norm(apt.zero()).is_zero()

    def test_a1_formula(self):
        apt = ModelApartment(A1, 1)
        lam = LexValue((Q(5, 3),))
        assert apt.norm(apt.point([lam])) == lam.scale(4)

    def test_positive_definite(self):
        apt = ModelApartment(A2, 2)
        rng = Random(3)
        for _ in range(30):
            x = random_point(apt, rng)
            n = apt.norm(x)
            assert n.sign() >= 0
            assert (n.sign() == 0) == x.is_zero()

    def test_weyl_invariant(self):
        apt = ModelApartment(A2, 2)
        rng = Random(4)
        for w in A2.weyl_group():
            for _ in range(10):
                x = random_point(apt, rng)
                assert apt.norm(apt.act_spherical(w, x)) == apt.norm(x)


class TestAffineAction:
    def test_identity(self):
        apt = ModelApartment(A2, 2)
        x = apt.point([LexValue((1, 2)), LexValue((3, 4))])
        assert AffineWeylElement.identity(apt).act(x) == x

    def test_a1_translation_then_flip(self):
        apt = ModelApartment(A1, 1)
        lam, mu = LexValue((Q(2),)), LexValue((Q(7),))
        r = reflection(A1, A1.basis[0])
        w = AffineWeylElement(apt, apt.point([mu]), r)
        assert w.act(apt.point([lam])) == apt.point([mu - lam])

    def test_group_law_against_action(self):
        apt = ModelApartment(A2, 2)
        rng = Random(5)
        group = A2.weyl_group()
        for _ in range(40):
            w1 = AffineWeylElement(apt, random_point(apt, rng), rng.choice(group))
            w2 = AffineWeylElement(apt, random_point(apt, rng), rng.choice(group))
            x = random_point(apt, rng)
            assert w1.act(w2.act(x)) == (w1 * w2).act(x)

    def test_inverse(self):
        apt = ModelApartment(A2, 1)
        rng = Random(6)
        for _ in range(20):
            w = AffineWeylElement(apt, random_point(apt, rng),
                                  rng.choice(A2.weyl_group()))
            x = random_point(apt, rng)
            assert w.inverse().act(w.act(x)) == x
            assert (w * w.inverse()) == AffineWeylElement.identity(apt)

    def test_translations_recoverable(self):
        apt = ModelApartment(A2, 2)
        rng = Random(7)
        for _ in range(20):
            t = random_point(apt, rng)
            assert AffineWeylElement.translation_by(t).act(apt.zero()) == t


class TestTranslationSubgroup:
    def test_full_contains_everything(self):
        apt = ModelApartment(A1, 2)
        assert apt.translation_contains(
            apt.point([LexValue((Q(1, 7), Q(22, 3)))]))

    def test_lattice_membership(self):
        # T = ℤ·(α⊗1) inside Λ = ℚ, A_1
        gen = (LexValue((1,)),)
        apt = ModelApartment(A1, 1, [gen])
        assert apt.translation_contains(apt.point([LexValue((3,))]))
        assert apt.translation_contains(apt.point([LexValue((-2,))]))
        assert not apt.translation_contains(apt.point([LexValue((Q(1, 2),))]))

    def test_affine_element_rejects_outside_translation(self):
        gen = (LexValue((1,)),)
        apt = ModelApartment(A1, 1, [gen])
        with pytest.raises(ValueError):
            AffineWeylElement(apt, apt.point([LexValue((Q(1, 2),))]),
                              A1.weyl_group()[0])

    def test_dependent_generators_rejected(self):
        g = (LexValue((1,)),)
        g2 = (LexValue((2,)),)
        with pytest.raises(ValueError):
            ModelApartment(A1, 1, [g, g2])

    def test_normalization_enforced(self):
        # A_2 with T spanned by α_1⊗1 only: r_{α_2}(α_1) = α_1 + α_2 ∉ T
        gen = (LexValue((1,)), LexValue((0,)))
        with pytest.raises(ValueError, match="normalized"):
            ModelApartment(A2, 1, [gen])

    def test_coroot_lattice_is_normalized(self):
        # both simple coroots ⊗ 1: the full coroot lattice of A_2
        g1 = (LexValue((1,)), LexValue((0,)))
        g2 = (LexValue((0,)), LexValue((1,)))
        apt = ModelApartment(A2, 1, [g1, g2])
        assert apt.translation_contains(apt.point([LexValue((5,)), LexValue((-3,))]))


class TestHalfApartments:
    def test_boundary_in_both_halves(self):
        apt = ModelApartment(A2, 2)
        a = A2.basis[0]
        zero = LexValue.zero(2)
        plus = HalfApartment(apt, a, zero, 1)
        minus = HalfApartment(apt, a, zero, -1)
        assert half_apartment_contains(plus, apt.zero())
        assert half_apartment_contains(minus, apt.zero())

    def test_fundamental_chamber_contains_dominant(self):
        apt = ModelApartment(A2, 1)
        x = apt.point([LexValue((1,)), LexValue((1,))])
        assert apt.pairing_root(x, A2.basis[0]).sign() > 0
        assert apt.pairing_root(x, A2.basis[1]).sign() > 0
        assert fundamental_chamber(apt).contains(x)
        assert not fundamental_chamber(apt).contains(-x)

    def test_reflection_swaps_half_apartments(self):
        apt = ModelApartment(A2, 1)
        rng = Random(8)
        a = A2.basis[0]
        r = reflection(A2, a)
        zero = LexValue.zero(1)
        plus = HalfApartment(apt, a, zero, 1)
        minus = plus.opposite()
        for _ in range(30):
            x = random_point(apt, rng)
            assert plus.contains(x) == minus.contains(apt.act_spherical(r, x))

    def test_wall_as_two_sided_intersection(self):
        apt = ModelApartment(A1, 1)
        a = A1.basis[0]
        k = LexValue((Q(3),))
        wall = closed_set([HalfApartment(apt, a, k, 1),
                           HalfApartment(apt, a, k, -1)])
        on_wall = apt.point([LexValue((Q(3, 2),))])  # ⟨x,α⟩ = 3
        assert wall.contains(on_wall)
        assert not wall.contains(apt.zero())

    def test_empty_closed_set_is_everything(self):
        apt = ModelApartment(A2, 2)
        assert ClosedSet([]).contains(apt.point([LexValue((9, -9)),
                                                 LexValue((0, 1))]))

    def test_non_root_wall_rejected(self):
        apt = ModelApartment(A2, 1)
        with pytest.raises(ValueError):
            HalfApartment(apt, (1, 1, 1), LexValue.zero(1), 1)


class TestSectors:
    def test_translated_chamber(self):
        apt = ModelApartment(A2, 1)
        base = apt.point([LexValue((10,)), LexValue((10,))])
        for w in A2.weyl_group():
            inside = base + apt.act_spherical(
                w, apt.point([LexValue((2,)), LexValue((3,))]))
            assert sector_contains(apt, w, base, inside)
        # origin sits far on the negative side of the base chamber
        from affine_buildings.roots import identity_weyl
        assert not sector_contains(apt, identity_weyl(A2), base, apt.zero())
