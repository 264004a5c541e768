import random
from fractions import Fraction as Q

import pytest

from affine_buildings import lattices as lat
from affine_buildings import linalg
from affine_buildings.fields import DEGREE, LEX_MULTIDEG, get_field
from affine_buildings.ordered import LexValue


@pytest.fixture(scope="module")
def qt():
    return get_field(DEGREE)


@pytest.fixture(scope="module")
def qxy():
    return get_field(LEX_MULTIDEG)


def unit_upper(field, x):
    return lat.field_matrix(field, [[1, x], [0, 1]])


class TestCanonicalForm:
    def test_identity_is_canonical(self, qt):
        c = lat.Lattice.standard(qt, 3).to_class()
        assert c.matrix == lat.field_matrix(qt, linalg.identity(3))

    def test_monomial_columns_normalize(self, qt):
        t = qt.parse("t")
        c = lat.class_of(qt, [[1 / t, 0], [0, t]])
        assert c.matrix == lat.field_matrix(qt, [["1", "0"], ["0", "t^2"]])

    def test_homothety_collapses(self, qt):
        t = qt.parse("t")
        a = lat.class_of(qt, [[1, 0], [0, t * t]])
        x = qt.parse("(3*t+1)/t^2")
        b = lat.class_of(qt, [[x, 0], [0, x * t * t]])
        assert a == b

    def test_idempotent(self, qt):
        c = lat.class_of(qt, [["1/t", "t+1"], ["2", "t^2"]])
        again = lat.class_of(qt, c.matrix)
        assert again.matrix == c.matrix

    def test_singular_rejected(self, qt):
        with pytest.raises(lat.LatticeError, match="singular"):
            lat.Lattice(qt, [["1", "2"], ["2", "4"]])

    def test_upper_triangular_output(self, qt):
        c = lat.class_of(qt, [["t", "1", "0"], ["1/t", "t", "1"],
                              ["1", "0", "t^3"]])
        for i in range(3):
            for j in range(i):
                assert c.matrix[i][j] == 0

    def test_first_pivot_valuation_zero(self, qt):
        c = lat.class_of(qt, [["t^3", "0"], ["0", "t^5"]])
        assert qt.valuation(c.matrix[0][0]).is_zero()

    def test_column_equivalence_oracle(self, qt):
        rng = random.Random(2)
        base = lat.Lattice(qt, [["t", "1"], ["0", "1/t"]])
        c = base.to_class()
        for _ in range(50):
            u = unit_upper(qt, qt.parse("1/(t+%d)" % rng.randint(1, 9)))
            scale = qt.parse("t")**rng.randint(-2, 2) * (rng.randint(1, 5))
            twisted = [[scale * x for x in row]
                       for row in linalg.mat_mul(base.matrix, u)]
            assert lat.class_of(qt, twisted) == c

    def test_lex_field_canonical(self, qxy):
        x = qxy.parse("X")
        y = qxy.parse("Y")
        c = lat.class_of(qxy, [[x, 0], [0, y]])
        # scaled by 1/X: first pivot valuation 0, second carries v(Y/X)
        assert c.divisors == (LexValue.zero(2), qxy.valuation(y / x))


class TestClassEquality:
    def test_same_divisors_different_class(self, qt):
        # same relative position to the base point, different lattices
        a = lat.class_of(qt, [["1", "0"], ["0", "t^2"]])
        b = lat.class_of(qt, [["t^2", "0"], ["0", "1"]])
        assert a.divisors == b.divisors
        assert a != b

    def test_equal_classes_hash_equal(self, qt):
        t = qt.parse("t")
        a = lat.class_of(qt, [[1, 0], [0, t]])
        b = lat.class_of(qt, [[t, 0], [0, t * t]])
        assert a == b and hash(a) == hash(b)

    def test_cross_field_unequal(self, qt, qxy):
        a = lat.Lattice.standard(qt, 2).to_class()
        b = lat.Lattice.standard(qxy, 2).to_class()
        assert a != b


class TestAction:
    def test_identity_fixes(self, qt):
        c = lat.class_of(qt, [["1", "t"], ["0", "1"]])
        assert lat.act(qt, linalg.identity(2), c) == c

    def test_unipotent_with_deep_entry_moves_base(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        moved = lat.act(qt, [["1", "t"], ["0", "1"]], base)
        assert moved != base

    def test_unipotent_in_ring_fixes_base(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        assert lat.act(qt, [["1", "1/t"], ["0", "1"]], base) == base

    def test_determinant_one_enforced(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        with pytest.raises(lat.LatticeError, match="determinant"):
            lat.act(qt, [["t", "0"], ["0", "1"]], base)
        moved = lat.act(qt, [["t", "0"], ["0", "1"]], base, allow_gl=True)
        assert moved != base

    def test_singular_rejected(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        with pytest.raises(lat.LatticeError, match="singular"):
            lat.act(qt, [["1", "1"], ["1", "1"]], base)

    def test_action_is_functorial(self, qt):
        rng = random.Random(4)
        base = lat.Lattice.standard(qt, 2).to_class()
        for _ in range(10):
            g = lat.random_sl(qt, 2, rng)
            h = lat.random_sl(qt, 2, rng)
            lhs = lat.act(qt, g, lat.act(qt, h, base))
            rhs = lat.act(qt, linalg.mat_mul(g, h), base)
            assert lhs == rhs


class TestStabilizer:
    def test_identity_both_routes(self, qt):
        g = lat.field_matrix(qt, linalg.identity(2))
        assert lat.stab_point_membership(qt, g)
        assert lat.entries_in_valuation_ring(qt, g)

    def test_diagonal_torus_escape(self, qt):
        g = [["t", "0"], ["0", "1/t"]]
        assert not lat.stab_point_membership(qt, g)
        assert not lat.entries_in_valuation_ring(qt, g)

    def test_dual_route_agreement(self, qt, qxy):
        for field, n, seed in ((qt, 2, 5), (qt, 3, 6), (qxy, 2, 7)):
            rep = lat.stab_theorem_check(field, n, samples=40,
                                         rng=random.Random(seed))
            assert rep["ok"], rep


class TestChart:
    def test_zero_gives_standard_class(self, qt):
        chart = lat.LatticeChart.standard(qt, 3)
        assert chart.eval(chart.apartment().zero()) == \
            lat.Lattice.standard(qt, 3).to_class()

    def test_chart_formula_example(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        lam = chart.apartment().point([LexValue([Q(1)])])
        expected = lat.class_of(qt, [["1", "0"], ["0", "t^2"]])
        assert chart.eval(lam) == expected

    def test_unit_twists_do_not_move_the_class(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        lam = chart.apartment().point([LexValue([Q(2)])])
        base = chart.eval(lam)
        for u in ("(t+1)/t", "(2*t^2+1)/t^2", "5", "(t+3)/(2*t+1)"):
            assert chart.eval(lam, unit_twists=[u, "1"]) == base

    def test_non_unit_twist_rejected(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        lam = chart.apartment().zero()
        with pytest.raises(lat.LatticeError, match="unit"):
            chart.eval(lam, unit_twists=["t", "1"])

    def test_unrealizable_point_rejected(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        lam = chart.apartment().point([LexValue([Q(1, 2)])])
        with pytest.raises(ValueError):
            chart.eval(lam)

    def test_injective_on_samples(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        apt = chart.apartment()
        rng = random.Random(8)
        seen = {}
        for _ in range(15):
            k = rng.randint(-6, 6)
            lam = apt.point([LexValue([Q(k)])])
            c = chart.eval(lam)
            for other_k, other_c in seen.items():
                if other_k != k:
                    assert other_c != c
            seen[k] = c

    def test_lex_rank_two_chart(self, qxy):
        chart = lat.LatticeChart.standard(qxy, 2)
        lam = chart.apartment().point([LexValue([Q(1), Q(-1)])])
        c = chart.eval(lam)
        assert c == lat.class_of(qxy, [["1", "0"], ["0", "X^2/Y^2"]])


class TestApartmentStabilizer:
    def test_valuation_zero_diagonal_fixes(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        u = qt.parse("(t+1)/t")
        g = [[u, 0], [0, 1 / u]]
        assert lat.stab_apartment_membership(qt, g, chart)

    def test_translation_diagonal_escapes(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        assert not lat.stab_apartment_membership(
            qt, [["t", "0"], ["0", "1/t"]], chart)

    def test_permutation_escapes(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        assert not lat.stab_apartment_membership(
            qt, [["0", "1"], ["-1", "0"]], chart)

    def test_member_fixes_chart_pointwise(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        u = qt.parse("(t+2)/t")
        g = [[u, 0], [0, 1 / u]]
        apt = chart.apartment()
        for k in range(-3, 4):
            lam = apt.point([LexValue([Q(k)])])
            assert lat.act(qt, g, chart.eval(lam)) == chart.eval(lam)


class TestDiagonalDictionary:
    def test_identity_diag_is_origin(self, qt):
        pt = lat.diag_to_point(qt, [1, 1, 1])
        assert pt.is_zero()

    def test_diag_t_inverse_t_lands_at_one(self, qt):
        t = qt.parse("t")
        pt = lat.diag_to_point(qt, [1 / t, t])
        assert pt.coords[0] == LexValue([Q(1)])
        chart = lat.LatticeChart.standard(qt, 2)
        base = lat.Lattice.standard(qt, 2).to_class()
        assert chart.eval(pt) == lat.act(qt, [[1 / t, 0], [0, t]], base)

    def test_chart_of_point_matches_action(self, qt, qxy):
        rng = random.Random(10)
        for field in (qt, qxy):
            chart = lat.LatticeChart.standard(field, 3)
            base = lat.Lattice.standard(field, 3).to_class()
            for _ in range(15):
                a = field.random_element(rng)
                b = field.random_element(rng)
                diag = [a, b, 1 / (a * b)]
                g = [[diag[0], 0, 0], [0, diag[1], 0], [0, 0, diag[2]]]
                pt = lat.diag_to_point(field, diag)
                assert chart.eval(pt) == lat.act(field, g, base)

    def test_root_pairing_characterization(self, qt):
        rng = random.Random(11)
        for _ in range(10):
            a = qt.random_element(rng)
            b = qt.random_element(rng)
            assert lat.root_pairing_check(qt, [a, b, 1 / (a * b)])

    def test_point_to_diag_roundtrip(self, qt):
        apt = lat.standard_apartment(qt, 3)
        pt = apt.point([LexValue([Q(2)]), LexValue([Q(-1)])])
        diag = lat.point_to_diag(qt, pt)
        prod = diag[0]
        for x in diag[1:]:
            prod = prod * x
        assert prod == 1  # exactly in SL_n, not just valuation zero
        assert lat.diag_to_point(qt, diag) == pt


class TestCommonApartment:
    def test_equal_classes(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        chart, x, y = lat.common_apartment(base, base)
        assert x.is_zero() and y.is_zero()
        assert chart.eval(x) == base

    def test_monomial_pair(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        other = lat.class_of(qt, [["1", "0"], ["0", "t^2"]])
        chart, x, y = lat.common_apartment(base, other)
        assert chart.eval(x) == base
        assert chart.eval(y) == other

    def test_random_pairs(self, qt):
        rng = random.Random(12)
        base = lat.Lattice.standard(qt, 3).to_class()
        for _ in range(8):
            g = lat.random_sl(qt, 3, rng)
            h = lat.random_sl(qt, 3, rng)
            c1 = lat.act(qt, g, base)
            c2 = lat.act(qt, h, base)
            chart, x, y = lat.common_apartment(c1, c2)
            assert chart.eval(x) == c1
            assert chart.eval(y) == c2

    def test_divisibility_obstruction(self, qt):
        base = lat.Lattice.standard(qt, 2).to_class()
        odd = lat.class_of(qt, [["1", "0"], ["0", "t"]])
        with pytest.raises(lat.LatticeError, match="divisible"):
            lat.common_apartment(base, odd)

    def test_lex_field_pair(self, qxy):
        base = lat.Lattice.standard(qxy, 2).to_class()
        other = lat.class_of(qxy, [["1", "0"], ["0", "X^2*Y^4"]])
        chart, x, y = lat.common_apartment(base, other)
        assert chart.eval(x) == base
        assert chart.eval(y) == other


class TestMonomialAffineWeyl:
    def test_unit_diagonal_is_identity(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        u = qt.parse("(t+1)/t")
        w = lat.monomial_to_affine_weyl(qt, [[u, 0], [0, 1 / u]], chart,
                                        samples=5)
        assert w.translation.is_zero() and w.spherical.is_identity()

    def test_transposition(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        w = lat.monomial_to_affine_weyl(qt, [["0", "1"], ["-1", "0"]], chart,
                                        samples=5)
        assert w.translation.is_zero()
        assert not w.spherical.is_identity()

    def test_pure_translation(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        w = lat.monomial_to_affine_weyl(qt, [["1/t", "0"], ["0", "t"]], chart,
                                        samples=5)
        assert w.spherical.is_identity()
        assert w.translation.coords[0] == LexValue([Q(1)])

    def test_non_monomial_rejected(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        with pytest.raises(lat.LatticeError, match="monomial"):
            lat.monomial_to_affine_weyl(qt, [["1", "1"], ["0", "1"]], chart)

    def test_coset_product_law(self, qt):
        chart = lat.LatticeChart.standard(qt, 2)
        rng = random.Random(13)
        g = [["0", "t"], ["-1/t", "0"]]
        h = [["1/t", "0"], ["0", "t"]]
        wg = lat.monomial_to_affine_weyl(qt, g, chart, samples=4, rng=rng)
        wh = lat.monomial_to_affine_weyl(qt, h, chart, samples=4, rng=rng)
        wgh = lat.monomial_to_affine_weyl(qt, linalg.mat_mul(
            lat.field_matrix(qt, g), lat.field_matrix(qt, h)), chart,
            samples=4, rng=rng)
        assert wg * wh == wgh

    def test_preimage_roundtrip(self, qt):
        chart = lat.LatticeChart(qt, [["1", "1"], ["0", "1"]])
        mono = lat.field_matrix(qt, [["0", "1/t"], ["-t", "0"]])
        e = lat.field_matrix(qt, chart.basis)
        g = linalg.mat_mul(e, linalg.mat_mul(mono, linalg.inverse(e)))
        w = lat.monomial_to_affine_weyl(qt, g, chart, samples=5)
        g2 = lat.affine_weyl_preimage(qt, w, chart)
        assert lat.monomial_to_affine_weyl(qt, g2, chart, samples=5) == w

    def test_twisted_chart(self, qt):
        chart = lat.LatticeChart(qt, [["1", "t"], ["0", "1"]])
        g = lat.affine_weyl_preimage(
            qt, lat.monomial_to_affine_weyl(
                qt, linalg.mat_mul(
                    lat.field_matrix(qt, chart.basis),
                    linalg.mat_mul(
                        lat.field_matrix(qt, [["1/t", "0"], ["0", "t"]]),
                        linalg.inverse(lat.field_matrix(qt, chart.basis)))),
                chart, samples=4), chart)
        w = lat.monomial_to_affine_weyl(qt, g, chart, samples=4)
        assert w.spherical.is_identity()
