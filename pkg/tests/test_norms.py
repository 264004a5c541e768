import random
from fractions import Fraction as Q

import pytest

from affine_buildings import linalg, norms
from affine_buildings.fields import DEGREE, LEX_MULTIDEG, get_field
from affine_buildings.ordered import INFINITY


@pytest.fixture(scope="module")
def qt():
    return get_field(DEGREE)


def eval_gap_oracle(c1, c2, samples=50, seed=0):
    return norms.evaluation_agreement(c1, c2, samples,
                                      random.Random(seed))["constant_gap"]


class TestEvaluation:
    def test_generator_beats_constant(self, qt):
        std = norms.standard_norm(qt, 2)
        assert std.eval_exponent([qt.parse("t"), qt.one]) == Q(-1)

    def test_zero_vector_is_infinite(self, qt):
        std = norms.standard_norm(qt, 3)
        assert std.eval_exponent([0, 0, 0]) is INFINITY

    def test_single_weighted_coordinate(self, qt):
        n = norms.AdaptedNorm(qt, linalg.identity(2), [0, 3])
        assert n.eval_exponent([0, 1]) == Q(3)

    def test_twisted_basis_coordinates(self, qt):
        n = norms.AdaptedNorm(qt, [["1", "1"], ["0", "1"]], [0, 0])
        # (t, t) = t * (second basis vector), exponent v(t) = -1
        assert n.eval_exponent([qt.parse("t"), qt.parse("t")]) == Q(-1)

    def test_ultrametric_and_scaling_axioms(self, qt):
        rng = random.Random(1)
        n = norms.AdaptedNorm(qt, [["1", "t"], ["1/t", "2"]],
                              [Q(1, 2), Q(-1)])
        for _ in range(200):
            va = [qt.random_element(rng) for _ in range(2)]
            vb = [qt.random_element(rng) for _ in range(2)]
            ea, eb = n.eval_exponent(va), n.eval_exponent(vb)
            es = n.eval_exponent([a + b for a, b in zip(va, vb)])
            assert es >= min(ea, eb)
            c = qt.random_element(rng)
            vc = qt.valuation(c)
            scaled = n.eval_exponent([c * a for a in va])
            if vc is INFINITY or ea is INFINITY:
                assert scaled is INFINITY
            else:
                assert scaled == vc.as_rational() + ea

    def test_singular_basis_rejected(self, qt):
        with pytest.raises(norms.NormError, match="singular"):
            norms.AdaptedNorm(qt, [["1", "t"], ["1/t", "1"]], [0, 0])

    def test_rank_two_field_rejected(self):
        with pytest.raises(norms.NormError, match="rank-1"):
            norms.standard_norm(get_field(LEX_MULTIDEG), 2)


class TestChart:
    def test_origin_gives_base_class(self, qt):
        base = norms.standard_norm(qt, 2)
        c = norms.chart_eval(qt, base.basis, base.weights, [0, 0])
        assert c == base.to_class()

    def test_weights_shift_and_normalize(self, qt):
        c = norms.chart_eval(qt, linalg.identity(2), [0, 0], [1, -1])
        assert c.norm.weights == (Q(0), Q(-2))

    def test_nonzero_sum_rejected(self, qt):
        with pytest.raises(norms.NormError, match="sum"):
            norms.chart_eval(qt, linalg.identity(2), [0, 0], [1, 1])

    def test_permutation_equivariance(self, qt):
        rng = random.Random(2)
        x = [Q(1, 2), Q(1, 3), Q(-5, 6)]
        perm = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]  # e1->e2->e3->e1
        lhs = norms.act(qt, perm, norms.eta_x(qt, x)).to_class()
        rhs = norms.chart_eval(qt, linalg.identity(3), [0, 0, 0],
                               [x[1], x[2], x[0]])
        assert lhs == rhs
        gaps = set()
        for _ in range(20):
            vec = [qt.random_element(rng) for _ in range(3)]
            if all(v == qt.zero for v in vec):
                vec[0] = qt.one
            gaps.add(lhs.norm.eval_exponent(vec)
                     - rhs.norm.eval_exponent(vec))
        assert len(gaps) == 1  # proportional: one constant exponent gap

    def test_fractional_point_leaves_integral_locus(self, qt):
        half = norms.chart_eval(qt, linalg.identity(2), [0, 0],
                                [Q(1, 2), Q(-1, 2)])
        base = norms.standard_norm(qt, 2).to_class()
        assert half != base
        assert half.position() == (Q(0), Q(1))


class TestActionAndEquality:
    def test_identity_fixes_norm(self, qt):
        n = norms.eta_x(qt, [Q(1), Q(-1)])
        assert norms.act(qt, linalg.identity(2), n).to_class() == n.to_class()

    def test_scalar_fixes_class(self, qt):
        n = norms.standard_norm(qt, 2)
        moved = norms.act(qt, [["t", "0"], ["0", "t"]], n)
        assert moved.to_class() == n.to_class()
        assert eval_gap_oracle(moved.to_class(), n.to_class())

    def test_unipotent_presentation_same_class(self, qt):
        a = norms.standard_norm(qt, 2).to_class()
        b = norms.AdaptedNorm(qt, [["1", "1"], ["0", "1"]], [0, 0]).to_class()
        assert a == b and hash(a) == hash(b)
        assert eval_gap_oracle(a, b)

    def test_action_is_functorial(self, qt):
        from affine_buildings.lattices import random_sl
        rng = random.Random(3)
        n = norms.eta_x(qt, [Q(1, 2), Q(0), Q(-1, 2)])
        for _ in range(5):
            g = random_sl(qt, 3, rng)
            h = random_sl(qt, 3, rng)
            lhs = norms.act(qt, g, norms.act(qt, h, n)).to_class()
            rhs = norms.act(qt, linalg.mat_mul(g, h), n).to_class()
            assert lhs == rhs

    def test_equality_symmetric_on_random_pairs(self, qt):
        from affine_buildings.lattices import random_sl
        rng = random.Random(4)
        base = norms.eta_x(qt, [Q(1, 3), Q(-1, 3)])
        for k in range(10):
            g = random_sl(qt, 2, rng)
            moved = norms.act(qt, g, base).to_class()
            expect = norms.stab_inequality_membership(
                qt, g, [Q(1, 3), Q(-1, 3)])
            assert (moved == base.to_class()) == expect
            assert (base.to_class() == moved) == expect

    def test_oracle_consistency_on_random_pairs(self, qt):
        # the sampling oracle may never contradict the reduction
        rng = random.Random(5)
        for k in range(30):
            wa = [Q(0), Q(rng.randint(-2, 2), rng.randint(1, 3))]
            wb = [Q(0), Q(rng.randint(-2, 2), rng.randint(1, 3))]
            a = norms.AdaptedNorm(qt, [["1", "0"], ["1/t", "1"]], wa)
            b = norms.AdaptedNorm(qt, [["1", "1/t"], ["0", "1"]], wb)
            decided = a.to_class() == b.to_class()
            agreed = eval_gap_oracle(a.to_class(), b.to_class(), seed=k)
            if decided:
                assert agreed
            if not agreed:
                assert not decided

    def test_distinct_positions_unequal(self, qt):
        a = norms.eta_x(qt, [Q(0), Q(1, 2)]).to_class()
        b = norms.eta_x(qt, [Q(0), Q(1, 3)]).to_class()
        assert a != b and a.position() != b.position()


class TestSimultaneousAdaptation:
    def test_common_basis_adapted_to_both(self, qt):
        na = norms.AdaptedNorm(qt, [["1", "t"], ["1/t", "2"]], [Q(1, 2), 0])
        nb = norms.AdaptedNorm(qt, [["1", "0"], ["t", "1"]], [0, Q(3, 2)])
        basis, u, w = norms.simultaneous_adaptation(na, nb)
        rng = random.Random(6)
        for _ in range(60):
            cs = [qt.random_element(rng) for _ in range(2)]
            vec = [cs[0] * basis[i][0] + cs[1] * basis[i][1]
                   for i in range(2)]
            for norm, weights in ((na, u), (nb, w)):
                expect = INFINITY
                for c, wt in zip(cs, weights):
                    v = qt.valuation(c)
                    if v is INFINITY:
                        continue
                    s = v.as_rational() + wt
                    if expect is INFINITY or s < expect:
                        expect = s
                assert norm.eval_exponent(vec) == expect

    def test_score_gaps_non_decreasing(self, qt):
        na = norms.eta_x(qt, [Q(2), Q(0), Q(-2)])
        nb = norms.AdaptedNorm(qt, [["1", "1", "0"], ["0", "1", "t"],
                                    ["0", "0", "1"]], [0, Q(1, 2), 0])
        _, u, w = norms.simultaneous_adaptation(na, nb)
        gaps = [ui - wi for ui, wi in zip(u, w)]
        assert gaps == sorted(gaps)

    def test_position_invariant_under_homothety(self, qt):
        n = norms.AdaptedNorm(qt, [["1", "0"], ["t", "1"]], [0, Q(1, 2)])
        a = n.to_class()
        b = n.shift(Q(7, 3)).to_class()
        assert a == b and a.position() == b.position()


class TestStabilizer:
    def test_integral_matrix_accepted(self, qt):
        assert norms.stab_inequality_membership(
            qt, [["1", "1/t"], ["0", "1"]], [0, 0])

    def test_scalar_homothety_accepted(self, qt):
        assert norms.stab_inequality_membership(
            qt, [["t", "0"], ["0", "t"]], [0, 0])

    def test_torus_translation_rejected(self, qt):
        assert not norms.stab_inequality_membership(
            qt, [["t", "0"], ["0", "1/t"]], [0, 0])

    def test_point_dependent_verdict(self, qt):
        # x_1 - x_2 = 2 absorbs the depth-2 off-diagonal entry
        g = [["1", "t^2"], ["0", "1"]]
        assert not norms.stab_inequality_membership(qt, g, [0, 0])
        assert norms.stab_inequality_membership(qt, g, [Q(1), Q(-1)])
        moved = norms.act(qt, g, norms.eta_x(qt, [Q(1), Q(-1)]))
        assert moved.to_class() == norms.eta_x(qt, [Q(1), Q(-1)]).to_class()

    def test_determinant_law_on_stabilizer(self, qt):
        rep = norms.determinant_identity_report(
            qt, [["1", "1/t"], ["0", "1"]], [0, 0])
        assert rep["equal"] and rep["inequality_ok"]

    def test_determinant_law_strict_under_cancellation(self, qt):
        rep = norms.determinant_identity_report(
            qt, [["1", "1"], ["1", "1+1/t"]], [0, 0])
        assert rep["lhs"] == Q(1) and rep["rhs"] == Q(0)
        assert not rep["equal"] and rep["inequality_ok"]

    def test_inequality_holds_on_random_elements(self, qt):
        from affine_buildings.lattices import random_sl
        rng = random.Random(7)
        for _ in range(40):
            g = random_sl(qt, 3, rng)
            x = [Q(1, 2), Q(-1, 4), Q(-1, 4)]
            assert norms.determinant_identity_report(
                qt, g, x)["inequality_ok"]

    def test_oracle_agreement(self, qt):
        for n, seed in ((2, 8), (3, 9)):
            rep = norms.stab_oracle_check(qt, n, samples=60,
                                          rng=random.Random(seed))
            assert rep["ok"], rep
            assert 0 < rep["stabilizing"] < rep["samples"]


class TestSerialization:
    def test_roundtrip(self, qt):
        n = norms.AdaptedNorm(qt, [["1", "t"], ["0", "1/t"]],
                              [Q(1, 2), Q(-3)])
        back = norms.norm_from_json(qt, norms.norm_to_json(n))
        assert back.basis == n.basis and back.weights == n.weights

    def test_bare_grid_accepted(self, qt):
        obj = {"basis": [["1", "0"], ["0", "t"]], "weights": ["0", "1/2"]}
        n = norms.norm_from_json(qt, obj)
        assert n.weights == (Q(0), Q(1, 2))
