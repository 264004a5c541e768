"""End-to-end acceptance battery.

One test per criterion; each prints a single PASS/FAIL line (run with
`pytest tests/test_acceptance.py -v -s` to see them inline).  Sample
counts and time bounds here are the contract; the unit suites run the
same machinery at smaller sizes.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction as Q
from pathlib import Path

from affine_buildings import buildings, embeddings, norms, reports
from affine_buildings import lattices as lat
from affine_buildings.fields import DEGREE, FIRST_VAR, LEX_MULTIDEG, get_field
from affine_buildings.morphisms import inversion_morphism, verify_morphism
from affine_buildings.ordered import OrderedGroupMorphism
from affine_buildings.roots import build_root_system

ROOT = Path(__file__).resolve().parent.parent


def _rng(label):
    return random.Random("acceptance:%s" % label)


def _report(num, ok, text):
    print("%s criterion %02d: %s" % ("PASS" if ok else "FAIL", num, text))
    assert ok, "criterion %02d failed: %s" % (num, text)


def test_criterion_01_weyl_enumeration_by_closure():
    expected = {("A", 2): 6, ("B", 2): 8, ("G2", None): 12, ("A", 3): 24}
    t0 = time.perf_counter()
    ok = True
    for (tag, rank), order in expected.items():
        group = set(build_root_system(tag, rank).weyl_group())
        ok = ok and len(group) == order
        ok = ok and all(u * v in group for u in group for v in group)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    _report(1, ok, "Weyl orders 6/8/12/24 via generator closure "
            "in %.2fs" % elapsed)


def test_criterion_02_sigma_on_long_roots_in_g2():
    pair = embeddings.a2_long_in_g2()
    t0 = time.perf_counter()
    sigma = embeddings.construct_sigma(pair)
    sub = list(sigma)
    ok = len(sub) == 6
    for u in sub:
        for v in sub:
            ok = ok and sigma[u * v] == sigma[u] * sigma[v]
        for x in pair.sub.roots:
            ok = ok and sigma[u].act(x) == u.act(x)
    image = {sigma[u] for u in sub}
    ambient_order = len(pair.ambient.weyl_group())
    ok = ok and len(image) == 6 and ambient_order == 12
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    _report(2, ok, "sigma injective homomorphism, restriction fixed, "
            "image 6 < 12, %.2fs" % elapsed)


def test_criterion_03_triangle_condition_decision():
    ok = embeddings.check_condition_triangle(embeddings.a1_perp_in_a2())["ok"]

    tilted = embeddings.a1_tilted_in_a2()
    rep = embeddings.check_condition_triangle(tilted)
    ok = ok and not rep["ok"] and rep["witness"] is not None
    if rep["witness"] is not None:
        w = rep["witness"]["w"]
        wp = rep["witness"]["w_prime"]
        x = rep["witness"]["x"]
        amb = tilted.ambient
        moved = w.act(x)
        back = wp.inverse().act(moved)
        # x in the shared chamber, w(x) lands in w'(C_0'), images differ
        ok = ok and all(amb.inner(d, x) >= 0 for d in amb.basis)
        ok = ok and all(tilted.sub.inner(b, x) >= 0 for b in tilted.sub.basis)
        ok = ok and all(amb.inner(d, back) >= 0 for d in amb.basis)
        ok = ok and moved != wp.act(x)

    passing = {
        "a1-perp-in-a2": embeddings.a1_perp_in_a2,
        "a1-diag-in-a1xa1": embeddings.a1_diag_in_a1xa1,
        "a2-long-in-g2": embeddings.a2_long_in_g2,
        "b2-in-a3": embeddings.b2_in_a3,
        "a2-in-a3-block": lambda: embeddings.block_in_a(3, 4),
    }
    for name, make in sorted(passing.items()):
        pair = make()
        ok = ok and embeddings.check_condition_triangle(pair)["ok"]
        oracle = embeddings.sample_triangle_oracle(
            pair, samples=1000, rng=_rng("triangle:%s" % name))
        ok = ok and oracle["ok"] and oracle["violations"] == 0
    _report(3, ok, "triangle condition: perpendicular PASS, tilted FAIL "
            "with confirmed witness, 5x1000 samples clean")


def test_criterion_04_lattice_stabilizer_dual_path():
    ok = True
    for kind in (DEGREE, LEX_MULTIDEG):
        field = get_field(kind)
        for n in (2, 3):
            rep = lat.stab_theorem_check(
                field, n, samples=200, rng=_rng("stab:%s:%d" % (kind, n)))
            ok = ok and rep["ok"] and rep["disagreements"] == 0
    _report(4, ok, "stabilizer predicate vs entries-in-O: 0 disagreements, "
            "200 samples, n in {2,3}, two valued fields")


def test_criterion_05_chart_well_definedness():
    rep = reports.chart_welldef_check(get_field(DEGREE), 3, lambdas=50,
                                      twists=10, rng=_rng("welldef"))
    ok = rep["ok"] and rep["failures"] == 0
    _report(5, ok, "chart invariant under 10 unit twists x 50 lambdas, "
            "exact class equality")


def test_criterion_06_diagonal_roundtrip():
    rep = reports.diag_roundtrip_check(get_field(DEGREE), 3, samples=100,
                                       rng=_rng("roundtrip"))
    ok = rep["ok"] and rep["failures"] == 0
    _report(6, ok, "n=3 roundtrip: alpha_ij(x) = v(a_i/a_j) and "
            "chart(x) = a.[L_0] on 100 diagonals")


def test_criterion_07_inversion_isomorphism():
    qt = get_field(DEGREE)
    ok = True
    for n in (2, 3, 4):
        apt = lat.standard_apartment(qt, n)
        rep = verify_morphism(inversion_morphism(apt), samples=100,
                              rng=_rng("inv:%d" % n))
        ok = ok and rep["ok"]
    for n in (2, 3):
        rep = buildings.inversion_selfcheck(n, samples=50,
                                            rng=_rng("invself:%d" % n))
        ok = ok and rep["ok"] and rep["mismatches"] == 0
    _report(7, ok, "inversion verified on A1/A2/A3 apartments, "
            "selfcheck 0 mismatches on 50 samples, n in {2,3}")


def test_criterion_08_field_functoriality():
    lex = get_field(LEX_MULTIDEG)
    fv = get_field(FIRST_VAR)
    gamma = OrderedGroupMorphism.projection(2, 0)
    rng = _rng("functorial")
    ok = True
    done = 0
    while done < 100:
        f = lex.random_element(rng)
        if f == lex.zero:
            continue
        done += 1
        ok = ok and gamma.apply(lex.valuation(f)) == fv.valuation(f)

    cert2 = None
    for n in (2, 3):
        cert = buildings.certify(buildings.instance_field_change(n),
                                 stab_samples=100, translation_samples=50,
                                 rng=_rng("fc:%d" % n))
        ok = ok and cert.valid
        ok = ok and cert.flags == {"injective": False, "surjective": True}
        if n == 2:
            cert2 = cert
    probe = buildings.collision_probe(cert2, samples=50)
    ok = ok and probe["ok"] and probe["failures"] == 0
    _report(8, ok, "gamma o v_lex = v_X on 100 functions, field-change "
            "instance VALID (n=2,3), 50 collisions consistent, "
            "surjective flag set")


def test_criterion_09_norm_stabilizer():
    qt = get_field(DEGREE)
    ok = True
    for n in (2, 3):
        rep = norms.stab_oracle_check(qt, n, samples=100,
                                      rng=_rng("normstab:%d" % n))
        ok = ok and rep["ok"] and rep["disagreements"] == 0
        ok = ok and rep["det_identity_failures"] == 0
    _report(9, ok, "norm stabilizer inequality vs class oracle: "
            "0 disagreements, determinant identity exact, 100 samples")


def test_criterion_10_monomial_affine_weyl_product():
    rep = reports.affine_weyl_product_check(get_field(DEGREE), 3, samples=50,
                                            rng=_rng("afw"))
    ok = rep["ok"] and rep["failures"] == 0
    _report(10, ok, "A_{f,w} product law on 50 seeded monomial pairs")


def test_criterion_11_order_preservation_decision():
    pr1 = reports.order_preservation_report([[Q(1), Q(0)]], samples=1000,
                                            rng=_rng("pr1"))
    ok = pr1["accepted"] and pr1["ok"]
    swap = reports.order_preservation_report(
        [[Q(0), Q(1)], [Q(1), Q(0)]], samples=1000, rng=_rng("swap"))
    ok = ok and not swap["accepted"] and swap["witness_verified"]
    rng = _rng("ordermaps")
    for i in range(20):
        matrix = [[Q(rng.randint(-3, 3), rng.randint(1, 3))
                   for _ in range(2)] for _ in range(2)]
        rep = reports.order_preservation_report(
            matrix, samples=1000, rng=_rng("ordermap:%d" % i))
        ok = ok and rep["ok"]
    _report(11, ok, "pr_1 accepted, swap rejected with verified witness, "
            "20 random maps agree with 1000-sample oracle")


def test_criterion_12_reproducibility(tmp_path):
    script = ROOT / "scripts" / "run_all_checks.py"
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / ("suite-%s.json" % tag)
        proc = subprocess.run(
            [sys.executable, str(script), "--seed", "9", "--samples", "5",
             "--out", str(out)],
            cwd=str(ROOT), capture_output=True, text=True)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    _report(12, ok, "two seeded full-suite runs produce byte-identical "
            "JSON reports")
