"""Deterministic JSON reports over the verification batteries.

Everything here is a pure function of (seed, sample counts): sections
seed their own generators from strings, numbers serialize as exact
strings, and keys are sorted when dumped, so two runs with one seed
produce byte-identical files.
"""

import json
import random
from fractions import Fraction as Q

from . import buildings, embeddings
from . import lattices as lat
from . import linalg, norms
from .fields import DEGREE, LEX_MULTIDEG, get_field
from .morphisms import inversion_morphism, verify_morphism
from .ordered import LexValue, OrderedGroupMorphism
from .roots import build_root_system

__all__ = [
    "to_jsonable", "report_json", "write_report", "summary_lines",
    "full_run", "order_preservation_report", "chart_welldef_check",
    "diag_roundtrip_check", "affine_weyl_product_check",
    "apartment_action_check",
]


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Q):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("reports must stay exact; got a float")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    return str(obj)


def report_json(payload):
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2) + "\n"


def write_report(path, payload):
    with open(path, "w") as fh:
        fh.write(report_json(payload))


def summary_lines(report, prefix=""):
    """One PASS/FAIL line per sub-report that carries an "ok" verdict."""
    lines = []
    if isinstance(report, dict):
        if "ok" in report and isinstance(report["ok"], bool):
            lines.append("%s %s" % ("PASS" if report["ok"] else "FAIL",
                                    prefix or "run"))
        for key in sorted(report):
            child = report[key]
            if isinstance(child, dict):
                inner = prefix + "." + key if prefix else key
                lines.extend(summary_lines(child, inner))
    return lines


def _rng(seed, label):
    return random.Random("%s:%s" % (seed, label))


# -- sampling batteries shared by the suite, the CLI, and acceptance ----------


def order_preservation_report(matrix, samples=1000, rng=None):
    """Exact monotonicity decision cross-checked by positive sampling.

    Accepted maps must survive every sampled nonnegative input; a
    rejection must come with a witness that checks out by evaluation.
    """
    rng = rng or random.Random(0)
    gamma = OrderedGroupMorphism(matrix)
    decision, witness = gamma.is_order_preserving()
    witness_ok = None
    if not decision:
        image = gamma.apply(witness)
        witness_ok = witness.sign() > 0 and image.sign() < 0
    counterexamples = 0
    first = None
    k = gamma.domain_rank
    for _ in range(samples):
        head = rng.randint(0, 1)
        lead = rng.randint(1, 6)
        coords = [Q(0)] * k
        pos = rng.randrange(k) if head else 0
        coords[pos] = Q(lead, rng.randint(1, 3))
        for j in range(pos + 1, k):
            coords[j] = Q(rng.randint(-6, 6), rng.randint(1, 3))
        v = LexValue(coords)
        if v.sign() < 0:
            continue
        if gamma.apply(v).sign() < 0:
            counterexamples += 1
            if first is None:
                first = v
    agree = (counterexamples == 0) if decision else bool(witness_ok)
    return {"accepted": decision, "witness": witness,
            "witness_verified": witness_ok, "samples": samples,
            "counterexamples": counterexamples, "first": first,
            "ok": agree}


def chart_welldef_check(field, n, lambdas=50, twists=10, rng=None):
    """Chart classes must not depend on the diagonal witness chosen."""
    rng = rng or random.Random(0)
    chart = lat.LatticeChart.standard(field, n)
    apt = chart.apartment()
    failures = 0
    for _ in range(lambdas):
        coords = [LexValue([Q(rng.randint(-3, 3))
                            for _ in range(field.value_rank)])
                  for _ in range(n - 1)]
        x = apt.point(coords)
        base = chart.eval(x)
        diag = lat.point_to_diag(field, x)
        for _ in range(twists):
            # witness g = diag * U with U unit-diagonal over the
            # valuation ring spans the same lattice
            g = [[field.zero] * n for _ in range(n)]
            for i in range(n):
                g[i][i] = diag[i] * field.random_unit(rng)
                for j in range(i + 1, n):
                    if rng.random() < 0.5:
                        head = rng.randint(0, 2)
                        rest = [rng.randint(-2, 2) if head else
                                rng.randint(0, 2)
                                for _ in range(field.value_rank - 1)]
                        depth = LexValue([Q(c) for c in [head] + rest])
                        g[i][j] = diag[i] * field.random_unit(rng) * \
                            field.element_with_valuation(depth)
            if lat.class_of(field, g) != base:
                failures += 1
    return {"lambdas": lambdas, "twists": twists, "failures": failures,
            "ok": failures == 0}


def diag_roundtrip_check(field, n, samples=100, rng=None):
    """Diagonal dictionary: pairings match entry valuations and the
    chart at the recovered point reproduces the acted class."""
    rng = rng or random.Random(0)
    chart = lat.LatticeChart.standard(field, n)
    base = chart.eval(chart.apartment().zero())
    failures = 0
    for _ in range(samples):
        vals = [LexValue([Q(rng.randint(-3, 3))
                          for _ in range(field.value_rank)])
                for _ in range(n - 1)]
        total = vals[0]
        for v in vals[1:]:
            total = total + v
        diag = [field.element_with_valuation(v) for v in vals]
        diag.append(field.element_with_valuation(-total))
        if not lat.root_pairing_check(field, diag):
            failures += 1
            continue
        x = lat.diag_to_point(field, diag)
        g = [[diag[i] if i == j else field.zero for j in range(n)]
             for i in range(n)]
        if chart.eval(x) != lat.act(field, g, base):
            failures += 1
    return {"samples": samples, "failures": failures, "ok": failures == 0}


def affine_weyl_product_check(field, n, samples=50, rng=None):
    """Monomial matrices act through a homomorphism to W_a."""
    rng = rng or random.Random(0)
    chart = lat.LatticeChart.standard(field, n)
    apt = chart.apartment()
    group = apt.root_system.weyl_group()
    failures = 0

    def random_monomial():
        coords = [LexValue([Q(rng.randint(-2, 2))
                            for _ in range(field.value_rank)])
                  for _ in range(n - 1)]
        w = lat.apartments.AffineWeylElement(apt, apt.point(coords),
                                             rng.choice(group))
        return lat.affine_weyl_preimage(field, w, chart)

    for _ in range(samples):
        g, h = random_monomial(), random_monomial()
        wg = lat.monomial_to_affine_weyl(field, g, chart, samples=4, rng=rng)
        wh = lat.monomial_to_affine_weyl(field, h, chart, samples=4, rng=rng)
        gh = linalg.mat_mul(g, h)
        wgh = lat.monomial_to_affine_weyl(field, gh, chart, samples=4,
                                          rng=rng)
        prod = wg * wh
        if not (wgh.translation.coords == prod.translation.coords
                and wgh.spherical == prod.spherical):
            failures += 1
    return {"samples": samples, "failures": failures, "ok": failures == 0}


def apartment_action_check(apartment, samples=50, rng=None):
    """Affine Weyl action axioms on sampled elements and points."""
    rng = rng or random.Random(0)
    group = apartment.root_system.weyl_group()
    rank = apartment.root_system.rank
    k = apartment.lambda_dim

    def rand_point():
        return apartment.point([
            LexValue([Q(rng.randint(-4, 4), rng.randint(1, 2))
                      for _ in range(k)]) for _ in range(rank)])

    def rand_elem():
        return lat.apartments.AffineWeylElement(apartment, rand_point(),
                                                rng.choice(group))

    failures = 0
    for _ in range(samples):
        u, v = rand_elem(), rand_elem()
        x = rand_point()
        if (u * v).act(x) != u.act(v.act(x)):
            failures += 1
        if (u * u.inverse()).act(x) != x:
            failures += 1
    return {"samples": samples, "failures": failures, "ok": failures == 0}


# -- full suite ----------------------------------------------------------------


_EXPECTED_ROOTS = (("A", 1, 2), ("A", 2, 6), ("B", 2, 8), ("G2", None, 12),
                   ("A", 3, 12), ("A1xA1", None, 4))

_EXPECTED_WEYL = (("A", 2, 6), ("B", 2, 8), ("G2", None, 12), ("A", 3, 24))

_TRIANGLE_VERDICTS = (("a1-perp-in-a2", True), ("a1-tilted-in-a2", False),
                      ("a1-diag-in-a1xa1", True), ("a2-long-in-g2", True),
                      ("b2-in-a3", True), ("a2-in-a3-block", True))


def _stock_pair(name):
    if name == "a2-in-a3-block":
        return embeddings.block_in_a(3, 4)
    return embeddings.STOCK_PAIRS[name]()


def _root_section():
    from .roots import reflection
    systems = {}
    ok = True
    for tag, rank, count in _EXPECTED_ROOTS:
        if tag == "A1xA1":
            rs = embeddings.a1_diag_in_a1xa1().ambient
        else:
            rs = build_root_system(tag, rank)
        closed = all(rs.is_root(reflection(rs, alpha).act(beta))
                     for alpha in rs.roots for beta in rs.roots)
        good = len(rs.roots) == count and closed
        ok = ok and good
        systems["%s%s" % (tag, rank or "")] = {
            "roots": len(rs.roots), "expected": count,
            "reflection_closed": closed, "ok": good}
    return {"systems": systems, "ok": ok}


def _weyl_section():
    orders = {}
    ok = True
    for tag, rank, expected in _EXPECTED_WEYL:
        size = len(build_root_system(tag, rank).weyl_group())
        orders["%s%s" % (tag, rank or "")] = {
            "order": size, "expected": expected, "ok": size == expected}
        ok = ok and size == expected
    return {"orders": orders, "ok": ok}


def _embedding_section(seed, samples):
    out = {"pairs": {}, "ok": True}
    for name, expected in _TRIANGLE_VERDICTS:
        pair = _stock_pair(name)
        tri = embeddings.check_condition_triangle(pair)
        entry = {"exact": tri, "expected": expected,
                 "ok": tri["ok"] == expected}
        if expected:
            oracle = embeddings.sample_triangle_oracle(
                pair, samples=samples, rng=_rng(seed, "tri:" + name))
            entry["oracle"] = oracle
            entry["ok"] = entry["ok"] and oracle["ok"]
        else:
            entry["witness_confirmed"] = tri["witness"] is not None
            entry["ok"] = entry["ok"] and entry["witness_confirmed"]
        out["pairs"][name] = entry
        out["ok"] = out["ok"] and entry["ok"]
    sigma = embeddings.construct_sigma(_stock_pair("a2-long-in-g2"))
    image = embeddings.sigma_image_size(sigma)
    sigma_ok = len(sigma) == 6 and image == 6
    out["sigma_a2_in_g2"] = {"domain": len(sigma), "image": image,
                             "ambient_order": 12, "ok": sigma_ok}
    out["ok"] = out["ok"] and sigma_ok
    return out


def _ordered_section(seed, samples):
    rng = _rng(seed, "ordered")
    pr1 = order_preservation_report(
        [[Q(1), Q(0)]], samples=samples, rng=_rng(seed, "ordered:pr1"))
    swap = order_preservation_report(
        [[Q(0), Q(1)], [Q(1), Q(0)]], samples=samples,
        rng=_rng(seed, "ordered:swap"))
    matrices = {"accepted": 0, "rejected": 0, "ok": True}
    for k in range(20):
        m = [[Q(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)]
             for _ in range(2)]
        rep = order_preservation_report(m, samples=samples,
                                        rng=_rng(seed, "ordered:%d" % k))
        matrices["accepted" if rep["accepted"] else "rejected"] += 1
        matrices["ok"] = matrices["ok"] and rep["ok"]
    ok = (pr1["accepted"] and pr1["ok"] and not swap["accepted"]
          and swap["ok"] and matrices["ok"])
    return {"pr1": pr1, "swap": swap, "random_matrices": matrices, "ok": ok}


def _lattice_section(seed, samples):
    qt = get_field(DEGREE)
    qxy = get_field(LEX_MULTIDEG)
    out = {"ok": True}
    stab = {}
    for field, label in ((qt, "degree"), (qxy, "lex")):
        for n in (2, 3):
            rep = lat.stab_theorem_check(
                field, n, samples=samples,
                rng=_rng(seed, "stab:%s:%d" % (label, n)))
            stab["%s-n%d" % (label, n)] = rep
            out["ok"] = out["ok"] and rep["ok"]
    out["stabilizer"] = stab
    out["chart_welldef"] = chart_welldef_check(
        qt, 2, lambdas=samples, twists=5, rng=_rng(seed, "chartwd"))
    out["diag_roundtrip"] = diag_roundtrip_check(
        qt, 3, samples=samples, rng=_rng(seed, "roundtrip"))
    out["affine_weyl_products"] = affine_weyl_product_check(
        qt, 2, samples=samples, rng=_rng(seed, "afw"))
    out["apartment_action"] = apartment_action_check(
        lat.standard_apartment(qt, 3), samples=samples,
        rng=_rng(seed, "apartment"))
    for key in ("chart_welldef", "diag_roundtrip", "affine_weyl_products",
                "apartment_action"):
        out["ok"] = out["ok"] and out[key]["ok"]
    return out


def _norm_section(seed, samples):
    qt = get_field(DEGREE)
    out = {"ok": True}
    for n in (2, 3):
        rep = norms.stab_oracle_check(qt, n, samples=samples,
                                      rng=_rng(seed, "normstab:%d" % n))
        out["stab-n%d" % n] = rep
        out["ok"] = out["ok"] and rep["ok"]
    return out


def _inversion_section(seed, samples):
    qt = get_field(DEGREE)
    out = {"ok": True}
    for n in (2, 3, 4):
        apt = lat.standard_apartment(qt, n)
        rep = verify_morphism(inversion_morphism(apt), samples=samples,
                              rng=_rng(seed, "inv:%d" % n))
        out["A%d" % (n - 1)] = rep
        out["ok"] = out["ok"] and rep["ok"]
    return out


def _building_section(seed, samples):
    out = {"ok": True}
    runs = (("field-change", {"n": 2}), ("block-embed", {"m": 2, "n": 3}),
            ("inversion", {"n": 2}), ("inversion", {"n": 3}),
            ("lattice-to-norm", {"n": 2}))
    for name, kw in runs:
        label = name + "-" + "-".join(
            "%s%d" % (k, v) for k, v in sorted(kw.items()))
        rep = buildings.run_instance_check(name, samples=samples,
                                           seed=seed, **kw)
        out[label] = rep
        out["ok"] = out["ok"] and rep["ok"]
    return out


def full_run(seed=0, samples=20):
    """Every verification battery, deterministically seeded."""
    sections = {
        "root_systems": _root_section(),
        "weyl_orders": _weyl_section(),
        "embeddings": _embedding_section(seed, samples),
        "ordered_maps": _ordered_section(seed, samples),
        "lattice": _lattice_section(seed, samples),
        "norm": _norm_section(seed, samples),
        "apartment_inversion": _inversion_section(seed, samples),
        "buildings": _building_section(seed, samples),
    }
    return {"seed": seed, "samples": samples, "sections": sections,
            "ok": all(s["ok"] for s in sections.values())}
