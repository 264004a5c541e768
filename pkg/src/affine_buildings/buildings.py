"""Concrete building instances and morphism certificates between them.

A ``GBuildingInstance`` bundles one represented building model (lattice
classes or adaptable norms) with its group action, base chart, and
stabilizer predicates.  ``check_conditions_baby`` verifies the three
hypotheses that let a group map and an apartment morphism induce a map
of buildings, and returns a certificate through which points and charts
are actually pushed forward.  Collisions between input presentations of
the same point are detected at application time and must map
consistently; a disagreement is a hard error.
"""

import random
from fractions import Fraction as Q

from . import lattices as lat
from . import linalg, norms
from .apartments import AffineWeylElement, ApartmentPoint, scale_values
from .fields import DEGREE, FIRST_VAR, LEX_MULTIDEG, get_field
from .morphisms import ApartmentMorphism, inversion_morphism
from .ordered import LexValue, OrderedGroupMorphism
from .roots import WeylElement

__all__ = [
    "BuildingError", "GBuildingInstance", "GroupMap", "MorphismCertificate",
    "check_conditions_baby", "apply_morphism", "apply_morphism_chart",
    "collision_probe", "equivariance_report", "coset_report",
    "instance_field_change", "instance_block_embedding", "broken_field_change",
    "instance_identity", "instance_lattice_to_norm", "certify",
    "inversion_selfcheck", "run_instance_check", "INSTANCE_NAMES",
]


class BuildingError(RuntimeError):
    pass


def _integral_point(apartment, rng, spread=3):
    rank = apartment.root_system.rank
    k = apartment.lambda_dim
    coords = [LexValue([Q(rng.randint(-spread, spread)) for _ in range(k)])
              for _ in range(rank)]
    return apartment.point(coords)


def _nonneg_value(field, rng):
    k = field.value_rank
    head = rng.randint(0, 2)
    rest = [rng.randint(-3, 3) if head > 0 else rng.randint(0, 3)
            for _ in range(k - 1)]
    return LexValue([Q(c) for c in [head] + rest])


def _diag_matrix(field, entries):
    n = len(entries)
    return [[entries[i] if i == j else field.zero for j in range(n)]
            for i in range(n)]


class GBuildingInstance:
    """One building model: charts, group action, stabilizer predicates."""

    __slots__ = ("model", "field", "n", "chart", "apartment")

    def __init__(self, model, field, n):
        if model not in ("lattice", "norm"):
            raise BuildingError("unknown model %r" % (model,))
        self.model = model
        self.field = field
        self.n = n
        if model == "lattice":
            self.chart = lat.LatticeChart.standard(field, n)
            self.apartment = self.chart.apartment()
        else:
            self.chart = norms.standard_norm(field, n)
            self.apartment = lat.standard_apartment(field, n)

    def base_point(self):
        return self.eval(self.apartment.zero())

    def eval(self, x):
        """The base chart at the apartment point x."""
        if self.model == "lattice":
            return self.chart.eval(x)
        mu = _ambient_vector(x)
        return norms.chart_eval(self.field, self.chart.basis,
                                self.chart.weights,
                                [v.as_rational() for v in mu])

    def act(self, g, p):
        if self.model == "lattice":
            return lat.act(self.field, g, p, allow_gl=True)
        return norms.act(self.field, g, p.norm).to_class()

    def act_chart_eval(self, g, x):
        """(g.f)(x) through the twisted chart, not through act on points."""
        if self.model == "lattice":
            g = lat.field_matrix(self.field, g)
            twisted = lat.LatticeChart(
                self.field, linalg.mat_mul(g, self.chart.basis))
            return twisted.eval(x)
        g = lat.field_matrix(self.field, g)
        mu = _ambient_vector(x)
        twisted = norms.AdaptedNorm(
            self.field, linalg.mat_mul(g, self.chart.basis),
            self.chart.weights)
        return norms.chart_eval(self.field, twisted.basis, twisted.weights,
                                [v.as_rational() for v in mu])

    def stab_point(self, g):
        """Does g fix the base point?"""
        if self.model == "lattice":
            return lat.entries_in_valuation_ring(self.field, g)
        return norms.stab_inequality_membership(self.field, g,
                                                [Q(0)] * self.n)

    def stab_chart(self, g):
        """Does g fix the base chart pointwise?"""
        if self.model == "lattice":
            return lat.stab_apartment_membership(self.field, g, self.chart)
        g = lat.field_matrix(self.field, g)
        vals = set()
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    v = self.field.valuation(g[i][j])
                    vals.add(None if v is None else tuple(v.coords)
                             if hasattr(v, "coords") else v)
                elif g[i][j] != self.field.zero:
                    return False
        return len(vals) == 1 and None not in vals

    def translation_witness(self, x):
        """Diagonal g with g.f(0) = f(x); needs realizable coordinates."""
        if self.model == "lattice":
            return _diag_matrix(self.field, lat.point_to_diag(self.field, x))
        mu = _ambient_vector(x)
        entries = [self.field.element_with_valuation(-v) for v in mu]
        return _diag_matrix(self.field, entries)

    def random_point(self, rng, spread=3):
        return _integral_point(self.apartment, rng, spread)

    def random_group(self, rng):
        return lat.random_sl(self.field, self.n, rng)

    def random_stab_point(self, rng):
        """Random element of the base-point stabilizer (det 1)."""
        field, n = self.field, self.n
        g = lat.field_matrix(field, linalg.identity(n))
        for _ in range(rng.randint(1, 4)):
            kind = rng.choice(("elem", "diag", "perm"))
            f = [[field.one if i == j else field.zero for j in range(n)]
                 for i in range(n)]
            if kind == "elem":
                i, j = rng.sample(range(n), 2)
                f[i][j] = field.random_unit(rng) * \
                    field.element_with_valuation(_nonneg_value(field, rng))
            elif kind == "diag":
                i, j = rng.sample(range(n), 2)
                u = field.random_unit(rng)
                f[i][i], f[j][j] = u, 1 / u
            else:
                i, j = rng.sample(range(n), 2)
                f[i][i] = f[j][j] = field.zero
                f[i][j] = field.one
                f[j][i] = -field.one
            g = linalg.mat_mul(g, f)
        return g

    def random_stab_chart(self, rng):
        """Random element fixing the base chart pointwise (det 1)."""
        field, n = self.field, self.n
        units = [field.random_unit(rng) for _ in range(n - 1)]
        last = field.one
        for u in units:
            last = last / u
        diag = _diag_matrix(field, units + [last])
        if self.model == "lattice":
            e = self.chart.basis
            return linalg.mat_mul(e, linalg.mat_mul(diag, linalg.inverse(e)))
        return diag

    def compatibility_report(self, samples=50, rng=None):
        """(g.f)(x) = g.(f(x)) on sampled group elements and points."""
        rng = rng or random.Random(0)
        failures = 0
        for _ in range(samples):
            g = self.random_group(rng)
            x = self.random_point(rng)
            if self.act_chart_eval(g, x) != self.act(g, self.eval(x)):
                failures += 1
        return {"samples": samples, "failures": failures,
                "ok": failures == 0}


def _ambient_vector(point):
    """Point as a vector of Λ-values in the root system's ambient space."""
    rs = point.apartment.root_system
    basis_cols = linalg.transpose(linalg.from_rows(rs.basis))
    return scale_values(basis_cols, point.coords)


def _standard_a_coords(ambient):
    """Ambient vector to coordinates along consecutive-difference roots."""
    lam = []
    acc = None
    for v in ambient[:-1]:
        acc = v if acc is None else acc + v
        lam.append(acc)
    return lam


class GroupMap:
    """Group homomorphism on represented elements.

    ``exact_hooks`` maps a condition key to a callable returning
    (holds, reason); when present the condition is decided exactly and
    sampling only spot-checks it.
    """

    __slots__ = ("name", "_apply", "exact_hooks")

    def __init__(self, name, apply_fn, exact_hooks=None):
        self.name = name
        self._apply = apply_fn
        self.exact_hooks = exact_hooks or {}

    def __call__(self, g):
        return self._apply(g)


class MorphismCertificate:
    """Checked data of a building morphism, plus its application log."""

    __slots__ = ("source", "target", "rho", "tau", "map_x", "sigma_map",
                 "conditions", "flags", "log")

    def __init__(self, source, target, rho, tau, map_x, sigma_map,
                 conditions, flags):
        self.source = source
        self.target = target
        self.rho = rho
        self.tau = tau
        self.map_x = map_x
        self.sigma_map = sigma_map
        self.conditions = conditions
        self.flags = flags
        self.log = []

    @property
    def valid(self):
        return all(c["ok"] for c in self.conditions.values())

    def summary(self):
        conds = {}
        for key, c in self.conditions.items():
            conds[key] = {k: v for k, v in c.items()}
        return {"rho": self.rho.name, "valid": self.valid,
                "conditions": conds, "flags": dict(self.flags),
                "applications": len(self.log)}


def _point_json(x):
    return [v.to_json() for v in x.coords]


def check_conditions_baby(source, target, rho, tau, map_x=None,
                          stab_samples=100, translation_samples=50,
                          rng=None, sigma_map=None):
    """Verify the three morphism conditions and issue a certificate.

    (1) rho maps the base-point stabilizer into the target's,
    (2) rho maps the base-chart stabilizer into the target's,
    (3) translation witnesses push forward: g.f(0) = f(x) implies
        rho(g).f'(0) = f'(tau(x)).
    Stabilizer conditions run any exact hook first, then sample;
    condition (3) is checked constructively on sampled points.
    """
    rng = rng or random.Random(0)
    if map_x is None:
        map_x = _adapt_tau(source, target, tau)
    conditions = {}

    for key, make, src_pred, tgt_pred in (
            ("1", "random_stab_point", "stab_point", "stab_point"),
            ("2", "random_stab_chart", "stab_chart", "stab_chart")):
        hook = rho.exact_hooks.get(key)
        mode = "sampled"
        reason = None
        ok = True
        if hook is not None:
            ok, reason = hook()
            mode = "exact"
        witness = None
        checked = 0
        if ok:
            for _ in range(stab_samples):
                g = getattr(source, make)(rng)
                if not getattr(source, src_pred)(g):
                    raise BuildingError(
                        "stabilizer sampler left the stabilizer")
                checked += 1
                if not getattr(target, tgt_pred)(rho(g)):
                    ok = False
                    witness = linalg.matrix_to_json(
                        lat.field_matrix(source.field, g))
                    break
        conditions[key] = {"ok": ok, "mode": mode, "samples": checked,
                           "reason": reason, "witness": witness}

    ok3 = True
    witness3 = None
    checked = 0
    for _ in range(translation_samples):
        x = source.random_point(rng)
        a = source.translation_witness(x)
        if source.act(a, source.base_point()) != source.eval(x):
            raise BuildingError("translation witness failed on the source")
        checked += 1
        image = map_x(x)
        if target.act(rho(a), target.base_point()) != target.eval(image):
            ok3 = False
            witness3 = {"x": _point_json(x), "tau_x": _point_json(image)}
            break
    conditions["3"] = {"ok": ok3, "mode": "constructive",
                       "samples": checked, "reason": None,
                       "witness": witness3}

    flags = tau.flags()
    return MorphismCertificate(source, target, rho, tau, map_x, sigma_map,
                               conditions, flags)


def _adapt_tau(source, target, tau):
    """tau as a map between the instances' own apartments."""
    if tau.domain is source.apartment and tau.codomain is target.apartment:
        return tau.apply_tau

    def map_x(x):
        inside = ApartmentPoint(tau.domain, x.coords)
        out = tau.apply_tau(inside)
        lam = _standard_a_coords(_ambient_vector(out))
        return ApartmentPoint(target.apartment, lam)

    return map_x


def apply_morphism(cert, g, x):
    """Image of the point presented as g.f(x).

    Every application is logged; if a later presentation hits a point
    seen before, the images must agree exactly.
    """
    if not cert.valid:
        raise BuildingError("certificate is not valid")
    source, target = cert.source, cert.target
    p_in = source.act(g, source.eval(x))
    image = target.act(cert.rho(g), target.eval(cert.map_x(x)))
    for seen, seen_image in cert.log:
        if seen == p_in and seen_image != image:
            raise BuildingError(
                "colliding presentations map to different points")
    cert.log.append((p_in, image))
    return image


def apply_morphism_chart(cert, g):
    """Image chart of g.f: evaluates as rho(g).f' after tau."""
    if not cert.valid:
        raise BuildingError("certificate is not valid")
    rho_g = cert.rho(g)

    def chart(x):
        return cert.target.act(rho_g,
                               cert.target.eval(cert.map_x(x)))

    return chart


def collision_probe(cert, samples=25, rng=None):
    """Deliberate double presentations via monomial chart symmetries.

    For monomial m with m.f = f o w, the pairs (g, w(y)) and (g m, y)
    present one source point; their images must coincide.
    """
    rng = rng or random.Random(0)
    source = cert.source
    if source.model != "lattice":
        raise BuildingError("collision probe needs the lattice model")
    field = source.field
    apt = source.apartment
    group = apt.root_system.weyl_group()
    failures = 0
    first = None
    for k in range(samples):
        y = source.random_point(rng, spread=2)
        w_sph = rng.choice(group)
        z = source.random_point(rng, spread=2)
        w = AffineWeylElement(apt, z, w_sph)
        m = lat.affine_weyl_preimage(field, w, source.chart)
        g = source.random_group(rng)
        gm = linalg.mat_mul(lat.field_matrix(field, g), m)
        wy = w.act(y)
        if source.act(g, source.eval(wy)) != source.act(gm, source.eval(y)):
            raise BuildingError("monomial presentation is not a collision")
        img_a = apply_morphism(cert, g, wy)
        img_b = apply_morphism(cert, gm, y)
        if img_a != img_b:
            failures += 1
            if first is None:
                first = {"sample": k, "y": _point_json(y),
                         "w_translation": _point_json(z)}
    return {"samples": samples, "failures": failures, "first": first,
            "ok": failures == 0}


def equivariance_report(cert, samples=50, rng=None):
    """psi(g.p) = rho(g).psi(p) and the chart-level analogue."""
    rng = rng or random.Random(0)
    source, target = cert.source, cert.target
    point_failures = 0
    chart_failures = 0
    for _ in range(samples):
        g = source.random_group(rng)
        h = source.random_group(rng)
        y = source.random_point(rng, spread=2)
        gh = linalg.mat_mul(lat.field_matrix(source.field, g),
                            lat.field_matrix(source.field, h))
        lhs = apply_morphism(cert, gh, y)
        rhs = target.act(cert.rho(g), apply_morphism(cert, h, y))
        if lhs != rhs:
            point_failures += 1
        tau_y = cert.map_x(y)
        chart_lhs = target.act(cert.rho(gh), target.eval(tau_y))
        chart_rhs = target.act(
            cert.rho(g),
            target.act(cert.rho(h), target.eval(tau_y)))
        if chart_lhs != chart_rhs:
            chart_failures += 1
    return {"samples": samples, "point_failures": point_failures,
            "chart_failures": chart_failures,
            "ok": point_failures == 0 and chart_failures == 0}


def coset_report(cert, samples=50, rng=None):
    """Monomial g acting as w must map to rho(g) acting as sigma(w)."""
    rng = rng or random.Random(0)
    source, target = cert.source, cert.target
    if source.model != "lattice" or target.model != "lattice":
        raise BuildingError("coset check needs lattice models")
    apt = source.apartment
    group = apt.root_system.weyl_group()
    failures = 0
    first = None
    for k in range(samples):
        z = source.random_point(rng, spread=2)
        w_sph = rng.choice(group)
        w = AffineWeylElement(apt, z, w_sph)
        g = lat.affine_weyl_preimage(source.field, w, source.chart)
        w_back = lat.monomial_to_affine_weyl(source.field, g, source.chart,
                                             samples=4, rng=rng)
        w_tgt = lat.monomial_to_affine_weyl(target.field, cert.rho(g),
                                            target.chart, samples=4, rng=rng)
        expected_translation = cert.map_x(w_back.translation)
        expected_matrix = cert.sigma_map(w_back.spherical)
        if (w_tgt.translation.coords != expected_translation.coords
                or w_tgt.spherical.matrix != expected_matrix):
            failures += 1
            if first is None:
                first = {"sample": k, "w_translation": _point_json(z)}
    return {"samples": samples, "failures": failures, "first": first,
            "ok": failures == 0}


# -- concrete instances -------------------------------------------------------


def instance_identity(n, field_kind=DEGREE, model="lattice"):
    """Source equals target, identity group map, identity apartment map."""
    inst = GBuildingInstance(model, get_field(field_kind), n)
    tau = ApartmentMorphism.identity(inst.apartment)
    rho = GroupMap("identity on SL_%d" % n, lambda g: g)
    return inst, inst, rho, tau


def instance_lattice_to_norm(n, field_kind=DEGREE):
    """Lattice source, norm target over one field, identity group map.

    The lattice spanned by a_i e_i evaluates vectors through 1/|a_i|, so
    the two models parametrize the diagonal apartment with opposite
    signs and the connecting apartment map is the inversion.
    """
    field = get_field(field_kind)
    if field.value_rank != 1:
        raise BuildingError("norm targets need a rank-1 field")
    source = GBuildingInstance("lattice", field, n)
    target = GBuildingInstance("norm", field, n)
    table = {w: w for w in source.apartment.root_system.weyl_group()}
    minus = [[-v for v in row] for row in linalg.identity(n - 1)]
    tau = ApartmentMorphism(source.apartment, target.apartment,
                            minus, OrderedGroupMorphism.identity(1), table)
    rho = GroupMap("identity on SL_%d" % n, lambda g: g)
    return source, target, rho, tau


def instance_field_change(n):
    """Same matrices, coarser values: lex rank-2 source, leading-variable
    target, identity group map, first-coordinate projection on Λ."""
    source = GBuildingInstance("lattice", get_field(LEX_MULTIDEG), n)
    target = GBuildingInstance("lattice", get_field(FIRST_VAR), n)
    gamma = OrderedGroupMorphism.projection(2, 0)
    table = {w: w for w in source.apartment.root_system.weyl_group()}
    tau = ApartmentMorphism(source.apartment, target.apartment,
                            linalg.identity(n - 1), gamma, table)

    def hook_point():
        ok, _ = gamma.is_order_preserving()
        return ok, ("order-preserving value projection keeps nonnegative "
                    "valuations nonnegative, entry by entry")

    def hook_chart():
        ok = gamma.apply(LexValue.zero(2)).is_zero()
        return ok, ("diagonal conjugates are preserved verbatim and zero "
                    "valuations project to zero")

    rho = GroupMap("identity on SL_%d" % n, lambda g: g,
                   {"1": hook_point, "2": hook_chart})
    return source, target, rho, tau


def broken_field_change(n):
    """Field-change data with the Λ-map replaced by the second projection,
    which reverses some value comparisons; condition (3) must fail."""
    source = GBuildingInstance("lattice", get_field(LEX_MULTIDEG), n)
    target = GBuildingInstance("lattice", get_field(FIRST_VAR), n)
    gamma = OrderedGroupMorphism.projection(2, 1)
    table = {w: w for w in source.apartment.root_system.weyl_group()}
    tau = ApartmentMorphism(source.apartment, target.apartment,
                            linalg.identity(n - 1), gamma, table,
                            check=False)
    rho = GroupMap("identity on SL_%d" % n, lambda g: g)
    return source, target, rho, tau


def _blockdiag(field, g, n):
    m = len(g)
    out = [[field.zero] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            out[i][j] = g[i][j]
    for i in range(m, n):
        out[i][i] = field.one
    return out


def instance_block_embedding(m, n, field_kind=DEGREE):
    """Top-left block inclusion of SL_m into SL_n over one field.

    The lattice map pads with the standard lattice; the apartment map
    comes from the root-subsystem machinery with trivial Λ-change.
    """
    from .embeddings import block_in_a, build_apartment_morphism_from_embedding
    field = get_field(field_kind)
    if field.value_rank != 1:
        raise BuildingError("block instance expects a rank-1 field")
    source = GBuildingInstance("lattice", field, m)
    target = GBuildingInstance("lattice", field, n)
    pair = block_in_a(m, n)
    tau = build_apartment_morphism_from_embedding(
        pair, OrderedGroupMorphism.identity(1))

    def hook_point():
        return True, ("padding copies entries and adds zeros and ones, all "
                      "inside the valuation ring; determinant is unchanged")

    def hook_chart():
        return True, ("a diagonal conjugate stays diagonal after padding "
                      "and the added entries have valuation zero")

    rho = GroupMap("block SL_%d in SL_%d" % (m, n),
                   lambda g: _blockdiag(field,
                                        lat.field_matrix(field, g), n),
                   {"1": hook_point, "2": hook_chart})
    return source, target, rho, tau


def certify(instance, stab_samples=100, translation_samples=50, rng=None):
    """check_conditions_baby over an instance tuple, with the coset map."""
    source, target, rho, tau = instance
    sigma_map = _sigma_matrix_map(source, target, tau)
    return check_conditions_baby(source, target, rho, tau,
                                 stab_samples=stab_samples,
                                 translation_samples=translation_samples,
                                 rng=rng, sigma_map=sigma_map)


def _sigma_matrix_map(source, target, tau):
    """Spherical parts through sigma_s, keyed by ambient matrices."""
    n = target.n
    m = source.n

    def sigma_map(w):
        if len(w.matrix) == n:
            entry = tau.sigma_s.get(w)
            if entry is not None:
                return entry.matrix
            return w.matrix
        padded = [[Q(0)] * n for _ in range(n)]
        for i in range(m):
            for j in range(m):
                padded[i][j] = w.matrix[i][j]
        for i in range(m, n):
            padded[i][i] = Q(1)
        key = WeylElement(tau.domain.root_system, linalg.qmat(padded))
        entry = tau.sigma_s.get(key)
        if entry is None:
            raise BuildingError("no sigma entry for the sampled element")
        return entry.matrix

    return sigma_map


def inversion_selfcheck(n, samples=50, rng=None, field_kind=DEGREE):
    """The diagonal witness of f(y) realizes f(-y) after inversion.

    For sampled y with diagonal witness a (so a.f(0) = f(y)), the
    inverse diagonal must satisfy a^{-1}.f(0) = f(-y).
    """
    rng = rng or random.Random(0)
    field = get_field(field_kind)
    chart = lat.LatticeChart.standard(field, n)
    apt = chart.apartment()
    tau = inversion_morphism(apt)
    base = chart.eval(apt.zero())
    mismatches = 0
    first = None
    for k in range(samples):
        y = _integral_point(apt, rng)
        diag = lat.point_to_diag(field, y)
        a = _diag_matrix(field, diag)
        a_inv = _diag_matrix(field, [1 / d for d in diag])
        ok_fwd = lat.act(field, a, base) == chart.eval(y)
        ok_inv = lat.act(field, a_inv, base) == chart.eval(tau.apply_tau(y))
        if not (ok_fwd and ok_inv):
            mismatches += 1
            if first is None:
                first = {"sample": k, "y": _point_json(y),
                         "forward": ok_fwd, "inverted": ok_inv}
    return {"n": n, "samples": samples, "mismatches": mismatches,
            "first": first, "ok": mismatches == 0}


INSTANCE_NAMES = ("field-change", "block-embed", "inversion", "identity",
                  "lattice-to-norm")


def run_instance_check(name, n=2, m=2, samples=50, seed=0):
    """Full verification battery for one named instance; CLI entry."""
    rng = random.Random(seed)
    if name == "inversion":
        report = inversion_selfcheck(n, samples=samples, rng=rng)
        apt = lat.standard_apartment(get_field(DEGREE), n)
        report["morphism"] = inversion_morphism(apt).verify(
            samples=min(samples, 50), rng=random.Random(seed))["ok"]
        report["instance"] = name
        report["ok"] = report["ok"] and report["morphism"]
        return report
    if name == "field-change":
        instance = instance_field_change(n)
    elif name == "block-embed":
        instance = instance_block_embedding(m, n)
    elif name == "identity":
        instance = instance_identity(n)
    elif name == "lattice-to-norm":
        instance = instance_lattice_to_norm(n)
    else:
        raise BuildingError("unknown instance %r" % (name,))
    cert = certify(instance, stab_samples=samples,
                   translation_samples=samples, rng=rng)
    report = cert.summary()
    report["instance"] = name
    report["compat_source"] = cert.source.compatibility_report(
        samples=min(samples, 25), rng=rng)["ok"]
    report["equivariance"] = equivariance_report(
        cert, samples=min(samples, 25), rng=rng)
    report["ok"] = (report["valid"] and report["compat_source"]
                    and report["equivariance"]["ok"])
    if cert.source.model == "lattice":
        report["collisions"] = collision_probe(
            cert, samples=min(samples, 25), rng=rng)
        report["ok"] = report["ok"] and report["collisions"]["ok"]
    if cert.source.model == "lattice" and cert.target.model == "lattice":
        report["coset"] = coset_report(cert, samples=min(samples, 25),
                                       rng=rng)
        report["ok"] = report["ok"] and report["coset"]["ok"]
    return report
