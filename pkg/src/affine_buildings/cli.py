"""Command line front end for the verification batteries.

Subcommands mirror the library layers: root systems, Weyl groups,
apartments, apartment morphisms, the lattice and norm models, and the
building-level instances.  Every command prints one PASS or FAIL line
per check, optionally writes the full JSON report, and exits 0 when all
checks pass, 1 when a verification fails, and 2 on unusable input.
"""

import json
import os
import random
import sys
from fractions import Fraction as Q

import click

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import buildings, embeddings
from . import lattices as lat
from . import norms, render, reports
from .apartments import ModelApartment
from .fields import DEGREE, FIRST_VAR, LEX_MULTIDEG, get_field
from .morphisms import MorphismError, inversion_morphism, verify_morphism
from .ordered import LexValue
from .roots import RootSystemError, build_root_system

FIELD_KINDS = (DEGREE, LEX_MULTIDEG, FIRST_VAR)


class InputError(click.ClickException):
    exit_code = 2


def _load_toml(path):
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise InputError(str(exc))
    except tomllib.TOMLDecodeError as exc:
        raise InputError("cannot parse %s: %s" % (path, exc))


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(str(exc))
    except json.JSONDecodeError as exc:
        raise InputError("cannot parse %s: line %d: %s"
                         % (path, exc.lineno, exc.msg))


def _field_from_config(config):
    if config is None:
        return get_field(DEGREE)
    data = _load_toml(config)
    kind = data.get("field", {}).get("kind", DEGREE)
    if kind not in FIELD_KINDS:
        raise InputError("unknown field kind %r (expected one of %s)"
                         % (kind, ", ".join(FIELD_KINDS)))
    return get_field(kind)


def _grid(obj, path):
    if isinstance(obj, dict) and "entries" in obj:
        return obj["entries"]
    if isinstance(obj, list):
        return obj
    raise InputError("%s: expected a matrix object or a row list" % path)


def _load_pair(embed):
    if os.path.exists(embed):
        try:
            return embeddings.embedded_pair_from_json(_load_json(embed))
        except (KeyError, ValueError, embeddings.EmbeddingError,
                RootSystemError) as exc:
            raise InputError("%s: %s" % (embed, exc))
    if embed in embeddings.STOCK_PAIRS:
        return embeddings.STOCK_PAIRS[embed]()
    raise InputError("no file or stock embedding named %r" % (embed,))


def _parse_coords(text, k):
    """Coordinates as 'a;b;c', each a comma list of k rationals."""
    coords = []
    for part in text.split(";"):
        items = [p.strip() for p in part.split(",")]
        if len(items) != k:
            raise InputError("coordinate %r needs %d component(s)"
                             % (part, k))
        try:
            coords.append(LexValue([Q(p) for p in items]))
        except (ValueError, ZeroDivisionError):
            raise InputError("cannot read rational in %r" % (part,))
    return coords


def _parse_rationals(text):
    try:
        return [Q(p.strip()) for p in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError("cannot read rational in %r" % (text,))


def _field_elements(field, text):
    try:
        return [field.parse(p.strip()) for p in text.split(",")]
    except Exception as exc:
        raise InputError("cannot parse %r over %s: %s"
                         % (text, field.kind, exc))


def _field_grid(field, path):
    grid = _grid(_load_json(path), path)
    try:
        return lat.field_matrix(field, grid)
    except Exception as exc:
        raise InputError("%s: %s" % (path, exc))


def _emit(report, report_path, ok):
    ctx = click.get_current_context(silent=True)
    parts = []
    while ctx is not None and ctx.parent is not None:
        parts.append(ctx.info_name)
        ctx = ctx.parent
    label = ".".join(reversed(parts))
    for line in reports.summary_lines(report, label or "run"):
        click.echo(line)
    if report_path:
        reports.write_report(report_path, report)
        click.echo("report: %s" % report_path)
    if not ok:
        sys.exit(1)


def _seed_opts(fn):
    fn = click.option("--samples", default=100, show_default=True,
                      help="sample count for randomized checks")(fn)
    fn = click.option("--seed", default=0, show_default=True,
                      help="seed; fixes every sampled check")(fn)
    return fn


report_opt = click.option("--report", "report_path", default=None,
                          type=click.Path(dir_okay=False),
                          help="write the full JSON report here")
config_opt = click.option("--config", default=None,
                          type=click.Path(exists=True, dir_okay=False),
                          help="TOML file selecting the valued field")


@click.group()
def main():
    """Exact checks for apartments, buildings, and their morphisms."""


# -- root systems --------------------------------------------------------------


@main.group()
def rootsys():
    """Root system construction and axioms."""


@rootsys.command("verify")
@click.option("--tag", required=True, help="A, B, C, D, or G2")
@click.option("--rank", default=None, type=int)
@report_opt
def rootsys_verify(tag, rank, report_path):
    from .roots import reflection
    try:
        rs = build_root_system(tag, rank)
    except RootSystemError as exc:
        raise InputError(str(exc))
    closed = all(rs.is_root(reflection(rs, a).act(b))
                 for a in rs.roots for b in rs.roots)
    report = {
        "tag": rs.tag, "rank": rs.rank, "roots": len(rs.roots),
        "positive_roots": len(rs.positive_roots),
        "root_vectors": [[str(c) for c in r] for r in rs.roots],
        "reflection_closed": closed,
        "integral_pairings": _integral_pairings(rs),
        "ok": closed and _integral_pairings(rs),
    }
    _emit(report, report_path, report["ok"])


def _integral_pairings(rs):
    return all(rs.coroot_value(a, b).denominator == 1
               for a in rs.roots for b in rs.roots)


# -- Weyl groups ---------------------------------------------------------------


@main.group()
def weyl():
    """Weyl group enumeration."""


@weyl.command("order")
@click.option("--tag", required=True)
@click.option("--rank", default=None, type=int)
@report_opt
def weyl_order(tag, rank, report_path):
    try:
        rs = build_root_system(tag, rank)
    except RootSystemError as exc:
        raise InputError(str(exc))
    group = rs.weyl_group()
    closed = all((u * v) in set(group) for u in group for v in group)
    report = {"tag": rs.tag, "rank": rs.rank, "order": len(group),
              "closed_under_product": closed, "ok": closed}
    click.echo("order %d" % len(group))
    _emit(report, report_path, report["ok"])


# -- apartments ----------------------------------------------------------------


@main.group()
def apartment():
    """Model apartments and the affine Weyl action."""


@apartment.command("verify")
@click.option("--config", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="TOML with [apartment] tag, rank, lambda_rank")
@_seed_opts
@report_opt
def apartment_verify(config, samples, seed, report_path):
    data = _load_toml(config)
    spec = data.get("apartment", {})
    tag = spec.get("tag")
    if not tag:
        raise InputError("%s: [apartment] needs a tag" % config)
    try:
        rs = build_root_system(tag, spec.get("rank"))
    except RootSystemError as exc:
        raise InputError(str(exc))
    lam = spec.get("lambda_rank", 1)
    if not isinstance(lam, int) or lam < 1:
        raise InputError("%s: lambda_rank must be a positive integer"
                         % config)
    apt = ModelApartment(rs, lam)
    report = reports.apartment_action_check(apt, samples=samples,
                                            rng=random.Random(seed))
    report["tag"] = rs.tag
    report["rank"] = rs.rank
    report["lambda_rank"] = lam
    _emit(report, report_path, report["ok"])


# -- apartment morphisms ---------------------------------------------------------


@main.group()
def morphism():
    """Apartment morphisms: embeddings, sigma tables, value maps."""


@morphism.command("check-triangle")
@click.option("--embed", required=True, help="embedding JSON or stock name")
@_seed_opts
@report_opt
def morphism_triangle(embed, samples, seed, report_path):
    pair = _load_pair(embed)
    exact = embeddings.check_condition_triangle(pair)
    oracle = embeddings.sample_triangle_oracle(pair, samples=samples,
                                               rng=random.Random(seed))
    report = {"embedding": embed, "exact": exact, "oracle": oracle,
              "ok": exact["ok"] and oracle["ok"]}
    _emit(report, report_path, report["ok"])


@morphism.command("sigma")
@click.option("--embed", required=True)
@report_opt
def morphism_sigma(embed, report_path):
    pair = _load_pair(embed)
    try:
        sigma = embeddings.construct_sigma(pair)
    except embeddings.EmbeddingError as exc:
        _emit({"embedding": embed, "error": str(exc), "ok": False},
              report_path, False)
        return
    image = embeddings.sigma_image_size(sigma)
    report = {
        "embedding": embed, "domain_order": len(sigma),
        "image_size": image,
        "ambient_order": len(pair.ambient.weyl_group()),
        "injective": image == len(sigma),
        "table": {repr(w): repr(sigma[w]) for w in sigma},
        "ok": image == len(sigma),
    }
    _emit(report, report_path, report["ok"])


@morphism.command("verify")
@click.option("--embed", required=True)
@_seed_opts
@report_opt
def morphism_verify(embed, samples, seed, report_path):
    from .ordered import OrderedGroupMorphism
    pair = _load_pair(embed)
    try:
        tau = embeddings.build_apartment_morphism_from_embedding(
            pair, OrderedGroupMorphism.identity(1))
    except (MorphismError, embeddings.EmbeddingError) as exc:
        _emit({"embedding": embed, "error": str(exc), "ok": False},
              report_path, False)
        return
    report = verify_morphism(tau, samples=samples, rng=random.Random(seed))
    report["embedding"] = embed
    report["flags"] = tau.flags()
    _emit(report, report_path, report["ok"])


@morphism.command("inversion")
@click.option("--n", default=2, show_default=True,
              help="apartment of the standard rank n-1 system")
@_seed_opts
@report_opt
def morphism_inversion(n, samples, seed, report_path):
    if n < 2:
        raise InputError("--n must be at least 2")
    apt = lat.standard_apartment(get_field(DEGREE), n)
    report = verify_morphism(inversion_morphism(apt), samples=samples,
                             rng=random.Random(seed))
    report["n"] = n
    _emit(report, report_path, report["ok"])


@morphism.command("order-map")
@click.option("--matrix", "matrix_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON matrix of the value-group map")
@_seed_opts
@report_opt
def morphism_order_map(matrix_path, samples, seed, report_path):
    grid = _grid(_load_json(matrix_path), matrix_path)
    try:
        matrix = [[Q(x) for x in row] for row in grid]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError("%s: %s" % (matrix_path, exc))
    report = reports.order_preservation_report(matrix, samples=samples,
                                               rng=random.Random(seed))
    click.echo("accepted" if report["accepted"] else "rejected")
    _emit(report, report_path, report["ok"])


# -- lattice model --------------------------------------------------------------


@main.group()
def lattice():
    """Lattice classes: canonical forms, charts, stabilizers."""


@lattice.command("canon")
@click.option("--matrix", "matrix_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@config_opt
@report_opt
def lattice_canon(matrix_path, config, report_path):
    field = _field_from_config(config)
    rows = _field_grid(field, matrix_path)
    try:
        cls = lat.class_of(field, rows)
    except lat.LatticeError as exc:
        raise InputError("%s: %s" % (matrix_path, exc))
    report = {
        "field": field.kind,
        "canonical": [[str(x) for x in row] for row in cls.matrix],
        "divisors": [v.to_json() for v in cls.divisors],
        "ok": True,
    }
    for row in report["canonical"]:
        click.echo("  ".join(row))
    _emit(report, report_path, True)


@lattice.command("chart")
@click.option("--n", default=2, show_default=True)
@click.option("--coords", required=True,
              help="apartment point, e.g. '1;-2' or '1,0;2,3'")
@config_opt
@report_opt
def lattice_chart(n, coords, config, report_path):
    field = _field_from_config(config)
    parsed = _parse_coords(coords, field.value_rank)
    if len(parsed) != n - 1:
        raise InputError("need %d coordinate(s) for n = %d" % (n - 1, n))
    chart = lat.LatticeChart.standard(field, n)
    try:
        cls = chart.eval(chart.apartment().point(parsed))
    except lat.LatticeError as exc:
        raise InputError(str(exc))
    report = {
        "field": field.kind, "n": n,
        "class": [[str(x) for x in row] for row in cls.matrix],
        "divisors": [v.to_json() for v in cls.divisors],
        "ok": True,
    }
    for row in report["class"]:
        click.echo("  ".join(row))
    _emit(report, report_path, True)


@lattice.command("stab")
@click.option("--n", default=2, show_default=True)
@_seed_opts
@config_opt
@report_opt
def lattice_stab(n, samples, seed, config, report_path):
    field = _field_from_config(config)
    report = lat.stab_theorem_check(field, n, samples=samples,
                                    rng=random.Random(seed))
    _emit(report, report_path, report["ok"])


@lattice.command("common-apartment")
@click.option("--matrix", "matrix_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--matrix-b", "matrix_b_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@config_opt
@report_opt
def lattice_common(matrix_path, matrix_b_path, config, report_path):
    field = _field_from_config(config)
    c1 = lat.class_of(field, _field_grid(field, matrix_path))
    c2 = lat.class_of(field, _field_grid(field, matrix_b_path))
    try:
        chart, x1, x2 = lat.common_apartment(c1, c2)
    except lat.LatticeError as exc:
        _emit({"found": False, "reason": str(exc), "ok": False},
              report_path, False)
        return
    report = {
        "found": True,
        "basis": [[str(x) for x in row] for row in chart.basis],
        "first_point": [v.to_json() for v in x1.coords],
        "second_point": [v.to_json() for v in x2.coords],
        "ok": True,
    }
    _emit(report, report_path, True)


# -- norm model ------------------------------------------------------------------


@main.group()
def norm():
    """Adapted norms: evaluation, charts, stabilizers."""


@norm.command("eval")
@click.option("--norm", "norm_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON object {basis, weights}")
@click.option("--vector", required=True, help="comma list of field elements")
@config_opt
@report_opt
def norm_eval(norm_path, vector, config, report_path):
    field = _field_from_config(config)
    try:
        nf = norms.norm_from_json(field, _load_json(norm_path))
    except (norms.NormError, KeyError, ValueError) as exc:
        raise InputError("%s: %s" % (norm_path, exc))
    vec = _field_elements(field, vector)
    if len(vec) != len(nf.weights):
        raise InputError("vector needs %d entries" % len(nf.weights))
    exponent = nf.eval_exponent(vec)
    report = {"field": field.kind, "exponent": str(exponent), "ok": True}
    click.echo("exponent %s" % exponent)
    _emit(report, report_path, True)


@norm.command("chart")
@click.option("--n", default=2, show_default=True)
@click.option("--point", required=True,
              help="comma list of rationals summing to zero")
@config_opt
@report_opt
def norm_chart(n, point, config, report_path):
    field = _field_from_config(config)
    x = _parse_rationals(point)
    if len(x) != n:
        raise InputError("need %d entries for n = %d" % (n, n))
    base = norms.standard_norm(field, n)
    try:
        cls = norms.chart_eval(field, base.basis, base.weights, x)
    except norms.NormError as exc:
        raise InputError(str(exc))
    report = {
        "field": field.kind, "n": n,
        "weights": [str(w) for w in cls.norm.weights],
        "position": [str(p) for p in cls.position()],
        "ok": True,
    }
    click.echo("position %s" % (report["position"],))
    _emit(report, report_path, True)


@norm.command("stab")
@click.option("--n", default=2, show_default=True)
@_seed_opts
@config_opt
@report_opt
def norm_stab(n, samples, seed, config, report_path):
    field = _field_from_config(config)
    try:
        report = norms.stab_oracle_check(field, n, samples=samples,
                                         rng=random.Random(seed))
    except norms.NormError as exc:
        raise InputError(str(exc))
    _emit(report, report_path, report["ok"])


# -- buildings --------------------------------------------------------------------


@main.group()
def building():
    """Building instances and morphism certificates."""


@building.command("check")
@click.option("--instance", "name", required=True,
              type=click.Choice(buildings.INSTANCE_NAMES))
@click.option("--n", default=2, show_default=True)
@click.option("--m", default=2, show_default=True,
              help="subgroup size for block embeddings")
@_seed_opts
@report_opt
def building_check(name, n, m, samples, seed, report_path):
    try:
        report = buildings.run_instance_check(name, n=n, m=m,
                                              samples=samples, seed=seed)
    except buildings.BuildingError as exc:
        raise InputError(str(exc))
    _emit(report, report_path, report["ok"])


# -- rendering --------------------------------------------------------------------


@main.command("render")
@click.option("--tag", default=None)
@click.option("--rank", default=None, type=int)
@click.option("--embed", default=None,
              help="embedding JSON or stock name, drawn as an overlay")
@click.option("--svg", "svg_path", required=True,
              type=click.Path(dir_okay=False))
@click.option("--size", default=420, show_default=True)
def render_cmd(tag, rank, embed, svg_path, size):
    """Draw a rank-2 root system (or embedding overlay) as SVG."""
    if embed is not None:
        pair = _load_pair(embed)
        try:
            text = render.render_pair(pair, size=size)
        except render.RenderError as exc:
            raise InputError(str(exc))
    elif tag is not None:
        try:
            rs = build_root_system(tag, rank)
            text = render.render_rank2(rs, size=size)
        except (RootSystemError, render.RenderError) as exc:
            raise InputError(str(exc))
    else:
        raise InputError("render needs --tag or --embed")
    render.render_to_file(svg_path, text)
    click.echo("svg: %s" % svg_path)


if __name__ == "__main__":
    main()
