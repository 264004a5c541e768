"""Extending Weyl group elements along an embedded sub root system.

Setup: a root system Σ′ in ℚ^d and a second system Σ realized inside the
same space, spanning a subspace V.  Given compatible chamber choices and a
V-regular base point, every w ∈ W(Σ) extends to a unique σ(w) ∈ W(Σ′) fixing
how chambers around V are matched.  The extension exists exactly when the
chamber-compatibility condition (checked by `check_condition_triangle`)
holds; it is decided here as an exact polyhedral computation.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import cones, linalg
from .roots import RootSystem, RootSystemError, WeylElement, build_root_system

Q = Fraction


class EmbeddingError(ValueError):
    pass


class EmbeddedPair:
    """A root system `sub` sitting inside the ambient space of `ambient`.

    Both systems share the ambient gram; V = Span(sub roots).  Chamber
    choices are the bases carried by the two systems.  Construction fails
    unless the two closed dominant chambers share a V-regular point.
    """

    __slots__ = ("ambient", "sub", "v_basis", "vanishing", "regular_point")

    def __init__(self, ambient: RootSystem, sub: RootSystem):
        if sub.ambient_dim != ambient.ambient_dim:
            raise EmbeddingError("sub and ambient live in different spaces")
        if sub.gram != ambient.gram:
            raise EmbeddingError("sub system must carry the ambient gram")
        self.ambient = ambient
        self.sub = sub
        self.v_basis = linalg.span_basis(sub.roots)
        self.vanishing = ambient.vanishing_roots(self.v_basis)
        self.regular_point = find_V_regular_point(self)

    @property
    def v_dim(self) -> int:
        return len(self.v_basis)

    def from_v_coords(self, y: Sequence[Q]) -> Tuple[Q, ...]:
        cols = linalg.transpose(linalg.from_rows(self.v_basis))
        return linalg.mat_vec(cols, y)

    def intersection_rows(self) -> List[Tuple[Q, ...]]:
        """C_0 ∩ C_0′ as inequality rows over V-coordinates."""
        rows = [_functional_row(self.ambient, d, self.v_basis)
                for d in self.sub.basis]
        rows += [_functional_row(self.ambient, d, self.v_basis)
                 for d in self.ambient.basis]
        return rows

    def __repr__(self):
        return "EmbeddedPair(%s in %s, dim V = %d)" % (
            self.sub.tag, self.ambient.tag, self.v_dim)


def _functional_row(rs: RootSystem, beta, basis) -> Tuple[Q, ...]:
    return tuple(rs.inner(beta, b) for b in basis)


def find_V_regular_point(pair: EmbeddedPair, attempts: int = 64):
    """A point of C_0 ∩ C_0′ vanishing on exactly the V-vanishing roots.

    Prime-weighted sums of the extreme rays of C_0 ∩ C_0′ ∩ V; distinct
    weights avoid accidental wall hits, and the prime window slides on
    failure.
    """
    rows = pair.intersection_rows()
    rays = cones.extreme_rays(rows, pair.v_dim)
    if not rays:
        raise EmbeddingError(
            "C_0 and C_0' intersect V in the trivial cone (empty interior)")
    vanish = set(pair.vanishing)
    primes = cones._primes(len(rays) + attempts)
    for shift in range(attempts):
        weights = primes[shift:shift + len(rays)]
        y = tuple(sum((Q(c) * r[i] for c, r in zip(weights, rays)), Q(0))
                  for i in range(pair.v_dim))
        p = pair.from_v_coords(y)
        hits = set(pair.ambient.vanishing_roots([p]))
        sub_regular = all(pair.ambient.inner(a, p) != 0 for a in pair.sub.roots)
        if hits == vanish and sub_regular:
            return p
    flat = cones.implicit_equalities([linalg.qvec(r) for r in rows], pair.v_dim)
    detail = ("interior of C_0 ∩ C_0' ∩ V is empty in V" if flat
              else "prime search exhausted")
    raise EmbeddingError("no V-regular point found: %s" % detail)


def check_condition_triangle(pair: EmbeddedPair) -> dict:
    """Decide: x ∈ C_0 ∩ C_0′ and w(x) ∈ w′(C_0′) imply w(x) = w′(x).

    Per (w, w′) the constraint set is a polyhedral cone K in V; both sides
    are linear, so the implication holds iff w − w′ vanishes on span(K),
    computed from the implicit equalities of K.  On failure the witness is
    a relative-interior point of K moving differently under w and w′.
    """
    m = pair.v_dim
    if m > 4:
        raise EmbeddingError("dimension guard exceeded (dim V = %d)" % m)
    base_rows = pair.intersection_rows()
    amb = pair.ambient
    pairs = 0
    for w in pair.sub.weyl_group():
        for wp in amb.weyl_group():
            pairs += 1
            move = linalg.mat_mul(wp.inverse().matrix, w.matrix)
            moved = [linalg.mat_vec(move, b) for b in pair.v_basis]
            rows = base_rows + [
                tuple(amb.inner(d, v) for v in moved) for d in amb.basis]
            diff = linalg.mat_sub(w.matrix, wp.matrix)
            diff_b = [linalg.mat_vec(diff, b) for b in pair.v_basis]
            if all(linalg.is_zero_vec(v) for v in diff_b):
                continue

            def moves_apart(y, diff_b=diff_b):
                img = tuple(
                    sum((y[i] * diff_b[i][j] for i in range(len(y))), Q(0))
                    for j in range(amb.ambient_dim))
                return not linalg.is_zero_vec(img)

            span = cones.cone_span_basis(rows, m)
            if not any(moves_apart(n) for n in span):
                continue
            y = cones.relative_interior_point(
                rows, m, avoid=lambda q: not moves_apart(q))
            if y is None:
                raise EmbeddingError("could not realize a witness point")
            return {"ok": False, "pairs": pairs,
                    "witness": {"w": w, "w_prime": wp,
                                "x": pair.from_v_coords(y)}}
    return {"ok": True, "pairs": pairs, "witness": None}


def _chamber_interior_point(rs: RootSystem) -> Tuple[Q, ...]:
    rows = linalg.from_rows([linalg.mat_vec(rs.gram, d) for d in rs.basis])
    q = linalg.solve(rows, linalg.qvec([1] * rs.rank))
    assert q is not None and rs.is_regular(q)
    return q


def construct_sigma(pair: EmbeddedPair) -> Dict[WeylElement, WeylElement]:
    """The injective homomorphism W(sub) → W(ambient) restricting to w on V.

    For each w, the target chamber is cut out by the positive sides of all
    V-vanishing walls (this pins the choice when w(p) sits on walls) and by
    the sides the remaining walls see of w(p).  Chambers are identified via
    sign vectors at one regular sample, using simple transitivity.
    """
    amb = pair.ambient
    p = pair.regular_point
    pos = amb.positive_roots
    vanish = set(pair.vanishing)
    q0 = _chamber_interior_point(amb)
    by_signs = {}
    for wp in amb.weyl_group():
        q = wp.act(q0)
        sig = tuple(1 if amb.inner(a, q) > 0 else -1 for a in pos)
        if sig in by_signs:
            raise EmbeddingError("two chambers share a sign vector (bug)")
        by_signs[sig] = wp
    sigma = {}
    for w in pair.sub.weyl_group():
        image = w.act(p)
        if set(amb.vanishing_roots([image])) != vanish:
            raise EmbeddingError("w(p) is not V-regular (bug)")
        sig = tuple(1 if a in vanish else
                    (1 if amb.inner(a, image) > 0 else -1) for a in pos)
        target = by_signs.get(sig)
        if target is None:
            raise EmbeddingError("no chamber matches the sign vector (bug)")
        sigma[w] = target
    _verify_sigma(pair, sigma)
    return sigma


def _verify_sigma(pair: EmbeddedPair, sigma: Dict[WeylElement, WeylElement]):
    W = pair.sub.weyl_group()
    for w1 in W:
        for w2 in W:
            if sigma[w1 * w2] != sigma[w1] * sigma[w2]:
                raise EmbeddingError("extension is not a homomorphism at "
                                     "(%r, %r)" % (w1.word, w2.word))
    if len(set(sigma.values())) != len(W):
        raise EmbeddingError("extension is not injective")
    for w, wp in sigma.items():
        for b in pair.v_basis:
            if wp.act(b) != w.act(b):
                raise EmbeddingError("extension of %r does not restrict to it "
                                     "on V" % (w.word,))
    fan_walls = {a for a in pair.vanishing
                 if a in set(pair.ambient.positive_roots)}
    for wp in sigma.values():
        if {wp.act(a) for a in fan_walls} != fan_walls:
            raise EmbeddingError("extension does not preserve the fan region")


def sigma_image_size(sigma: Dict[WeylElement, WeylElement]) -> int:
    return len(set(sigma.values()))


def build_apartment_morphism_from_embedding(pair: EmbeddedPair, gamma):
    """Apartment morphism induced by the embedding: L includes V into
    Span(Σ′) in simple-root coordinates, σ_s extends Weyl elements."""
    from . import apartments, morphisms

    amb_cols = linalg.transpose(linalg.from_rows(pair.ambient.basis))
    cols = []
    for d in pair.sub.basis:
        sol = linalg.solve(amb_cols, d)
        if sol is None:
            raise EmbeddingError("sub-system root %r lies outside the span "
                                 "of the ambient roots" % (d,))
        cols.append(sol)
    L = linalg.transpose(linalg.from_rows(cols))
    sigma = construct_sigma(pair)
    domain = apartments.ModelApartment(pair.sub, gamma.domain_rank)
    codomain = apartments.ModelApartment(pair.ambient, gamma.codomain_rank)
    return morphisms.ApartmentMorphism(domain, codomain, L, gamma, sigma)


# -- sampling oracle ----------------------------------------------------------

def sample_triangle_oracle(pair: EmbeddedPair, samples: int = 1000,
                           rng: Optional[random.Random] = None) -> dict:
    """Brute-force the chamber-compatibility implication at random points.

    Draws conic combinations of the extreme rays of C_0 ∩ C_0′, locates
    every chamber closure containing w(x) by sign compatibility, and checks
    w(x) = w′(x) there.  Used to cross-check `check_condition_triangle`.
    """
    rng = rng or random.Random(0)
    rays = cones.extreme_rays(pair.intersection_rows(), pair.v_dim)
    amb = pair.ambient
    pos = amb.positive_roots
    q0 = _chamber_interior_point(amb)
    chamber_signs = []
    for wp in amb.weyl_group():
        q = wp.act(q0)
        chamber_signs.append(
            (wp, tuple(1 if amb.inner(a, q) > 0 else -1 for a in pos)))
    violations = 0
    first = None
    for _ in range(samples):
        y = tuple(Q(rng.randint(0, 24), rng.randint(1, 4)) for _ in rays)
        x = pair.from_v_coords(tuple(
            sum((y[k] * r[i] for k, r in enumerate(rays)), Q(0))
            for i in range(pair.v_dim)))
        for w in pair.sub.weyl_group():
            wx = w.act(x)
            svec = [amb.inner(a, wx) for a in pos]
            svec = tuple(0 if v == 0 else (1 if v > 0 else -1) for v in svec)
            for wp, csig in chamber_signs:
                inside = all(s == 0 or s == c for s, c in zip(svec, csig))
                if inside and wx != wp.act(x):
                    violations += 1
                    if first is None:
                        first = {"x": x, "w": w, "w_prime": wp}
    return {"samples": samples, "violations": violations, "first": first,
            "ok": violations == 0}


# -- stock embeddings ---------------------------------------------------------

def a1_perp_in_a2() -> EmbeddedPair:
    """V = the highest-root line of A_2 (wall-perpendicular): compatible."""
    ambient = build_root_system("A", 2)
    sub = build_root_system("A1-PERP", roots=[(1, 0, -1), (-1, 0, 1)],
                            gram=linalg.identity(3), basis=[(1, 0, -1)])
    return EmbeddedPair(ambient, sub)


def a1_tilted_in_a2() -> EmbeddedPair:
    """V = a line of the A_2 plane through no special direction: fails."""
    ambient = build_root_system("A", 2)
    sub = build_root_system("A1-TILT", roots=[(3, -1, -2), (-3, 1, 2)],
                            gram=linalg.identity(3), basis=[(3, -1, -2)])
    return EmbeddedPair(ambient, sub)


def a1_diag_in_a1xa1() -> EmbeddedPair:
    """Diagonal line in a rank-2 product; w(p) sits on no wall, the
    extension of the flip is the product of both factor flips."""
    ambient = build_root_system("A1XA1", roots=[(1, 0), (-1, 0), (0, 1), (0, -1)],
                                gram=linalg.identity(2), basis=[(1, 0), (0, 1)])
    sub = build_root_system("A1-DIAG", roots=[(1, 1), (-1, -1)],
                            gram=linalg.identity(2), basis=[(1, 1)])
    return EmbeddedPair(ambient, sub)


def a2_long_in_g2() -> EmbeddedPair:
    """The long roots of G_2 form an A_2; the extension misses half of W(G_2)."""
    ambient = build_root_system("G2")
    long_roots = [a for a in ambient.roots if ambient.inner(a, a) == 6]
    sub = build_root_system("A2-LONG", roots=long_roots, gram=ambient.gram,
                            basis=[(-2, 1, 1), (1, -2, 1)])
    return EmbeddedPair(ambient, sub)


def b2_in_a3() -> EmbeddedPair:
    """B_2 on the plane {(a, b, -b, -a)} inside A_3 (the symplectic plane)."""
    ambient = build_root_system("A", 3)
    roots = [(1, 0, 0, -1), (0, 1, -1, 0), (1, -1, 1, -1), (1, 1, -1, -1)]
    roots += [linalg.vec_neg(linalg.qvec(r)) for r in roots]
    sub = build_root_system("B2-SP4", roots=roots, gram=linalg.identity(4),
                            basis=[(0, 1, -1, 0), (1, -1, 1, -1)])
    return EmbeddedPair(ambient, sub)


def block_in_a(m: int, n: int) -> EmbeddedPair:
    """A_{m-1} on the first m trace-zero coordinates of A_{n-1}.

    The standard dominant chamber of the big system misses V entirely (a
    descending head summing to zero ends negative, below the zero tail), so
    the ambient chamber is the one whose closure contains a generic head
    point.  The tail coordinates carry vanishing walls, so the fan region
    does real disambiguation here.
    """
    if not 2 <= m < n:
        raise EmbeddingError("need 2 <= m < n")

    def unit(i):
        return tuple(Q(1) if j == i else Q(0) for j in range(n))

    head = [Q(i) for i in range(m, 1, -1)]
    head.append(-sum(head))
    sample = tuple(head) + (Q(0),) * (n - m)
    order = sorted(range(n), key=lambda i: (-sample[i], i))
    amb_roots = [linalg.vec_sub(unit(i), unit(j))
                 for i in range(n) for j in range(n) if i != j]
    amb_basis = [linalg.vec_sub(unit(order[k]), unit(order[k + 1]))
                 for k in range(n - 1)]
    ambient = build_root_system("A", roots=amb_roots,
                                gram=linalg.identity(n), basis=amb_basis)
    roots = [linalg.vec_sub(unit(i), unit(j))
             for i in range(m) for j in range(m) if i != j]
    basis = [linalg.vec_sub(unit(i), unit(i + 1)) for i in range(m - 1)]
    sub = build_root_system("A%d-BLOCK" % (m - 1), roots=roots,
                            gram=linalg.identity(n), basis=basis)
    return EmbeddedPair(ambient, sub)


STOCK_PAIRS = {
    "a1-perp-in-a2": a1_perp_in_a2,
    "a1-tilted-in-a2": a1_tilted_in_a2,
    "a1-diag-in-a1xa1": a1_diag_in_a1xa1,
    "a2-long-in-g2": a2_long_in_g2,
    "b2-in-a3": b2_in_a3,
}


# -- serialization ------------------------------------------------------------

def embedded_pair_to_json(pair: EmbeddedPair) -> dict:
    return {
        "ambient": pair.ambient.to_json(),
        "sub_tag": pair.sub.tag,
        "sub_roots": [[str(c) for c in r] for r in pair.sub.roots],
        "sub_basis": [[str(c) for c in b] for b in pair.sub.basis],
    }


def embedded_pair_from_json(obj: dict) -> EmbeddedPair:
    spec = obj["ambient"]
    if "roots" in spec:
        ambient = RootSystem.from_json(spec)
    else:
        ambient = build_root_system(spec["tag"], spec.get("rank"))
    sub_roots = [tuple(Q(c) for c in r) for r in obj["sub_roots"]]
    sub_basis = [tuple(Q(c) for c in b) for b in obj["sub_basis"]] \
        if "sub_basis" in obj else None
    sub = build_root_system(obj.get("sub_tag", "SUB"), roots=sub_roots,
                            gram=ambient.gram, basis=sub_basis)
    return EmbeddedPair(ambient, sub)
