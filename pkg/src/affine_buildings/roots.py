"""Crystallographic root systems in exact rational coordinates.

Shipped realizations avoid irrational entries: A_{n-1} lives in the
sum-zero hyperplane of ℚ^n, G_2 in the sum-zero hyperplane of ℚ³ with short
roots e_i − e_j and long roots 2e_i − e_j − e_k, B/C/D in ℚ^r.  Custom
systems (root list + gram) are accepted and the three defining axioms are
verified on construction either way.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg

Q = Fraction
Vector = Tuple[Q, ...]


class RootSystemError(ValueError):
    """A root-system axiom failed; message names the axiom and a witness."""


class RootSystem:
    __slots__ = ("tag", "rank", "ambient_dim", "roots", "gram", "basis",
                 "basis_indices", "positive_roots", "_root_index", "_weyl")

    def __init__(self, tag: str, roots: Sequence[Vector], gram: linalg.Matrix,
                 basis: Optional[Sequence[Vector]] = None):
        self.tag = tag
        self.roots = tuple(sorted(set(linalg.qvec(r) for r in roots)))
        self.gram = linalg.qmat(gram)
        self.ambient_dim = len(self.gram)
        self._verify_axioms()
        if basis is None:
            basis = self._find_base()
        self.basis = tuple(linalg.qvec(b) for b in basis)
        self.rank = len(self.basis)
        self._root_index = {r: i for i, r in enumerate(self.roots)}
        self.basis_indices = tuple(self._root_index[b] for b in self.basis)
        self.positive_roots = self._positive_roots()
        self._weyl = None

    # -- pairing ------------------------------------------------------------

    def inner(self, x: Sequence, y: Sequence) -> Q:
        return linalg.vec_dot(linalg.mat_vec(self.gram, x), y)

    def coroot_value(self, alpha: Vector, x: Sequence) -> Q:
        return 2 * self.inner(alpha, x) / self.inner(alpha, alpha)

    def coroot(self, alpha: Vector) -> Vector:
        """α∨ as a covector: x ↦ α∨·x is the pairing against α, scaled."""
        if alpha not in self._root_index:
            raise RootSystemError("%r is not a root" % (alpha,))
        c = 2 / self.inner(alpha, alpha)
        return tuple(c * v for v in linalg.mat_vec(self.gram, alpha))

    # -- construction checks --------------------------------------------------

    def _verify_axioms(self):
        if not self.roots:
            raise RootSystemError("empty root set")
        zero = (Q(0),) * self.ambient_dim
        if zero in self.roots:
            raise RootSystemError("axiom (finiteness/nonzero): 0 is listed as a root")
        for r in self.roots:
            if len(r) != self.ambient_dim:
                raise RootSystemError("root %r does not match gram dimension" % (r,))
        root_set = set(self.roots)
        for a in self.roots:
            if self.inner(a, a) <= 0:
                raise RootSystemError("gram is not positive on root %r" % (a,))
            for b in self.roots:
                pairing = self.coroot_value(a, b)
                if pairing.denominator != 1:
                    raise RootSystemError(
                        "axiom (integrality): %r∨(%r) = %s" % (a, b, pairing))
        for a in self.roots:
            refl = reflection_matrix(self, a)
            for b in self.roots:
                image = linalg.mat_vec(refl, b)
                if image not in root_set:
                    raise RootSystemError(
                        "axiom (reflection closure): r_%r(%r) = %r is not a root"
                        % (a, b, image))
        for a in self.roots:
            for b in self.roots:
                if a == b:
                    continue
                # reduced: no two distinct roots on the same positive ray
                ratios = {bx / ax for ax, bx in zip(a, b) if ax != 0}
                if len(ratios) == 1 and next(iter(ratios)) > 0 and \
                        all(bx == 0 for ax, bx in zip(a, b) if ax == 0):
                    raise RootSystemError(
                        "non-reduced pair %r, %r rejected" % (a, b))

    def _find_base(self) -> Tuple[Vector, ...]:
        """Indecomposable positive roots for a generic positive functional."""
        d = self.ambient_dim
        n = 1
        while True:
            f = tuple(Q(n) ** i for i in range(d))
            vals = {r: linalg.vec_dot(f, r) for r in self.roots}
            if all(v != 0 for v in vals.values()):
                break
            n += 1
        pos = [r for r in self.roots if vals[r] > 0]
        pos_set = set(pos)
        simple = []
        for r in pos:
            if not any((a != r and tuple(x - y for x, y in zip(r, a)) in pos_set)
                       for a in pos):
                simple.append(r)
        return tuple(sorted(simple))

    def _positive_roots(self) -> Tuple[Vector, ...]:
        basis_cols = linalg.from_rows(list(zip(*self.basis)))
        pos = []
        for r in self.roots:
            coeffs = linalg.solve(basis_cols, r)
            if coeffs is None:
                raise RootSystemError("%r is not in the span of the base" % (r,))
            if any(c.denominator != 1 for c in coeffs):
                raise RootSystemError(
                    "base is not integral: %r has coefficients %r" % (r, coeffs))
            signs = {1 if c > 0 else -1 for c in coeffs if c != 0}
            if len(signs) != 1:
                raise RootSystemError(
                    "base does not split %r into a signed combination" % (r,))
            if signs == {1}:
                pos.append(r)
        return tuple(pos)

    # -- queries ----------------------------------------------------------

    def is_root(self, v: Sequence) -> bool:
        return linalg.qvec(v) in self._root_index

    def is_regular(self, p: Sequence) -> bool:
        return all(self.inner(a, p) != 0 for a in self.positive_roots)

    def chamber_of(self, p: Sequence) -> "Chamber":
        if not self.is_regular(p):
            raise RootSystemError("point %r lies on a wall" % (tuple(p),))
        x = linalg.qvec(p)
        word: List[int] = []
        for _ in range(2 * 1152 + 1):
            i = next((k for k, a in enumerate(self.basis)
                      if self.inner(a, x) < 0), None)
            if i is None:
                break
            x = linalg.mat_vec(reflection_matrix(self, self.basis[i]), x)
            word.append(i)
        else:
            raise RootSystemError("chamber reduction did not terminate")
        w = identity_weyl(self)
        for i in word:  # p = r_{i1}···r_{ik}(dominant x), in this order
            w = w * simple_reflection(self, i)
        signs = tuple(1 if self.inner(a, p) > 0 else -1 for a in self.positive_roots)
        return Chamber(signs, w)

    def vanishing_roots(self, span: Sequence[Sequence]) -> Tuple[Vector, ...]:
        """Roots whose wall contains every vector of the given list."""
        vecs = [linalg.qvec(s) for s in span]
        return tuple(a for a in self.roots
                     if all(self.inner(a, s) == 0 for s in vecs))

    def weyl_group(self) -> Tuple["WeylElement", ...]:
        if self._weyl is None:
            self._weyl = enumerate_weyl_group(self)
        return self._weyl

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "rank": self.rank,
            "roots": [[str(c) for c in r] for r in self.roots],
            "gram": linalg.matrix_to_json(self.gram),
            "basis_indices": list(self.basis_indices),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RootSystem":
        roots = [linalg.qvec([Q(c) for c in r]) for r in obj["roots"]]
        gram = linalg.matrix_from_json(obj["gram"])
        basis = [roots[i] for i in obj["basis_indices"]] if "basis_indices" in obj \
            else None
        rs = cls(obj.get("tag", "CUSTOM"), roots, gram, basis)
        return rs

    def __repr__(self):
        return "RootSystem(%s, rank %d, %d roots)" % (self.tag, self.rank,
                                                      len(self.roots))


class WeylElement:
    __slots__ = ("system", "matrix", "word")

    def __init__(self, system: RootSystem, matrix: linalg.Matrix,
                 word: Optional[Tuple[int, ...]] = None):
        self.system = system
        self.matrix = linalg.from_rows(matrix)
        self.word = word

    def act(self, v: Sequence) -> Vector:
        return linalg.mat_vec(self.matrix, v)

    def inverse(self) -> "WeylElement":
        word = None if self.word is None else tuple(reversed(self.word))
        return WeylElement(self.system, linalg.inverse(self.matrix), word)

    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(len(self.matrix))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.system, linalg.mat_mul(self.matrix, other.matrix),
                           word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        if self.word is not None:
            return "WeylElement(word=%s)" % (
                "e" if not self.word else "*".join("s%d" % i for i in self.word))
        return "WeylElement(%r)" % (self.matrix,)


class Chamber:
    """Open chamber, recorded by its sign vector over the positive roots."""

    __slots__ = ("signs", "weyl")

    def __init__(self, signs: Tuple[int, ...], weyl: WeylElement):
        self.signs = signs
        self.weyl = weyl

    def __eq__(self, other):
        return isinstance(other, Chamber) and self.signs == other.signs

    def __hash__(self):
        return hash(self.signs)

    def __repr__(self):
        return "Chamber(%s)" % "".join("+" if s > 0 else "-" for s in self.signs)


def reflection_matrix(rs: RootSystem, alpha: Vector) -> linalg.Matrix:
    d = rs.ambient_dim
    scale = 2 / rs.inner(alpha, alpha)
    c = tuple(scale * v for v in linalg.mat_vec(rs.gram, alpha))
    ident = linalg.identity(d)
    return tuple(tuple(ident[i][j] - alpha[i] * c[j] for j in range(d))
                 for i in range(d))


def reflection(rs: RootSystem, alpha: Vector) -> WeylElement:
    alpha = linalg.qvec(alpha)
    if alpha not in rs._root_index:
        raise RootSystemError("%r is not a root" % (alpha,))
    word = None
    if alpha in rs.basis:
        word = (rs.basis.index(alpha),)
    return WeylElement(rs, reflection_matrix(rs, alpha), word)


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return WeylElement(rs, reflection_matrix(rs, rs.basis[i]), (i,))


def identity_weyl(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, linalg.identity(rs.ambient_dim), ())


WEYL_SIZE_CAP = 1152  # |W(F_4)|, the largest group this desk should ever see


def enumerate_weyl_group(rs: RootSystem) -> Tuple[WeylElement, ...]:
    """Closure of the simple reflections, deduplicated by matrix.

    Breadth-first so every element carries a shortest word; output sorted by
    matrix for deterministic downstream iteration.
    """
    gens = [simple_reflection(rs, i) for i in range(len(rs.basis))]
    seen: Dict[linalg.Matrix, WeylElement] = {}
    frontier = [identity_weyl(rs)]
    seen[frontier[0].matrix] = frontier[0]
    while frontier:
        next_frontier = []
        for w in frontier:
            for g in gens:
                wg = w * g
                if wg.matrix not in seen:
                    seen[wg.matrix] = wg
                    next_frontier.append(wg)
                    if len(seen) > WEYL_SIZE_CAP:
                        raise RootSystemError("Weyl closure exceeded the size cap")
        frontier = next_frontier
    return tuple(seen[m] for m in sorted(seen))


def build_root_system(tag: str, rank: Optional[int] = None,
                      roots: Optional[Sequence[Sequence]] = None,
                      gram: Optional[Sequence[Sequence]] = None,
                      basis: Optional[Sequence[Sequence]] = None) -> RootSystem:
    if roots is not None:
        return RootSystem(tag if tag else "CUSTOM", roots, gram, basis)
    tag = tag.upper()
    if tag == "G2":
        return _build_g2()
    if rank is None or rank < 1:
        raise RootSystemError("rank required for tag %r" % (tag,))
    if tag == "A":
        return _build_a(rank)
    if tag in ("B", "C", "D"):
        return _build_bcd(tag, rank)
    raise RootSystemError("unknown root system tag %r" % (tag,))


def _unit(d: int, i: int) -> Vector:
    return tuple(Q(1) if j == i else Q(0) for j in range(d))


def _build_a(rank: int) -> RootSystem:
    n = rank + 1
    roots = [linalg.vec_sub(_unit(n, i), _unit(n, j))
             for i in range(n) for j in range(n) if i != j]
    basis = [linalg.vec_sub(_unit(n, i), _unit(n, i + 1)) for i in range(rank)]
    return RootSystem("A", roots, linalg.identity(n), basis)


def _build_bcd(tag: str, rank: int) -> RootSystem:
    if rank < 2:
        raise RootSystemError("tag %s needs rank >= 2" % tag)
    roots: List[Vector] = []
    for i in range(rank):
        for j in range(i + 1, rank):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(linalg.vec_add(
                        linalg.vec_scale(Q(si), _unit(rank, i)),
                        linalg.vec_scale(Q(sj), _unit(rank, j))))
    basis = [linalg.vec_sub(_unit(rank, i), _unit(rank, i + 1))
             for i in range(rank - 1)]
    if tag == "B":
        roots += [linalg.vec_scale(Q(s), _unit(rank, i))
                  for i in range(rank) for s in (1, -1)]
        basis.append(_unit(rank, rank - 1))
    elif tag == "C":
        roots += [linalg.vec_scale(Q(2 * s), _unit(rank, i))
                  for i in range(rank) for s in (1, -1)]
        basis.append(linalg.vec_scale(Q(2), _unit(rank, rank - 1)))
    else:
        if rank < 3:
            raise RootSystemError("tag D needs rank >= 3")
        basis.append(linalg.vec_add(_unit(rank, rank - 2), _unit(rank, rank - 1)))
    return RootSystem(tag, roots, linalg.identity(rank), basis)


def _build_g2() -> RootSystem:
    roots: List[Vector] = []
    for i in range(3):
        for j in range(3):
            if i != j:
                roots.append(linalg.vec_sub(_unit(3, i), _unit(3, j)))  # short
    for i in range(3):
        j, k = [a for a in range(3) if a != i]
        long = linalg.vec_sub(linalg.vec_scale(Q(2), _unit(3, i)),
                              linalg.vec_add(_unit(3, j), _unit(3, k)))
        roots.append(long)
        roots.append(linalg.vec_neg(long))
    alpha1 = (Q(1), Q(-1), Q(0))
    alpha2 = (Q(-2), Q(1), Q(1))
    return RootSystem("G2", roots, linalg.identity(3), (alpha1, alpha2))
