"""Adaptable ultrametric norms with rational exponent weights.

A norm here is given by an adapted basis E and weights w_i: the vector
E.a gets the value max_i e^{-w_i}|a_i| with |c| = e^{-v(c)}.  Everything
is computed on exponents, where the same rule reads

    exponent(E.a) = min_i (v(a_i) + w_i),

so the module never touches real exponentials.  Homothety classes fix
the first weight to zero; equality of classes reduces the pair to a
common adapted basis and compares weight vectors up to a uniform shift.
Requires a rank-1 value group.
"""

import random
from fractions import Fraction as Q

from . import linalg
from .lattices import field_matrix, random_sl
from .ordered import INFINITY, LexValue

__all__ = [
    "NormError", "AdaptedNorm", "NormClass", "standard_norm", "eta_x",
    "act", "chart_eval", "simultaneous_adaptation", "relative_position",
    "evaluation_agreement", "stab_inequality_membership",
    "determinant_identity_report", "stab_oracle_check",
    "norm_to_json", "norm_from_json",
]


class NormError(ValueError):
    pass


def _require_rank_one(field):
    if field.value_rank != 1:
        raise NormError("norms need a rank-1 value group, got rank %d"
                        % field.value_rank)


def _val_q(field, x):
    """Valuation as a Fraction, INFINITY for zero."""
    v = field.valuation(x)
    if v is INFINITY:
        return INFINITY
    return v.as_rational()


class AdaptedNorm:
    """Ultrametric norm described by a basis it is adapted to."""

    __slots__ = ("field", "basis", "weights", "_inv")

    def __init__(self, field, basis, weights):
        _require_rank_one(field)
        self.field = field
        self.basis = field_matrix(field, basis)
        n = len(self.basis)
        if any(len(row) != n for row in self.basis):
            raise NormError("basis matrix must be square")
        if linalg.det(self.basis) == field.zero:
            raise NormError("basis matrix is singular")
        self._inv = linalg.inverse(self.basis)
        self.weights = tuple(Q(w) for w in weights)
        if len(self.weights) != n:
            raise NormError("need one weight per basis vector")

    @property
    def n(self):
        return len(self.basis)

    def eval_exponent(self, vec):
        """min_i(v(a_i) + w_i) for vec = E.a; INFINITY only at zero."""
        vec = [self.field.coerce(x) for x in vec]
        coords = linalg.mat_vec(self._inv, vec)
        best = INFINITY
        for a, w in zip(coords, self.weights):
            v = _val_q(self.field, a)
            if v is INFINITY:
                continue
            if best is INFINITY or v + w < best:
                best = v + w
        return best

    def shift(self, c):
        """Homothety by exponent c: every value scaled by e^{-c}."""
        return AdaptedNorm(self.field, self.basis,
                           [w + Q(c) for w in self.weights])

    def to_class(self):
        return NormClass(self)

    def __repr__(self):
        return "AdaptedNorm(n=%d, weights=%s)" % (
            self.n, [str(w) for w in self.weights])


class NormClass:
    """Homothety class of an adaptable norm, first weight pinned to 0."""

    __slots__ = ("norm", "_position")

    def __init__(self, norm):
        shift = norm.weights[0]
        if shift != 0:
            norm = norm.shift(-shift)
        self.norm = norm
        self._position = None

    @property
    def field(self):
        return self.norm.field

    @property
    def n(self):
        return self.norm.n

    def position(self):
        """Weight gaps against the standard class; a class invariant."""
        if self._position is None:
            _, u, w = simultaneous_adaptation(
                standard_norm(self.field, self.n), self.norm)
            gaps = sorted(ui - wi for ui, wi in zip(u, w))
            self._position = tuple(g - gaps[0] for g in gaps)
        return self._position

    def __eq__(self, other):
        if not isinstance(other, NormClass):
            return NotImplemented
        if self.field.kind != other.field.kind or self.n != other.n:
            return False
        if self.position() != other.position():
            return False
        _, u, w = simultaneous_adaptation(self.norm, other.norm)
        gaps = {ui - wi for ui, wi in zip(u, w)}
        return len(gaps) == 1

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.field.kind, self.n, self.position()))

    def __repr__(self):
        return "NormClass(n=%d, weights=%s)" % (
            self.n, [str(w) for w in self.norm.weights])


def standard_norm(field, n):
    """Weights zero in the standard basis (the lattice sup norm)."""
    return AdaptedNorm(field, linalg.identity(n), [Q(0)] * n)


def eta_x(field, x):
    """Standard-basis norm with weight x_i on e_i."""
    return AdaptedNorm(field, linalg.identity(len(x)), x)


def act(field, g, norm):
    """g moves the norm to v -> norm(g^{-1} v): adapted basis gE."""
    g = field_matrix(field, g)
    if linalg.det(g) == field.zero:
        raise NormError("group element is singular")
    return AdaptedNorm(field, linalg.mat_mul(g, norm.basis), norm.weights)


def chart_eval(field, basis, base_weights, x):
    """Class with weights w_i + x_i; x ranges over the trace-zero slice."""
    x = [Q(xi) for xi in x]
    if sum(x) != 0:
        raise NormError("chart input must have coordinate sum zero")
    weights = [Q(w) + xi for w, xi in zip(base_weights, x)]
    return AdaptedNorm(field, basis, weights).to_class()


def simultaneous_adaptation(n1, n2):
    """Basis adapted to both norms, with its two weight vectors.

    Weighted two-sided reduction of M = E1^{-1}E2: the pivot minimizes
    the score v(m_ij) + u_i - w_j over the remaining submatrix, which
    keeps every row and column operation weight-legal on both sides.
    Returns (basis columns, weights for n1, weights for n2); the score
    gaps u_k - w_k come out non-decreasing.
    """
    field = n1.field
    if field.kind != n2.field.kind or n1.n != n2.n:
        raise NormError("norms live on different spaces")
    n = n1.n
    m = [list(row) for row in linalg.mat_mul(n1._inv, n2.basis)]
    basis = [list(row) for row in n2.basis]
    u = list(n1.weights)
    w = list(n2.weights)
    zero = field.zero
    for top in range(n):
        best = None
        for i in range(top, n):
            for j in range(top, n):
                if m[i][j] == zero:
                    continue
                s = _val_q(field, m[i][j]) + u[i] - w[j]
                if best is None or s < best[0]:
                    best = (s, i, j)
        if best is None:
            raise NormError("basis change is singular")
        _, pi, pj = best
        if pi != top:
            m[pi], m[top] = m[top], m[pi]
            u[pi], u[top] = u[top], u[pi]
        if pj != top:
            for row in m:
                row[pj], row[top] = row[top], row[pj]
            for row in basis:
                row[pj], row[top] = row[top], row[pj]
            w[pj], w[top] = w[top], w[pj]
        piv = m[top][top]
        for i in range(top + 1, n):
            if m[i][top] != zero:
                r = m[i][top] / piv
                for j in range(top, n):
                    m[i][j] = m[i][j] - r * m[top][j]
        for j in range(top + 1, n):
            if m[top][j] != zero:
                r = m[top][j] / piv
                for i in range(top, n):
                    m[i][j] = m[i][j] - r * m[i][top]
                for i in range(n):
                    basis[i][j] = basis[i][j] - r * basis[i][top]
    u_out = tuple(_val_q(field, m[k][k]) + u[k] for k in range(n))
    return basis, u_out, tuple(w)


def relative_position(c1, c2):
    """Non-decreasing score vector of the pair in a common basis."""
    _, u, w = simultaneous_adaptation(c1.norm, c2.norm)
    return tuple(ui - wi for ui, wi in zip(u, w))


def evaluation_agreement(c1, c2, samples=50, rng=None):
    """One-sided oracle: equal classes show one constant exponent gap.

    A non-constant gap refutes equality; a constant gap on the samples
    is only necessary, the reduction stays the decision procedure.
    """
    rng = rng or random.Random(0)
    field = c1.field
    n = c1.n
    gaps = set()
    for _ in range(samples):
        vec = [field.random_element(rng) if rng.random() < 0.8
               else field.zero for _ in range(n)]
        if all(x == field.zero for x in vec):
            vec[rng.randrange(n)] = field.one
        e1 = c1.norm.eval_exponent(vec)
        e2 = c2.norm.eval_exponent(vec)
        gaps.add(e1 - e2)
    return {"constant_gap": len(gaps) == 1, "gaps": sorted(gaps)}


def _alpha(x, i, j):
    return x[i] - x[j]


def stab_inequality_membership(field, g, x):
    """Entry inequalities for fixing the class of eta_x.

    Both g and its inverse must satisfy v(entry_ij) >= v(det)/n minus
    the root pairing x_i - x_j.
    """
    g = field_matrix(field, g)
    n = len(g)
    x = [Q(xi) for xi in x]
    det = linalg.det(g)
    if det == field.zero:
        raise NormError("group element is singular")
    vdet = _val_q(field, det)
    pairs = ((g, vdet), (linalg.inverse(g), -vdet))
    for mat, dv in pairs:
        bound = dv / n
        for i in range(n):
            for j in range(n):
                v = _val_q(field, mat[i][j])
                if v is INFINITY:
                    continue
                if v < bound - _alpha(x, i, j):
                    return False
    return True


def determinant_identity_report(field, g, x):
    """Exponent form of the determinant product law at eta_x.

    lhs = v(det g), rhs = sum_j exponent(g e_j) - sum_j x_j.  The
    ultrametric bound lhs >= rhs holds for every invertible g; equality
    is the adapted-bases product law and is guaranteed whenever g fixes
    the class of eta_x (eta_x is then adapted to gE as well).
    """
    g = field_matrix(field, g)
    n = len(g)
    x = [Q(xi) for xi in x]
    det = linalg.det(g)
    if det == field.zero:
        raise NormError("group element is singular")
    eta = eta_x(field, x)
    lhs = _val_q(field, det)
    rhs = -sum(x)
    for j in range(n):
        col = [g[i][j] for i in range(n)]
        rhs += eta.eval_exponent(col)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs,
            "inequality_ok": lhs >= rhs}


def _random_slice_point(n, rng):
    x = [Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n - 1)]
    x.append(-sum(x))
    return x


def _identity_rows(field, n):
    return [[field.one if i == j else field.zero for j in range(n)]
            for i in range(n)]


def _random_stabilizing_element(field, n, x, rng):
    """Product of factors built to satisfy the entry inequalities."""
    g = _identity_rows(field, n)
    for _ in range(rng.randint(1, 4)):
        kind = rng.choice(("elem", "units", "scalar"))
        f = _identity_rows(field, n)
        if kind == "elem":
            i, j = rng.sample(range(n), 2)
            gap = x[j] - x[i]
            k = -(-gap.numerator // gap.denominator) + rng.randint(0, 2)
            f[i][j] = field.element_with_valuation(
                LexValue([Q(k)])) * field.random_unit(rng)
        elif kind == "units":
            for i in range(n):
                f[i][i] = field.random_unit(rng)
        else:
            c = field.element_with_valuation(
                LexValue([Q(rng.randint(-2, 2))]))
            f = [[c if i == j else field.zero for j in range(n)]
                 for i in range(n)]
        g = linalg.mat_mul(g, f)
    return g


def stab_oracle_check(field, n, samples=100, rng=None):
    """Entry inequalities against the direct class-equality oracle.

    Alternates generic elements with elements built to stabilize, so
    both verdicts occur.  Every sample also exercises the determinant
    law: the ultrametric bound always, equality whenever the oracle
    reports a stabilizer.
    """
    _require_rank_one(field)
    rng = rng or random.Random(0)
    report = {"field": field.kind, "n": n, "samples": samples,
              "stabilizing": 0, "disagreements": 0,
              "first_disagreement": None, "det_identity_failures": 0,
              "ok": True}
    for k in range(samples):
        x = _random_slice_point(n, rng)
        if k % 2 == 0:
            g = random_sl(field, n, rng)
            c = field.element_with_valuation(
                LexValue([Q(rng.randint(-1, 1))]))
            g = [[c * entry for entry in row] for row in g]
        else:
            g = _random_stabilizing_element(field, n, x, rng)
        predicted = stab_inequality_membership(field, g, x)
        base = eta_x(field, x)
        direct = act(field, g, base).to_class() == base.to_class()
        det_report = determinant_identity_report(field, g, x)
        if direct:
            report["stabilizing"] += 1
        if predicted != direct:
            report["disagreements"] += 1
            if report["first_disagreement"] is None:
                report["first_disagreement"] = {
                    "sample": k, "predicted": predicted, "direct": direct,
                    "x": [str(xi) for xi in x],
                    "g": linalg.matrix_to_json(g)}
        if not det_report["inequality_ok"] or (direct and
                                               not det_report["equal"]):
            report["det_identity_failures"] += 1
    report["ok"] = (report["disagreements"] == 0
                    and report["det_identity_failures"] == 0
                    and 0 < report["stabilizing"] < samples)
    return report


def norm_to_json(norm):
    return {"basis": linalg.matrix_to_json(norm.basis),
            "weights": [str(w) for w in norm.weights]}


def norm_from_json(field, obj):
    grid = obj["basis"]
    if isinstance(grid, dict):
        grid = grid["entries"]
    basis = [[field.parse(entry) for entry in row] for row in grid]
    return AdaptedNorm(field, basis, [Q(w) for w in obj["weights"]])
