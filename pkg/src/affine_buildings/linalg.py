"""Exact linear algebra over ℚ (and any exact field) on tuple matrices.

Matrices are tuples of row tuples so they stay hashable; entries are
fractions.Fraction unless stated otherwise.  The elimination routines only
use +, -, *, / and equality against 0, so they also work verbatim for
rational-function field elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Q = Fraction
Vector = Tuple[Q, ...]
Matrix = Tuple[Vector, ...]


def from_rows(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def qmat(rows: Sequence[Sequence]) -> Matrix:
    """Matrix with every entry coerced to Fraction."""
    return tuple(tuple(Q(x) for x in r) for r in rows)


def qvec(v: Sequence) -> Vector:
    return tuple(Q(x) for x in v)


def mat_shape(m: Matrix) -> Tuple[int, int]:
    return len(m), len(m[0]) if m else 0


def identity(n: int) -> Matrix:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(Q(0) for _ in range(c)) for _ in range(r))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def scalar_mul(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def mat_mul(a: Matrix, b: Matrix):
    bt = list(zip(*b))
    return tuple(
        tuple(sum((ra[k] * col[k] for k in range(1, len(ra))), ra[0] * col[0]) for col in bt)
        for ra in a
    )


def mat_vec(a: Matrix, v: Sequence):
    return tuple(sum((row[k] * v[k] for k in range(1, len(row))), row[0] * v[0]) for row in a)


def vec_dot(u: Sequence, v: Sequence):
    return sum((u[k] * v[k] for k in range(1, len(u))), u[0] * v[0])


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(u: Vector) -> Vector:
    return tuple(-x for x in u)


def vec_scale(c, u: Vector) -> Vector:
    return tuple(c * x for x in u)


def is_zero_vec(u: Sequence) -> bool:
    return all(x == 0 for x in u)


def _row_echelon(rows: List[List]) -> Tuple[List[List], List[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    rows = [list(r) for r in m]
    _, pivots = _row_echelon(rows)
    return len(pivots)


def solve(a: Matrix, b: Sequence):
    """One solution x of a·x = b, or None if the system is inconsistent."""
    nrows, ncols = mat_shape(a)
    rows = [list(r) + [b[i]] for i, r in enumerate(a)]
    rows, pivots = _row_echelon(rows)
    pivots = [c for c in pivots if c < ncols]
    for i in range(len(rows)):
        if all(rows[i][c] == 0 for c in range(ncols)) and rows[i][ncols] != 0:
            return None
    zero = b[0] - b[0] if b else Q(0)
    x = [zero] * ncols
    for r_i, c in enumerate(pivots):
        x[c] = rows[r_i][ncols]
    return tuple(x)


def nullspace(m: Matrix) -> Tuple[Vector, ...]:
    """Basis of the right kernel {x : m·x = 0}."""
    nrows, ncols = mat_shape(m)
    if nrows == 0:
        return tuple(identity(ncols))
    rows = [list(r) for r in m]
    rows, pivots = _row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for r_i, c in enumerate(pivots):
            v[c] = -rows[r_i][f]
        basis.append(tuple(v))
    return tuple(basis)


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    one = None
    for r in m:
        for x in r:
            if x != 0:
                one = x / x  # unit of whatever field the entries live in
                break
        if one is not None:
            break
    if one is None:
        raise ValueError("matrix is singular")
    zero = one - one
    rows = [list(m[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    rows, pivots = _row_echelon(rows)
    if len([c for c in pivots if c < n]) != n:
        raise ValueError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def det(m: Matrix):
    """Determinant by fraction-free-ish elimination (exact field entries)."""
    n = len(m)
    rows = [list(r) for r in m]
    sign_flip = False
    acc = None
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            x = rows[0][0]
            return x - x  # zero of the field
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign_flip = not sign_flip
        p = rows[c][c]
        acc = p if acc is None else acc * p
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return -acc if sign_flip else acc


def column_space_contains(cols: Matrix, v: Sequence) -> bool:
    """Whether v lies in the span of the columns of the matrix."""
    return solve(cols, v) is not None


def span_basis(vectors: Sequence[Vector]) -> Tuple[Vector, ...]:
    """Subset-free basis of the span, in echelon form."""
    if not vectors:
        return ()
    rows = [list(v) for v in vectors]
    rows, pivots = _row_echelon(rows)
    return tuple(tuple(r) for r in rows[: len(pivots)])


def parse_fraction(s: str) -> Q:
    return Q(s.strip())


def format_fraction(x: Q) -> str:
    return str(x)


def matrix_to_json(m: Matrix) -> dict:
    r, c = mat_shape(m)
    return {"rows": r, "cols": c, "entries": [[format_fraction(x) for x in row] for row in m]}


def matrix_from_json(obj: dict) -> Matrix:
    entries = obj["entries"]
    if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
        raise ValueError("matrix entry grid does not match declared shape")
    return from_rows([[parse_fraction(x) for x in row] for row in entries])
