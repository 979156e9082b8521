"""Exact dense linear algebra over the Gaussian rationals.

Plumbing used by every other module: Gaussian elimination with exact
pivots, solving, null spaces, column-space bases.  Nothing here is
numerically conditioned -- all arithmetic is in the field.
"""

from __future__ import annotations

from .errors import NotSquare, Singular
from .field import ONE, ZERO, GaussianRational


class Mat:
    """Immutable dense matrix with GaussianRational entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries, cols=None):
        rows = [tuple(GaussianRational.of(x) for x in row) for row in entries]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")
        self._e = tuple(rows)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(rows, cols) -> "Mat":
        return Mat([[ZERO] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n) -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def diag(values) -> "Mat":
        values = [GaussianRational.of(v) for v in values]
        n = len(values)
        return Mat([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(columns, rows=None) -> "Mat":
        cols = [list(c) for c in columns]
        if not cols:
            return Mat.zero(rows or 0, 0)
        return Mat(
            [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))],
            cols=len(cols),
        )

    # -- access ----------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def column(self, j):
        return tuple(self._e[i][j] for i in range(self.rows))

    def tolist(self):
        return [list(r) for r in self._e]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, Mat) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._e)
        return f"Mat[{body}]"

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        return Mat(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)],
            cols=self.cols,
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return Mat(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)],
            cols=self.cols,
        )

    def __neg__(self):
        return self.scale(GaussianRational(-1))

    def scale(self, c) -> "Mat":
        c = GaussianRational.of(c)
        return Mat([[c * x for x in row] for row in self._e], cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return Mat(
                [[_dot(row, col) for col in cols] for row in self._e],
                cols=other.cols,
            )
        if isinstance(other, (GaussianRational, int)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = scale

    def transpose(self) -> "Mat":
        return Mat(
            [[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def conj_transpose(self) -> "Mat":
        return Mat(
            [[self._e[i][j].conjugate() for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def conjugate(self) -> "Mat":
        return Mat([[x.conjugate() for x in row] for row in self._e], cols=self.cols)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self._e for x in row)

    def is_hermitian(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self._e[i][j] == self._e[j][i].conjugate()
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def hstack(self, other) -> "Mat":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Mat(
            [list(r1) + list(r2) for r1, r2 in zip(self._e, other._e)],
            cols=self.cols + other.cols,
        )

    def vstack(self, other) -> "Mat":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Mat(list(self._e) + list(other._e), cols=self.cols)

    def submatrix(self, row_idx, col_idx) -> "Mat":
        col_idx = list(col_idx)
        return Mat([[self._e[i][j] for j in col_idx] for i in row_idx], cols=len(col_idx))

    def take_columns(self, col_idx) -> "Mat":
        return self.submatrix(range(self.rows), col_idx)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def _dot(row, col):
    acc = ZERO
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def block_diag(*mats: Mat) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[ZERO] * cols for _ in range(rows)]
    r = c = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[r + i][c + j] = m[i, j]
        r += m.rows
        c += m.cols
    return Mat(out)


def rref(m: Mat):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    a = m.tolist()
    if m.rows == 0:
        return m, []
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c].inverse()
        a[r] = [inv * x for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Mat(a), pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def nullspace(m: Mat) -> Mat:
    """Columns form a basis of {x : m x = 0} (cols x nullity)."""
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return Mat.from_columns(basis, rows=m.cols)


def solve(a: Mat, b: Mat) -> Mat:
    """Solve a x = b exactly; raises Singular if inconsistent or underdetermined."""
    aug, pivots = rref(a.hstack(b))
    if any(p >= a.cols for p in pivots):
        raise Singular("inconsistent linear system")
    if len(pivots) < a.cols:
        raise Singular("underdetermined linear system")
    # pivots == range(a.cols); solution sits in the trailing block
    return Mat([[aug[i, a.cols + j] for j in range(b.cols)] for i in range(a.cols)])


def solve_any(a: Mat, b: Mat):
    """One solution of a x = b, or None if inconsistent (a need not be square)."""
    aug, pivots = rref(a.hstack(b))
    if any(p >= a.cols for p in pivots):
        return None
    x = [[ZERO] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = aug[i, a.cols + j]
    return Mat(x)


def inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise NotSquare("inverse of a non-square matrix")
    return solve(a, Mat.identity(a.rows))


def column_space_pivots(m: Mat):
    """Indices of a deterministic column-space basis (RREF pivot columns)."""
    return rref(m)[1]


def same_column_span(a: Mat, b: Mat) -> bool:
    if a.rows != b.rows:
        return False
    ra = rank(a)
    if ra != rank(b):
        return False
    return rank(a.hstack(b)) == ra
