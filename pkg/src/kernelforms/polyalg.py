"""Univariate polynomials, matrix polynomials, rational matrix functions and
bivariate Hermitian kernels over the Gaussian rationals.

Degree conventions: deg 0 = -infinity (``NEG_INF``), deg of a nonzero
polynomial is the index of its last coefficient.  A bivariate kernel
K(z,w) is stored through its coefficient blocks A[j][k] (z-power j,
w*-power k) and satisfies A[j][k] = A[k][j]* blockwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DivisionByZero, NotDivisible, NotHermitian, NotSquare
from .field import I, ONE, ZERO, GaussianRational
from .linalg import Mat

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# scalar polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Univariate polynomial, coefficients ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.of(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        return Poly([GaussianRational.of(c)])

    @staticmethod
    def monomial(k, c=1) -> "Poly":
        return Poly([ZERO] * k + [GaussianRational.of(c)])

    # -- structure -------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise DivisionByZero("leading coefficient of 0")
        return self.coeffs[-1]

    def coeff(self, k) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _poly_of(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_poly_of(other))

    def __rsub__(self, other):
        return _poly_of(other) + (-self)

    def __mul__(self, other):
        other = _poly_of(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = GaussianRational.of(c)
        return Poly([c * x for x in self.coeffs])

    def shift(self, k) -> "Poly":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return Poly([ZERO] * k + list(self.coeffs))

    def __divmod__(self, other):
        other = _poly_of(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by 0")
        rem = list(self.coeffs)
        q = [ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = other.leading().inverse()
        d = len(other.coeffs) - 1
        for k in range(len(rem) - 1, d - 1, -1):
            if rem[k].is_zero():
                continue
            f = rem[k] * inv_lead
            q[k - d] = f
            for j, b in enumerate(other.coeffs):
                rem[k - d + j] = rem[k - d + j] - f * b
        return Poly(q), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise NotDivisible(f"{self} is not divisible by {other}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def para_conjugate(self) -> "Poly":
        """p~(z) = p(z*)*: coefficients conjugated."""
        return Poly([c.conjugate() for c in self.coeffs])

    def __call__(self, alpha) -> GaussianRational:
        alpha = GaussianRational.of(alpha)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * alpha + c
        return acc

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            cs = str(c)
            if k == 0:
                term = cs
            else:
                zs = "z" if k == 1 else f"z^{k}"
                if c.is_one():
                    term = zs
                elif c == GaussianRational(-1):
                    term = f"-{zs}"
                elif c.is_real() or not c.re:
                    term = f"{cs}*{zs}"
                else:
                    term = f"({cs})*{zs}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


P_ZERO = Poly()
P_ONE = Poly.const(1)
P_Z = Poly.monomial(1)


def _poly_of(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(GaussianRational.of(x))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0,0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


# ---------------------------------------------------------------------------
# matrix polynomials
# ---------------------------------------------------------------------------


class MatPoly:
    """Matrix with Poly entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = [tuple(_poly_of(p) for p in row) for row in entries]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix polynomial")
        self.entries = tuple(rows)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(rows, cols) -> "MatPoly":
        return MatPoly([[P_ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n) -> "MatPoly":
        return MatPoly([[P_ONE if i == j else P_ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_const(m: Mat) -> "MatPoly":
        return MatPoly([[Poly.const(x) for x in m.row(i)] for i in range(m.rows)])

    @staticmethod
    def from_coeff_mats(mats) -> "MatPoly":
        """Build sum_k mats[k] z^k from constant coefficient matrices."""
        mats = list(mats)
        if not mats:
            raise ValueError("need at least one coefficient matrix")
        rows, cols = mats[0].shape
        return MatPoly(
            [
                [Poly([m[i, j] for m in mats]) for j in range(cols)]
                for i in range(rows)
            ]
        )

    @staticmethod
    def diag(polys) -> "MatPoly":
        polys = [_poly_of(p) for p in polys]
        n = len(polys)
        return MatPoly([[polys[i] if i == j else P_ZERO for j in range(n)] for i in range(n)])

    # -- access ------------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, MatPoly) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    @property
    def degree(self):
        degs = [p.degree for row in self.entries for p in row if not p.is_zero()]
        return max(degs) if degs else NEG_INF

    def row_degree(self, i):
        degs = [p.degree for p in self.entries[i] if not p.is_zero()]
        return max(degs) if degs else NEG_INF

    def coeff_mat(self, k) -> Mat:
        return Mat([[p.coeff(k) for p in row] for row in self.entries])

    def coeff_mats(self):
        """All coefficient matrices, ascending; at least one."""
        top = self.degree
        n = 1 if top is NEG_INF else int(top) + 1
        return [self.coeff_mat(k) for k in range(n)]

    def stack_coefficients(self, num_blocks=None) -> Mat:
        """Vertical stack of coefficient matrices (z^0 block on top)."""
        mats = self.coeff_mats()
        if num_blocks is not None:
            while len(mats) < num_blocks:
                mats.append(Mat.zero(self.rows, self.cols))
        out = mats[0]
        for m in mats[1:]:
            out = out.vstack(m)
        return out

    # -- algebra ------------------------------------------------------------

    def __add__(self, other):
        other = _matpoly_of(other, self.shape)
        self._check_shape(other)
        return MatPoly(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return self + (-_matpoly_of(other, self.shape))

    def __neg__(self):
        return MatPoly([[-p for p in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, Mat):
            other = MatPoly.from_const(other)
        if isinstance(other, MatPoly):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            return MatPoly(
                [
                    [
                        _poly_dot(self.entries[i], [other.entries[k][j] for k in range(other.rows)])
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        if isinstance(other, (Poly, GaussianRational, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Mat):
            return MatPoly.from_const(other) * self
        if isinstance(other, (Poly, GaussianRational, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, p) -> "MatPoly":
        p = _poly_of(p)
        return MatPoly([[p * q for q in row] for row in self.entries])

    def transpose(self) -> "MatPoly":
        return MatPoly(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def para_conjugate(self) -> "MatPoly":
        """P~(z) = P(z*)*: conjugate coefficients, transpose the shape."""
        return MatPoly(
            [
                [self.entries[i][j].para_conjugate() for i in range(self.rows)]
                for j in range(self.cols)
            ]
        )

    def eval(self, alpha) -> Mat:
        alpha = GaussianRational.of(alpha)
        return Mat([[p(alpha) for p in row] for row in self.entries])

    __call__ = eval

    def hstack(self, other) -> "MatPoly":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return MatPoly([list(r1) + list(r2) for r1, r2 in zip(self.entries, other.entries)])

    def vstack(self, other) -> "MatPoly":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return MatPoly(list(self.entries) + list(other.entries))

    def take_columns(self, col_idx) -> "MatPoly":
        return MatPoly([[row[j] for j in col_idx] for row in self.entries])

    def take_rows(self, row_idx) -> "MatPoly":
        return MatPoly([list(self.entries[i]) for i in row_idx])

    def content(self) -> Poly:
        """Monic gcd of all entries."""
        g = Poly()
        for row in self.entries:
            for p in row:
                g = poly_gcd(g, p)
        return g

    def det(self) -> Poly:
        if self.rows != self.cols:
            raise NotSquare("determinant of a non-square matrix polynomial")
        return _bareiss_det(self)

    def __repr__(self):
        body = "; ".join(", ".join(str(p) for p in row) for row in self.entries)
        return f"MatPoly[{body}]"

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def _matpoly_of(x, shape=None):
    if isinstance(x, MatPoly):
        return x
    if isinstance(x, Mat):
        return MatPoly.from_const(x)
    raise TypeError(f"cannot interpret {x!r} as a matrix polynomial")


def _poly_dot(row, col):
    acc = P_ZERO
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _bareiss_det(m: MatPoly) -> Poly:
    """Fraction-free determinant; exact divisions are guaranteed by Bareiss."""
    a = [list(row) for row in m.entries]
    n = m.rows
    sign = 1
    prev = P_ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            pr = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pr is None:
                return P_ZERO
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = P_ZERO
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def generic_rank(p: MatPoly) -> int:
    """Rank over the rational-function field, by fraction-free elimination."""
    a = [list(row) for row in p.entries]
    rows, cols = p.rows, p.cols
    prev = P_ONE
    r = 0
    for _ in range(min(rows, cols)):
        pivot = None
        for i in range(r, rows):
            for j in range(r, cols):
                if not a[i][j].is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        for i in range(r + 1, rows):
            for j in range(r + 1, cols):
                a[i][j] = (a[r][r] * a[i][j] - a[i][r] * a[r][j]).exact_div(prev)
            a[i][r] = P_ZERO
        prev = a[r][r]
        r += 1
    return r


def minor(p: MatPoly, row_idx, col_idx) -> Poly:
    return p.take_rows(row_idx).take_columns(col_idx).det()


def adjugate(p: MatPoly) -> MatPoly:
    """Classical adjugate: adj(P) P = det(P) I."""
    n = p.rows
    if n != p.cols:
        raise NotSquare("adjugate of a non-square matrix polynomial")
    if n == 1:
        return MatPoly.identity(1)
    rows_all = list(range(n))
    out = [[P_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = minor(p, [r for r in rows_all if r != j], [c for c in rows_all if c != i])
            out[i][j] = sub if (i + j) % 2 == 0 else -sub
    return MatPoly(out)


@dataclass(frozen=True)
class RowData:
    sigma: tuple
    leading: Mat
    extdeg: int
    intdeg: object  # int, or NEG_INF for rank-deficient input


def row_data(p: MatPoly) -> RowData:
    """Row degrees, leading row matrix, external and internal degree.

    Identically zero rows get degree 0 and a zero leading row.
    """
    sigma = []
    lead = []
    for i in range(p.rows):
        d = p.row_degree(i)
        if d is NEG_INF:
            sigma.append(0)
            lead.append([ZERO] * p.cols)
        else:
            sigma.append(int(d))
            lead.append([q.coeff(int(d)) for q in p.entries[i]])
    k = min(p.rows, p.cols)
    intdeg = NEG_INF
    for ridx in itertools.combinations(range(p.rows), k):
        for cidx in itertools.combinations(range(p.cols), k):
            d = minor(p, ridx, cidx).degree
            if d is not NEG_INF and (intdeg is NEG_INF or d > intdeg):
                intdeg = d
    return RowData(tuple(sigma), Mat(lead), sum(sigma), intdeg)


# ---------------------------------------------------------------------------
# rational matrix functions
# ---------------------------------------------------------------------------


class RatMat:
    """Matrix of rational functions num/den with one global monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: MatPoly, den: Poly = P_ONE, reduce=True):
        den = _poly_of(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not den.leading().is_one():
            c = den.leading().inverse()
            num = num.scale(c)
            den = den.scale(c)
        if reduce:
            g = poly_gcd(den, num.content())
            if not g.is_one() and not g.is_zero():
                num = MatPoly([[q.exact_div(g) for q in row] for row in num.entries])
                den = den.exact_div(g)
        self.num = num
        self.den = den

    @staticmethod
    def from_matpoly(p: MatPoly) -> "RatMat":
        return RatMat(p, P_ONE, reduce=False)

    @staticmethod
    def identity(n) -> "RatMat":
        return RatMat.from_matpoly(MatPoly.identity(n))

    @property
    def shape(self):
        return self.num.shape

    def __eq__(self, other):
        return (
            isinstance(other, RatMat) and self.num == other.num and self.den == other.den
        )

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def to_matpoly(self) -> MatPoly:
        if not self.is_polynomial():
            raise NotDivisible(f"denominator {self.den} does not clear")
        return self.num

    def __add__(self, other):
        other = _ratmat_of(other)
        num = self.num.scale(other.den) + other.num.scale(self.den)
        return RatMat(num, self.den * other.den)

    def __sub__(self, other):
        other = _ratmat_of(other)
        return self + RatMat(-other.num, other.den, reduce=False)

    def __neg__(self):
        return RatMat(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        if isinstance(other, (Poly, GaussianRational, int)):
            return RatMat(self.num.scale(other), self.den)
        other = _ratmat_of(other)
        return RatMat(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        if isinstance(other, (Poly, GaussianRational, int)):
            return RatMat(self.num.scale(other), self.den)
        if isinstance(other, (Mat, MatPoly)):
            return _ratmat_of(other) * self
        return NotImplemented

    def scale_rational(self, num: Poly, den: Poly) -> "RatMat":
        return RatMat(self.num.scale(num), self.den * den)

    def para_conjugate(self) -> "RatMat":
        return RatMat(self.num.para_conjugate(), self.den.para_conjugate())

    def eval(self, alpha) -> Mat:
        alpha = GaussianRational.of(alpha)
        d = self.den(alpha)
        if d.is_zero():
            raise DivisionByZero(f"denominator vanishes at {alpha}")
        return self.num.eval(alpha).scale(d.inverse())

    __call__ = eval

    def defined_at(self, alpha) -> bool:
        return not self.den(GaussianRational.of(alpha)).is_zero()

    def inverse(self) -> "RatMat":
        n = self.num.rows
        if n != self.num.cols:
            raise NotSquare("inverse of a non-square rational matrix")
        d = self.num.det()
        if d.is_zero():
            raise DivisionByZero("rational matrix is singular")
        adj = adjugate(self.num)
        # (N/q)^{-1} = q adj(N) / det(N)
        return RatMat(adj.scale(self.den), d)

    def __repr__(self):
        return f"RatMat(({self.num!r}) / ({self.den}))"


def _ratmat_of(x) -> RatMat:
    if isinstance(x, RatMat):
        return x
    if isinstance(x, MatPoly):
        return RatMat.from_matpoly(x)
    if isinstance(x, Mat):
        return RatMat.from_matpoly(MatPoly.from_const(x))
    raise TypeError(f"cannot interpret {x!r} as a rational matrix")


def matpoly_inverse(p: MatPoly) -> RatMat:
    return RatMat.from_matpoly(p).inverse()


def clear_denominators(columns: RatMat):
    """Minimal monic q with q*columns polynomial; returns (q, q*columns)."""
    reduced = RatMat(columns.num, columns.den)  # re-reduce defensively
    return reduced.den, reduced.num


# ---------------------------------------------------------------------------
# bivariate Hermitian kernels
# ---------------------------------------------------------------------------


class BivariateKernel:
    """Hermitian polynomial kernel K(z,w) = sum A[j][k] z^j w*^k."""

    __slots__ = ("d", "p", "blocks")

    def __init__(self, d, blocks, validate=True):
        blocks = [list(row) for row in blocks]
        p = len(blocks)
        # trim zero outer layers so p is minimal
        while p > 0 and _outer_layer_zero(blocks, p):
            blocks = [row[: p - 1] for row in blocks[: p - 1]]
            p -= 1
        self.d = d
        self.p = p
        self.blocks = tuple(tuple(row) for row in blocks)
        if validate:
            for j in range(p):
                for k in range(p):
                    if self.blocks[j][k].shape != (d, d):
                        raise ValueError("kernel block of wrong shape")
                    if self.blocks[j][k] != self.blocks[k][j].conj_transpose():
                        raise NotHermitian(
                            f"kernel blocks A[{j}][{k}] and A[{k}][{j}] are not adjoint"
                        )

    @staticmethod
    def zero(d) -> "BivariateKernel":
        return BivariateKernel(d, [], validate=False)

    @staticmethod
    def from_grid(d, grid, validate=True) -> "BivariateKernel":
        """Build from a rectangular grid of d x d blocks, padding to square."""
        grid = [list(row) for row in grid]
        p = max(len(grid), max((len(r) for r in grid), default=0))
        padded = [
            [
                grid[j][k] if j < len(grid) and k < len(grid[j]) else Mat.zero(d, d)
                for k in range(p)
            ]
            for j in range(p)
        ]
        return BivariateKernel(d, padded, validate=validate)

    def block(self, j, k) -> Mat:
        if 0 <= j < self.p and 0 <= k < self.p:
            return self.blocks[j][k]
        return Mat.zero(self.d, self.d)

    def __eq__(self, other):
        return (
            isinstance(other, BivariateKernel)
            and self.d == other.d
            and self.blocks == other.blocks
        )

    def is_zero(self) -> bool:
        return self.p == 0

    def stack(self) -> Mat:
        """The dp x dp self-adjoint coefficient matrix."""
        if self.p == 0:
            return Mat.zero(0, 0)
        rows = None
        for j in range(self.p):
            strip = self.blocks[j][0]
            for k in range(1, self.p):
                strip = strip.hstack(self.blocks[j][k])
            rows = strip if rows is None else rows.vstack(strip)
        return rows

    def eval(self, z0, w0) -> Mat:
        z0 = GaussianRational.of(z0)
        ws = GaussianRational.of(w0).conjugate()
        acc = Mat.zero(self.d, self.d)
        zp = ONE
        for j in range(self.p):
            wp = ONE
            for k in range(self.p):
                b = self.blocks[j][k]
                if not b.is_zero():
                    acc = acc + b.scale(zp * wp)
                wp = wp * ws
            zp = zp * z0
        return acc

    def scale(self, c) -> "BivariateKernel":
        c = GaussianRational.of(c)
        return BivariateKernel(
            self.d,
            [[b.scale(c) for b in row] for row in self.blocks],
            validate=True,
        )

    def doubled(self, q) -> "BivariateKernel":
        """L_q(z,w) = i (z^q - w*^q) K(z,w); needs q >= p."""
        from .errors import QTooSmall

        if q < self.p:
            raise QTooSmall(f"q = {q} is below the kernel degree bound p = {self.p}")
        size = self.p + q
        grid = [
            [
                self.block(j - q, k).scale(I) - self.block(j, k - q).scale(I)
                for k in range(size)
            ]
            for j in range(size)
        ]
        return BivariateKernel(self.d, grid)

    def grid(self):
        return [list(row) for row in self.blocks]

    def __repr__(self):
        return f"BivariateKernel(d={self.d}, p={self.p})"


def _outer_layer_zero(blocks, p) -> bool:
    last = p - 1
    return all(blocks[last][k].is_zero() for k in range(p)) and all(
        blocks[j][last].is_zero() for j in range(p)
    )


def pair_numerator_grid(m: MatPoly, n: MatPoly):
    """Coefficient grid of M(z) N(w)* - N(z) M(w)* in powers (z^j, w*^k)."""
    mc = m.coeff_mats()
    nc = n.coeff_mats()
    size = max(len(mc), len(nc))
    zz = Mat.zero(m.rows, m.rows)
    mc += [zz] * (size - len(mc))
    nc += [zz] * (size - len(nc))
    return [
        [mc[j] * nc[k].conj_transpose() - nc[j] * mc[k].conj_transpose() for k in range(size)]
        for j in range(size)
    ]


def form_numerator_grid(p: MatPoly, q_inv: Mat):
    """Coefficient grid of P(z) Qinv P(w)* in powers (z^j, w*^k)."""
    pc = p.coeff_mats()
    return [[pj * q_inv * pk.conj_transpose() for pk in pc] for pj in pc]


def grid_scale(grid, c):
    c = GaussianRational.of(c)
    return [[b.scale(c) for b in row] for row in grid]


def divide_by_z_minus_wstar(grid) -> BivariateKernel:
    """Exact quotient of a bivariate grid by (z - w*).

    The grid is a list of rows (z-power index) of constant blocks
    (w*-power index).  Raises NotDivisible when synthetic division leaves
    a remainder, which is the failure of the pair identity on z = w*.
    """
    grid = [list(row) for row in grid]
    if not grid or not grid[0]:
        raise ValueError("empty bivariate grid")
    d = grid[0][0].rows
    dcols = grid[0][0].cols
    if d != dcols:
        raise ValueError("bivariate blocks must be square")
    width = max(len(row) for row in grid)
    zero = Mat.zero(d, d)
    rows = [list(row) + [zero] * (width - len(row)) for row in grid]
    J = len(rows) - 1
    if J < 1:
        # constant in z: divisible only if identically zero
        if all(b.is_zero() for b in rows[0]):
            return BivariateKernel.zero(d)
        raise NotDivisible("bivariate numerator is constant in z but nonzero")

    def shift_w(row):
        return [zero] + row[:-1] + ([row[-1]] if not row[-1].is_zero() else [])

    quotient = [None] * J
    quotient[J - 1] = rows[J]
    for j in range(J - 1, 0, -1):
        shifted = shift_w(quotient[j])
        width = max(len(shifted), len(rows[j]))
        quotient[j - 1] = [
            (rows[j][k] if k < len(rows[j]) else zero)
            + (shifted[k] if k < len(shifted) else zero)
            for k in range(width)
        ]
    shifted = shift_w(quotient[0])
    width = max(len(shifted), len(rows[0]))
    remainder = [
        (rows[0][k] if k < len(rows[0]) else zero)
        + (shifted[k] if k < len(shifted) else zero)
        for k in range(width)
    ]
    if any(not b.is_zero() for b in remainder):
        raise NotDivisible("numerator is not divisible by z - w*")
    return BivariateKernel.from_grid(d, quotient)
