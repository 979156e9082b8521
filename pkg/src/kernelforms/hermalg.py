"""Exact inertia and congruence algebra for constant Hermitian matrices.

The inertia computation never extracts eigenvalues: it runs a congruence
elimination (H = L D L* with real diagonal D) and counts signs, which is
valid by Sylvester's law of inertia.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotHermitian, Singular
from .field import I, ONE, ZERO, GaussianRational
from .linalg import Mat, solve


@dataclass(frozen=True)
class Inertia:
    plus: int
    minus: int
    zero: int

    @property
    def n(self):
        return self.plus + self.minus + self.zero

    def __iter__(self):
        return iter((self.plus, self.minus, self.zero))


def check_hermitian(h: Mat) -> Mat:
    if not h.is_hermitian():
        raise NotHermitian("matrix is not Hermitian")
    return h


def congruence_diagonalize(h: Mat):
    """H = L D L* with L invertible and D a real rational diagonal.

    Pivot rule: first nonzero diagonal entry; failing that, the first
    nonzero off-diagonal entry (row-major) is symmetrized into a diagonal
    pivot by a column update, which contributes inertia (1,1) overall.
    """
    check_hermitian(h)
    n = h.rows
    a = h.tolist()
    # L accumulates so that original H = L * (current a) * L^* throughout.
    ell = Mat.identity(n).tolist()
    done = []  # indices already pivoted

    def col_update(dst, src, lam):
        # column op on a: col_dst += lam * col_src, with Hermitian row mirror;
        # tracks H = L a L^* by the inverse update on L's columns.
        for i in range(n):
            a[i][dst] = a[i][dst] + lam * a[i][src]
        lc = lam.conjugate()
        for j in range(n):
            a[dst][j] = a[dst][j] + lc * a[src][j]
        for i in range(n):
            ell[i][src] = ell[i][src] - lc * ell[i][dst]

    remaining = list(range(n))
    diag = {}
    while remaining:
        k = next((i for i in remaining if a[i][i]), None)
        if k is None:
            pair = next(
                (
                    (i, j)
                    for i in remaining
                    for j in remaining
                    if i < j and a[i][j]
                ),
                None,
            )
            if pair is None:
                break  # all-zero remainder
            i, j = pair
            lam = ONE if a[i][j].re else I
            col_update(i, j, lam)
            k = i
        pivot = a[k][k]
        if not pivot.is_real():
            raise NotHermitian("diagonal entry drifted off the real axis")
        inv = pivot.inverse()
        others = [i for i in remaining if i != k]
        for i in others:
            if a[i][k]:
                f = a[i][k] * inv
                # row/col elimination keeping Hermitian symmetry
                fc = f.conjugate()
                for j in range(n):
                    a[i][j] = a[i][j] - f * a[k][j]
                for j in range(n):
                    a[j][i] = a[j][i] - fc * a[j][k]
                for r in range(n):
                    ell[r][k] = ell[r][k] + f * ell[r][i]
        diag[k] = pivot.re
        remaining.remove(k)
        done.append(k)
    order = done + remaining
    for i in remaining:
        diag[i] = Fraction(0)
    perm = Mat([[ONE if order[j] == i else ZERO for j in range(n)] for i in range(n)])
    l_out = Mat(ell) * perm
    d_out = Mat.diag([GaussianRational(diag[i]) for i in order])
    return l_out, d_out


def inertia(h: Mat) -> Inertia:
    """Signature of a Hermitian matrix, computed exactly."""
    _, d = congruence_diagonalize(h)
    plus = minus = zero = 0
    for i in range(d.rows):
        v = d[i, i].re
        if v > 0:
            plus += 1
        elif v < 0:
            minus += 1
        else:
            zero += 1
    return Inertia(plus, minus, zero)


def herm_solve(h: Mat, rhs: Mat) -> Mat:
    """Solve H x = rhs for invertible Hermitian H."""
    check_hermitian(h)
    try:
        return solve(h, rhs)
    except Singular:
        raise Singular("Hermitian matrix is singular")


def herm_inverse(h: Mat) -> Mat:
    return herm_solve(h, Mat.identity(h.rows))
