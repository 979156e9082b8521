"""Decomposition of a polynomial space as W(z) times a canonical subspace.

A canonical subspace with degrees mu_1 >= ... >= mu_d collects the vector
polynomials whose j-th entry has degree < mu_j.  Whenever the range
condition l + dim dom S = n holds, the basis factors as

    B(z) = W(z) [P_{delta_0}  P_{delta_1} z  ...  P_{delta_m} z^m] T

with det W vanishing exactly on the zeros of the Smith factor b_1.  The
construction follows the Smith preprocessing (peel off b_1 ... b_l) and an
induction over dom S: each level extends the already-canonical image of
the domain by a complement whose bottom rows are completed to a unimodular
block.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg, smithforney
from .errors import (
    DependentBasis,
    InternalVerificationFailed,
    RangeConditionFails,
    Singular,
)
from .linalg import Mat
from .polyalg import (
    MatPoly,
    P_ONE,
    P_ZERO,
    Poly,
    adjugate,
    matpoly_inverse,
)
from .space import PontryaginSpace, _membership_operator


@dataclass(frozen=True)
class CanonicalDecomposition:
    w: MatPoly
    degrees: tuple  # mu_1 >= ... >= mu_d >= 0, summing to n
    t: Mat  # invertible constant change of basis
    unimodular: bool

    @property
    def deltas(self):
        m = self.degrees[0] - 1 if self.degrees and self.degrees[0] > 0 else -1
        return tuple(
            sum(1 for mu in self.degrees if mu > j) for j in range(m + 1)
        )


def canonical_basis(d: int, degrees) -> MatPoly:
    """Columns e_i z^j (j < mu_i), ordered by power then coordinate."""
    cols = []
    top = max(degrees) if degrees else 0
    for j in range(top):
        for i in range(d):
            if degrees[i] > j:
                col = [P_ZERO] * d
                col[i] = Poly.monomial(j)
                cols.append(col)
    if not cols:
        return MatPoly([[] for _ in range(d)])
    return MatPoly([[cols[c][i] for c in range(len(cols))] for i in range(d)])


def unimodular_inverse(w: MatPoly) -> MatPoly:
    d = w.det()
    if d.is_zero() or d.degree != 0:
        raise InternalVerificationFailed("expected a unimodular matrix")
    return adjugate(w).scale(d.coeff(0).inverse())


def _column_span_dim(basis: MatPoly, blocks: int) -> int:
    return linalg.rank(basis.stack_coefficients(blocks))


def _complement_columns(inner: MatPoly, whole: MatPoly, blocks: int):
    """Greedy complement of span(inner) inside span(whole).

    Works on coefficient stacks; columns of `whole` are admitted in their
    given order whenever they enlarge the span.
    """
    stacked_inner = inner.stack_coefficients(blocks)
    stacked_whole = whole.stack_coefficients(blocks)
    picked = []
    current = stacked_inner
    r = linalg.rank(current)
    for j in range(whole.cols):
        cand = current.hstack(stacked_whole.take_columns([j]))
        if linalg.rank(cand) > r:
            picked.append(j)
            current = cand
            r += 1
    return picked


def _decompose_everywhere(basis: MatPoly):
    """Inductive construction for a space satisfying the range condition at
    every point; returns (W unimodular, degrees)."""
    d, n = basis.shape
    if n == 0:
        return MatPoly.identity(d), (0,) * d

    c, _ = _membership_operator(basis)
    dom_basis = basis * c  # d x m
    wa, mu = _decompose_everywhere(dom_basis)
    v_basis = (matpoly_inverse(wa) * basis).to_matpoly()

    k = sum(1 for x in mu if x > 0)
    grown = tuple(x + 1 if x > 0 else 0 for x in mu)
    inner = canonical_basis(d, grown)  # basis of D + S D
    blocks = int(max(v_basis.degree, inner.degree if inner.cols else 0)) + 2
    picked = _complement_columns(inner, v_basis, blocks)
    j = len(picked)
    if j == 0:
        w_step = MatPoly.identity(d)
        m = k
    else:
        b0 = v_basis.take_columns(picked)
        b0_bottom = b0.take_rows(range(k, d))
        sf = smithforney.smith(b0_bottom)
        if sf.l < j or any(not f.is_one() for f in sf.factors):
            raise InternalVerificationFailed(
                "complement does not have full column rank everywhere"
            )
        # complete the bottom block to a unimodular matrix whose first j
        # columns are b0_bottom
        v_ext = sf.v  # j x j unimodular
        pad = d - k - j
        ext = MatPoly.identity(j + pad)
        ext_entries = [list(row) for row in ext.entries]
        for a in range(j):
            for b in range(j):
                ext_entries[a][b] = v_ext[a, b]
        w_b = sf.u * MatPoly(ext_entries)
        if w_b.take_columns(range(j)) != b0_bottom:
            raise InternalVerificationFailed("unimodular completion lost the complement")
        b0_top = b0.take_rows(range(k))  # k x j
        w_t = [
            [b0_top[i, t] if t < j else P_ZERO for t in range(d - k)]
            for i in range(k)
        ]
        rows = []
        for i in range(k):
            rows.append(
                [P_ONE if t == i else P_ZERO for t in range(k)] + list(w_t[i])
            )
        for i in range(d - k):
            rows.append([P_ZERO] * k + list(w_b.entries[i]))
        w_step = MatPoly(rows)
        m = k + j
    degrees = tuple(
        mu[i] + 1 if i < k else (1 if i < m else 0) for i in range(d)
    )
    return wa * w_step, degrees


def decompose(space_or_basis, rng=None) -> CanonicalDecomposition:
    """Factor the space as W times a canonical subspace (times constant T).

    Raises RangeConditionFails when l + dim dom S != n, which is exactly
    when no such factorization exists.
    """
    basis = space_or_basis.basis if isinstance(space_or_basis, PontryaginSpace) else space_or_basis
    d, n = basis.shape
    if n == 0 or linalg.rank(basis.stack_coefficients()) < n:
        raise DependentBasis("decompose needs independent basis columns")
    sf = smithforney.smith(basis, rng=rng)
    l = sf.l
    c, _ = _membership_operator(basis)
    if l + c.cols != n:
        raise RangeConditionFails(
            f"Smith rank {l} + dom dimension {c.cols} != space dimension {n}"
        )
    mid_ones = [[P_ONE if (i == j and i < l) else P_ZERO for j in range(n)] for i in range(d)]
    b1_basis = sf.u * MatPoly(mid_ones) * sf.v
    diag = [sf.factors[i] if i < l else P_ONE for i in range(d)]
    f = sf.u * MatPoly.diag(diag) * unimodular_inverse(sf.u)
    wu, degrees = _decompose_everywhere(b1_basis)
    w = f * wu
    can = canonical_basis(d, degrees)
    w_can = w * can
    blocks = int(max(w_can.degree, basis.degree)) + 1
    try:
        t = linalg.solve(
            w_can.stack_coefficients(blocks), basis.stack_coefficients(blocks)
        )
    except Singular as exc:
        raise InternalVerificationFailed(f"basis does not match W * canonical: {exc}")
    if w_can * t != basis:
        raise InternalVerificationFailed("factorization identity failed to verify")
    det_w = w.det()
    return CanonicalDecomposition(
        w=w, degrees=degrees, t=t, unimodular=(det_w.degree == 0 and not det_w.is_zero())
    )


def membership(decomp: CanonicalDecomposition, f: MatPoly) -> bool:
    """Does the vector polynomial f lie in W * canonical(degrees)?"""
    if f.cols != 1 or f.rows != decomp.w.rows:
        raise ValueError("membership expects a single column of matching height")
    g = matpoly_inverse(decomp.w) * f
    if not g.is_polynomial():
        return False
    gp = g.to_matpoly()
    return all(gp[i, 0].degree < decomp.degrees[i] for i in range(decomp.w.rows))
