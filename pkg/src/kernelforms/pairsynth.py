"""Synthesis and verification of Nevanlinna forms and pairs.

A form is (P, Q): P a d x 2d matrix polynomial of full generic rank, Q a
2d x 2d Hermitian matrix of signature (d, d), tied to a kernel by

    P(z) Q^{-1} P(w)* = i (z - w*) K(z, w).

A pair {M, N} packages as the form ([M N], J) with the fixed matrix
J = [[0, iI], [-iI, 0]]; conversely extracting a pair from a form amounts
to a congruence S J S* = Q^{-1} over the ground field, which can genuinely
fail (the obstruction is a pivot ratio that is not a sum of two rational
squares), so extract_pair may decline with a value rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import canonical, hermalg, linalg, smithforney, space as space_mod
from .errors import (
    InternalVerificationFailed,
    NotANevanlinnaPair,
    NotDivisible,
    NotJUnitary,
    NotNevanlinna,
    PreconditionViolated,
)
from .field import GaussianRational, I, ONE, ZERO
from .linalg import Mat, block_diag
from .polyalg import (
    BivariateKernel,
    MatPoly,
    divide_by_z_minus_wstar,
    form_numerator_grid,
    generic_rank,
    grid_scale,
    pair_numerator_grid,
    row_data,
)


@dataclass(frozen=True)
class NevanlinnaForm:
    p: MatPoly  # d x 2d
    q: Mat  # 2d x 2d Hermitian, signature (d, d)
    full: bool


@dataclass(frozen=True)
class NevanlinnaPair:
    m: MatPoly
    n: MatPoly


@dataclass(frozen=True)
class NotExtractable:
    """Honest decline: no field congruence Q = T Q_1 T* was found."""

    ratio: Fraction


@dataclass(frozen=True)
class FormVerdict:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def j_matrix(d: int) -> Mat:
    """The pair-packaging matrix [[0, iI_d], [-iI_d, 0]]."""
    mi = GaussianRational(0, -1)
    rows = []
    for a in range(d):
        rows.append([ZERO] * (2 * d))
        rows[-1][d + a] = I
    for a in range(d):
        rows.append([ZERO] * (2 * d))
        rows[-1][a] = mi
    return Mat(rows)


def numerator_kernel(kernel: BivariateKernel) -> BivariateKernel:
    """i (z - w*) K(z, w) as a Hermitian kernel (no degree restriction)."""
    size = kernel.p + 1
    grid = [
        [
            kernel.block(j - 1, k).scale(I) - kernel.block(j, k - 1).scale(I)
            for k in range(size)
        ]
        for j in range(size)
    ]
    return BivariateKernel(kernel.d, grid)


def kernel_of_form(form: NevanlinnaForm) -> BivariateKernel:
    """The kernel the form represents, by exact division."""
    q_inv = hermalg.herm_inverse(form.q)
    grid = grid_scale(form_numerator_grid(form.p, q_inv), GaussianRational(0, -1))
    return divide_by_z_minus_wstar(grid)


def synthesize(space: space_mod.PontryaginSpace) -> NevanlinnaForm:
    """Build a form representing the reproducing kernel of the space.

    Pipeline: factor the kernel of i(z-w*)K into a basis and Gram of
    signature (l, l); append the columns W [[0,0],[I,I]] paired with the
    fixed block [[0,iI],[-iI,0]]; re-verify the defining identity before
    returning.
    """
    report = space_mod.analyze(space)
    if not report.is_nevanlinna:
        raise NotNevanlinna("space fails condition (A) or the range condition")
    d = space.d
    kernel = space_mod.reproducing_kernel(space)
    l1 = numerator_kernel(kernel)
    middle_space = space_mod.kernel_factor(l1)
    l = report.defect
    sig = hermalg.inertia(middle_space.gram)
    if middle_space.n != 2 * l or (sig.plus, sig.minus, sig.zero) != (l, l, 0):
        raise InternalVerificationFailed(
            f"factored middle space has dimension {middle_space.n} and signature {tuple(sig)}"
        )
    p = middle_space.basis
    q = middle_space.gram
    if l < d:
        decomp = canonical.decompose(space)
        pad = d - l
        lower = Mat.identity(pad).hstack(Mat.identity(pad))
        tail = Mat.zero(l, 2 * pad).vstack(lower)
        p = p.hstack(decomp.w * tail)
        q = block_diag(q, j_matrix(pad))
    form_kernel = kernel_of_form(NevanlinnaForm(p, q, full=False))
    if form_kernel != kernel:
        raise InternalVerificationFailed("synthesized form does not reproduce the kernel")
    sf = smithforney.smith(p)
    full = sf.l == d and all(f.is_one() for f in sf.factors)
    return NevanlinnaForm(p, q, full)


def verify_form(form: NevanlinnaForm, kernel: BivariateKernel) -> FormVerdict:
    """Exact check of the defining identity plus the shape invariants."""
    d = kernel.d
    if form.p.shape != (d, 2 * d) or form.q.shape != (2 * d, 2 * d):
        return FormVerdict(False, "shape")
    if not form.q.is_hermitian():
        return FormVerdict(False, "hermitian")
    if linalg.rank(form.q) < 2 * d:
        return FormVerdict(False, "singular")
    sig = hermalg.inertia(form.q)
    if (sig.plus, sig.minus, sig.zero) != (d, d, 0):
        return FormVerdict(False, "inertia")
    if generic_rank(form.p) != d:
        return FormVerdict(False, "rank")
    try:
        if kernel_of_form(form) != kernel:
            return FormVerdict(False, "identity")
    except NotDivisible:
        return FormVerdict(False, "identity")
    return FormVerdict(True)


def form_of_pair(pair: NevanlinnaPair) -> NevanlinnaForm:
    p = pair.m.hstack(pair.n)
    sf = smithforney.smith(p)
    full = sf.l == pair.m.rows and all(f.is_one() for f in sf.factors)
    return NevanlinnaForm(p, j_matrix(pair.m.rows), full)


def kernel_of_pair(pair: NevanlinnaPair) -> BivariateKernel:
    """K_{M,N} = (M(z) N(w)* - N(z) M(w)*) / (z - w*), exactly."""
    m, n = pair.m, pair.n
    d = m.rows
    if m.shape != (d, d) or n.shape != (d, d):
        raise NotANevanlinnaPair("pair members must be square and of equal size")
    if generic_rank(m.hstack(n)) < d:
        raise NotANevanlinnaPair("[M N] does not reach full generic rank")
    grid = pair_numerator_grid(m, n)
    if all(b.is_zero() for row in grid for b in row):
        return BivariateKernel.zero(d)
    try:
        return divide_by_z_minus_wstar(grid)
    except NotDivisible:
        raise NotANevanlinnaPair("M N~ - N M~ does not vanish identically")


def _two_squares_bounded(r: Fraction, denom_bound: int = 64):
    """a, b with a^2 + b^2 = r and denominators dividing denom_bound, or None."""
    if r < 0:
        return None
    target = r * denom_bound * denom_bound
    if target.denominator != 1:
        return None
    m = target.numerator
    for u in range(isqrt(m) + 1):
        v2 = m - u * u
        v = isqrt(v2)
        if v * v == v2:
            return Fraction(u, denom_bound), Fraction(v, denom_bound)
    return None


def _two_squares_exact(r: Fraction, cap: int = 10**10):
    """a, b with a^2 + b^2 = r using the exact denominator; r = p/q is a sum
    of two rational squares iff p q is a sum of two integer squares.
    Declines (None) above the search cap rather than guessing."""
    if r < 0:
        return None
    m = r.numerator * r.denominator
    if m > cap:
        return None
    for u in range(isqrt(m) + 1):
        v2 = m - u * u
        v = isqrt(v2)
        if v * v == v2:
            return Fraction(u, r.denominator), Fraction(v, r.denominator)
    return None


def extract_pair(form: NevanlinnaForm):
    """Split the form into a pair {M, N} when a field congruence exists.

    Diagonalize Q^{-1}, greedily match positive against negative pivots
    whose ratio is a bounded-height sum of two rational squares, and build
    the congruence onto J pairwise.  Returns NotExtractable (a value) with
    the obstructing ratio when the matching gets stuck.
    """
    d = form.p.rows
    q_inv = hermalg.herm_inverse(form.q)
    ell, diag = hermalg.congruence_diagonalize(q_inv)
    pos = [i for i in range(2 * d) if diag[i, i].re > 0]
    neg = [i for i in range(2 * d) if diag[i, i].re < 0]
    if len(pos) != d or len(neg) != d:
        raise PreconditionViolated("form Gram does not have signature (d, d)")
    matches = []
    remaining = list(neg)
    for ip in pos:
        p_val = diag[ip, ip].re
        found = None
        for iq in remaining:
            q_val = -diag[iq, iq].re
            rep = _two_squares_bounded(q_val / p_val)
            if rep is not None:
                found = (iq, q_val, rep)
                break
        if found is None:
            return NotExtractable(ratio=(-diag[remaining[0], remaining[0]].re) / p_val)
        remaining.remove(found[0])
        matches.append((ip, found[0], p_val, found[2]))

    pair_blocks = []
    perm_cols = []
    for ip, iq, p_val, (a, b) in matches:
        half = GaussianRational(0, p_val / 2)
        x = [ONE, half]
        y1 = GaussianRational(a, b)
        y = [y1, y1 * GaussianRational(0, -p_val / 2)]
        pair_blocks.append(Mat([x, y]))
        perm_cols.extend([ip, iq])
    perm = Mat(
        [[ONE if perm_cols[j] == i else ZERO for j in range(2 * d)] for i in range(2 * d)]
    )
    s_blk = block_diag(*pair_blocks)
    tau = [0] * (2 * d)
    for t in range(d):
        tau[2 * t] = t
        tau[2 * t + 1] = d + t
    sigma = Mat([[ONE if tau[a] == c else ZERO for c in range(2 * d)] for a in range(2 * d)])
    s = ell * perm * s_blk * sigma
    jd = j_matrix(d)
    if s * jd * s.conj_transpose() != q_inv:
        raise InternalVerificationFailed("congruence onto J failed to verify")
    mn = form.p * s
    pair = NevanlinnaPair(mn.take_columns(range(d)), mn.take_columns(range(d, 2 * d)))
    if kernel_of_pair(pair) != kernel_of_form(form):
        raise InternalVerificationFailed("extracted pair changed the kernel")
    return pair


def j_unitary_transform(pair: NevanlinnaPair, u: Mat) -> NevanlinnaPair:
    """(M, N) -> (M A + N C, M B + N D) for a J-unitary block matrix U."""
    d = pair.m.rows
    jd = j_matrix(d)
    if u.shape != (2 * d, 2 * d) or u * jd * u.conj_transpose() != jd:
        raise NotJUnitary("U J U* != J")
    mn = pair.m.hstack(pair.n) * u
    return NevanlinnaPair(mn.take_columns(range(d)), mn.take_columns(range(d, 2 * d)))


def lagrange_dims(p: MatPoly, q: Mat):
    """Dimensions (dim L_p, dim L_p^perp) of the degree-truncated span of
    the columns of P(w)* and its orthogonal complement.

    Both numbers are computed independently (a rank and a null space) and
    cross-checked against dim C^{2d}[z]_{<p} = 2dp.
    """
    d = p.rows
    if p.cols != 2 * d:
        raise PreconditionViolated("P must be d x 2d")
    sig = hermalg.inertia(q)
    if (sig.plus, sig.minus, sig.zero) != (d, d, 0):
        raise PreconditionViolated("Q must have signature (d, d)")
    q_inv = hermalg.herm_inverse(q)
    neutral = p * q_inv * p.para_conjugate()
    if not neutral.is_zero():
        raise PreconditionViolated("P Q^{-1} P~ does not vanish")
    sf = smithforney.smith(p)
    if sf.l < d or any(not f.is_one() for f in sf.factors):
        raise PreconditionViolated("P loses rank somewhere")
    rd = row_data(p)
    if linalg.rank(rd.leading) < d:
        raise PreconditionViolated("P is not row reduced")
    deg = int(p.degree)
    if deg == 0:
        return 0, 0
    pp = deg  # row-reducedness puts the top row degree at deg P

    coeffs = p.coeff_mats()
    adj = [c.conj_transpose() for c in coeffs]  # P_u^*
    zero_block = Mat.zero(2 * d, d)
    span_cols = []
    for t in range(2 * pp):
        blocks = []
        for s in range(pp):
            u = t - (pp - 1 - s)
            blocks.append(adj[u] if 0 <= u < len(adj) else zero_block)
        col = blocks[0]
        for bmat in blocks[1:]:
            col = col.vstack(bmat)
        span_cols.append(col)
    big = span_cols[0]
    for col in span_cols[1:]:
        big = big.hstack(col)
    dim_lp = linalg.rank(big)

    tilde = p.para_conjugate()  # 2d x d
    t_mats = tilde.coeff_mats()
    dmax = 2 * pp
    zero_small = Mat.zero(2 * d, d)
    rows = []
    for s in range(pp, dmax + len(t_mats)):
        strip = []
        for b in range(dmax + 1):
            a = s - b
            strip.append(t_mats[a] if 0 <= a < len(t_mats) else zero_small)
        row = strip[0]
        for bmat in strip[1:]:
            row = row.hstack(bmat)
        rows.append(row)
    constraint = rows[0]
    for row in rows[1:]:
        constraint = constraint.vstack(row)
    dim_perp = linalg.nullspace(constraint).cols

    if dim_lp + dim_perp != 2 * d * pp:
        raise InternalVerificationFailed("L_p and its perp do not fill the truncated space")
    return dim_lp, dim_perp
