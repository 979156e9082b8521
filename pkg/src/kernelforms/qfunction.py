"""Linear relations in the doubled space, self-adjoint extensions,
resolvents, defect mappings and Q-functions, all in exact arithmetic.

Relations live in basis coordinates: a subspace of (space + space) is a
2n x m matrix whose columns stack the coordinates of the pairs {f, g}.
The Lagrange inner product [[{f,g},{p,q}]] = -i([g,p] - [f,q]) turns the
orthogonal companion of the multiplication graph into the adjoint, and a
self-adjoint extension A with regular pencil yields the defect mappings
Gamma_z = (I + (z - mu)(A - z)^{-1}) Gamma_mu and the Q-function

    Q(z) = Q0 - i Im(mu) Gamma_mu* Gamma_mu + (z - mu*) Gamma_mu* Gamma_z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import canonical, hermalg, linalg, pairsynth, space as space_mod
from .errors import (
    BadMu,
    DependentBasis,
    EmptyResolvent,
    InternalVerificationFailed,
    NotDefectBasis,
    NotDivisible,
    NotHermitian,
    NotNevanlinna,
    PolynomialityFailed,
)
from .field import GaussianRational, I, ONE
from .linalg import Mat
from .pairsynth import NevanlinnaPair
from .polyalg import MatPoly, P_ONE, Poly, RatMat, matpoly_inverse


@dataclass(frozen=True)
class LinearRelation:
    space: space_mod.PontryaginSpace
    pairs: Mat  # 2n x m, columns independent

    @property
    def dim(self):
        return self.pairs.cols

    def f_part(self) -> Mat:
        n = self.space.n
        return self.pairs.submatrix(range(n), range(self.pairs.cols))

    def g_part(self) -> Mat:
        n = self.space.n
        return self.pairs.submatrix(range(n, 2 * n), range(self.pairs.cols))


@dataclass(frozen=True)
class QFunctionResult:
    mu: GaussianRational
    gamma_mu: Mat
    q: RatMat  # l x l
    gamma: RatMat  # n x l coordinate-valued defect field


def relation(space: space_mod.PontryaginSpace, pairs: Mat) -> LinearRelation:
    if pairs.rows != 2 * space.n:
        raise DependentBasis(f"relation columns must have height {2 * space.n}")
    if linalg.rank(pairs) < pairs.cols:
        raise DependentBasis("relation spanning pairs are dependent")
    return LinearRelation(space, pairs)


def multiplication_graph(space: space_mod.PontryaginSpace) -> LinearRelation:
    op = space_mod.multiplication_operator(space)
    return LinearRelation(space, op.dom_basis.vstack(op.action))


def lagrange_gram(space: space_mod.PontryaginSpace) -> Mat:
    """Gram of the Lagrange product on coordinates: [[0, -iG], [iG, 0]]."""
    g = space.gram
    n = space.n
    mi = GaussianRational(0, -1)
    top = Mat.zero(n, n).hstack(g.scale(mi))
    bottom = g.scale(I).hstack(Mat.zero(n, n))
    return top.vstack(bottom)


def lagrange_adjoint(space: space_mod.PontryaginSpace, rel: LinearRelation) -> LinearRelation:
    """Orthogonal companion under the Lagrange product; dim 2n - dim rel."""
    gg = lagrange_gram(space)
    system = rel.pairs.conj_transpose() * gg
    return LinearRelation(space, linalg.nullspace(system))


def is_selfadjoint_extension(space: space_mod.PontryaginSpace, a: LinearRelation) -> bool:
    """S subset of A, A = A^[*], and the pencil g - z f is regular."""
    s = multiplication_graph(space)
    if linalg.rank(a.pairs) < a.dim:
        return False
    if s.dim and linalg.rank(a.pairs.hstack(s.pairs)) > a.dim:
        return False
    adj = lagrange_adjoint(space, a)
    if adj.dim != a.dim or not linalg.same_column_span(adj.pairs, a.pairs):
        return False
    try:
        resolvent(space, a)
    except EmptyResolvent:
        return False
    return True


def resolvent(space: space_mod.PontryaginSpace, a: LinearRelation) -> RatMat:
    """R(z) with {R(z)h, h + z R(z)h} in A for every coordinate vector h."""
    n = space.n
    if a.dim != n:
        raise EmptyResolvent(f"relation of dimension {a.dim} in an {n}-dimensional space")
    f, g = a.f_part(), a.g_part()
    pencil = MatPoly.from_coeff_mats([g, -f])
    if pencil.det().is_zero():
        raise EmptyResolvent("the pencil g - z f is singular")
    return MatPoly.from_const(f) * matpoly_inverse(pencil)


def defect_basis(space: space_mod.PontryaginSpace, z0) -> Mat:
    """Coordinates of a basis of ker(S* - z0) = {f : {f, z0 f} in S*}."""
    z0 = GaussianRational.of(z0)
    op = space_mod.multiplication_operator(space)
    lhs = (op.action.conj_transpose() - op.dom_basis.conj_transpose().scale(z0)) * space.gram
    return linalg.nullspace(lhs)


def gamma_field(space, a: LinearRelation, mu, gamma_mu: Mat) -> RatMat:
    """Gamma_z = (I + (z - mu)(A - z)^{-1}) Gamma_mu as a rational matrix."""
    mu = GaussianRational.of(mu)
    if not mu.im:
        raise BadMu("mu must be non-real")
    res = resolvent(space, a)
    if not res.defined_at(mu):
        raise BadMu(f"mu = {mu} lies in the singular set of the pencil")
    expected = defect_basis(space, mu)
    if gamma_mu.shape != expected.shape or not linalg.same_column_span(gamma_mu, expected):
        raise NotDefectBasis("columns do not form a basis of ker(S* - mu)")
    n = space.n
    factor = res.scale_rational(Poly([-mu, ONE]), P_ONE) + RatMat.from_matpoly(
        MatPoly.identity(n)
    )
    return factor * gamma_mu


_SAMPLE_POINTS = [
    GaussianRational(2, 1),
    GaussianRational(3, 1),
    GaussianRational(-1, 2),
    GaussianRational(5, 1),
    GaussianRational(7, 3),
    GaussianRational(-2, 5),
    GaussianRational(4, 7),
    GaussianRational(6, 11),
]


def q_function(space, a: LinearRelation, mu, gamma_mu: Mat, q0: Mat) -> QFunctionResult:
    """Q-function of the multiplication operator for the extension A.

    Adjoints are taken through the Gram matrix, so Gamma_mu* Gamma_z is the
    rational matrix Gamma_mu* G Gamma(z).
    """
    mu = GaussianRational.of(mu)
    gamma = gamma_field(space, a, mu, gamma_mu)
    l = gamma_mu.cols
    if not q0.is_hermitian() or q0.shape != (l, l):
        raise NotHermitian("Q0 must be Hermitian of defect size")
    g = space.gram
    gm_star = gamma_mu.conj_transpose() * g
    const_term = (gm_star * gamma_mu).scale(GaussianRational(0, -mu.im))
    z_term = (gm_star * gamma).scale_rational(Poly([-mu.conjugate(), ONE]), P_ONE)
    q = RatMat.from_matpoly(MatPoly.from_const(q0 + const_term)) + z_term
    if q.para_conjugate() != q:
        raise InternalVerificationFailed("Q(z)* != Q(z*)")
    _check_q_identity(space, q, gamma)
    return QFunctionResult(mu, gamma_mu, q, gamma)


def _check_q_identity(space, q: RatMat, gamma: RatMat, samples: int = 5):
    """(Q(z) - Q(w)*)/(z - w*) = Gamma(w)* G Gamma(z) at sample pairs."""
    g = space.gram
    pairs = []
    for z0, w0 in itertools.product(_SAMPLE_POINTS, repeat=2):
        if z0 == w0.conjugate():
            continue
        if not (q.defined_at(z0) and q.defined_at(w0) and gamma.defined_at(z0) and gamma.defined_at(w0)):
            continue
        pairs.append((z0, w0))
        if len(pairs) == samples:
            break
    for z0, w0 in pairs:
        lhs = (q.eval(z0) - q.eval(w0).conj_transpose()).scale(
            (z0 - w0.conjugate()).inverse()
        )
        rhs = gamma.eval(w0).conj_transpose() * g * gamma.eval(z0)
        if lhs != rhs:
            raise InternalVerificationFailed(
                f"Q-function kernel identity fails at ({z0}, {w0})"
            )


def pair_from_q(
    space,
    decomp: canonical.CanonicalDecomposition,
    a: LinearRelation,
    mu,
    gamma_mu: Mat,
    q0: Mat,
) -> NevanlinnaPair:
    """Pair {M, N} with det N not identically zero: N = W (Gamma~ W)^{-1}
    blockwise and M = N diag(Q, 0), both provably polynomial; the kernel
    round trip is re-verified before returning.
    """
    report = space_mod.analyze(space)
    if not report.is_nevanlinna:
        raise NotNevanlinna("space fails condition (A) or the range condition")
    d = space.d
    l = sum(1 for x in decomp.degrees if x > 0)
    qres = q_function(space, a, mu, gamma_mu, q0)
    gamma_tilde = qres.gamma.para_conjugate()  # l x n rational
    w = decomp.w
    if l == d:
        coords = _coordinates_in_basis(space.basis, w)
        core = gamma_tilde * (space.gram * coords)
        n_rat = w * core.inverse()
    else:
        w_inv_b = matpoly_inverse(w) * space.basis
        if not w_inv_b.is_polynomial():
            raise PolynomialityFailed("W^{-1} B is not polynomial")
        reduced = w_inv_b.to_matpoly()
        if not reduced.take_rows(range(l, d)).is_zero():
            raise InternalVerificationFailed("reduced basis has nonzero bottom rows")
        top = reduced.take_rows(range(l))
        coords = _coordinates_in_basis(top, MatPoly.identity(l))
        core = gamma_tilde * (space.gram * coords)
        n1 = core.inverse()
        padded_num = _pad_block(n1.num, n1.den, d - l)
        n_rat = w * RatMat(padded_num, n1.den)
    q_pad = RatMat(_pad_block(qres.q.num, Poly(), d - l), qres.q.den)
    m_rat = n_rat * q_pad
    try:
        n_poly = n_rat.to_matpoly()
        m_poly = m_rat.to_matpoly()
    except NotDivisible as exc:
        raise PolynomialityFailed(f"pair members are not polynomial: {exc}")
    if n_poly.det().is_zero():
        raise InternalVerificationFailed("det N vanishes identically")
    pair = NevanlinnaPair(m_poly, n_poly)
    if pairsynth.kernel_of_pair(pair) != space_mod.reproducing_kernel(space):
        raise InternalVerificationFailed("pair does not reproduce the space kernel")
    return pair


def _pad_block(num: MatPoly, fill_den: Poly, pad: int) -> MatPoly:
    """diag(num, c I_pad) where c is fill_den (the denominator) or 0."""
    if pad == 0:
        return num
    l = num.rows
    fill = fill_den if not fill_den.is_zero() else Poly()
    rows = []
    for i in range(l):
        rows.append(list(num.entries[i]) + [Poly()] * pad)
    for i in range(pad):
        tail = [Poly()] * pad
        tail[i] = fill
        rows.append([Poly()] * l + tail)
    return MatPoly(rows)


def _coordinates_in_basis(basis: MatPoly, cols: MatPoly) -> Mat:
    """Solve basis * C = cols for the constant coordinate matrix C."""
    blocks = int(max(basis.degree, cols.degree if not cols.is_zero() else 0)) + 1
    sol = linalg.solve_any(
        basis.stack_coefficients(blocks), cols.stack_coefficients(blocks)
    )
    if sol is None:
        raise InternalVerificationFailed("columns do not lie in the space")
    return sol


def suggest_extension(space: space_mod.PontryaginSpace):
    """Best-effort search for a self-adjoint extension of the
    multiplication graph.

    Works in the Lagrange quotient S^[*] / S (signature (l, l)): pairs
    positive against negative pivots whose ratio is a bounded-height sum
    of two rational squares, lifts the resulting neutral vectors, and
    keeps the first candidate whose pencil is regular.  Returns None when
    the field obstruction blocks every pairing.
    """
    from .pairsynth import _two_squares_exact

    n = space.n
    s = multiplication_graph(space)
    adj = lagrange_adjoint(space, s)
    need = n - s.dim
    if need == 0:
        return s if is_selfadjoint_extension(space, s) else None
    # quotient representatives: adjoint columns extending the graph span
    reps = []
    current = s.pairs
    for j in range(adj.dim):
        cand = current.hstack(adj.pairs.take_columns([j]))
        if linalg.rank(cand) > linalg.rank(current):
            reps.append(j)
            current = cand
    v = adj.pairs.take_columns(reps)  # 2n x 2*need
    gg = lagrange_gram(space)
    phi = v.conj_transpose() * gg * v
    ell, diag = hermalg.congruence_diagonalize(phi)
    pos = [i for i in range(phi.rows) if diag[i, i].re > 0]
    neg = [i for i in range(phi.rows) if diag[i, i].re < 0]
    if len(pos) != need or len(neg) != need:
        return None
    matches = []
    remaining = list(neg)
    for ip in pos:
        p_val = diag[ip, ip].re
        found = None
        for iq in remaining:
            # e_p + t e_q is neutral when |t|^2 = p/q
            rep = _two_squares_exact(p_val / -diag[iq, iq].re)
            if rep is not None:
                found = (iq, rep)
                break
        if found is None:
            return None
        remaining.remove(found[0])
        matches.append((ip, found[0], found[1]))
    lift = v * linalg.inverse(ell.conj_transpose())
    units = (ONE, GaussianRational(-1), I, GaussianRational(0, -1))
    variants = [(ONE,) * need]
    variants += [
        (ONE,) * k + (u,) + (ONE,) * (need - k - 1)
        for u in units[1:]
        for k in range(need)
    ]
    for signs in variants:
        cols = s.pairs
        for (ip, iq, (a, b)), unit in zip(matches, signs):
            t = GaussianRational(a, b) * unit
            vec = lift.take_columns([ip]) + lift.take_columns([iq]).scale(t)
            cols = cols.hstack(vec)
        if linalg.rank(cols) < n:
            continue
        cand = LinearRelation(space, cols)
        if is_selfadjoint_extension(space, cand):
            return cand
    return None
