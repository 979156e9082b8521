"""Finite dimensional Pontryagin spaces of vector polynomials.

A space is a column basis B(z) (d x n matrix polynomial) together with an
invertible Hermitian Gram matrix G; the inner product of f = B c and
g = B e is [f, g] = e* G c and the reproducing kernel is B(z) G^{-1} B(w)*.

The two analysis questions answered here are the symmetry of the
multiplication operator and the range condition
ran(S - a) = space ∩ ker E_a, which together decide whether the
reproducing kernel is a Nevanlinna kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import hermalg, linalg, smithforney
from .errors import (
    DegenerateKernel,
    DependentBasis,
    NotHermitian,
    NotSymmetric,
    SingularGram,
)
from .field import GaussianRational
from .hermalg import Inertia
from .linalg import Mat
from .polyalg import BivariateKernel, MatPoly, Poly

FAILS_EVERYWHERE = "fails-everywhere"
HOLDS_GENERICALLY = "holds-generically"
HOLDS_EVERYWHERE = "holds-everywhere"


@dataclass(frozen=True)
class PontryaginSpace:
    d: int
    n: int
    basis: MatPoly
    gram: Mat

    def gram_inverse(self) -> Mat:
        return hermalg.herm_inverse(self.gram)


@dataclass(frozen=True)
class OperatorData:
    """Graph data of the multiplication operator in basis coordinates.

    dom S is spanned by B * dom_basis and z B(z) dom_basis = B(z) action.
    """

    dom_basis: Mat  # n x m
    action: Mat  # n x m


@dataclass(frozen=True)
class RangeClassification:
    kind: str
    witness: GaussianRational | None
    excluded: Poly | None  # b_1; its roots are the excluded points


@dataclass(frozen=True)
class AnalysisReport:
    cond_a: bool
    cond_b: RangeClassification
    defect: int
    dims: tuple  # (n, positive index, negative index)
    degrees: tuple | None
    is_nevanlinna: bool
    is_full: bool


def make_space(basis: MatPoly, gram: Mat) -> PontryaginSpace:
    """Validate and build a space; rejects dependent columns and bad Grams."""
    d, n = basis.shape
    if n == 0:
        raise DependentBasis("a space needs at least one basis column")
    if linalg.rank(basis.stack_coefficients()) < n:
        raise DependentBasis("basis columns are linearly dependent")
    if gram.shape != (n, n):
        raise SingularGram(f"Gram matrix must be {n} x {n}, got {gram.shape}")
    if not gram.is_hermitian():
        raise NotHermitian("Gram matrix is not Hermitian")
    if linalg.rank(gram) < n:
        raise SingularGram("Gram matrix is singular")
    return PontryaginSpace(d, n, basis, gram)


def reproducing_kernel(space: PontryaginSpace) -> BivariateKernel:
    """K(z,w) = B(z) G^{-1} B(w)* through the coefficient blocks of B."""
    ginv = space.gram_inverse()
    mats = space.basis.coeff_mats()
    grid = [[bj * ginv * bk.conj_transpose() for bk in mats] for bj in mats]
    return BivariateKernel.from_grid(space.d, grid)


def kernel_factor(kernel: BivariateKernel) -> PontryaginSpace:
    """Inverse of reproducing_kernel up to basis choice.

    Picks the pivot columns of the coefficient stack A as a basis,
    solves K = B H B~ for the middle matrix and sets G = H^{-1}.
    """
    a = kernel.stack()
    pivots = linalg.column_space_pivots(a)
    if not pivots:
        raise DegenerateKernel("the zero kernel has no nondegenerate space")
    stack = a.take_columns(pivots)
    r = len(pivots)
    row_pivots = linalg.column_space_pivots(stack.transpose())
    select_inv = linalg.inverse(stack.submatrix(row_pivots, range(r)))
    h = select_inv * a.submatrix(row_pivots, row_pivots) * select_inv.conj_transpose()
    if stack * h * stack.conj_transpose() != a:
        raise DegenerateKernel("kernel does not factor through an invertible middle matrix")
    d, p = kernel.d, kernel.p
    basis = MatPoly.from_coeff_mats(
        [stack.submatrix(range(j * d, (j + 1) * d), range(r)) for j in range(p)]
    )
    try:
        gram = hermalg.herm_inverse(h)
    except Exception as exc:  # pragma: no cover - theory says h is invertible
        raise DegenerateKernel(f"middle matrix is singular: {exc}")
    return make_space(basis, gram)


def _membership_operator(basis: MatPoly, power: int = 1):
    """Coordinates (C, Z) with z^power B C = B Z; C spans {c : z^power B c in span B}."""
    d, n = basis.shape
    shifted = basis.scale(Poly.monomial(power))
    blocks = int(max(shifted.degree, basis.degree)) + 1
    left = shifted.stack_coefficients(blocks)
    right = basis.stack_coefficients(blocks)
    system = left.hstack(right.scale(GaussianRational(-1)))
    ns = linalg.nullspace(system)
    c = ns.submatrix(range(n), range(ns.cols))
    z = ns.submatrix(range(n, 2 * n), range(ns.cols))
    return c, z


def multiplication_operator(space: PontryaginSpace) -> OperatorData:
    c, z = _membership_operator(space.basis)
    return OperatorData(c, z)


def is_symmetric(space: PontryaginSpace) -> bool:
    """Condition (A): [Sf, g] = [f, Sg] on dom S."""
    op = multiplication_operator(space)
    g = space.gram
    lhs = op.dom_basis.conj_transpose() * g * op.action
    rhs = op.action.conj_transpose() * g * op.dom_basis
    return lhs == rhs


def smith_rank_and_b1(basis: MatPoly):
    sf = smithforney.smith(basis)
    return sf.l, sf.b1


def defect_numbers(space: PontryaginSpace) -> int:
    """Common defect number of the symmetric multiplication operator.

    Returns the Smith rank l of the basis, which equals the codimension of
    ran S exactly when the range condition holds at some point.
    """
    if not is_symmetric(space):
        raise NotSymmetric("defect numbers need a symmetric multiplication operator")
    return smithforney.smith(space.basis).l


def range_condition_at(space: PontryaginSpace, alpha) -> bool:
    """Condition (B) at one point, via dim dom S = n - rank B(alpha)."""
    m = multiplication_operator(space).dom_basis.cols
    return m == space.n - linalg.rank(space.basis.eval(alpha))


def range_condition_classify(space: PontryaginSpace) -> RangeClassification:
    """Global condition (B): nonempty iff l + dim dom S = n.

    When nonempty the good set is exactly the complement of the zeros of
    the Smith factor b_1, so that polynomial is the excluded-set report.
    """
    l, b1 = smith_rank_and_b1(space.basis)
    m = multiplication_operator(space).dom_basis.cols
    if l + m != space.n:
        return RangeClassification(FAILS_EVERYWHERE, None, None)
    if b1.is_one():
        return RangeClassification(HOLDS_EVERYWHERE, GaussianRational(0), b1)
    k = 0
    while b1(GaussianRational(k)).is_zero():
        k += 1
    return RangeClassification(HOLDS_GENERICALLY, GaussianRational(k), b1)


def negative_squares(kernel: BivariateKernel) -> Inertia:
    """Signature of the stacked coefficient matrix of the kernel."""
    if kernel.is_zero():
        return Inertia(0, 0, 0)
    return hermalg.inertia(kernel.stack())


def doubled_kernel_indices(kernel: BivariateKernel, q: int) -> Inertia:
    """Signature of i (z^q - w*^q) K(z,w) for q at least the degree bound."""
    return hermalg.inertia(kernel.doubled(q).stack())


def degree_filtration(space_or_basis):
    """Dimension drops of dom(S^j) and the induced degree multiset.

    Returns (m_max, deltas, mus) with deltas[j] = dim dom(S^j) - dim
    dom(S^{j+1}) and mus[k-1] = 1 + max{j >= -1 : deltas[j] >= k}, where
    delta_{-1} = d.
    """
    basis = _basis_of(space_or_basis)
    d, n = basis.shape
    dims = [n]
    power = 1
    while dims[-1] > 0:
        c, _ = _membership_operator(basis, power)
        dims.append(c.cols)
        power += 1
    m_max = len(dims) - 2  # dom(S^{m_max}) != 0 = dom(S^{m_max + 1})
    deltas = tuple(dims[j] - dims[j + 1] for j in range(m_max + 1))
    mus = []
    for k in range(1, d + 1):
        best = -1  # delta_{-1} = d >= k always
        for j in range(m_max + 1):
            if deltas[j] >= k:
                best = j
        mus.append(1 + best)
    return m_max, deltas, tuple(mus)


def _basis_of(space_or_basis) -> MatPoly:
    if isinstance(space_or_basis, PontryaginSpace):
        return space_or_basis.basis
    return space_or_basis


def analyze(space: PontryaginSpace) -> AnalysisReport:
    """Full report: symmetry, range condition, defect, indices, degrees."""
    cond_a = is_symmetric(space)
    cond_b = range_condition_classify(space)
    l = smithforney.smith(space.basis).l
    sig = hermalg.inertia(space.gram)
    degrees = None
    if cond_b.kind != FAILS_EVERYWHERE:
        degrees = degree_filtration(space)[2]
    is_nevanlinna = cond_a and cond_b.kind != FAILS_EVERYWHERE
    is_full = cond_a and cond_b.kind == HOLDS_EVERYWHERE
    return AnalysisReport(
        cond_a=cond_a,
        cond_b=cond_b,
        defect=l,
        dims=(space.n, sig.plus, sig.minus),
        degrees=degrees,
        is_nevanlinna=is_nevanlinna,
        is_full=is_full,
    )
