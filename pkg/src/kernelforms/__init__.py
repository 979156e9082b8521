"""kernelforms: exact analysis of Pontryagin spaces of vector polynomials,
their reproducing kernels, and Nevanlinna forms and pairs."""

from .field import GaussianRational, I, ONE, ZERO
from .linalg import Mat
from .polyalg import BivariateKernel, MatPoly, Poly, RatMat
from .hermalg import Inertia, congruence_diagonalize, herm_solve, inertia
from .smithforney import (
    FullRankFactorization,
    RowReducedForm,
    SmithForm,
    forney_indices,
    full_rank_factorize,
    is_unimodular,
    row_reduce,
    smith,
)
from .space import (
    AnalysisReport,
    OperatorData,
    PontryaginSpace,
    analyze,
    defect_numbers,
    degree_filtration,
    doubled_kernel_indices,
    is_symmetric,
    kernel_factor,
    make_space,
    multiplication_operator,
    negative_squares,
    range_condition_at,
    range_condition_classify,
    reproducing_kernel,
)
from .canonical import CanonicalDecomposition, canonical_basis, decompose, membership
from .pairsynth import (
    NevanlinnaForm,
    NevanlinnaPair,
    NotExtractable,
    extract_pair,
    j_unitary_transform,
    kernel_of_pair,
    lagrange_dims,
    synthesize,
    verify_form,
)
from .qfunction import (
    LinearRelation,
    QFunctionResult,
    defect_basis,
    gamma_field,
    is_selfadjoint_extension,
    lagrange_adjoint,
    multiplication_graph,
    pair_from_q,
    q_function,
    relation,
    resolvent,
)

__version__ = "0.1.0"
