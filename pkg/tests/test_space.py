import random

import pytest

from kernelforms.errors import DependentBasis, NotHermitian, NotSymmetric, QTooSmall, SingularGram
from kernelforms.field import GaussianRational, ONE
from kernelforms.hermalg import inertia
from kernelforms.linalg import Mat, rank, solve_any
from kernelforms.polyalg import BivariateKernel, MatPoly, P_ONE, P_Z, P_ZERO, Poly
from kernelforms.properties import rand_admissible_space, rand_kernel, rand_scalar
from kernelforms.space import (
    FAILS_EVERYWHERE,
    HOLDS_EVERYWHERE,
    HOLDS_GENERICALLY,
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

from oracles import inner_product

Z2 = Poly([0, 0, 1])


def test_make_space_validations(space_deg31):
    assert space_deg31.n == 4 and space_deg31.d == 2
    assert tuple(inertia(space_deg31.gram)) == (3, 1, 0)
    euclid = make_space(MatPoly.identity(3), Mat.identity(3))
    assert euclid.n == 3
    with pytest.raises(DependentBasis):
        make_space(MatPoly([[P_ONE, Poly([2])]]), Mat.identity(2))
    with pytest.raises(SingularGram):
        make_space(MatPoly.identity(2), Mat.diag([1, 0]))
    with pytest.raises(NotHermitian):
        make_space(MatPoly.identity(2), Mat([[0, 1], [2, 0]]))


def test_reproducing_kernel_examples(space_deg211, kernel_deg211, space_even_scalar):
    assert reproducing_kernel(space_deg211) == kernel_deg211
    assert kernel_deg211.block(0, 0) == Mat([[0, 0, -1], [0, 0, 0], [-1, 0, 0]])
    assert kernel_deg211.block(0, 1) == Mat([[0, 0, 0], [0, 0, -1], [0, 0, 0]])
    euclid = make_space(MatPoly.identity(3), Mat.identity(3))
    assert reproducing_kernel(euclid) == BivariateKernel.from_grid(3, [[Mat.identity(3)]])
    k0 = reproducing_kernel(space_even_scalar)
    # diag(1 + z^2 w*^2, 0)
    assert k0.p == 3
    assert k0.block(0, 0) == Mat([[1, 0], [0, 0]])
    assert k0.block(2, 2) == Mat([[1, 0], [0, 0]])
    assert k0.block(1, 1).is_zero() and k0.block(2, 0).is_zero()


def test_reproducing_property(space_deg211, space_deg31, space_zcolumn):
    rng = random.Random(31)
    for space in (space_deg211, space_deg31, space_zcolumn):
        ginv = space.gram_inverse()
        for col in range(space.n):
            f_coords = Mat.identity(space.n).take_columns([col])
            for _ in range(5):
                w = rand_scalar(rng)
                x = Mat([[rand_scalar(rng)] for _ in range(space.d)])
                k_coords = ginv * space.basis.eval(w).conj_transpose() * x
                lhs = inner_product(space, f_coords, k_coords)
                fw = space.basis.eval(w) * f_coords
                rhs = (x.conj_transpose() * fw)[0, 0]
                assert lhs == rhs


def test_kernel_factor_examples(kernel_deg211, space_zcolumn):
    euclid = kernel_factor(BivariateKernel.from_grid(2, [[Mat.identity(2)]]))
    assert euclid.n == 2 and euclid.gram == Mat.identity(2)

    s = kernel_factor(kernel_deg211)
    assert s.n == 4
    assert tuple(inertia(s.gram)) == (2, 2, 0)
    assert reproducing_kernel(s) == kernel_deg211

    kz = reproducing_kernel(space_zcolumn)
    s1 = kernel_factor(kz)
    assert s1.n == 1 and tuple(inertia(s1.gram)) == (1, 0, 0)
    assert s1.basis == MatPoly([[P_ZERO], [P_ZERO], [P_Z]])


def test_kernel_factor_round_trip_random():
    rng = random.Random(32)
    for _ in range(15):
        k = rand_kernel(rng)
        if k.is_zero():
            continue
        assert reproducing_kernel(kernel_factor(k)) == k


def test_multiplication_operator_examples(space_deg211, space_gapped):
    op = multiplication_operator(space_deg211)
    assert op.dom_basis.cols == 1
    assert op.dom_basis == Mat([[0], [0], [1], [0]])
    assert op.action == Mat([[0], [0], [0], [1]])

    euclid = make_space(MatPoly.identity(2), Mat.identity(2))
    assert multiplication_operator(euclid).dom_basis.cols == 0

    op = multiplication_operator(space_gapped)
    assert op.dom_basis.cols == 1
    # domain spanned by (0, b0): third basis column
    assert op.dom_basis == Mat([[0], [0], [1], [0]])


def test_is_symmetric_examples(space_deg31, space_deg31_euclidean, space_even_scalar):
    assert is_symmetric(space_deg31)
    assert not is_symmetric(space_deg31_euclidean)
    assert is_symmetric(space_even_scalar)  # empty domain, vacuous


def test_defect_numbers_examples(space_deg211, space_zcolumn, space_deg31_euclidean):
    assert defect_numbers(space_deg211) == 3
    assert defect_numbers(space_zcolumn) == 1
    euclid = make_space(MatPoly.identity(3), Mat.identity(3))
    assert defect_numbers(euclid) == 3
    with pytest.raises(NotSymmetric):
        defect_numbers(space_deg31_euclidean)
    # wherever the range condition holds somewhere, l = codim of dom S
    for space in (space_deg211, space_zcolumn, euclid):
        m = multiplication_operator(space).dom_basis.cols
        assert defect_numbers(space) == space.n - m


def test_range_condition_at_examples(space_gapped, space_deg211, space_zcolumn):
    assert not range_condition_at(space_gapped, 0)
    assert range_condition_at(space_deg211, 5)
    assert not range_condition_at(space_zcolumn, 0)
    assert range_condition_at(space_zcolumn, 1)


def test_range_condition_classify(space_gapped, space_deg31, space_zcolumn):
    assert range_condition_classify(space_gapped).kind == FAILS_EVERYWHERE
    rc = range_condition_classify(space_deg31)
    assert rc.kind == HOLDS_EVERYWHERE and rc.excluded.is_one()
    rc = range_condition_classify(space_zcolumn)
    assert rc.kind == HOLDS_GENERICALLY
    assert rc.excluded == P_Z
    assert not rc.witness.is_zero() or True  # witness avoids the root 0
    assert rc.witness == GaussianRational(1)


def test_range_condition_matches_classification_random():
    rng = random.Random(33)
    for _ in range(10):
        s = rand_admissible_space(rng, d_max=2)
        rc = range_condition_classify(s)
        for _ in range(10):
            alpha = rand_scalar(rng)
            expected = not rc.excluded(alpha).is_zero()
            assert range_condition_at(s, alpha) == expected


def test_negative_squares_examples(kernel_deg211, space_zcolumn):
    k_eye = BivariateKernel.from_grid(3, [[Mat.identity(3)]])
    assert tuple(negative_squares(k_eye)) == (3, 0, 0)
    ine = negative_squares(kernel_deg211)
    assert ine.minus == 2 and ine.plus == 2
    assert ine.plus + ine.minus == 4  # rank of the stack = dim of the space
    ine = negative_squares(reproducing_kernel(space_zcolumn))
    assert tuple(ine) == (1, 0, 5)


def test_doubled_kernel_examples(kernel_deg211, space_zcolumn):
    one = BivariateKernel.from_grid(1, [[Mat([[1]])]])
    assert tuple(doubled_kernel_indices(one, 1)) == (1, 1, 0)
    ine = doubled_kernel_indices(kernel_deg211, 2)
    assert ine.plus == 4 and ine.minus == 4 and ine.n == 12
    ine = doubled_kernel_indices(reproducing_kernel(space_zcolumn), 2)
    assert ine.plus == 1 and ine.minus == 1
    with pytest.raises(QTooSmall):
        doubled_kernel_indices(kernel_deg211, 1)


def test_doubled_kernel_rank_random():
    rng = random.Random(34)
    for _ in range(15):
        k = rand_kernel(rng)
        r = rank(k.stack()) if not k.is_zero() else 0
        for q in (k.p, k.p + 1, k.p + 2):
            ine = doubled_kernel_indices(k, q)
            assert ine.plus == r and ine.minus == r


def test_degree_filtration_examples(space_deg211, space_zcolumn):
    m_max, deltas, mus = degree_filtration(space_deg211)
    assert deltas == (3, 1) and mus == (2, 1, 1)
    euclid = make_space(MatPoly.identity(3), Mat.identity(3))
    m_max, deltas, mus = degree_filtration(euclid)
    assert deltas == (3,) and mus == (1, 1, 1)
    m_max, deltas, mus = degree_filtration(space_zcolumn)
    assert deltas == (1,) and mus == (1, 0, 0)


def test_analyze_examples(space_deg211, space_even_scalar, space_deg31_euclidean):
    rep = analyze(space_deg211)
    assert rep.cond_a and rep.cond_b.kind == HOLDS_EVERYWHERE
    assert rep.defect == 3 and rep.is_full and rep.is_nevanlinna
    rep = analyze(space_even_scalar)
    assert rep.cond_b.kind == FAILS_EVERYWHERE and not rep.is_nevanlinna
    rep = analyze(space_deg31_euclidean)
    assert not rep.cond_a and not rep.is_nevanlinna


def test_multiplication_has_no_eigenvalues():
    rng = random.Random(35)
    for _ in range(10):
        s = rand_admissible_space(rng, d_max=2)
        alpha = rand_scalar(rng)
        shifted = s.basis.scale(Poly([-alpha, ONE]))
        blocks = int(shifted.degree) + 1
        sol = solve_any(
            shifted.stack_coefficients(blocks), Mat.zero(blocks * s.d, 1)
        )
        # z B(z) c = alpha B(z) c forces c = 0 (columns of (z - alpha) B stay independent)
        assert rank(shifted.stack_coefficients(blocks)) == s.n


def test_negative_squares_match_gram():
    rng = random.Random(36)
    for _ in range(10):
        s = rand_admissible_space(rng, d_max=2)
        k = reproducing_kernel(s)
        ine = negative_squares(k)
        gsig = inertia(s.gram)
        assert ine.minus == gsig.minus
        assert ine.plus + ine.minus == s.n
