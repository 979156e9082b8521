import random

import pytest

from kernelforms.errors import NotFullRank, NotSquare, RankDeficient, ZeroMatrix
from kernelforms.field import GaussianRational, I
from kernelforms.polyalg import MatPoly, P_ONE, P_Z, P_ZERO, Poly, matpoly_inverse, row_data
from kernelforms.properties import (
    rand_full_rank_everywhere,
    rand_nonzero_matpoly,
    rand_unimodular,
)
from kernelforms.smithforney import (
    forney_indices,
    full_rank_factorize,
    is_unimodular,
    row_reduce,
    smith,
)

from oracles import gcd_of_minors

MI = GaussianRational(0, -1)
Z2 = Poly([0, 0, 1])


def pair_diag():
    x = MatPoly([[P_Z, 0, 0], [0, 0, 0], [0, 0, Z2]])
    y = MatPoly([[0, 0, 0], [0, P_Z, 0], [0, 0, P_Z]])
    return x.hstack(y)


def pair_deg211():
    x = MatPoly([[MI, 0, 0], [Poly([0, I]), 0, 0], [0, MI, Z2]])
    y = MatPoly([[0, Poly([0, MI]), 0], [0, 0, -1], [Poly([0, MI]), 0, 0]])
    return x.hstack(y)


def test_smith_identity_matrix():
    sf = smith(MatPoly.identity(2))
    assert sf.l == 2 and all(f.is_one() for f in sf.factors)
    assert sf.u * sf.middle(2, 2) * sf.v == MatPoly.identity(2)


def test_smith_antidiagonal_z():
    g = MatPoly([[0, 0, P_Z], [0, P_Z, 0], [P_Z, 0, 0]])
    sf = smith(g)
    assert sf.l == 3 and list(sf.factors) == [P_Z, P_Z, P_Z]
    assert sf.u * sf.middle(3, 3) * sf.v == g


def test_smith_rank_one():
    b = MatPoly([[P_ONE, P_Z], [P_Z, Z2]])
    sf = smith(b)
    assert sf.l == 1 and list(sf.factors) == [P_ONE]
    # oracle: gcd of 1x1 minors is 1, all 2x2 minors vanish
    assert gcd_of_minors(b, 1).is_one()
    assert gcd_of_minors(b, 2).is_zero()


def test_smith_zero_matrix_rejected():
    with pytest.raises(ZeroMatrix):
        smith(MatPoly.zero(2, 2))


def test_smith_divisibility_order():
    # b_{i+1} divides b_i: the first factor carries every zero
    b = MatPoly.diag([P_Z * P_Z, P_Z])
    sf = smith(b)
    assert sf.factors[0] == Z2 and sf.factors[1] == P_Z
    assert (sf.factors[0] % sf.factors[1]).is_zero()
    assert sf.u * sf.middle(2, 2) * sf.v == b


def test_row_reduce_already_reduced():
    t = MatPoly([[0, 0, P_Z, 0, 0, 1], [0, 0, 0, 0, 1, 0], [1, 0, 0, 0, 0, 0]])
    rr = row_reduce(t)
    assert rr.u == MatPoly.identity(3)
    assert rr.sigma == (1, 0, 0)


def test_row_reduce_deg211_pair():
    rr = row_reduce(pair_deg211())
    assert sorted(rr.sigma) == [1, 1, 2]
    rd = row_data(rr.s)
    assert rd.extdeg == rd.intdeg


def test_row_reduce_stacked_identities():
    b = MatPoly.identity(2).hstack(MatPoly.identity(2))
    rr = row_reduce(b)
    assert rr.sigma == (0, 0) and rr.u == MatPoly.identity(2)


def test_row_reduce_rejects_rank_drop():
    with pytest.raises(NotFullRank):
        row_reduce(MatPoly([[P_Z, P_ZERO]]))


def test_forney_examples():
    assert forney_indices(pair_diag()) == (1, 0, 0)
    assert forney_indices(pair_deg211()) == (2, 1, 1)
    b = MatPoly.identity(3).hstack(MatPoly.zero(3, 3))
    assert forney_indices(b) == (0, 0, 0)
    with pytest.raises(RankDeficient):
        forney_indices(MatPoly([[P_Z, Z2], [P_Z, Z2]]))


def test_full_rank_factorize_examples():
    p = pair_diag()
    fr = full_rank_factorize(p)
    assert fr.g * fr.t == p
    assert list(smith(fr.g).factors) == [P_Z, P_Z, P_Z]
    sft = smith(fr.t)
    assert sft.l == 3 and all(f.is_one() for f in sft.factors)

    row = MatPoly([[P_Z, Z2]])
    fr = full_rank_factorize(row)
    assert fr.g == MatPoly([[P_Z]])  # gcd of the entries
    assert fr.g * fr.t == row

    u = rand_unimodular(random.Random(0), 2)
    p = u * MatPoly.identity(2).hstack(MatPoly.zero(2, 2))
    fr = full_rank_factorize(p)
    assert is_unimodular(fr.g)


def test_full_rank_factorize_essential_uniqueness():
    p = pair_diag()
    base = full_rank_factorize(p)
    for seed in range(5):
        other = full_rank_factorize(p, rng=random.Random(seed))
        assert other.g * other.t == p
        ratio = matpoly_inverse(base.g) * other.g
        assert ratio.is_polynomial()
        e = ratio.to_matpoly()
        assert is_unimodular(e)
        assert e * other.t == base.t


def test_is_unimodular():
    assert is_unimodular(MatPoly([[P_ONE, P_Z], [P_ZERO, P_ONE]]))
    assert not is_unimodular(MatPoly.diag([P_Z, P_ONE]))
    w = MatPoly([[0, 0, 1], [0, 1, 0], [P_Z, 0, 0]])
    assert not is_unimodular(w)  # det = -z
    with pytest.raises(NotSquare):
        is_unimodular(MatPoly.zero(2, 3))


def test_smith_oracle_small_random():
    rng = random.Random(11)
    for _ in range(25):
        b = rand_nonzero_matpoly(rng, rng.randint(1, 3), rng.randint(1, 3), 3)
        sf = smith(b)
        prod = P_ONE
        for k in range(1, sf.l + 1):
            prod = (prod * sf.factors[sf.l - k]).monic()
            assert gcd_of_minors(b, k) == prod


def test_predictable_degree_property_random():
    rng = random.Random(12)
    from kernelforms.properties import rand_poly

    for _ in range(10):
        d = rng.randint(1, 3)
        p = rand_full_rank_everywhere(rng, d)
        rr = row_reduce(p)
        s_tilde = rr.s.para_conjugate()
        for _ in range(20):
            u = MatPoly([[rand_poly(rng, 2)] for _ in range(d)])
            if u.is_zero():
                continue
            expected = max(
                rr.sigma[j] + int(u[j, 0].degree)
                for j in range(d)
                if not u[j, 0].is_zero()
            )
            assert int((s_tilde * u).degree) == expected
