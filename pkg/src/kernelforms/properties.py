"""Seeded randomized property suites, shared by the CLI propcheck command
and the acceptance tests.

Every suite takes (rng, trials) and raises AssertionError with a short
message on the first violated property; everything is exact, so a failure
is a real counterexample, never noise.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import canonical, hermalg, linalg, pairsynth, smithforney, space as space_mod
from .field import GaussianRational, I, ONE, ZERO
from .linalg import Mat
from .polyalg import (
    BivariateKernel,
    MatPoly,
    P_ONE,
    P_ZERO,
    Poly,
    poly_gcd,
    row_data,
)

# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def rand_rational(rng, span=3, denominators=(1, 1, 2)) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice(denominators))


def rand_scalar(rng, span=3) -> GaussianRational:
    return GaussianRational(rand_rational(rng, span), rand_rational(rng, span))


def rand_poly(rng, max_deg=3, span=3) -> Poly:
    deg = rng.randint(0, max_deg)
    return Poly([rand_scalar(rng, span) for _ in range(deg + 1)])


def rand_matpoly(rng, rows, cols, max_deg=3) -> MatPoly:
    return MatPoly([[rand_poly(rng, max_deg) for _ in range(cols)] for _ in range(rows)])


def rand_nonzero_matpoly(rng, rows, cols, max_deg=3) -> MatPoly:
    while True:
        m = rand_matpoly(rng, rows, cols, max_deg)
        if not m.is_zero():
            return m


def rand_invertible_mat(rng, n, span=2) -> Mat:
    while True:
        m = Mat([[rand_scalar(rng, span) for _ in range(n)] for _ in range(n)])
        if linalg.rank(m) == n:
            return m


def rand_hermitian(rng, n, span=3) -> Mat:
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(rand_rational(rng, span))
        for j in range(i + 1, n):
            x = rand_scalar(rng, span)
            rows[i][j] = x
            rows[j][i] = x.conjugate()
    return Mat(rows)


def rand_unimodular(rng, d, factors=4, max_deg=2) -> MatPoly:
    """Product of elementary unimodular factors (shears and constant swaps)."""
    w = MatPoly.identity(d)
    if d == 1:
        return w.scale(Poly.const(rng.choice([1, -1, I, GaussianRational(0, -1)])))
    for _ in range(factors):
        i, j = rng.sample(range(d), 2)
        e = [[P_ONE if a == b else P_ZERO for b in range(d)] for a in range(d)]
        if rng.random() < 0.8:
            e[i][j] = rand_poly(rng, max_deg, span=2)
        else:
            e[i][i], e[i][j], e[j][i], e[j][j] = P_ZERO, P_ONE, P_ONE, P_ZERO
        w = w * MatPoly(e)
    return w


def rand_full_rank_everywhere(rng, d, max_deg=2) -> MatPoly:
    """d x 2d matrix polynomial of rank d at every point."""
    tail = rand_matpoly(rng, d, d, max_deg)
    base = MatPoly.identity(d).hstack(tail)
    return rand_unimodular(rng, d, factors=2, max_deg=1) * base


def rand_canonical_degrees(rng, d, total_max=6):
    while True:
        degs = sorted((rng.randint(0, 3) for _ in range(d)), reverse=True)
        if 0 < sum(degs) <= total_max:
            return tuple(degs)


def rand_admissible_space(rng, d_max=3, everywhere=None):
    """Space with a symmetric multiplication operator and the range
    condition holding somewhere (everywhere when requested).

    Built on a canonical subspace with a block-Hankel moment Gram (which
    makes multiplication symmetric by construction), then pushed through a
    unimodular W, a constant change of basis, and optionally a polynomial
    factor with nonconstant determinant, which moves the good set of the
    range condition off the full plane.
    """
    d = rng.randint(1, d_max)
    degs = rand_canonical_degrees(rng, d, total_max=5)
    n = sum(degs)
    while True:
        gram_can = _hankel_gram(rng, degs)
        if linalg.rank(gram_can) == n:
            break
    can = canonical.canonical_basis(d, degs)
    w = rand_unimodular(rng, d, factors=3, max_deg=1)
    if everywhere is None:
        everywhere = rng.random() < 0.6
    if not everywhere:
        root = GaussianRational(rng.randint(-2, 2))
        stretch = MatPoly.diag([Poly([-root, ONE])] + [P_ONE] * (d - 1))
        flip = rand_unimodular(rng, d, factors=2, max_deg=1)
        w = flip * stretch * canonical.unimodular_inverse(flip) * w
    t = rand_invertible_mat(rng, n)
    basis = w * can * t
    gram = t.conj_transpose() * gram_can * t
    return space_mod.make_space(basis, gram)


def _hankel_gram(rng, degs) -> Mat:
    """Gram on the canonical basis with [e_i z^a, e_k z^b] = m(i, k, a+b).

    The block-Hankel moment structure makes multiplication by z symmetric
    by construction; Hermitianness forces m(k, i, t) = m(i, k, t)*.
    """
    d = len(degs)
    moments = {}

    def moment(i, k, t):
        if i > k:
            return moment(k, i, t).conjugate()
        key = (i, k, t)
        if key not in moments:
            v = rand_scalar(rng, 2)
            moments[key] = GaussianRational(v.re) if i == k else v
        return moments[key]

    index = [
        (i, a) for a in range(max(degs)) for i in range(d) if degs[i] > a
    ]
    # entry (r, c) = [column c, column r] = [e_k z^b, e_i z^a] = m(k, i, a+b)
    return Mat(
        [[moment(k, i, a + b) for (k, b) in index] for (i, a) in index]
    )


def rand_kernel(rng, d_max=2, p_max=2) -> BivariateKernel:
    d = rng.randint(1, d_max)
    p = rng.randint(1, p_max)
    grid = [[None] * p for _ in range(p)]
    for j in range(p):
        for k in range(j, p):
            b = Mat([[rand_scalar(rng, 2) for _ in range(d)] for _ in range(d)])
            if j == k:
                b = b + b.conj_transpose()
            grid[j][k] = b
            if j != k:
                grid[k][j] = b.conj_transpose()
    return BivariateKernel.from_grid(d, grid)


def rand_j_unitary(rng, d, factors=3) -> Mat:
    """Product of elementary J-unitary blocks for J = [[0,iI],[-iI,0]]."""
    u = Mat.identity(2 * d)
    for _ in range(factors):
        kind = rng.randrange(3)
        if kind == 0:
            t = rand_invertible_mat(rng, d)
            blk = linalg.block_diag(t, linalg.inverse(t).conj_transpose())
        elif kind == 1:
            h = rand_hermitian(rng, d, span=2)
            blk = Mat.identity(d).hstack(h).vstack(
                Mat.zero(d, d).hstack(Mat.identity(d))
            )
        else:
            blk = Mat.zero(d, d).hstack(Mat.identity(d)).vstack(
                Mat.identity(d).scale(GaussianRational(-1)).hstack(Mat.zero(d, d))
            )
        u = u * blk
    return u


# ---------------------------------------------------------------------------
# oracles used inside the suites
# ---------------------------------------------------------------------------


def gcd_of_minors(b: MatPoly, k: int) -> Poly:
    """Monic gcd of all k x k minors (brute force, the Smith oracle)."""
    import itertools

    g = Poly()
    for ridx in itertools.combinations(range(b.rows), k):
        for cidx in itertools.combinations(range(b.cols), k):
            g = poly_gcd(g, b.take_rows(ridx).take_columns(cidx).det())
    return g


def charpoly_inertia(h: Mat) -> hermalg.Inertia:
    """Sign-variation count on the characteristic polynomial (all-real
    roots make Descartes exact); the independent inertia oracle."""
    n = h.rows
    # Faddeev-LeVerrier: exact characteristic polynomial det(tI - H)
    coeffs = [ONE]  # leading coefficient of t^n
    m = Mat.identity(n)
    for k in range(1, n + 1):
        hm = h * m
        trace = sum((hm[i, i] for i in range(n)), ZERO)
        c = trace * GaussianRational(Fraction(-1, k))
        coeffs.append(c)
        m = hm + Mat.identity(n).scale(c)
    # coeffs[j] multiplies t^(n-j); all must be real for Hermitian input
    seq = []
    for c in coeffs:
        assert c.is_real(), "characteristic polynomial drifted off the real axis"
        seq.append(c.re)
    zero_count = 0
    while seq and seq[-1] == 0:
        seq.pop()
        zero_count += 1
    signs = [x for x in seq if x != 0]
    plus = sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))
    alt = [x if (j % 2 == 0) else -x for j, x in enumerate(seq)]
    signs_neg = [x for x in alt if x != 0]
    minus = sum(1 for a, b in zip(signs_neg, signs_neg[1:]) if (a > 0) != (b > 0))
    return hermalg.Inertia(plus, minus, zero_count)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_smith(rng, trials=100):
    from .polyalg import generic_rank

    for _ in range(trials):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        b = rand_nonzero_matpoly(rng, rows, cols, max_deg=3)
        sf = smithforney.smith(b)
        assert sf.l == generic_rank(b), "Smith rank != generic rank"
        assert sf.u * sf.middle(rows, cols) * sf.v == b, "reconstruction failed"
        assert smithforney.is_unimodular(sf.u), "U not unimodular"
        assert smithforney.is_unimodular(sf.v), "V not unimodular"
        for a, nxt in zip(sf.factors, sf.factors[1:]):
            assert (a % nxt).is_zero(), "divisibility chain broken"
        prod = P_ONE
        for k in range(1, sf.l + 1):
            prod = (prod * sf.factors[sf.l - k]).monic()
            assert gcd_of_minors(b, k) == prod, "gcd-of-minors oracle mismatch"
        t = rand_invertible_mat(rng, cols)
        sf2 = smithforney.smith(b * t)
        assert (sf2.l, sf2.factors) == (sf.l, sf.factors), "column-change invariance failed"


def suite_rowreduce(rng, trials=100):
    for _ in range(trials):
        d = rng.randint(1, 3)
        p = rand_full_rank_everywhere(rng, d)
        rr = smithforney.row_reduce(p)
        assert rr.u * p == rr.s, "row reduction is not U P"
        assert smithforney.is_unimodular(rr.u), "transformer not unimodular"
        assert linalg.rank(rr.s_inf) == d, "leading matrix rank deficient"
        rd = row_data(rr.s)
        assert rd.extdeg == rd.intdeg, "extdeg != intdeg on row-reduced output"
        s_tilde = rr.s.para_conjugate()
        for _ in range(20):
            u_vec = MatPoly([[rand_poly(rng, 2)] for _ in range(d)])
            if u_vec.is_zero():
                continue
            prod = s_tilde * u_vec
            expect = max(
                rr.sigma[j] + int(u_vec[j, 0].degree)
                for j in range(d)
                if not u_vec[j, 0].is_zero()
            )
            assert int(prod.degree) == expect, "predictable degree property failed"
        left = rand_unimodular(rng, d, factors=2, max_deg=1)
        assert smithforney.forney_indices(left * p) == smithforney.forney_indices(
            p
        ), "Forney multiset not invariant"


def suite_inertia(rng, trials=100):
    for _ in range(trials):
        n = rng.randint(1, 6)
        h = rand_hermitian(rng, n)
        ine = hermalg.inertia(h)
        oracle = charpoly_inertia(h)
        assert tuple(ine) == tuple(oracle), f"inertia {tuple(ine)} != oracle {tuple(oracle)}"
        ell, diag = hermalg.congruence_diagonalize(h)
        assert ell * diag * ell.conj_transpose() == h, "L D L* round trip failed"
        s = rand_invertible_mat(rng, n)
        assert tuple(hermalg.inertia(s.conj_transpose() * h * s)) == tuple(
            ine
        ), "congruence invariance failed"


def suite_doubling(rng, trials=100):
    for _ in range(trials):
        k = rand_kernel(rng)
        rank = linalg.rank(k.stack()) if not k.is_zero() else 0
        for q in (k.p, k.p + 1, k.p + 2):
            ine = space_mod.doubled_kernel_indices(k, q)
            assert ine.plus == rank and ine.minus == rank, "doubled indices != stack rank"


def suite_decompose(rng, trials=100):
    for _ in range(trials):
        d = rng.randint(1, 3)
        degs = rand_canonical_degrees(rng, d, total_max=6)
        n = sum(degs)
        w = rand_unimodular(rng, d, factors=5, max_deg=2)
        t = rand_invertible_mat(rng, n)
        basis = w * canonical.canonical_basis(d, degs) * t
        dec = canonical.decompose(basis)
        assert dec.degrees == degs, f"degrees {dec.degrees} != {degs}"
        assert dec.unimodular, "unimodular input produced non-unimodular W"
        assert dec.w * canonical.canonical_basis(d, degs) * dec.t == basis
        for c in range(n):
            assert canonical.membership(dec, basis.take_columns([c])), "span mismatch"
        dec2 = canonical.decompose(basis, rng=rng)
        assert dec2.degrees == degs, "degree multiset unstable under pivot shuffle"


def suite_synthesize(rng, trials=100):
    for _ in range(trials):
        s = rand_admissible_space(rng, d_max=2)
        report = space_mod.analyze(s)
        assert report.cond_a, "generated space lost symmetry"
        assert report.is_nevanlinna, "generated space lost the range condition"
        kernel = space_mod.reproducing_kernel(s)
        form = pairsynth.synthesize(s)
        assert pairsynth.verify_form(form, kernel), "synthesized form failed to verify"
        mus = space_mod.degree_filtration(s)[2]
        assert smithforney.forney_indices(form.p) == tuple(
            sorted(mus, reverse=True)
        ), "Forney indices != filtration degrees"
        assert form.full == (
            report.cond_b.kind == space_mod.HOLDS_EVERYWHERE
        ), "full flag disagrees with the range classification"
        # converse direction: a congruence twist still encodes an admissible space
        twist = rand_invertible_mat(rng, 2 * s.d)
        twisted = pairsynth.NevanlinnaForm(
            form.p * twist, twist.conj_transpose() * form.q * twist, form.full
        )
        back = space_mod.kernel_factor(pairsynth.kernel_of_form(twisted))
        back_report = space_mod.analyze(back)
        assert back_report.cond_a, "recovered space is not symmetric"
        assert back_report.is_nevanlinna, "recovered space fails the range condition"


def suite_lagrange(rng, trials=100):
    for _ in range(trials):
        s = rand_admissible_space(rng, d_max=2, everywhere=True)
        form = pairsynth.synthesize(s)
        rr = smithforney.row_reduce(form.p)
        d = s.d
        deg = int(rr.s.degree)
        dim_lp, dim_perp = pairsynth.lagrange_dims(rr.s, form.q)
        total = sum(rr.sigma)
        assert dim_lp == d * deg + total, "dim L_p formula failed"
        assert dim_perp == d * deg - total, "dim L_p^perp formula failed"


def suite_junitary(rng, trials=100):
    for _ in range(trials):
        d = rng.randint(1, 2)
        diag = [Poly([GaussianRational(rand_rational(rng)) for _ in range(rng.randint(1, 3))]) for _ in range(d)]
        pair = pairsynth.NevanlinnaPair(MatPoly.diag(diag), MatPoly.identity(d))
        u = rand_j_unitary(rng, d)
        moved = pairsynth.j_unitary_transform(pair, u)
        assert pairsynth.kernel_of_pair(moved) == pairsynth.kernel_of_pair(
            pair
        ), "J-unitary transform changed the kernel"


SUITES = {
    "smith": suite_smith,
    "rowreduce": suite_rowreduce,
    "inertia": suite_inertia,
    "doubling": suite_doubling,
    "decompose": suite_decompose,
    "synthesize": suite_synthesize,
    "lagrange": suite_lagrange,
    "junitary": suite_junitary,
}

DEFAULT_SEED = 20240901


def run_suite(name, seed=DEFAULT_SEED, trials=100):
    """Run one suite; returns None or raises AssertionError."""
    SUITES[name](random.Random(seed), trials)
