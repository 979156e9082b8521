"""Normal forms of matrix polynomials: Smith form, row reduction, Forney
indices, full-rank factorization.

Invariant-factor ordering: the divisibility chain runs b_{i+1} | b_i, so
b_1 accumulates every zero and rank B(a) = l exactly where b_1(a) != 0.
This is the reverse of the usual textbook convention; callers that consume
`factors` should read b_1 first.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NotFullRank, NotSquare, RankDeficient, ZeroMatrix
from .linalg import Mat
from .polyalg import MatPoly, NEG_INF, P_ONE, P_ZERO, Poly, generic_rank


@dataclass(frozen=True)
class SmithForm:
    u: MatPoly
    v: MatPoly
    factors: tuple  # monic invariant factors b_1, ..., b_l with b_{i+1} | b_i
    l: int

    def middle(self, rows, cols) -> MatPoly:
        out = [[P_ZERO] * cols for _ in range(rows)]
        for i, b in enumerate(self.factors):
            out[i][i] = b
        return MatPoly(out)

    @property
    def b1(self) -> Poly:
        return self.factors[0] if self.factors else P_ONE


@dataclass(frozen=True)
class RowReducedForm:
    u: MatPoly
    s: MatPoly
    sigma: tuple
    s_inf: Mat


@dataclass(frozen=True)
class FullRankFactorization:
    g: MatPoly
    t: MatPoly


def smith(b: MatPoly, rng=None) -> SmithForm:
    """Smith normal form B = U diag(b_1..b_l, 0) V with unimodular U, V.

    Pivot rule: nonzero entry of minimal degree, ties by (row, column);
    an optional rng shuffles ties for the essential-uniqueness tests.
    """
    if b.is_zero():
        raise ZeroMatrix("Smith form of the zero matrix")
    rows, cols = b.shape
    s = [list(r) for r in b.entries]
    u = [list(r) for r in MatPoly.identity(rows).entries]
    v = [list(r) for r in MatPoly.identity(cols).entries]

    def swap_rows(r1, r2):
        if r1 != r2:
            s[r1], s[r2] = s[r2], s[r1]
            for row in u:
                row[r1], row[r2] = row[r2], row[r1]

    def swap_cols(c1, c2):
        if c1 != c2:
            for row in s:
                row[c1], row[c2] = row[c2], row[c1]
            v[c1], v[c2] = v[c2], v[c1]

    def row_op(dst, src, q):
        # row_dst -= q * row_src on S; U gains the inverse column op
        for j in range(cols):
            s[dst][j] = s[dst][j] - q * s[src][j]
        for i in range(rows):
            u[i][src] = u[i][src] + q * u[i][dst]

    def col_op(dst, src, q):
        for i in range(rows):
            s[i][dst] = s[i][dst] - q * s[i][src]
        for j in range(cols):
            v[src][j] = v[src][j] + q * v[dst][j]

    def pick_pivot(t):
        best = None
        candidates = []
        for i in range(t, rows):
            for j in range(t, cols):
                p = s[i][j]
                if p.is_zero():
                    continue
                d = p.degree
                if best is None or d < best:
                    best = d
                    candidates = [(i, j)]
                elif d == best:
                    candidates.append((i, j))
        if not candidates:
            return None
        if rng is not None:
            return candidates[rng.randrange(len(candidates))]
        return candidates[0]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        pos = pick_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            # reduce column t, then row t, against the pivot
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t].is_zero():
                    continue
                q, r = divmod(s[i][t], s[t][t])
                row_op(i, t, q)
                if not r.is_zero():
                    dirty = True
            for j in range(t + 1, cols):
                if s[t][j].is_zero():
                    continue
                q, r = divmod(s[t][j], s[t][t])
                col_op(j, t, q)
                if not r.is_zero():
                    dirty = True
            if dirty:
                pos = pick_pivot(t)
                swap_rows(t, pos[0])
                swap_cols(t, pos[1])
                continue
            # pivot now divides its row and column remnants exactly, and
            # those are zero; enforce divisibility on the trailing block
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if not (s[i][j] % s[t][t]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, Poly.const(-1))  # fold offending row into row t
        lead = s[t][t].leading()
        if not lead.is_one():
            inv = lead.inverse()
            for j in range(cols):
                s[t][j] = s[t][j].scale(inv)
            for i in range(rows):
                u[i][t] = u[i][t].scale(lead)
        t += 1

    diag = [s[i][i] for i in range(t)]  # textbook order d_1 | d_2 | ...
    l = len(diag)
    # reverse into the chain b_{i+1} | b_i via a permutation congruence
    factors = tuple(reversed(diag))
    u_m = MatPoly(u)
    v_m = MatPoly(v)
    if l > 1:
        perm_rows = list(range(rows))
        perm_rows[:l] = list(reversed(range(l)))
        perm_cols = list(range(cols))
        perm_cols[:l] = list(reversed(range(l)))
        u_m = u_m.take_columns(perm_rows)
        v_m = v_m.take_rows(perm_cols)
    return SmithForm(u_m, v_m, factors, l)


def is_unimodular(p: MatPoly) -> bool:
    if p.rows != p.cols:
        raise NotSquare("unimodularity is a property of square matrices")
    d = p.det()
    return (not d.is_zero()) and d.degree == 0


def row_reduce(p: MatPoly) -> RowReducedForm:
    """Left-multiply by a unimodular U until the leading row matrix has
    full rank, i.e. until the input is row reduced.

    Requires full rank at every point; rows can then never cancel away.
    """
    sf = smith(p)
    if sf.l < p.rows or any(f.degree != 0 for f in sf.factors):
        raise NotFullRank("input loses rank at a zero of its invariant factors")
    rows, cols = p.shape
    s = p
    u = MatPoly.identity(rows)
    while True:
        sigma = [max(int(s.row_degree(i)), 0) if s.row_degree(i) is not NEG_INF else 0
                 for i in range(rows)]
        s_inf = Mat(
            [[s.entries[i][j].coeff(sigma[i]) for j in range(cols)] for i in range(rows)]
        )
        ns = linalg.nullspace(s_inf.transpose())  # left kernel vectors
        if ns.cols == 0:
            return RowReducedForm(u, s, tuple(sigma), s_inf)
        x = ns.column(0)
        involved = [i for i in range(rows) if x[i]]
        r = max(involved, key=lambda i: (sigma[i], i))
        scale = x[r].inverse()
        coeffs = [x[i] * scale for i in range(rows)]
        # row_r := sum_i coeffs[i] z^(sigma_r - sigma_i) row_i  (unimodular)
        new_row = [P_ZERO] * cols
        for i in involved:
            if not coeffs[i]:
                continue
            zshift = sigma[r] - sigma[i]
            for j in range(cols):
                new_row[j] = new_row[j] + s.entries[i][j].shift(zshift).scale(coeffs[i])
        new_entries = [list(row) for row in s.entries]
        new_entries[r] = new_row
        s = MatPoly(new_entries)
        new_u = [list(row) for row in u.entries]
        new_u[r] = [
            _sum_shifted(u, coeffs, sigma, r, j, involved) for j in range(rows)
        ]
        u = MatPoly(new_u)


def _sum_shifted(u, coeffs, sigma, r, j, involved):
    acc = P_ZERO
    for i in involved:
        if coeffs[i]:
            acc = acc + u.entries[i][j].shift(sigma[r] - sigma[i]).scale(coeffs[i])
    return acc


def full_rank_factorize(p: MatPoly, rng=None) -> FullRankFactorization:
    """P = G T with det G not identically 0 and rank T(z) = d everywhere."""
    d = p.rows
    sf = smith(p, rng=rng)
    if sf.l < d:
        raise RankDeficient(f"generic rank {sf.l} is below the row count {d}")
    g = sf.u * sf.middle(d, d)
    t = sf.v.take_rows(range(d))
    return FullRankFactorization(g, t)


def forney_indices(p: MatPoly):
    """Sorted multiset of row degrees of a row-reduced unimodular multiple."""
    if generic_rank(p) < p.rows:
        raise RankDeficient("Forney indices need full generic row rank")
    sf = smith(p)
    if all(f.degree == 0 for f in sf.factors):
        reduced = row_reduce(p)
    else:
        reduced = row_reduce(full_rank_factorize(p).t)
    return tuple(sorted(reduced.sigma, reverse=True))
