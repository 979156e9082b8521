"""Independent brute-force oracles used to pin expected values.

Each oracle deliberately recomputes its answer along a different route
than the library (cofactor expansions, direct bivariate expansion,
denominator lcm), so agreement is evidence and not tautology.
"""

import itertools

from kernelforms.field import GaussianRational
from kernelforms.linalg import Mat
from kernelforms.polyalg import BivariateKernel, MatPoly, Poly, poly_gcd, poly_lcm


def det_cofactor(m: MatPoly) -> Poly:
    """Cofactor-expansion determinant (exponential; only for small sizes)."""
    n = m.rows
    if n == 1:
        return m[0, 0]
    acc = Poly()
    for j in range(n):
        if m[0, j].is_zero():
            continue
        sub = m.take_rows(range(1, n)).take_columns([c for c in range(n) if c != j])
        term = m[0, j] * det_cofactor(sub)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def rank_by_minors(m: MatPoly) -> int:
    """max k with a nonvanishing k x k minor, by full enumeration."""
    best = 0
    for k in range(1, min(m.rows, m.cols) + 1):
        found = False
        for ridx in itertools.combinations(range(m.rows), k):
            for cidx in itertools.combinations(range(m.cols), k):
                if not det_cofactor(m.take_rows(ridx).take_columns(cidx)).is_zero():
                    found = True
                    break
            if found:
                break
        if found:
            best = k
    return best


def lcm_of_polys(polys) -> Poly:
    acc = Poly.const(1)
    for p in polys:
        acc = poly_lcm(acc, p)
    return acc


def gcd_of_minors(m: MatPoly, k: int) -> Poly:
    g = Poly()
    for ridx in itertools.combinations(range(m.rows), k):
        for cidx in itertools.combinations(range(m.cols), k):
            g = poly_gcd(g, det_cofactor(m.take_rows(ridx).take_columns(cidx)))
    return g


def expand_times_z_minus_wstar(kernel: BivariateKernel):
    """Grid of (z - w*) K(z, w), by direct bivariate multiplication."""
    size = kernel.p + 1
    return [
        [kernel.block(j - 1, k) - kernel.block(j, k - 1) for k in range(size)]
        for j in range(size)
    ]


def eval_bivariate(grid, z0, w0) -> Mat:
    z0 = GaussianRational.of(z0)
    ws = GaussianRational.of(w0).conjugate()
    d = grid[0][0].rows
    acc = Mat.zero(d, grid[0][0].cols)
    zp = GaussianRational(1)
    for row in grid:
        wp = GaussianRational(1)
        for block in row:
            acc = acc + block.scale(zp * wp)
            wp = wp * ws
        zp = zp * z0
    return acc


def inner_product(space, f_coords, g_coords) -> GaussianRational:
    """[f, g] = g* G f for coordinate vectors."""
    out = g_coords.conj_transpose() * space.gram * f_coords
    return out[0, 0]
