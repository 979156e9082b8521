"""Exact JSON encoding of every data type the CLI exchanges.

All scalars travel as {"re": "p/q", "im": "p/q"} objects (or bare rational
literals); floats are rejected so nothing inexact can enter.  Problem
files wrap a payload as {"kind": ..., "payload": ...} with kind one of
matpoly, space, kernel, pair, relation, herm.
"""

from __future__ import annotations

from .errors import SchemaError
from .field import GaussianRational, scalar_from_json, scalar_to_json
from .hermalg import check_hermitian
from .linalg import Mat
from .polyalg import BivariateKernel, MatPoly, Poly
from .space import PontryaginSpace, make_space

PROBLEM_KINDS = ("matpoly", "space", "kernel", "pair", "relation", "herm")


def _expect(cond, message, pointer):
    if not cond:
        raise SchemaError(message, pointer)


def _expect_list(obj, pointer):
    _expect(isinstance(obj, list), "expected an array", pointer)
    return obj


def _scalar(obj, pointer) -> GaussianRational:
    _expect(not isinstance(obj, (bool, float)), "scalars must be exact rationals", pointer)
    return scalar_from_json(obj, pointer)


def poly_from_json(obj, pointer="") -> Poly:
    coeffs = _expect_list(obj, pointer)
    return Poly([_scalar(c, f"{pointer}/{k}") for k, c in enumerate(coeffs)])


def poly_to_json(p: Poly):
    return [scalar_to_json(c) for c in p.coeffs]


def mat_from_json(obj, pointer="") -> Mat:
    rows = _expect_list(obj, pointer)
    _expect(rows, "matrix needs at least one row", pointer)
    out = []
    width = None
    for i, row in enumerate(rows):
        row = _expect_list(row, f"{pointer}/{i}")
        if width is None:
            width = len(row)
        _expect(len(row) == width, "ragged matrix rows", f"{pointer}/{i}")
        out.append([_scalar(x, f"{pointer}/{i}/{j}") for j, x in enumerate(row)])
    _expect(width, "matrix needs at least one column", pointer)
    return Mat(out)


def mat_to_json(m: Mat):
    return [[scalar_to_json(x) for x in m.row(i)] for i in range(m.rows)]


def matpoly_from_json(obj, pointer="") -> MatPoly:
    rows = _expect_list(obj, pointer)
    _expect(rows, "matrix polynomial needs at least one row", pointer)
    out = []
    width = None
    for i, row in enumerate(rows):
        row = _expect_list(row, f"{pointer}/{i}")
        if width is None:
            width = len(row)
        _expect(len(row) == width, "ragged matrix rows", f"{pointer}/{i}")
        parsed = []
        for j, entry in enumerate(row):
            here = f"{pointer}/{i}/{j}"
            # an entry is a polynomial (array of scalars) or a bare scalar
            if isinstance(entry, list):
                parsed.append(poly_from_json(entry, here))
            else:
                parsed.append(Poly([_scalar(entry, here)]))
        out.append(parsed)
    return MatPoly(out)


def matpoly_to_json(p: MatPoly):
    return [[poly_to_json(q) for q in row] for row in p.entries]


def kernel_from_json(obj, pointer="") -> BivariateKernel:
    _expect(isinstance(obj, dict), "kernel must be an object", pointer)
    _expect("d" in obj and "blocks" in obj, 'kernel needs "d" and "blocks"', pointer)
    d = obj["d"]
    _expect(isinstance(d, int) and not isinstance(d, bool) and d >= 1, "d must be a positive integer", f"{pointer}/d")
    blocks = _expect_list(obj["blocks"], f"{pointer}/blocks")
    grid = []
    for j, row in enumerate(blocks):
        row = _expect_list(row, f"{pointer}/blocks/{j}")
        grid.append([mat_from_json(b, f"{pointer}/blocks/{j}/{k}") for k, b in enumerate(row)])
    for j, row in enumerate(grid):
        for k, b in enumerate(row):
            _expect(b.shape == (d, d), f"block must be {d} x {d}", f"{pointer}/blocks/{j}/{k}")
    if "p" in obj:
        declared = obj["p"]
        _expect(
            isinstance(declared, int) and not isinstance(declared, bool) and declared == len(grid),
            "declared p does not match the block grid",
            f"{pointer}/p",
        )
    try:
        return BivariateKernel.from_grid(d, grid)
    except Exception as exc:
        raise SchemaError(f"invalid kernel blocks: {exc}", f"{pointer}/blocks")


def kernel_to_json(k: BivariateKernel):
    return {
        "d": k.d,
        "p": k.p,
        "blocks": [[mat_to_json(b) for b in row] for row in k.blocks],
    }


def space_from_json(obj, pointer="") -> PontryaginSpace:
    _expect(isinstance(obj, dict), "space must be an object", pointer)
    _expect("basis" in obj and "gram" in obj, 'space needs "basis" and "gram"', pointer)
    basis = matpoly_from_json(obj["basis"], f"{pointer}/basis")
    gram = mat_from_json(obj["gram"], f"{pointer}/gram")
    if "d" in obj:
        _expect(obj["d"] == basis.rows, "declared d does not match the basis", f"{pointer}/d")
    try:
        return make_space(basis, gram)
    except Exception as exc:
        raise SchemaError(f"invalid space: {exc}", pointer)


def space_to_json(s: PontryaginSpace):
    return {"d": s.d, "basis": matpoly_to_json(s.basis), "gram": mat_to_json(s.gram)}


def pair_from_json(obj, pointer=""):
    _expect(isinstance(obj, dict), "pair must be an object", pointer)
    _expect("m" in obj and "n" in obj, 'pair needs "m" and "n"', pointer)
    return (
        matpoly_from_json(obj["m"], f"{pointer}/m"),
        matpoly_from_json(obj["n"], f"{pointer}/n"),
    )


def pair_to_json(m: MatPoly, n: MatPoly):
    return {"m": matpoly_to_json(m), "n": matpoly_to_json(n)}


def relation_pairs_from_json(obj, pointer="") -> Mat:
    """Relation payload {"pairs": [{"f": [...], "g": [...]}]} as a 2n x m matrix."""
    _expect(isinstance(obj, dict), "relation must be an object", pointer)
    _expect("pairs" in obj, 'relation needs "pairs"', pointer)
    entries = _expect_list(obj["pairs"], f"{pointer}/pairs")
    _expect(entries, "relation needs at least one spanning pair", f"{pointer}/pairs")
    columns = []
    height = None
    for idx, item in enumerate(entries):
        here = f"{pointer}/pairs/{idx}"
        _expect(isinstance(item, dict) and "f" in item and "g" in item, 'pair needs "f" and "g"', here)
        f = [_scalar(x, f"{here}/f/{j}") for j, x in enumerate(_expect_list(item["f"], f"{here}/f"))]
        g = [_scalar(x, f"{here}/g/{j}") for j, x in enumerate(_expect_list(item["g"], f"{here}/g"))]
        _expect(len(f) == len(g), "f and g must have equal length", here)
        if height is None:
            height = len(f)
        _expect(len(f) == height, "inconsistent coordinate lengths", here)
        columns.append(f + g)
    return Mat.from_columns(columns)


def relation_to_json(pairs: Mat):
    n = pairs.rows // 2
    out = []
    for j in range(pairs.cols):
        col = pairs.column(j)
        out.append(
            {
                "f": [scalar_to_json(x) for x in col[:n]],
                "g": [scalar_to_json(x) for x in col[n:]],
            }
        )
    return {"pairs": out}


def herm_from_json(obj, pointer="") -> Mat:
    m = mat_from_json(obj, pointer)
    try:
        return check_hermitian(m)
    except Exception as exc:
        raise SchemaError(str(exc), pointer)


_PARSERS = {
    "matpoly": matpoly_from_json,
    "space": space_from_json,
    "kernel": kernel_from_json,
    "pair": pair_from_json,
    "relation": relation_pairs_from_json,
    "herm": herm_from_json,
}


def problem_from_json(obj, pointer=""):
    """Parse an envelope {"kind": ..., "payload": ...}; returns (kind, value)."""
    _expect(isinstance(obj, dict), "problem file must be an object", pointer)
    _expect("kind" in obj, 'problem file needs a "kind"', pointer)
    kind = obj["kind"]
    _expect(kind in PROBLEM_KINDS, f"unknown kind {kind!r}", f"{pointer}/kind")
    _expect("payload" in obj, 'problem file needs a "payload"', pointer)
    return kind, _PARSERS[kind](obj["payload"], f"{pointer}/payload")


def problem_to_json(kind, payload_json):
    return {"kind": kind, "payload": payload_json}
