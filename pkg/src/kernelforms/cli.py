"""Command line front end.

Commands: smith, rowreduce, forney, analyze, decompose, kernel, negsq,
synth, pair, verify-pair, pair-kernel, propcheck.  Default output is
aligned text; --json switches to machine output.  Exit codes: 0 success or
verified-true, 1 verified-false or declined, 2 invalid input.  KF_SEED
overrides the default property-check seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import (
    canonical,
    jsonio,
    pairsynth,
    properties,
    qfunction,
    smithforney,
    space as space_mod,
)
from .errors import (
    EmptyResolvent,
    KernelFormsError,
    NotNevanlinna,
    ParseError,
    RangeConditionFails,
    SchemaError,
)
from .field import GaussianRational, I, scalar_to_json
from .linalg import Mat
from .polyalg import Poly

DECLINED = (RangeConditionFails, NotNevanlinna, EmptyResolvent)


def parse_problem(path_or_stream):
    """Read a {"kind", "payload"} problem file with exact scalars."""
    if hasattr(path_or_stream, "read"):
        text = path_or_stream.read()
    else:
        with open(path_or_stream, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), line=exc.lineno, column=exc.colno)
    return jsonio.problem_from_json(doc)


def _load(path, expected_kind):
    kind, value = parse_problem(path)
    if kind != expected_kind:
        raise SchemaError(f"expected kind {expected_kind!r}, found {kind!r}", "/kind")
    return value


# ---------------------------------------------------------------------------
# text rendering (everything is derived from the JSON report)
# ---------------------------------------------------------------------------


def _fmt_scalar_json(obj):
    if not isinstance(obj, dict):
        return str(obj)
    re = obj.get("re", "0")
    im = obj.get("im", "0")
    return str(GaussianRational(re, im))


def _fmt_poly_json(obj):
    return str(Poly([GaussianRational(c.get("re", "0"), c.get("im", "0")) for c in obj]))


def _fmt_rows(rows):
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))] if rows else []
    return [
        "[ " + "  ".join(cell.rjust(widths[j]) for j, cell in enumerate(row)) + " ]"
        for row in rows
    ]


def _fmt_matpoly_json(obj, indent=""):
    rows = [[_fmt_poly_json(p) for p in row] for row in obj]
    return "\n".join(indent + line for line in _fmt_rows(rows))


def _fmt_mat_json(obj, indent=""):
    rows = [[_fmt_scalar_json(x) for x in row] for row in obj]
    return "\n".join(indent + line for line in _fmt_rows(rows))


def _fmt_kernel_json(obj, indent=""):
    lines = [f"{indent}d = {obj['d']}, degree bound p = {obj['p']}"]
    for j, row in enumerate(obj["blocks"]):
        for k, block in enumerate(row):
            body = _fmt_mat_json(block, indent + "  ")
            lines.append(f"{indent}A[{j}][{k}] =")
            lines.append(body)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_smith(args):
    b = _load(args.input, "matpoly")
    sf = smithforney.smith(b)
    report = {
        "u": jsonio.matpoly_to_json(sf.u),
        "factors": [jsonio.poly_to_json(f) for f in sf.factors],
        "v": jsonio.matpoly_to_json(sf.v),
        "l": sf.l,
    }
    text = "\n".join(
        [
            "U =",
            _fmt_matpoly_json(report["u"], "  "),
            "invariant factors (b1 first): "
            + ", ".join(_fmt_poly_json(f) for f in report["factors"]),
            f"rank l = {sf.l}",
            "V =",
            _fmt_matpoly_json(report["v"], "  "),
        ]
    )
    return report, text, 0


def _cmd_rowreduce(args):
    p = _load(args.input, "matpoly")
    rr = smithforney.row_reduce(p)
    report = {
        "u": jsonio.matpoly_to_json(rr.u),
        "s": jsonio.matpoly_to_json(rr.s),
        "sigma": list(rr.sigma),
    }
    text = "\n".join(
        [
            "U =",
            _fmt_matpoly_json(report["u"], "  "),
            "S = U P =",
            _fmt_matpoly_json(report["s"], "  "),
            "row degrees: " + " ".join(str(s) for s in rr.sigma),
        ]
    )
    return report, text, 0


def _cmd_forney(args):
    p = _load(args.input, "matpoly")
    idx = smithforney.forney_indices(p)
    report = {"indices": list(idx)}
    return report, "Forney indices: " + " ".join(str(i) for i in idx), 0


def _analysis_report_json(rep: space_mod.AnalysisReport):
    out = {
        "cond_a": rep.cond_a,
        "cond_b": rep.cond_b.kind,
        "witness": scalar_to_json(rep.cond_b.witness) if rep.cond_b.witness is not None else None,
        "excluded": jsonio.poly_to_json(rep.cond_b.excluded)
        if rep.cond_b.excluded is not None
        else None,
        "defect": rep.defect,
        "dims": {"n": rep.dims[0], "plus": rep.dims[1], "minus": rep.dims[2]},
        "degrees": list(rep.degrees) if rep.degrees is not None else None,
        "is_nevanlinna": rep.is_nevanlinna,
        "is_full": rep.is_full,
    }
    return out


def _cmd_analyze(args):
    space = _load(args.input, "space")
    rep = space_mod.analyze(space)
    report = _analysis_report_json(rep)
    lines = [
        f"space dimension   : {report['dims']['n']}",
        f"positive index    : {report['dims']['plus']}",
        f"negative index    : {report['dims']['minus']}",
        f"condition (A)     : {str(rep.cond_a).lower()}",
        f"condition (B)     : {rep.cond_b.kind}",
    ]
    if rep.cond_b.excluded is not None and not rep.cond_b.excluded.is_one():
        lines.append(
            "excluded points   : roots of " + _fmt_poly_json(report["excluded"])
        )
    if report["witness"] is not None:
        lines.append(f"witness point     : {_fmt_scalar_json(report['witness'])}")
    lines.append(f"defect number l   : {rep.defect}")
    if rep.degrees is not None:
        lines.append("degrees           : " + " ".join(str(m) for m in rep.degrees))
    lines.append(f"nevanlinna kernel : {str(rep.is_nevanlinna).lower()}")
    lines.append(f"full              : {str(rep.is_full).lower()}")
    return report, "\n".join(lines), 0 if rep.is_nevanlinna else 1


def _cmd_decompose(args):
    kind, value = parse_problem(args.input)
    if kind == "space":
        target = value
        basis = value.basis
    elif kind == "matpoly":
        target = value
        basis = value
    else:
        raise SchemaError("decompose expects a space or matpoly file", "/kind")
    dec = canonical.decompose(target)
    checked = None
    if args.check:
        can = canonical.canonical_basis(basis.rows, dec.degrees)
        checked = (dec.w * can * dec.t == basis) and all(
            canonical.membership(dec, basis.take_columns([c])) for c in range(basis.cols)
        )
    report = {
        "w": jsonio.matpoly_to_json(dec.w),
        "degrees": list(dec.degrees),
        "t": jsonio.mat_to_json(dec.t),
        "unimodular": dec.unimodular,
    }
    if checked is not None:
        report["checked"] = checked
    lines = [
        "W =",
        _fmt_matpoly_json(report["w"], "  "),
        "degrees: " + " ".join(str(m) for m in dec.degrees),
        f"unimodular: {str(dec.unimodular).lower()}",
        "T =",
        _fmt_mat_json(report["t"], "  "),
    ]
    if checked is not None:
        lines.append(f"factorization re-checked: {str(checked).lower()}")
    return report, "\n".join(lines), 0


def _cmd_kernel(args):
    space = _load(args.input, "space")
    k = space_mod.reproducing_kernel(space)
    report = jsonio.kernel_to_json(k)
    return report, _fmt_kernel_json(report), 0


def _cmd_negsq(args):
    kernel = _load(args.input, "kernel")
    ine = space_mod.negative_squares(kernel)
    report = {
        "plus": ine.plus,
        "minus": ine.minus,
        "zero": ine.zero,
        "rank": ine.plus + ine.minus,
    }
    text = "\n".join(
        [
            f"positive squares : {ine.plus}",
            f"negative squares : {ine.minus}",
            f"zero count       : {ine.zero}",
            f"stack rank       : {ine.plus + ine.minus}",
        ]
    )
    return report, text, 0


def _cmd_synth(args):
    space = _load(args.input, "space")
    form = pairsynth.synthesize(space)
    indices = smithforney.forney_indices(form.p)
    report = {
        "p": jsonio.matpoly_to_json(form.p),
        "q": jsonio.mat_to_json(form.q),
        "full": form.full,
        "forney": list(indices),
    }
    text = "\n".join(
        [
            "P =",
            _fmt_matpoly_json(report["p"], "  "),
            "Q =",
            _fmt_mat_json(report["q"], "  "),
            f"full: {str(form.full).lower()}",
            "Forney indices: " + " ".join(str(i) for i in indices),
        ]
    )
    return report, text, 0


def _parse_mu(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise SchemaError('mu must be "RE,IM" with exact rationals', "/mu")
    try:
        return GaussianRational(parts[0].strip(), parts[1].strip())
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SchemaError(f"bad mu: {exc}", "/mu")


def _cmd_pair(args):
    space = _load(args.input, "space")
    rel_pairs = _load(args.extension, "relation")
    rel = qfunction.relation(space, rel_pairs)
    if not qfunction.is_selfadjoint_extension(space, rel):
        return (
            {"error": {"type": "NotSelfAdjointExtension"}},
            "the relation is not a self-adjoint extension with regular pencil",
            1,
        )
    if args.mu is not None:
        mu = _parse_mu(args.mu)
    else:
        resolvent = qfunction.resolvent(space, rel)
        mu = I
        while not resolvent.defined_at(mu):
            mu = mu + GaussianRational(1)
    if args.gamma is not None:
        gamma_poly = _load(args.gamma, "matpoly")
        if gamma_poly.degree > 0:
            raise SchemaError("gamma file must be a constant matrix", "/payload")
        gamma_mu = gamma_poly.eval(GaussianRational(0))
    else:
        gamma_mu = qfunction.defect_basis(space, mu)
    l = gamma_mu.cols
    q0 = _load(args.q0, "herm") if args.q0 is not None else Mat.zero(l, l)
    dec = canonical.decompose(space)
    pair = qfunction.pair_from_q(space, dec, rel, mu, gamma_mu, q0)
    verified = pairsynth.kernel_of_pair(pair) == space_mod.reproducing_kernel(space)
    report = {
        "mu": scalar_to_json(mu),
        "m": jsonio.matpoly_to_json(pair.m),
        "n": jsonio.matpoly_to_json(pair.n),
        "verified": verified,
    }
    text = "\n".join(
        [
            f"mu = {_fmt_scalar_json(report['mu'])}",
            "M =",
            _fmt_matpoly_json(report["m"], "  "),
            "N =",
            _fmt_matpoly_json(report["n"], "  "),
            f"kernel verified: {str(verified).lower()}",
        ]
    )
    return report, text, 0 if verified else 1


def _cmd_verify_pair(args):
    kernel = _load(args.kernel, "kernel")
    m = _load(args.m, "matpoly")
    n = _load(args.n, "matpoly")
    try:
        produced = pairsynth.kernel_of_pair(pairsynth.NevanlinnaPair(m, n))
        verified = produced == kernel
        reason = None if verified else "kernel mismatch"
    except KernelFormsError as exc:
        verified = False
        reason = str(exc)
    report = {"verified": verified}
    if reason:
        report["reason"] = reason
    text = f"verified: {str(verified).lower()}" + (f" ({reason})" if reason else "")
    return report, text, 0 if verified else 1


def _cmd_pair_kernel(args):
    m = _load(args.m, "matpoly")
    n = _load(args.n, "matpoly")
    k = pairsynth.kernel_of_pair(pairsynth.NevanlinnaPair(m, n))
    report = jsonio.kernel_to_json(k)
    return report, _fmt_kernel_json(report), 0


def _cmd_propcheck(args):
    names = list(properties.SUITES) if args.suite == "all" else [args.suite]
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("KF_SEED", properties.DEFAULT_SEED))
    results = []
    ok = True
    for name in names:
        entry = {"suite": name, "seed": seed, "trials": args.trials}
        try:
            properties.run_suite(name, seed=seed, trials=args.trials)
            entry["ok"] = True
        except AssertionError as exc:
            entry["ok"] = False
            entry["message"] = str(exc)
            ok = False
        results.append(entry)
    report = {"ok": ok, "results": results}
    lines = [
        f"{e['suite']:12s} seed={e['seed']} trials={e['trials']} "
        + ("ok" if e["ok"] else f"FAIL: {e.get('message','')}")
        for e in results
    ]
    return report, "\n".join(lines), 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kernelforms",
        description="Exact analysis of polynomial spaces and their Nevanlinna kernels.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text in [
        ("smith", _cmd_smith, "Smith normal form of a matrix polynomial"),
        ("rowreduce", _cmd_rowreduce, "row reduce a full-rank matrix polynomial"),
        ("forney", _cmd_forney, "Forney indices of a matrix polynomial"),
        ("analyze", _cmd_analyze, "analyze a space: conditions (A), (B), defect, degrees"),
        ("kernel", _cmd_kernel, "reproducing kernel of a space"),
        ("negsq", _cmd_negsq, "signature of a kernel's coefficient stack"),
        ("synth", _cmd_synth, "synthesize a Nevanlinna form for a space"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input")
        p.set_defaults(handler=handler)

    p = sub.add_parser("decompose", help="factor a space as W times a canonical subspace")
    p.add_argument("input")
    p.add_argument("--check", action="store_true", help="re-verify the factorization")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("pair", help="pair {M, N} from a self-adjoint extension")
    p.add_argument("input")
    p.add_argument("--extension", required=True)
    p.add_argument("--mu", default=None, help='non-real point "RE,IM"')
    p.add_argument("--gamma", default=None, help="defect basis at mu (matpoly file)")
    p.add_argument("--q0", default=None, help="Hermitian free term (herm file)")
    p.set_defaults(handler=_cmd_pair)

    p = sub.add_parser("verify-pair", help="check a pair against a kernel")
    p.add_argument("--kernel", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(handler=_cmd_verify_pair)

    p = sub.add_parser("pair-kernel", help="kernel of a pair {M, N}")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(handler=_cmd_pair_kernel)

    p = sub.add_parser("propcheck", help="run seeded property suites")
    p.add_argument("suite", choices=list(properties.SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(handler=_cmd_propcheck)
    return parser


def run(argv):
    """Dispatch; returns (report dict, text, exit code) without printing."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        report = {
            "error": {
                "type": "ParseError",
                "message": str(exc),
                "line": exc.line,
                "column": exc.column,
            }
        }
        return report, f"parse error: {exc}", 2
    except SchemaError as exc:
        report = {
            "error": {"type": "SchemaError", "message": str(exc), "pointer": exc.pointer}
        }
        return report, f"schema error: {exc}", 2
    except DECLINED as exc:
        report = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        return report, f"declined: {exc}", 1
    except FileNotFoundError as exc:
        report = {"error": {"type": "FileNotFound", "message": str(exc)}}
        return report, f"cannot read input: {exc}", 2
    except KernelFormsError as exc:
        report = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        return report, f"error: {exc}", 2


def main(argv=None) -> int:
    report, text, code = run(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in (sys.argv[1:] if argv is None else argv)
    if "error" in report:
        print(json.dumps(report), file=sys.stderr)
        if not as_json:
            print(text, file=sys.stderr)
        return code
    if as_json:
        print(json.dumps(report))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
