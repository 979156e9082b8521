#!/usr/bin/env python3
"""Run the full pipeline over the shipped fixtures and print a summary.

Usage: python scripts/analyze_fixtures.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from kernelforms import jsonio
from kernelforms.canonical import decompose
from kernelforms.errors import RangeConditionFails
from kernelforms.pairsynth import synthesize, verify_form
from kernelforms.smithforney import forney_indices
from kernelforms.space import analyze, reproducing_kernel

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    with open(FIXTURES / name) as handle:
        return jsonio.problem_from_json(json.load(handle))[1]


def main():
    spaces = sorted(p.name for p in FIXTURES.glob("space_*.json"))
    for name in spaces:
        space = load(name)
        rep = analyze(space)
        line = (
            f"{name:32s} n={rep.dims[0]} sig=({rep.dims[1]},{rep.dims[2]}) "
            f"(A)={str(rep.cond_a).lower():5s} (B)={rep.cond_b.kind:17s} l={rep.defect}"
        )
        if rep.is_nevanlinna:
            form = synthesize(space)
            ok = bool(verify_form(form, reproducing_kernel(space)))
            dec = decompose(space)
            line += (
                f" degrees={list(dec.degrees)} forney={list(forney_indices(form.p))}"
                f" form_ok={str(ok).lower()} full={str(form.full).lower()}"
            )
        else:
            try:
                dec = decompose(space)
                line += f" degrees={list(dec.degrees)} (no Nevanlinna kernel: symmetry fails)"
            except RangeConditionFails:
                line += " decompose=declined"
        print(line)


if __name__ == "__main__":
    main()
