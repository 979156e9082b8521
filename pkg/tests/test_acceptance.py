"""Acceptance gate: every criterion asserted at exact equality (the only
tolerances are the stated runtime budgets).  Each test prints one
PASS/FAIL line; run with `pytest -v -s tests/test_acceptance.py`.
"""

import random
import time

import pytest

from kernelforms import properties
from kernelforms.canonical import decompose
from kernelforms.errors import RangeConditionFails
from kernelforms.field import GaussianRational, I
from kernelforms.hermalg import inertia
from kernelforms.linalg import Mat
from kernelforms.pairsynth import (
    NevanlinnaPair,
    kernel_of_pair,
    synthesize,
    verify_form,
)
from kernelforms.polyalg import MatPoly, P_ONE, P_Z, Poly, matpoly_inverse
from kernelforms.qfunction import pair_from_q, q_function, relation
from kernelforms.smithforney import (
    forney_indices,
    full_rank_factorize,
    is_unimodular,
    smith,
)
from kernelforms.space import (
    FAILS_EVERYWHERE,
    HOLDS_EVERYWHERE,
    analyze,
    kernel_factor,
    negative_squares,
    reproducing_kernel,
)

from conftest import load_fixture

MI = GaussianRational(0, -1)
IZ = Poly([0, I])
MIZ = Poly([0, MI])
Z2 = Poly([0, 0, 1])


def _report(criterion, detail, start=None):
    stamp = f" [{time.perf_counter() - start:.3f}s]" if start is not None else ""
    print(f"PASS criterion {criterion}: {detail}{stamp}")


def test_criterion_1_analysis_end_to_end():
    start = time.perf_counter()
    space = load_fixture("space_deg211.json")
    rep = analyze(space)
    assert rep.cond_a is True
    assert rep.cond_b.kind == HOLDS_EVERYWHERE
    assert rep.defect == 3
    assert rep.dims == (4, 2, 2)
    assert sorted(rep.degrees, reverse=True) == [2, 1, 1]
    assert rep.is_full is True
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"analysis took {elapsed:.3f}s (budget 1s)"
    _report(1, "analyze: (A) true, (B) everywhere, l=3, indices (2,2), degrees {2,1,1}, full", start)


def test_criterion_2_reproducing_kernel():
    start = time.perf_counter()
    space = load_fixture("space_deg211.json")
    k = reproducing_kernel(space)
    assert k.block(0, 0) == Mat([[0, 0, -1], [0, 0, 0], [-1, 0, 0]])
    assert k.block(0, 1) == Mat([[0, 0, 0], [0, 0, -1], [0, 0, 0]])
    assert k.block(1, 0) == Mat([[0, 0, 0], [0, 0, 0], [0, -1, 0]])
    assert k.block(1, 1).is_zero()
    ine = negative_squares(k)
    assert ine.minus == 2
    assert ine.plus + ine.minus == 4  # rank of the coefficient stack
    _report(2, "kernel blocks exact; negative squares 2, stack rank 4", start)


def test_criterion_3_synthesis():
    start = time.perf_counter()
    space = load_fixture("space_deg211.json")
    kernel = load_fixture("kernel_deg211.json")
    form = synthesize(space)
    assert verify_form(form, kernel)
    assert forney_indices(form.p) == (2, 1, 1)
    assert tuple(inertia(form.q)) == (3, 3, 0)
    _report(3, "synthesized form verifies; Forney {2,1,1}; inertia(Q) = (3,3,0)", start)


def test_criterion_4_q_function_route():
    start = time.perf_counter()
    space = load_fixture("space_deg211.json")
    kernel = load_fixture("kernel_deg211.json")
    ext = relation(space, load_fixture("relation_deg211_multivalued.json"))
    gamma_i = Mat([[1, 0, 0], [I, 0, 0], [0, 1, 0], [0, 0, 1]])
    q0 = Mat.zero(3, 3)
    qres = q_function(space, ext, I, gamma_i, q0)
    assert qres.q.den == P_Z
    assert qres.q.num == MatPoly(
        [[0, P_ONE, Poly([0, 0, I])], [P_ONE, 0, 0], [Poly([0, 0, MI]), 0, 0]]
    )
    pair = pair_from_q(space, decompose(space), ext, I, gamma_i, q0)
    assert pair.m == MatPoly([[MI, 0, 0], [IZ, 0, 0], [0, MI, Z2]])
    assert pair.n == MatPoly([[0, MIZ, 0], [0, 0, -1], [MIZ, 0, 0]])
    assert kernel_of_pair(pair) == kernel
    elapsed = time.perf_counter() - start
    assert elapsed < 2.0, f"Q-function route took {elapsed:.3f}s (budget 2s)"
    _report(4, "Q(z) and the pair match the pinned matrices; kernel round trip holds", start)


def test_criterion_5_indefinite_vs_euclidean():
    start = time.perf_counter()
    indefinite = load_fixture("space_deg31_indefinite.json")
    assert tuple(inertia(indefinite.gram)) == (3, 1, 0)
    rep = analyze(indefinite)
    assert rep.is_nevanlinna is True
    euclidean = load_fixture("space_deg31_euclidean.json")
    rep = analyze(euclidean)
    assert rep.cond_a is False and rep.is_nevanlinna is False
    _report(5, "inertia (3,1,0); indefinite Gram admits, Euclidean Gram refuses", start)


def test_criterion_6_range_condition_failures():
    start = time.perf_counter()
    for name in ("space_even_scalar.json", "space_gapped.json"):
        space = load_fixture(name)
        rep = analyze(space)
        assert rep.cond_b.kind == FAILS_EVERYWHERE
        assert rep.is_nevanlinna is False
        with pytest.raises(RangeConditionFails):
            decompose(space)
    _report(6, "both degenerate spaces classified fails-everywhere; decompose declines", start)


def test_criterion_7_rank_dropping_pair():
    start = time.perf_counter()
    x = load_fixture("matpoly_x_diag.json")
    y = load_fixture("matpoly_y_diag.json")
    p = x.hstack(y)
    assert forney_indices(p) == (1, 0, 0)

    fr = full_rank_factorize(p)
    assert fr.g * fr.t == p
    assert all(f.is_one() for f in smith(fr.t).factors)  # full rank everywhere
    shuffled = full_rank_factorize(p, rng=random.Random(99))
    ratio = matpoly_inverse(fr.g) * shuffled.g
    assert ratio.is_polynomial() and is_unimodular(ratio.to_matpoly())

    kernel = kernel_of_pair(NevanlinnaPair(x, y))
    assert kernel == load_fixture("kernel_zcolumn.json")

    small = kernel_factor(kernel)
    assert small.n == 1 and tuple(inertia(small.gram)) == (1, 0, 0)

    space = load_fixture("space_zcolumn.json")
    a_m0 = relation(space, load_fixture("relation_zcolumn_mult0.json"))
    pair = pair_from_q(space, decompose(space), a_m0, I, Mat([[1]]), Mat.zero(1, 1))
    assert pair.n == MatPoly([[0, 0, P_ONE], [0, P_ONE, 0], [Poly([0, 0, I]), 0, 0]])
    assert pair.m == MatPoly([[0, 0, 0], [0, 0, 0], [MIZ, 0, 0]])
    assert kernel_of_pair(pair) == kernel
    _report(7, "Forney {1,0,0}; factorization essentially unique; kernel and pair exact", start)


def test_criterion_8_property_suites():
    start = time.perf_counter()
    budget = 60.0
    for letter, name in zip("abcdefgh", properties.SUITES):
        suite_start = time.perf_counter()
        properties.run_suite(name, seed=properties.DEFAULT_SEED, trials=100)
        print(
            f"  suite 8{letter} ({name}): 100 trials ok"
            f" [{time.perf_counter() - suite_start:.2f}s]"
        )
    elapsed = time.perf_counter() - start
    assert elapsed < budget, f"suites took {elapsed:.1f}s (budget {budget}s)"
    _report(8, f"all eight suites, 100 seeded trials each, in {elapsed:.1f}s", start)
