#!/usr/bin/env python3
"""Experiment: how often does the exact-arithmetic search find a
self-adjoint extension of the multiplication operator on random
admissible spaces, and does the resulting pair always reproduce the
kernel?

The search can decline honestly: extending to a maximal Lagrange-neutral
subspace over Q(i) needs pivot ratios that are sums of two rational
squares, which random Gram matrices often fail to provide.

Usage: python scripts/extension_search_stats.py [seed] [trials]
"""

import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from kernelforms.canonical import decompose
from kernelforms.field import GaussianRational, I
from kernelforms.linalg import Mat
from kernelforms.pairsynth import kernel_of_pair
from kernelforms.properties import rand_admissible_space
from kernelforms.qfunction import defect_basis, pair_from_q, resolvent, suggest_extension
from kernelforms.space import reproducing_kernel


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2024
    trials = int(sys.argv[2]) if len(sys.argv) > 2 else 50
    rng = random.Random(seed)
    found = verified = 0
    for _ in range(trials):
        space = rand_admissible_space(rng, d_max=2)
        ext = suggest_extension(space)
        if ext is None:
            continue
        found += 1
        mu = I
        res = resolvent(space, ext)
        while not res.defined_at(mu):
            mu = mu + GaussianRational(1)
        gamma_mu = defect_basis(space, mu)
        l = gamma_mu.cols
        pair = pair_from_q(space, decompose(space), ext, mu, gamma_mu, Mat.zero(l, l))
        if kernel_of_pair(pair) == reproducing_kernel(space):
            verified += 1
    print(f"seed={seed} trials={trials}")
    print(f"extensions found : {found}/{trials}")
    print(f"pairs verified   : {verified}/{found if found else 1}")


if __name__ == "__main__":
    main()
