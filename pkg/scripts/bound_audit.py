#!/usr/bin/env python3
"""Randomized audit of the QFI upper-bound chain.

Draws random Hermitian probe Hamiltonians and encoding generators, builds
the Gibbs probe, and checks the full ordering certificate on every draw.
Prints the tightest margins seen; exits 1 on any violation.
"""

import argparse
import sys

import numpy as np

from thermalqfi.bounds import bound_report
from thermalqfi.encoding import ExplicitGenerator
from thermalqfi.thermal import gibbs_state


def random_hermitian(rng, dim):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (x + x.conj().T)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=20240611)
    parser.add_argument("--max-dim", type=int, default=8)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    tightest_variance = float("inf")
    tightest_gap = float("inf")
    for index in range(args.count):
        dim = int(rng.integers(2, args.max_dim + 1))
        hamiltonian = random_hermitian(rng, dim)
        generator = random_hermitian(rng, dim)
        beta = float(rng.uniform(0.05, 10.0))
        t = float(rng.uniform(0.1, 3.14))
        probe = gibbs_state(hamiltonian, beta)
        report = bound_report(probe, ExplicitGenerator(generator, t))
        if not report.ordering_ok:
            print(f"VIOLATION at draw {index}: dim={dim} beta={beta} t={t}\n{report}")
            return 1
        if report.variance_bound > 0:
            tightest_variance = min(tightest_variance, report.variance_bound / max(report.f, 1e-300))
        tightest_gap = min(tightest_gap, report.gap_variance_bound - report.convexity_bound)
    print(f"{args.count} scenarios, ordering_ok everywhere (seed {args.seed})")
    print(f"tightest variance_bound / F ratio: {tightest_variance:.6f}")
    print(f"smallest gap_variance - convexity margin: {tightest_gap:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
