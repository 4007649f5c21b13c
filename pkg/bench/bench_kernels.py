#!/usr/bin/env python3
"""Benchmark the JIT and pure-numpy kernel backends against each other.

Times the element-level product-formula checks and the enumeration
associativity filter on representative inputs, once per backend.  The
BRANCHALG_KERNEL environment variable is overridden in-process; run with
--backend to restrict to one side.

Usage: python bench/bench_kernels.py [--backend numba|numpy] [--repeat N]
"""

import argparse
import os
import time

from branchalg.finra import enumerate_integral
from branchalg.finra import kernels
from branchalg.finra.enumeration import (
    diversity_orbits,
    forced_triples,
    signature_spec,
)


def time_formulas(structures, repeat):
    out = {}
    for formula in ("J", "L", "M"):
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            for s in structures:
                comp, conv = s.tables
                kernels.find_violation(comp, conv, formula)
            best = min(best, time.perf_counter() - t0)
        out[formula] = best
    return out


def time_assoc(signature, repeat):
    _, names, conv = signature_spec(signature)
    forced = forced_triples(conv)
    orbits = diversity_orbits(conv)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        kernels.associative_candidates(len(conv), forced, orbits)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--backend", choices=("numba", "numpy"))
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument(
        "--structures",
        type=int,
        default=6,
        help="how many four-atom structures to run the formula checks on",
    )
    args = ap.parse_args()

    backends = [args.backend] if args.backend else ["numpy", "numba"]
    if "numba" in backends and not kernels._try_numba():
        print("numba unavailable; benchmarking numpy only")
        backends = ["numpy"]

    structures = enumerate_integral("1'abb~")[: args.structures]
    rows = []
    for backend in backends:
        os.environ[kernels.ENV_FLAG] = backend
        assert kernels.backend() == backend
        if backend == "numba":  # compile outside the timed region
            comp, conv = structures[0].tables
            for f in ("J", "L", "M"):
                kernels.find_violation(comp, conv, f)
            time_assoc("1'ab", 1)
        formulas = time_formulas(structures, args.repeat)
        assoc = time_assoc("1'aa~bb~", args.repeat)
        rows.append((backend, formulas, assoc))
        os.environ.pop(kernels.ENV_FLAG)

    n = len(structures)
    print(f"\nelement-level formula checks over {n} four-atom structures:")
    print(f"{'backend':<8} {'J':>10} {'L':>10} {'M':>10} {'assoc(2-pair)':>14}")
    for backend, formulas, assoc in rows:
        print(
            f"{backend:<8} {formulas['J']:>9.2f}s {formulas['L']:>9.2f}s "
            f"{formulas['M']:>9.2f}s {assoc:>13.2f}s"
        )
    if len(rows) == 2:
        speedup = {
            f: rows[0][1][f] / max(rows[1][1][f], 1e-9) for f in ("J", "L", "M")
        }
        print(
            "speedup numba over numpy: "
            + " ".join(f"{f}x{speedup[f]:.1f}" for f in ("J", "L", "M"))
        )


if __name__ == "__main__":
    main()
