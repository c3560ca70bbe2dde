"""Compare the numba kernels with the numpy fallback on a few searches.

    python3 benchmarks/bench_search.py            # default cases
    python3 benchmarks/bench_search.py --quick    # tiny cases, a few seconds

Each case runs once per backend after a warm-up (so jit compilation is not
timed) and reports wall time, expanded nodes and nodes per second.  The two
backends must agree on the outcome and the node count.
"""

from __future__ import annotations

import argparse
import sys
import time

from epglab._accel import HAVE_NUMBA, use_numba
from epglab.classes import FamilySpec, generate
from epglab.search import SearchBudget, enumerate_reps, search_b1

CASES = [
    ("search", "cycle", (6,), 6, 200_000),
    ("search", "wheel", (5,), 6, 200_000),
    ("search", "complete_bipartite", (3, 3), 5, 2_000_000),
    ("enumerate", "complete", (3,), 4, 2_000_000),
    ("enumerate", "path", (4,), 4, 2_000_000),
]
QUICK = [
    ("search", "cycle", (5,), 5, 50_000),
    ("search", "complete_bipartite", (3, 3), 4, 200_000),
    ("enumerate", "complete", (3,), 3, 200_000),
]


def run_case(kind, family, params, side, max_nodes):
    g = generate(FamilySpec(family, params))
    budget = SearchBudget(side, side, max_nodes=max_nodes)
    t = time.perf_counter()
    if kind == "search":
        out = search_b1(g, budget)
        summary, nodes = out.kind, out.nodes
    else:
        e = enumerate_reps(g, budget)
        count = sum(block.shape[0] for block in e.row_blocks())
        summary, nodes = f"{count} reps", e.nodes
    return summary, nodes, time.perf_counter() - t


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="tiny cases only")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1
    cases = QUICK if args.quick else CASES
    prev = use_numba(True)
    run_case(*cases[0])  # compile the kernels outside the timings
    header = f"{'case':<34}{'outcome':>14}{'nodes':>10}{'numba s':>10}{'numpy s':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    mismatch = False
    try:
        for case in cases:
            use_numba(True)
            jit = run_case(*case)
            use_numba(False)
            ref = run_case(*case)
            mismatch |= jit[:2] != ref[:2]
            kind, family, params, side, _ = case
            name = f"{kind} {family}{list(params)} {side}x{side}"
            speedup = ref[2] / max(jit[2], 1e-9)
            flag = "" if jit[:2] == ref[:2] else "  MISMATCH"
            print(f"{name:<34}{jit[0]:>14}{jit[1]:>10}{jit[2]:>10.3f}{ref[2]:>10.3f}{speedup:>8.1f}x{flag}")
    finally:
        use_numba(prev)
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
