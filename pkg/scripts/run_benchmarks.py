#!/usr/bin/env python3
"""Desk-scale benchmark sweep over the streaming k-disjoint-matching algorithms.

Generates seeded R-MAT instances, runs every algorithm variant at several k,
and reports weight relative to the greedy baseline plus stored-edge counts.
Results stream to stdout as a table; --json appends one JSON line per run to
a file for downstream aggregation.

Example:
    python scripts/run_benchmarks.py --scales 10 12 --ks 2 8 --json out.jsonl
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sdmatch.coloring import _run_stkb_result
from sdmatch.core import EdgeStream
from sdmatch.gen import INITIATORS, RmatParams, WeightDistribution, generate_rmat_edges
from sdmatch.oracle import greedy_iterative_baseline
from sdmatch.stk import _run_stk_dp_result, run_stk

VARIANTS = ("stk", "stk-dp", "stkb", "stkb-cc", "stkb-cc-m", "greedy-it")


def run_variant(name, edges, k, eps):
    """Returns (weight, stored_peak) and wall time, parse excluded."""
    t0 = time.perf_counter()
    if name == "stk":
        res = run_stk(EdgeStream.from_edges(edges), k=k, eps=eps)
        out = res.solution.weight, res.metrics.edges_stored_peak
    elif name == "stk-dp":
        sol, _state, metrics = _run_stk_dp_result(EdgeStream.from_edges(edges), k=k, eps=eps)
        out = sol.weight, metrics.edges_stored_peak
    elif name.startswith("stkb"):
        res = _run_stkb_result(
            EdgeStream.from_edges(edges), k=k, eps=eps,
            common_color="cc" in name.split("-"),
            merge=name.endswith("-m"),
        )
        out = res.solution.weight, res.ssbm.metrics.edges_stored_peak
    elif name == "greedy-it":
        sol = greedy_iterative_baseline(edges, k)
        out = sol.weight, len(edges)
    else:
        raise ValueError(name)
    return out, time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scales", type=int, nargs="+", default=[10, 11, 12])
    ap.add_argument("--ks", type=int, nargs="+", default=[2, 4, 8])
    ap.add_argument("--eps", type=float, default=0.001)
    ap.add_argument("--initiator", choices=sorted(INITIATORS), default="rmat_b")
    ap.add_argument("--dist", choices=["uniform", "exponential"], default="uniform")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", metavar="PATH", help="append one JSON line per run")
    args = ap.parse_args(argv)

    sink = open(args.json, "a") if args.json else None
    header = f"{'instance':<22} {'k':>2} {'variant':<10} {'weight':>14} {'vs greedy':>9} {'stored':>8} {'sec':>6}"
    print(header)
    print("-" * len(header))
    for scale in args.scales:
        params = RmatParams(
            scale=scale, edge_factor=8,
            initiator=INITIATORS[args.initiator], seed=args.seed,
        )
        dist = WeightDistribution(
            kind=args.dist, lo=1.0, hi=float(2**19), seed=args.seed + 100,
        )
        edges = generate_rmat_edges(params, dist)
        label = f"{args.initiator}-s{scale}-{args.dist}"
        for k in args.ks:
            baseline = greedy_iterative_baseline(edges, k).weight
            for variant in VARIANTS:
                (weight, stored), secs = run_variant(variant, edges, k, args.eps)
                rel = weight / baseline if baseline else 1.0
                print(
                    f"{label:<22} {k:>2} {variant:<10} {weight:>14.1f} "
                    f"{rel:>9.4f} {stored:>8} {secs:>6.2f}"
                )
                if sink:
                    sink.write(json.dumps({
                        "instance": label, "m": len(edges), "k": k,
                        "eps": args.eps, "variant": variant, "weight": weight,
                        "vs_greedy": rel, "stored": stored, "seconds": secs,
                    }) + "\n")
    if sink:
        sink.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
