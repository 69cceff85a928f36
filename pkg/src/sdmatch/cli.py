"""Command-line surface: run algorithms over edge-list files, generate
instances, verify solutions and certificates, emit machine-readable metrics.

Exit codes: 0 success, 1 input parse/IO error, 2 invalid arguments, 3 exact
oracle size cap exceeded, 4 invalid solution, 5 certificate failure.
Timing starts after the input file is fully parsed; the algorithms then
consume a pure in-memory stream, so elapsed_ms excludes file reading.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass

from .coloring import _run_stkb_result
from .core import (
    EdgeStream,
    KDisjointMatching,
    Matching,
    StreamFormatError,
    WeightedEdge,
    read_edge_list,
    validate_kdm,
)
from .gen import INITIATORS, RmatParams, WeightDistribution, generate_rmat
from .oracle import (
    CertificateError,
    OracleSizeError,
    build_dual_certificate,
    certified_ratio_check,
    exact_kdm,
    greedy_iterative_baseline,
)
from .stk import _run_stk_dp_result, run_stk

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_ARGS = 2
EXIT_ORACLE_CAP = 3
EXIT_INVALID_SOLUTION = 4
EXIT_CERTIFICATE = 5

ALGOS = ("stk", "stk-dp", "stkb", "stkb-cc", "stkb-m", "stkb-cc-m", "greedy-it", "exact")
_STKB_FLAGS = {
    "stkb": (False, False),
    "stkb-cc": (True, False),
    "stkb-m": (False, True),
    "stkb-cc-m": (True, True),
}


@dataclass(frozen=True, slots=True)
class RunMetrics:
    """One run's machine-readable summary; field order is the JSON key order."""

    algo: str
    k: int
    eps: float
    weight: float
    per_color_weights: list[float]
    edges_stored_peak: int
    pushes_total: int
    elapsed_ms: int
    n: int
    m_processed: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def _discovered_n(edges: list[WeightedEdge], declared_n: int | None) -> int:
    if declared_n is not None:
        return declared_n
    if not edges:
        return 0
    return max(max(e.u, e.v) for e in edges) + 1


def _execute(
    algo: str, edges: list[WeightedEdge], declared_n: int | None, k: int, eps: float
) -> tuple[KDisjointMatching, int, int]:
    """Dispatch one algorithm; returns (solution, edges_stored_peak, pushes_total).

    Offline algorithms ingest the whole graph, so both counters are m for them.
    """
    m = len(edges)
    if algo == "stk":
        res = run_stk(EdgeStream(edges, declared_n), k, eps)
        return res.solution, res.metrics.edges_stored_peak, res.metrics.pushes_total
    if algo == "stk-dp":
        sol, _, metrics = _run_stk_dp_result(EdgeStream(edges, declared_n), k, eps)
        return sol, metrics.edges_stored_peak, metrics.pushes_total
    if algo in _STKB_FLAGS:
        common, merge = _STKB_FLAGS[algo]
        res = _run_stkb_result(EdgeStream(edges, declared_n), k, eps, common, merge)
        return res.solution, res.ssbm.metrics.edges_stored_peak, res.ssbm.metrics.pushes_total
    if algo == "greedy-it":
        return greedy_iterative_baseline(edges, k), m, m
    if algo == "exact":
        return exact_kdm(edges, k).solution, m, m
    raise ValueError(f"unknown algorithm {algo!r}")


def _write_solution(path: str, sol: KDisjointMatching) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for c, matching in enumerate(sol.matchings, start=1):
            for e in sorted(matching.edges, key=lambda e: e.key):
                fh.write(f"{c} {e.u} {e.v} {e.w!r}\n")


def _read_solution(path: str, k: int | None) -> tuple[KDisjointMatching, list[str]]:
    """Parse "c u v w" lines into a solution; returns (solution, violations).

    Colors beyond a given k are reported as violations, not parse errors.
    """
    per_color: dict[int, list[WeightedEdge]] = {}
    violations: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 4:
                raise StreamFormatError(f"{path}:{lineno}: expected 'c u v w'")
            try:
                c, u, v = int(tokens[0]), int(tokens[1]), int(tokens[2])
                e = WeightedEdge(u, v, float(tokens[3]))
            except ValueError as exc:
                raise StreamFormatError(f"{path}:{lineno}: {exc}") from None
            if c < 1:
                raise StreamFormatError(f"{path}:{lineno}: color {c} must be >= 1")
            per_color.setdefault(c, []).append(e)
    max_color = max(per_color, default=0)
    if k is None:
        k = max(max_color, 1)
    for c in sorted(per_color):
        if c > k:
            violations.append(f"color {c} exceeds k={k}")
    matchings = tuple(Matching.of(per_color.get(c, [])) for c in range(1, k + 1))
    return KDisjointMatching(k=k, matchings=matchings), violations


def _cmd_run(args: argparse.Namespace) -> int:
    if args.k < 1:
        print("error: --k must be at least 1", file=sys.stderr)
        return EXIT_ARGS
    if args.eps < 0:
        print("error: --eps must be nonnegative", file=sys.stderr)
        return EXIT_ARGS
    try:
        edges, declared_n, _ = read_edge_list(args.input)
    except (OSError, StreamFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    t0 = time.perf_counter()
    try:
        solution, stored_peak, pushes = _execute(args.algo, edges, declared_n, args.k, args.eps)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_CAP
    elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
    metrics = RunMetrics(
        algo=args.algo,
        k=args.k,
        eps=args.eps,
        weight=solution.weight,
        per_color_weights=solution.per_color_weights,
        edges_stored_peak=stored_peak,
        pushes_total=pushes,
        elapsed_ms=elapsed_ms,
        n=_discovered_n(edges, declared_n),
        m_processed=len(edges),
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(metrics.to_json() + "\n")
    else:
        print(metrics.to_json())
    if args.solution_out:
        _write_solution(args.solution_out, solution)
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = args.initiator
    if spec in INITIATORS:
        initiator = INITIATORS[spec]
    else:
        try:
            parts = tuple(float(x) for x in spec.split(","))
        except ValueError:
            print(f"error: cannot parse initiator {spec!r}", file=sys.stderr)
            return EXIT_ARGS
        initiator = parts
    weight_seed = args.weight_seed if args.weight_seed is not None else args.seed + 1
    try:
        params = RmatParams(
            scale=args.scale, edge_factor=args.edge_factor, initiator=initiator, seed=args.seed
        )
        dist = WeightDistribution(kind=args.dist, lo=args.wmin, hi=args.wmax, seed=weight_seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    try:
        stats = generate_rmat(params, dist, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(asdict(stats)))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        edges, declared_n, _ = read_edge_list(args.graph)
        solution, violations = _read_solution(args.solution, args.k)
    except (OSError, StreamFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = validate_kdm(solution)
    violations.extend(report.violations)
    available = Counter(e.key for e in edges)
    for e in sorted(solution.all_edges(), key=lambda e: e.key):
        if available[e.key] > 0:
            available[e.key] -= 1
        else:
            violations.append(f"edge ({e.u},{e.v}) w={e.w} not in graph")
    if violations:
        print(json.dumps({"ok": False, "violations": violations}))
        return EXIT_INVALID_SOLUTION
    if args.certificate:
        k = solution.k
        res = run_stk(EdgeStream(edges, declared_n), k, args.eps)
        try:
            cert = build_dual_certificate(res.state, edges)
        except CertificateError as exc:
            print(json.dumps({"ok": False, "certificate": str(exc)}))
            return EXIT_CERTIFICATE
        if not certified_ratio_check(solution, cert, args.eps):
            print(
                json.dumps(
                    {
                        "ok": False,
                        "certificate": "ratio check failed: (3+2*eps)*weight < dual objective",
                    }
                )
            )
            return EXIT_CERTIFICATE
        print(json.dumps({"ok": True, "certificate": "feasible, ratio check passed"}))
        return EXIT_OK
    print(json.dumps({"ok": True}))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdmatch",
        description="Semi-streaming k-disjoint matching: run, generate, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an algorithm over an edge-list file")
    run_p.add_argument("input", help="edge-list file")
    run_p.add_argument("--algo", choices=ALGOS, required=True)
    run_p.add_argument("--k", type=int, default=1, help="number of disjoint matchings")
    run_p.add_argument("--eps", type=float, default=0.001, help="approximation slack")
    run_p.add_argument("--out", help="write metrics JSON here instead of stdout")
    run_p.add_argument("--solution-out", help="write the solution as 'c u v w' lines")

    gen_p = sub.add_parser("generate", help="generate a seeded random instance")
    gen_p.add_argument("--scale", type=int, required=True, help="n = 2^scale vertices")
    gen_p.add_argument("--edge-factor", type=int, default=8)
    gen_p.add_argument(
        "--initiator",
        default="rmat_b",
        help="er, rmat_b, rmat_g, or four comma-separated probabilities",
    )
    gen_p.add_argument("--seed", type=int, default=1)
    gen_p.add_argument("--weight-seed", type=int, default=None, help="defaults to seed+1")
    gen_p.add_argument("--dist", choices=("uniform", "exponential"), default="uniform")
    gen_p.add_argument("--wmin", type=float, default=1.0)
    gen_p.add_argument("--wmax", type=float, default=float(2**19))
    gen_p.add_argument("--out", required=True)

    ver_p = sub.add_parser("verify", help="validate a solution file against a graph")
    ver_p.add_argument("graph", help="edge-list file")
    ver_p.add_argument("solution", help="solution file with 'c u v w' lines")
    ver_p.add_argument("--k", type=int, default=None, help="defaults to the max color present")
    ver_p.add_argument("--eps", type=float, default=0.001)
    ver_p.add_argument(
        "--certificate",
        action="store_true",
        help="re-run the stack algorithm and check the dual certificate ratio",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "generate":
        return _cmd_generate(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
