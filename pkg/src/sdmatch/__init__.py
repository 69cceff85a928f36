"""Single-pass semi-streaming toolkit for maximum-weight k-disjoint matching.

Two streaming algorithms (a primal-dual stack algorithm with a certified
1/(3+2*eps) factor, and a b-matching-plus-coloring reduction), their weight
heuristics, exact tiny-instance oracles, dual certificates, a seeded
instance generator, and a benchmarking CLI.
"""

from .coloring import EdgeColoring, color_graph, run_stkb, select_k_heaviest
from .core import (
    BMatching,
    EdgeStream,
    InstanceStats,
    KDisjointMatching,
    Matching,
    StreamFormatError,
    ValidationReport,
    VertexId,
    WeightedEdge,
    open_stream,
    read_edge_list,
    solution_weight,
    validate_kdm,
)
from .dpmerge import merge_matchings
from .gen import INITIATORS, RmatParams, WeightDistribution, generate_rmat, generate_rmat_edges
from .oracle import (
    CertificateError,
    DualCertificate,
    OracleSizeError,
    build_dual_certificate,
    certified_ratio_check,
    exact_kdm,
    exact_mwbm,
    greedy_iterative_baseline,
)
from .ssbm import SsbmState, run_ssbm, ssbm_finalize, ssbm_stream_edge
from .stk import StkState, run_stk, run_stk_dp, space_bound, stk_finalize, stk_stream_edge

__version__ = "0.1.0"

__all__ = [
    "BMatching",
    "CertificateError",
    "DualCertificate",
    "EdgeColoring",
    "EdgeStream",
    "INITIATORS",
    "InstanceStats",
    "KDisjointMatching",
    "Matching",
    "OracleSizeError",
    "RmatParams",
    "SsbmState",
    "StkState",
    "StreamFormatError",
    "ValidationReport",
    "VertexId",
    "WeightDistribution",
    "WeightedEdge",
    "build_dual_certificate",
    "certified_ratio_check",
    "color_graph",
    "exact_kdm",
    "exact_mwbm",
    "generate_rmat",
    "generate_rmat_edges",
    "greedy_iterative_baseline",
    "merge_matchings",
    "open_stream",
    "read_edge_list",
    "run_ssbm",
    "run_stk",
    "run_stk_dp",
    "run_stkb",
    "select_k_heaviest",
    "solution_weight",
    "space_bound",
    "ssbm_finalize",
    "ssbm_stream_edge",
    "stk_finalize",
    "stk_stream_edge",
    "validate_kdm",
]
