"""Seeded synthetic instances: recursive-quadrant random graphs with random
edge weights, written in the package's edge-list format.

Sampling recurses scale times on a 2x2 probability matrix (a, b, c, d): each
step picks a quadrant and appends one bit to each endpoint id. Self-loops are
dropped, duplicate endpoint pairs keep their first-sampled copy, so the final
edge count lands slightly under edge_factor * 2^scale, more so for skewed
initiators. Structure and weights use two independent Mersenne Twister
streams (`random.Random`; the algorithm is documented and portable), so a
(seed, weight seed) pair reproduces a file byte for byte on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import InstanceStats, WeightedEdge

INITIATORS: dict[str, tuple[float, float, float, float]] = {
    "er": (0.25, 0.25, 0.25, 0.25),
    "rmat_b": (0.55, 0.15, 0.15, 0.15),
    "rmat_g": (0.45, 0.15, 0.15, 0.25),
}


@dataclass(frozen=True, slots=True)
class RmatParams:
    """Structure parameters: n = 2^scale vertices, edge_factor*2^scale samples."""

    scale: int
    edge_factor: int = 8
    initiator: tuple[float, float, float, float] = INITIATORS["rmat_b"]
    seed: int = 1

    def __post_init__(self) -> None:
        if self.scale < 1:
            raise ValueError("scale must be at least 1")
        if self.edge_factor < 1:
            raise ValueError("edge_factor must be at least 1")
        if len(self.initiator) != 4 or any(p < 0 for p in self.initiator):
            raise ValueError("initiator must be four nonnegative probabilities")
        if abs(sum(self.initiator) - 1.0) > 1e-9:
            raise ValueError(f"initiator probabilities must sum to 1, got {sum(self.initiator)}")


@dataclass(frozen=True, slots=True)
class WeightDistribution:
    """Weight model: uniform on [lo, hi], or exponential with mean lo+(hi-lo)/4
    resampled until it lands in [lo, hi]."""

    kind: str
    lo: float = 1.0
    hi: float = float(2**19)
    seed: int = 2

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "exponential"):
            raise ValueError(f"unknown weight distribution {self.kind!r}")
        if not (0 < self.lo <= self.hi):
            raise ValueError("need 0 < lo <= hi")


def sample_rmat_pairs(params: RmatParams) -> list[tuple[int, int]]:
    """Sampled endpoint pairs, self-loops dropped, first copy kept per pair."""
    a, b, c, _ = params.initiator
    ab = a + b
    abc = ab + c
    rng = random.Random(params.seed)
    rand = rng.random
    scale = params.scale
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for _ in range(params.edge_factor << scale):
        u = v = 0
        for _ in range(scale):
            r = rand()
            if r < a:
                ub = vb = 0
            elif r < ab:
                ub, vb = 0, 1
            elif r < abc:
                ub, vb = 1, 0
            else:
                ub = vb = 1
            u = (u << 1) | ub
            v = (v << 1) | vb
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        pairs.append((u, v))
    return pairs


def draw_weights(dist: WeightDistribution, count: int) -> list[float]:
    """`count` weights from the distribution's own seeded stream."""
    rng = random.Random(dist.seed)
    lo, hi = dist.lo, dist.hi
    if dist.kind == "uniform":
        return [rng.uniform(lo, hi) for _ in range(count)]
    if hi == lo:
        return [lo] * count
    mean = (hi - lo) / 4.0
    out: list[float] = []
    for _ in range(count):
        while True:
            x = lo + rng.expovariate(1.0 / mean)
            if x <= hi:
                out.append(x)
                break
    return out


def generate_rmat_edges(params: RmatParams, dist: WeightDistribution) -> list[WeightedEdge]:
    """In-memory generation, same sampling path as the file writer."""
    pairs = sample_rmat_pairs(params)
    weights = draw_weights(dist, len(pairs))
    return [WeightedEdge(u, v, w) for (u, v), w in zip(pairs, weights)]


def generate_rmat(params: RmatParams, dist: WeightDistribution, out: str) -> InstanceStats:
    """Write a generated instance as an edge-list file with an "n m" header.

    Weights are emitted with repr (shortest round-tripping form), newlines
    are LF, so fixed seeds give byte-identical files everywhere.
    """
    edges = generate_rmat_edges(params, dist)
    n = 1 << params.scale
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{n} {len(edges)}\n")
        for e in edges:
            fh.write(f"{e.u} {e.v} {e.w!r}\n")
    if not edges:
        return InstanceStats(n=n, m=0, w_max=1.0, w_min=1.0, W=1.0)
    w_max = max(e.w for e in edges)
    w_min = min(e.w for e in edges)
    return InstanceStats(n=n, m=len(edges), w_max=w_max, w_min=w_min, W=w_max / w_min)
