"""Proper edge coloring and the b-matching reduction to k-disjoint matching.

The reduction pipeline: stream a degree-k-capacitated b-matching F (ssbm,
called with eps/2), properly color the subgraph it spans with at most
Delta_F + 1 colors, then keep the k heaviest color classes. Capacity k keeps
Delta_F <= k, so at most k+1 classes exist and at most one, the lightest,
is sacrificed: a (1 - 1/(k+1)) weight retention on top of the b-matching
guarantee.

Coloring is the fan-rotation construction: to color (u, v), build a maximal
fan of u's colored neighbors, pick a color c free on u and d free on the last
fan vertex, invert the alternating c/d path from u if d is busy at u, shrink
the fan to the first vertex where d became free, rotate the fan's colors one
step toward v, and finish the last fan edge with d. Each step preserves
properness, and no edge ever loses its color, only trades it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import EdgeStream, KDisjointMatching, Matching, VertexId, WeightedEdge
from .dpmerge import merge_matchings
from .ssbm import SsbmRunResult, _run_ssbm_result


@dataclass(frozen=True, slots=True)
class EdgeColoring:
    """Assignment of every edge to a color in [palette_size], properness intended."""

    palette_size: int
    colors: Mapping[WeightedEdge, int]

    def classes(self) -> dict[int, list[WeightedEdge]]:
        """Edges grouped by color, deterministically ordered."""
        out: dict[int, list[WeightedEdge]] = {}
        for e in sorted(self.colors, key=lambda e: e.key):
            out.setdefault(self.colors[e], []).append(e)
        return out


@dataclass(frozen=True, slots=True)
class Fan:
    center: VertexId
    leaves: tuple[VertexId, ...]


def coloring_violations(coloring: EdgeColoring) -> list[str]:
    """Properness and palette breaches, in deterministic order."""
    out: list[str] = []
    seen: dict[tuple[VertexId, int], WeightedEdge] = {}
    for e in sorted(coloring.colors, key=lambda e: e.key):
        col = coloring.colors[e]
        if not (1 <= col <= coloring.palette_size):
            out.append(f"edge ({e.u},{e.v}) color {col} outside palette [{coloring.palette_size}]")
            continue
        for x in (e.u, e.v):
            if (x, col) in seen:
                other = seen[(x, col)]
                out.append(
                    f"color {col} repeated at vertex {x}: ({other.u},{other.v}) and ({e.u},{e.v})"
                )
            else:
                seen[(x, col)] = e
    return out


def color_graph(edges: Sequence[WeightedEdge], use_common_color: bool = False) -> EdgeColoring:
    """Properly color a simple subgraph with at most Delta+1 colors.

    Edges are processed in the given order; all arbitrary choices (fan
    candidates, free colors) resolve to the lowest id/index, so the result is
    a pure function of the input sequence. With `use_common_color`, an edge
    whose endpoints share a free color takes the lowest such color and skips
    the fan machinery; this changes which color an edge gets, never
    properness or the palette bound.

    Raises ValueError when the input has parallel edges (callers deduplicate,
    keeping the heaviest copy).
    """
    pairs: list[tuple[VertexId, VertexId]] = []
    seen_pairs: set[tuple[VertexId, VertexId]] = set()
    adj: dict[VertexId, list[VertexId]] = {}
    for e in edges:
        p = e.pair
        if p in seen_pairs:
            raise ValueError(f"parallel edge ({p[0]},{p[1]}): coloring needs a simple graph")
        seen_pairs.add(p)
        pairs.append(p)
        adj.setdefault(e.u, []).append(e.v)
        adj.setdefault(e.v, []).append(e.u)

    delta = max((len(nb) for nb in adj.values()), default=0)
    palette = delta + 1
    sorted_adj = {v: sorted(nb) for v, nb in adj.items()}
    edge_color: dict[tuple[VertexId, VertexId], int] = {}
    used: dict[VertexId, dict[int, VertexId]] = {v: {} for v in adj}

    def pk(a: VertexId, b: VertexId) -> tuple[VertexId, VertexId]:
        return (a, b) if a < b else (b, a)

    def free_lowest(v: VertexId) -> int:
        busy = used[v]
        for col in range(1, palette + 1):
            if col not in busy:
                return col
        raise AssertionError(f"no free color at {v}: degree exceeds palette")

    def common_free_lowest(a: VertexId, b: VertexId) -> int | None:
        busy_a, busy_b = used[a], used[b]
        for col in range(1, palette + 1):
            if col not in busy_a and col not in busy_b:
                return col
        return None

    def assign(a: VertexId, b: VertexId, col: int) -> None:
        edge_color[pk(a, b)] = col
        used[a][col] = b
        used[b][col] = a

    def maximal_fan(u: VertexId, v: VertexId) -> list[VertexId]:
        fan = [v]
        in_fan = {v}
        candidates = sorted_adj[u]
        while True:
            back_busy = used[fan[-1]]
            nxt = None
            for x in candidates:
                if x in in_fan:
                    continue
                col = edge_color.get(pk(u, x))
                if col is not None and col not in back_busy:
                    nxt = x
                    break
            if nxt is None:
                return fan
            fan.append(nxt)
            in_fan.add(nxt)

    def invert_cd_path(u: VertexId, c: int, d: int) -> None:
        # The c/d-colored subgraph is a disjoint union of paths and cycles;
        # c is free on u, so u ends a path. Walk it on the pristine colors,
        # then swap in batch (in-place swapping would shadow the lookup of
        # the next edge with the one just recolored).
        x, q = u, d
        path: list[tuple[VertexId, VertexId, int, int]] = []
        while True:
            y = used[x].get(q)
            if y is None:
                break
            p = c if q == d else d
            path.append((x, y, q, p))
            x, q = y, p
        for a, b, old, _ in path:
            del used[a][old]
            del used[b][old]
        for a, b, _, new in path:
            used[a][new] = b
            used[b][new] = a
            edge_color[pk(a, b)] = new

    def rotate_and_finish(u: VertexId, fan: list[VertexId], d: int) -> None:
        # Shift each fan edge's color one step toward v; the last edge takes d.
        cols = [edge_color.get(pk(u, x)) for x in fan]
        new_cols = cols[1:] + [d]
        for x, old in zip(fan, cols):
            if old is not None:
                del used[u][old]
                del used[x][old]
        for x, new in zip(fan, new_cols):
            assign(u, x, new)

    for u, v in pairs:
        if use_common_color:
            common = common_free_lowest(u, v)
            if common is not None:
                assign(u, v, common)
                continue
        fan = maximal_fan(u, v)
        c = free_lowest(u)
        d = free_lowest(fan[-1])
        if d in used[u]:
            invert_cd_path(u, c, d)
            for i, x in enumerate(fan):
                if d not in used[x]:
                    del fan[i + 1 :]
                    break
        rotate_and_finish(u, fan, d)

    colors = {e: edge_color[e.pair] for e in edges}
    return EdgeColoring(palette_size=palette, colors=colors)


def select_k_heaviest(coloring: EdgeColoring, k: int, merge: bool = False) -> KDisjointMatching:
    """Keep the k heaviest color classes of a proper coloring.

    With at most k classes everything survives (padded with empty classes).
    With exactly k+1, either the lightest class is dropped, or, with `merge`,
    the two lightest are replaced by the best matching in their union. More
    than k+1 classes means the upstream degree bound was violated; that is an
    error, not an input.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if coloring.palette_size > k + 1:
        raise ValueError(
            f"palette size {coloring.palette_size} exceeds k+1={k + 1}: "
            "the input subgraph's max degree is above the capacity bound"
        )
    grouped = coloring.classes()
    weights = {col: sum(e.w for e in es) for col, es in grouped.items()}
    order = sorted(grouped, key=lambda col: (-weights[col], col))
    classes = [Matching.of(grouped[col]) for col in order]
    if len(classes) > k:
        assert len(classes) == k + 1
        if merge:
            merged = merge_matchings(classes[-2], classes[-1])
            classes = classes[:-2] + [merged]
        else:
            classes = classes[:-1]
    while len(classes) < k:
        classes.append(Matching())
    return KDisjointMatching(k=k, matchings=tuple(classes))


@dataclass(frozen=True, slots=True)
class StkbRunResult:
    solution: KDisjointMatching
    ssbm: SsbmRunResult
    dropped_parallel: int


def _run_stkb_result(
    stream: EdgeStream, k: int, eps: float, common_color: bool = False, merge: bool = False
) -> StkbRunResult:
    if k < 1:
        raise ValueError("k must be at least 1")
    res = _run_ssbm_result(stream, b=k, eps=eps / 2.0)
    # Multigraph streams can land parallel edges in F; coloring needs a simple
    # graph, so keep the heaviest copy per endpoint pair.
    best: dict[tuple[VertexId, VertexId], WeightedEdge] = {}
    for e in sorted(res.bmatching.edges, key=lambda e: e.key):
        p = e.pair
        cur = best.get(p)
        if cur is None or e.w > cur.w:
            best[p] = e
    dropped = len(res.bmatching.edges) - len(best)
    simple = list(best.values())
    coloring = color_graph(simple, use_common_color=common_color)
    solution = select_k_heaviest(coloring, k, merge=merge)
    return StkbRunResult(solution=solution, ssbm=res, dropped_parallel=dropped)


def run_stkb(
    stream: EdgeStream, k: int, eps: float, *, common_color: bool = False, merge: bool = False
) -> KDisjointMatching:
    """Reduction algorithm: capacity-k b-matching, color, keep k heaviest classes.

    The b-matching stage receives eps/2 (and internally conditions on factor
    1 + received/2), so the end-to-end certified ratio against the k-disjoint
    optimum is (1/(2+eps/2))*(1 - 1/(k+1)).
    """
    return _run_stkb_result(stream, k, eps, common_color=common_color, merge=merge).solution
