"""Optimal merge of two edge-disjoint matchings by dynamic programming.

The union of two matchings has maximum degree 2, so it decomposes into
simple paths and even cycles whose edges alternate between the two inputs.
The best matching inside a path follows from a take/skip recurrence; a cycle
reduces to two path problems (fix one edge out, or in and its neighbors out).
The result is the maximum-weight matching of the union graph, hence never
lighter than either input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Matching, VertexId, WeightedEdge, matching_violations


@dataclass(frozen=True, slots=True)
class Component:
    kind: str  # "path" or "cycle"
    edges: tuple[WeightedEdge, ...]  # consecutive edges share a vertex; cycles wrap


@dataclass(frozen=True, slots=True)
class AlternatingDecomposition:
    components: tuple[Component, ...]


def _check_inputs(m1: Matching, m2: Matching) -> None:
    bad = matching_violations(m1, "m1") + matching_violations(m2, "m2")
    shared = {e.key for e in m1.edges} & {e.key for e in m2.edges}
    if shared:
        bad.append(f"inputs share {len(shared)} edge(s), e.g. {sorted(shared)[0]}")
    if bad:
        raise ValueError("merge_matchings contract violation: " + "; ".join(bad))


def decompose_union(m1: Matching, m2: Matching) -> AlternatingDecomposition:
    """Split m1 union m2 into its paths and cycles, deterministically ordered.

    Parallel edges between the same endpoints (one per input) form a 2-cycle.
    """
    _check_inputs(m1, m2)
    edges = sorted(m1.edges, key=lambda e: e.key) + sorted(m2.edges, key=lambda e: e.key)
    incid: dict[VertexId, list[int]] = {}
    for i, e in enumerate(edges):
        incid.setdefault(e.u, []).append(i)
        incid.setdefault(e.v, []).append(i)
    visited = [False] * len(edges)
    components: list[Component] = []

    def walk(start_vertex: VertexId) -> list[int]:
        out: list[int] = []
        cur = start_vertex
        while True:
            nxt = None
            for i in incid[cur]:
                if not visited[i]:
                    nxt = i
                    break
            if nxt is None:
                return out
            visited[nxt] = True
            out.append(nxt)
            cur = edges[nxt].other(cur)

    # paths first: start from degree-1 vertices
    for v in sorted(incid):
        if len(incid[v]) == 1 and not visited[incid[v][0]]:
            components.append(Component("path", tuple(edges[i] for i in walk(v))))
    # what remains is covered by cycles
    for i, e in enumerate(edges):
        if not visited[i]:
            visited[i] = True
            rest = walk(e.other(e.u))  # follow from v back around to u
            components.append(Component("cycle", (e, *(edges[j] for j in rest))))
    return AlternatingDecomposition(tuple(components))


def _path_best(edges: tuple[WeightedEdge, ...]) -> tuple[float, int, list[WeightedEdge]]:
    """Max-weight matching of a path of consecutive edges; ties take fewer edges."""
    n = len(edges)
    if n == 0:
        return 0.0, 0, []
    # dp[i]: best over the first i edges, as (weight, count); decisions for backtracking
    w_prev2, c_prev2 = 0.0, 0  # dp[i-2]
    w_prev, c_prev = 0.0, 0  # dp[i-1]
    took: list[bool] = []
    for i, e in enumerate(edges):
        tw, tc = w_prev2 + e.w, c_prev2 + 1
        if tw > w_prev or (tw == w_prev and tc < c_prev):
            took.append(True)
            cur = (tw, tc)
        else:
            took.append(False)
            cur = (w_prev, c_prev)
        w_prev2, c_prev2 = w_prev, c_prev
        w_prev, c_prev = cur
    chosen: list[WeightedEdge] = []
    i = n - 1
    while i >= 0:
        if took[i]:
            chosen.append(edges[i])
            i -= 2
        else:
            i -= 1
    return w_prev, c_prev, chosen


def _cycle_best(edges: tuple[WeightedEdge, ...]) -> tuple[float, int, list[WeightedEdge]]:
    """Max-weight matching of an even cycle: two path subproblems, best wins."""
    t = len(edges)
    # last edge out: the rest is a path
    wa, ca, ea = _path_best(edges[: t - 1])
    # last edge in: its neighbors (first and second-to-last) drop out
    wb, cb, eb = _path_best(edges[1 : t - 2] if t > 3 else ())
    wb, cb = wb + edges[t - 1].w, cb + 1
    if wb > wa or (wb == wa and cb < ca):
        return wb, cb, eb + [edges[t - 1]]
    return wa, ca, ea


def merge_matchings(m1: Matching, m2: Matching) -> Matching:
    """Best matching inside the union of two edge-disjoint matchings.

    Raises ValueError when the inputs are not edge-disjoint valid matchings.
    The result's weight is the brute-force optimum of the union graph, so in
    particular >= max(w(m1), w(m2)).
    """
    decomposition = decompose_union(m1, m2)
    chosen: list[WeightedEdge] = []
    for comp in decomposition.components:
        if comp.kind == "path":
            _, _, picked = _path_best(comp.edges)
        else:
            _, _, picked = _cycle_best(comp.edges)
        chosen.extend(picked)
    return Matching.of(chosen)
