"""Primal-dual stack algorithm for k-disjoint matching in one pass.

Streaming phase: each arriving edge is tested against the colors in order
1..k; the first color c whose duals leave enough residual weight, i.e.
w(e) >= (1+eps)*(phi(c,u)+phi(c,v)), accepts the edge: its reduced weight
w' = w(e) - (phi(c,u)+phi(c,v)) is credited to both endpoint duals and the
edge is pushed on stack c. Edges failing every color are discarded for good.

Post-processing: stacks unwind in color order, last-in first-out. A popped
edge joins matching M_c when both endpoints are still free in M_c; a blocked
edge gets re-tested against the later colors c+1..k under exactly the
streaming rule (duals keep growing after the stream ends).

The terminal duals certify the result: scaled by (1+eps) they form a feasible
solution of the dual linear program, which is what `oracle.build_dual_certificate`
exploits. The guaranteed ratio is 1/(3+2*eps); per-(color,vertex) stack
incidence stays within 2 + log_{1+eps}(W/eps) pushes for eps > 0, which is
the memory argument for calling this semi-streaming.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import EdgeStream, KDisjointMatching, Matching, VertexId, WeightedEdge
from .dpmerge import merge_matchings


@dataclass(frozen=True, slots=True)
class StackEntry:
    edge: WeightedEdge
    reduced_weight: float


class StkState:
    """Mutable run state: per-(color,vertex) duals, k stacks, push accounting.

    phi values only ever grow. `push_log` keeps, per color, the chronological
    (u, v, w) sequence of pushes; every push to a stack happens before that
    stack unwinds, so replaying a color's log reproduces its duals exactly
    (the certificate builder re-runs it in exact arithmetic).
    """

    def __init__(self, k: int, eps: float) -> None:
        if k < 1:
            raise ValueError("k must be at least 1")
        if not (eps >= 0):
            raise ValueError("eps must be nonnegative")
        self.k = k
        self.eps = eps
        self._factor = 1.0 + eps
        # vertex -> length-k arrays, allocated on first touch
        self._phi: dict[VertexId, list[float]] = {}
        self._counts: dict[VertexId, list[int]] = {}
        self.stacks: list[list[StackEntry]] = [[] for _ in range(k)]
        self.push_log: list[list[tuple[VertexId, VertexId, float]]] = [[] for _ in range(k)]
        self.pushes_total = 0
        self.stored_now = 0
        self.stored_peak = 0
        self.finalized = False

    def phi(self, c: int, v: VertexId) -> float:
        """Current dual phi(c, v); colors are 1-based."""
        arr = self._phi.get(v)
        return arr[c - 1] if arr is not None else 0.0

    def push_count(self, c: int, v: VertexId) -> int:
        """Cumulative pushes on stack c incident to v (post-processing included)."""
        arr = self._counts.get(v)
        return arr[c - 1] if arr is not None else 0

    def max_push_count(self) -> int:
        best = 0
        for arr in self._counts.values():
            m = max(arr)
            if m > best:
                best = m
        return best

    def phi_total(self) -> float:
        return sum(sum(arr) for arr in self._phi.values())

    def touched_vertices(self) -> list[VertexId]:
        return sorted(self._phi)

    def _try_push(self, u: VertexId, v: VertexId, w: float, start: int, edge: WeightedEdge) -> int | None:
        """Scan colors start..k-1 (0-based); push at the first qualifying one.

        Returns the 1-based color or None. Ties qualify: the condition is >=.
        """
        phi = self._phi
        factor = self._factor
        arr_u = phi.get(u)
        arr_v = phi.get(v)
        for ci in range(start, self.k):
            pu = arr_u[ci] if arr_u is not None else 0.0
            pv = arr_v[ci] if arr_v is not None else 0.0
            if w >= factor * (pu + pv):
                gain = w - (pu + pv)
                if arr_u is None:
                    arr_u = phi[u] = [0.0] * self.k
                if arr_v is None:
                    arr_v = phi[v] = [0.0] * self.k
                arr_u[ci] += gain
                arr_v[ci] += gain
                cu = self._counts.get(u)
                if cu is None:
                    cu = self._counts[u] = [0] * self.k
                cv = self._counts.get(v)
                if cv is None:
                    cv = self._counts[v] = [0] * self.k
                cu[ci] += 1
                cv[ci] += 1
                self.stacks[ci].append(StackEntry(edge, gain))
                self.push_log[ci].append((u, v, w))
                self.pushes_total += 1
                self.stored_now += 1
                if self.stored_now > self.stored_peak:
                    self.stored_peak = self.stored_now
                return ci + 1
        return None


def stk_stream_edge(state: StkState, e: WeightedEdge) -> int | None:
    """Process one stream edge; returns the 1-based color pushed to, or None."""
    if state.finalized:
        raise RuntimeError("state already finalized")
    return state._try_push(e.u, e.v, e.w, 0, e)


def stk_finalize(state: StkState) -> KDisjointMatching:
    """Unwind the stacks into k pairwise edge-disjoint matchings.

    Colors resolve in increasing order; a popped edge blocked in M_c is
    offered to stacks c+1..k under the streaming rule before being dropped.
    """
    if state.finalized:
        raise RuntimeError("state already finalized")
    state.finalized = True
    matchings: list[Matching] = []
    for ci in range(state.k):
        matched: set[VertexId] = set()
        chosen: list[WeightedEdge] = []
        stack = state.stacks[ci]
        while stack:
            entry = stack.pop()
            state.stored_now -= 1
            e = entry.edge
            if e.u not in matched and e.v not in matched:
                matched.add(e.u)
                matched.add(e.v)
                chosen.append(e)
                state.stored_now += 1
            else:
                state._try_push(e.u, e.v, e.w, ci + 1, e)
        matchings.append(Matching.of(chosen))
    return KDisjointMatching(k=state.k, matchings=tuple(matchings))


@dataclass(frozen=True, slots=True)
class StkMetrics:
    edges_stored_peak: int
    pushes_total: int
    max_push_count: int


@dataclass(frozen=True, slots=True)
class StkRunResult:
    solution: KDisjointMatching
    state: StkState
    metrics: StkMetrics


def run_stk(stream: EdgeStream, k: int, eps: float) -> StkRunResult:
    """One-pass run: stream every edge, then unwind.

    The result carries the terminal state (for certificates and space checks)
    and counting metrics: peak simultaneously stored edges and total pushes.
    """
    state = StkState(k, eps)
    for e in stream:
        state._try_push(e.u, e.v, e.w, 0, e)
    solution = stk_finalize(state)
    metrics = StkMetrics(
        edges_stored_peak=state.stored_peak,
        pushes_total=state.pushes_total,
        max_push_count=state.max_push_count(),
    )
    stats = stream.stats
    if eps > 0 and stats.m > 0:
        # self-check of the memory guarantee; cheap, so it runs every time
        assert metrics.max_push_count <= space_bound(eps, stats.w_max / stats.w_min), (
            "per-(color,vertex) push count exceeded its logarithmic bound"
        )
    return StkRunResult(solution=solution, state=state, metrics=metrics)


def space_bound(eps: float, W: float) -> float:
    """Per-(color,vertex) push-count bound 2 + log_{1+eps}(W/eps), eps > 0."""
    if eps <= 0:
        raise ValueError("the space bound is only defined for eps > 0")
    if W < 1:
        raise ValueError("W is a max/min ratio and must be >= 1")
    return 2.0 + math.log(W / eps) / math.log1p(eps)


def _run_stk_dp_result(stream: EdgeStream, k: int, eps: float) -> tuple[KDisjointMatching, StkState, StkMetrics]:
    """2k-color run, then merge class i with class 2k-i+1 pairwise."""
    res = run_stk(stream, 2 * k, eps)
    ms = res.solution.matchings
    merged = tuple(merge_matchings(ms[i], ms[2 * k - i - 1]) for i in range(k))
    return KDisjointMatching(k=k, matchings=merged), res.state, res.metrics


def run_stk_dp(stream: EdgeStream, k: int, eps: float) -> KDisjointMatching:
    """Weight-improved variant: run with 2k colors, then pair classes head-to-tail
    and replace each pair by the best matching inside its union.

    Each merged class is at least as heavy as either of its parents, never
    lighter than the plain k-color run's counterpart is guaranteed to be.
    """
    solution, _, _ = _run_stk_dp_result(stream, k, eps)
    return solution
