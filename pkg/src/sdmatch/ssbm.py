"""Semi-streaming maximum-weight b-matching via slot duals and pointer chasing.

Every vertex v owns b(v) slots, each with its own dual phi(v, i) and a
pointer t_v(i) to the most recent stacked edge occupying the slot. An arriving
edge is measured against the *cheapest* slot at each endpoint: when
w(e) >= (1 + eps/2) * (phi(u,q_u) + phi(v,q_v)) it is pushed with gain
w'(e) = w(e) - (phi(u,q_u) + phi(v,q_v)), remembers the displaced pointers as
its back pointers, and takes over both slots.

Post-processing unwinds the single global stack: a popped edge still alive
joins the output, then kills both of its back-pointer chains (the earlier
edges it displaced, transitively). The output is a 1/(2+eps)-approximate
maximum-weight b-matching.

Note the eps convention: this module applies factor (1 + eps/2) to the eps it
receives. A caller composing it into a larger pipeline that has already halved
its own parameter must not halve again (see coloring.run_stkb).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .core import BMatching, EdgeStream, VertexId, WeightedEdge

CapacitySpec = "int | Mapping[VertexId, int] | Callable[[VertexId], int]"


def _capacity_fn(b) -> Callable[[VertexId], int]:
    if isinstance(b, int):
        if b < 1:
            raise ValueError("uniform capacity must be at least 1")
        return lambda v: b
    if isinstance(b, Mapping):
        mapping = b

        def from_map(v: VertexId) -> int:
            cap = mapping[v]
            if cap < 1:
                raise ValueError(f"capacity b({v}) = {cap} must be at least 1")
            return cap

        return from_map
    if callable(b):
        return b
    raise TypeError(f"unsupported capacity specification {b!r}")


@dataclass(slots=True)
class SsbmEntry:
    edge: WeightedEdge
    gain: float
    back_u: int | None  # stack index of the edge displaced at u's slot
    back_v: int | None
    alive: bool = True


class SsbmState:
    """Mutable run state: slot duals, slot pointers, one global stack."""

    def __init__(self, b, eps: float) -> None:
        if not (eps >= 0):
            raise ValueError("eps must be nonnegative")
        self.eps = eps
        self._factor = 1.0 + eps / 2.0
        self._bfun = _capacity_fn(b)
        self._phi: dict[VertexId, list[float]] = {}
        self._ptr: dict[VertexId, list[int | None]] = {}
        self.incidence: dict[VertexId, int] = {}  # stacked edges per vertex
        self.stack: list[SsbmEntry] = []
        self.stored_now = 0
        self.stored_peak = 0
        self.finalized = False

    def capacity(self, v: VertexId) -> int:
        return self._bfun(v)

    def slot_phi(self, v: VertexId, i: int) -> float:
        """Dual of slot i (1-based) at v."""
        arr = self._phi.get(v)
        return arr[i - 1] if arr is not None else 0.0

    def _slots(self, v: VertexId) -> tuple[list[float], list[int | None]]:
        arr = self._phi.get(v)
        if arr is None:
            cap = self._bfun(v)
            arr = self._phi[v] = [0.0] * cap
            self._ptr[v] = [None] * cap
        return arr, self._ptr[v]


def ssbm_stream_edge(state: SsbmState, e: WeightedEdge) -> bool:
    """Process one edge; True when pushed. Cheapest-slot ties go to the lowest index."""
    if state.finalized:
        raise RuntimeError("state already finalized")
    phi_u, ptr_u = state._slots(e.u)
    phi_v, ptr_v = state._slots(e.v)
    qu = min(range(len(phi_u)), key=phi_u.__getitem__)
    qv = min(range(len(phi_v)), key=phi_v.__getitem__)
    base = phi_u[qu] + phi_v[qv]
    if e.w < state._factor * base:
        return False
    gain = e.w - base
    idx = len(state.stack)
    state.stack.append(SsbmEntry(e, gain, back_u=ptr_u[qu], back_v=ptr_v[qv]))
    ptr_u[qu] = idx
    ptr_v[qv] = idx
    phi_u[qu] += gain
    phi_v[qv] += gain
    state.incidence[e.u] = state.incidence.get(e.u, 0) + 1
    state.incidence[e.v] = state.incidence.get(e.v, 0) + 1
    state.stored_now += 1
    if state.stored_now > state.stored_peak:
        state.stored_peak = state.stored_now
    return True


def ssbm_finalize(state: SsbmState) -> BMatching:
    """Unwind the stack; survivors form the b-matching.

    A popped live edge joins F and then walks both of its displacement chains
    (itself, its back pointer, that edge's back pointer, ...) marking every
    edge on them dead. Back pointers only ever reference earlier stack
    positions, so the walks terminate.
    """
    if state.finalized:
        raise RuntimeError("state already finalized")
    state.finalized = True
    stack = state.stack
    chosen: list[WeightedEdge] = []
    for idx in range(len(stack) - 1, -1, -1):
        entry = stack[idx]
        state.stored_now -= 1
        if not entry.alive:
            continue
        e = entry.edge
        chosen.append(e)
        state.stored_now += 1
        for x in (e.u, e.v):
            j: int | None = idx
            while j is not None:
                ent = stack[j]
                ent.alive = False
                j = ent.back_u if ent.edge.u == x else ent.back_v
    touched: set[VertexId] = set()
    for e in chosen:
        touched.add(e.u)
        touched.add(e.v)
    b_map = {v: state._bfun(v) for v in sorted(touched)}
    return BMatching(edges=frozenset(chosen), b=b_map)


@dataclass(frozen=True, slots=True)
class SsbmMetrics:
    edges_stored_peak: int
    pushes_total: int
    max_incidence: int


@dataclass(frozen=True, slots=True)
class SsbmRunResult:
    bmatching: BMatching
    state: SsbmState
    metrics: SsbmMetrics


def _run_ssbm_result(stream: EdgeStream, b, eps: float) -> SsbmRunResult:
    state = SsbmState(b, eps)
    for e in stream:
        ssbm_stream_edge(state, e)
    f = ssbm_finalize(state)
    metrics = SsbmMetrics(
        edges_stored_peak=state.stored_peak,
        pushes_total=len(state.stack),
        max_incidence=max(state.incidence.values(), default=0),
    )
    return SsbmRunResult(bmatching=f, state=state, metrics=metrics)


def run_ssbm(stream: EdgeStream, b, eps: float) -> BMatching:
    """One-pass b-matching: stream then unwind.

    `b` is a uniform int capacity, a mapping, or a callable; every touched
    vertex must have capacity >= 1.
    """
    return _run_ssbm_result(stream, b, eps).bmatching


def ssbm_space_bound(eps: float, W: float) -> float:
    """Per-slot stacked-edge bound 2 + log_{1+eps/2}(2W/eps) for eps > 0."""
    if eps <= 0:
        raise ValueError("the space bound is only defined for eps > 0")
    if W < 1:
        raise ValueError("W is a max/min ratio and must be >= 1")
    return 2.0 + math.log(2.0 * W / eps) / math.log1p(eps / 2.0)
