"""Ground truth and certificates: exact tiny-instance solvers, an offline
iterative-greedy baseline, and the dual-feasibility / ratio certificate.

The exact solvers are branch-and-bound enumerations with a sorted-suffix
upper bound, usable only below hard size caps; they exist to referee the
streaming algorithms, not to compete with them.

The certificate machinery turns a terminal stack-algorithm state into a
feasible solution of the dual linear program: y(c,v) = (1+eps)*phi(c,v) and
z(e) = max(0, max_c { w(e) - (1+eps)*(phi(c,u)+phi(c,v)) }). Weak duality
makes y+z's objective an upper bound on the optimum, so
(3+2eps)*w(solution) >= objective certifies the approximation factor with no
oracle in sight. All certificate arithmetic is exact (rationals over the
float values): the inequality can be tight with exact equality on real
instances, where float evaluation would report spurious ulp-level failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import KDisjointMatching, Matching, VertexId, WeightedEdge
from .ssbm import _capacity_fn
from .stk import StkState

EXACT_KDM_MAX_EDGES = 16
EXACT_MWBM_MAX_EDGES = 20


class OracleSizeError(ValueError):
    """Instance exceeds an exhaustive solver's hard cap."""


class CertificateError(AssertionError):
    """A built certificate failed dual feasibility: an algorithm bug."""


@dataclass(frozen=True, slots=True)
class ExactKdmResult:
    weight: float
    solution: KDisjointMatching


def exact_kdm(edges: Sequence[WeightedEdge], k: int) -> ExactKdmResult:
    """Optimal k-disjoint matching by pruned enumeration of color assignments.

    Every edge gets a color in [k] or stays out; properness is maintained
    incrementally, identical color classes are explored once (a fresh color
    is only opened in index order), and branches whose sorted-suffix bound
    cannot beat the incumbent are cut. Hard cap m <= 16.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    m = len(edges)
    if m > EXACT_KDM_MAX_EDGES:
        raise OracleSizeError(f"exact_kdm handles at most {EXACT_KDM_MAX_EDGES} edges, got {m}")
    es = sorted(edges, key=lambda e: (-e.w, e.key))
    ws = [e.w for e in es]
    suffix = [0.0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + ws[i]
    vid = {v: i for i, v in enumerate(sorted({x for e in es for x in (e.u, e.v)}))}
    ebits = [(1 << vid[e.u]) | (1 << vid[e.v]) for e in es]

    masks = [0] * k
    assign = [-1] * m
    best_w = -1.0
    best_assign: list[int] = []

    def rec(i: int, cur: float, used_colors: int) -> None:
        nonlocal best_w, best_assign
        if cur + suffix[i] <= best_w:
            return
        if i == m:
            best_w = cur
            best_assign = assign.copy()
            return
        b = ebits[i]
        for c in range(min(k, used_colors + 1)):
            if not masks[c] & b:
                masks[c] |= b
                assign[i] = c
                rec(i + 1, cur + ws[i], max(used_colors, c + 1))
                masks[c] &= ~b
                assign[i] = -1
        rec(i + 1, cur, used_colors)

    rec(0, 0.0, 0)
    classes: list[list[WeightedEdge]] = [[] for _ in range(k)]
    for i, c in enumerate(best_assign):
        if c >= 0:
            classes[c].append(es[i])
    solution = KDisjointMatching(k=k, matchings=tuple(Matching.of(cl) for cl in classes))
    return ExactKdmResult(weight=best_w, solution=solution)


def exact_mwbm(edges: Sequence[WeightedEdge], b) -> float:
    """Optimal b-matching weight by pruned subset enumeration. Hard cap m <= 20."""
    m = len(edges)
    if m > EXACT_MWBM_MAX_EDGES:
        raise OracleSizeError(f"exact_mwbm handles at most {EXACT_MWBM_MAX_EDGES} edges, got {m}")
    bfun = _capacity_fn(b)
    es = sorted(edges, key=lambda e: (-e.w, e.key))
    ws = [e.w for e in es]
    suffix = [0.0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + ws[i]
    cap = {v: bfun(v) for v in {x for e in es for x in (e.u, e.v)}}

    best = 0.0

    def rec(i: int, cur: float) -> None:
        nonlocal best
        if cur + suffix[i] <= best:
            return
        if i == m:
            best = cur
            return
        e = es[i]
        if cap[e.u] > 0 and cap[e.v] > 0:
            cap[e.u] -= 1
            cap[e.v] -= 1
            rec(i + 1, cur + ws[i])
            cap[e.u] += 1
            cap[e.v] += 1
        rec(i + 1, cur)

    rec(0, 0.0)
    return best


def greedy_iterative_baseline(edges: Sequence[WeightedEdge], k: int) -> KDisjointMatching:
    """k rounds of weight-sorted greedy maximal matching on the residual graph.

    Ties sort by input position, so the result is a pure function of the
    edge sequence.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    order = sorted(range(len(edges)), key=lambda i: (-edges[i].w, i))
    used = [False] * len(edges)
    matchings: list[Matching] = []
    for _ in range(k):
        matched: set[VertexId] = set()
        chosen: list[WeightedEdge] = []
        for i in order:
            if used[i]:
                continue
            e = edges[i]
            if e.u in matched or e.v in matched:
                continue
            used[i] = True
            matched.add(e.u)
            matched.add(e.v)
            chosen.append(e)
        matchings.append(Matching.of(chosen))
    return KDisjointMatching(k=k, matchings=tuple(matchings))


@dataclass(frozen=True, slots=True)
class DualCertificate:
    """Feasible dual solution: vertex terms y(c,v), edge terms z(e), objective.

    All values are exact rationals of the run's float quantities. The
    objective upper-bounds the optimum by weak duality.
    """

    y: dict[tuple[int, VertexId], Fraction]
    z: dict[tuple[VertexId, VertexId, float], Fraction]
    objective: Fraction


def build_dual_certificate(state: StkState, stored_edges: Sequence[WeightedEdge]) -> DualCertificate:
    """Certificate from a terminal run state plus the complete instance.

    Replays each color's push log in exact arithmetic (a stack's pushes all
    precede its unwinding, so the chronological per-color log determines the
    terminal duals), then sets y = (1+eps)*phi and gives every edge the
    smallest nonnegative z that satisfies all its k constraints. Verification
    mode only: holding `stored_edges` is exactly what the streaming model
    avoids.

    Raises CertificateError if the result is infeasible (cannot happen unless
    the run state is corrupt; checked because silence would mask bugs).
    """
    if not state.finalized:
        raise ValueError("certificate requires a terminal (finalized) state")
    one_plus = 1 + Fraction(state.eps)
    phi: list[dict[VertexId, Fraction]] = []
    for ci in range(state.k):
        acc: dict[VertexId, Fraction] = {}
        for u, v, w in state.push_log[ci]:
            base = acc.get(u, Fraction(0)) + acc.get(v, Fraction(0))
            gain = Fraction(w) - base
            acc[u] = acc.get(u, Fraction(0)) + gain
            acc[v] = acc.get(v, Fraction(0)) + gain
        phi.append(acc)

    y: dict[tuple[int, VertexId], Fraction] = {}
    for ci in range(state.k):
        for v, val in sorted(phi[ci].items()):
            if val:
                y[(ci + 1, v)] = one_plus * val

    zero = Fraction(0)
    z: dict[tuple[VertexId, VertexId, float], Fraction] = {}
    objective = sum(y.values(), zero)
    for e in stored_edges:
        w = Fraction(e.w)
        slack = zero
        for ci in range(state.k):
            acc = phi[ci]
            s = w - one_plus * (acc.get(e.u, zero) + acc.get(e.v, zero))
            if s > slack:
                slack = s
        z[e.key] = slack
        objective += slack

    for e in stored_edges:
        w = Fraction(e.w)
        ze = z[e.key]
        for c in range(1, state.k + 1):
            if y.get((c, e.u), zero) + y.get((c, e.v), zero) + ze < w:
                raise CertificateError(
                    f"dual constraint violated at edge ({e.u},{e.v}) w={e.w} color {c}"
                )
    return DualCertificate(y=y, z=z, objective=objective)


def certified_ratio_check(solution: KDisjointMatching, cert: DualCertificate, eps: float) -> bool:
    """True iff (3+2*eps) * w(solution) >= certificate objective, exactly.

    With a feasible certificate this implies w(solution) >= OPT/(3+2*eps)
    without knowing OPT. Evaluated in rationals: the inequality admits exact
    equality, where float rounding could go either way.
    """
    w = sum((Fraction(e.w) for m in solution.matchings for e in m.edges), Fraction(0))
    return (3 + 2 * Fraction(eps)) * w >= cert.objective
