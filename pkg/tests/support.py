"""Independent reference implementations the tests trust more than the package.

Everything here is deliberately naive: exhaustive enumeration and a verbatim
transcription of the single-matching streaming algorithm. The package is
checked against these, never the other way round.
"""

from __future__ import annotations

import itertools
import random

from sdmatch.core import WeightedEdge


def brute_kdm(edges, k):
    """Best k-disjoint matching weight by trying every color assignment."""
    best = 0.0
    for assign in itertools.product(range(k + 1), repeat=len(edges)):
        used = [set() for _ in range(k)]
        w = 0.0
        ok = True
        for i, c in enumerate(assign):
            if c == k:  # skipped edge
                continue
            e = edges[i]
            if e.u in used[c] or e.v in used[c]:
                ok = False
                break
            used[c].add(e.u)
            used[c].add(e.v)
            w += e.w
        if ok and w > best:
            best = w
    return best


def brute_mwbm(edges, b):
    """Best b-matching weight by trying every edge subset."""
    def cap(v):
        return b if isinstance(b, int) else b.get(v, 1)

    best = 0.0
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            deg: dict[int, int] = {}
            ok = True
            for e in sub:
                for x in (e.u, e.v):
                    deg[x] = deg.get(x, 0) + 1
                    if deg[x] > cap(x):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                w = sum(e.w for e in sub)
                if w > best:
                    best = w
    return best


def brute_max_matching(edges):
    """Best single-matching weight, include/exclude recursion.

    Fine up to a few dozen edges when the graph is sparse (the merge tests
    feed it unions of two matchings, whose components are paths and cycles).
    """
    edges = list(edges)

    def rec(i, used, acc):
        if i == len(edges):
            return acc
        best = rec(i + 1, used, acc)
        e = edges[i]
        if e.u not in used and e.v not in used:
            used.add(e.u)
            used.add(e.v)
            cand = rec(i + 1, used, acc + e.w)
            used.discard(e.u)
            used.discard(e.v)
            if cand > best:
                best = cand
        return best

    return rec(0, set(), 0.0)


def reference_mwm_stream(edges, eps):
    """Verbatim single-matching streaming algorithm.

    Streaming: keep per-vertex duals phi; an edge with
    w >= (1+eps)*(phi(u)+phi(v)) has its reduced weight added to both duals
    and goes on one stack; otherwise it is dropped. Post-processing pops the
    stack and keeps every edge whose endpoints are still unmatched.

    Returns (decisions, matching_keys): one bool per stream edge, then the
    chosen edges as canonical keys.
    """
    phi: dict[int, float] = {}
    stack: list[WeightedEdge] = []
    decisions: list[bool] = []
    for e in edges:
        pu = phi.get(e.u, 0.0)
        pv = phi.get(e.v, 0.0)
        if e.w >= (1.0 + eps) * (pu + pv):
            gain = e.w - (pu + pv)
            phi[e.u] = pu + gain
            phi[e.v] = pv + gain
            stack.append(e)
            decisions.append(True)
        else:
            decisions.append(False)
    matched: set[int] = set()
    chosen = []
    while stack:
        e = stack.pop()
        if e.u not in matched and e.v not in matched:
            matched.add(e.u)
            matched.add(e.v)
            chosen.append(e)
    return decisions, sorted(e.key for e in chosen)


def rand_instance(rng: random.Random, n_max=10, m_max=16, w_max=100, n_min=2):
    """Random simple graph with integer weights, as an edge list."""
    n = rng.randint(n_min, n_max)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = rng.randint(1, min(m_max, len(pairs)))
    return [
        WeightedEdge(u, v, float(rng.randint(1, w_max)))
        for u, v in rng.sample(pairs, m)
    ]


def rand_matching_pair(rng: random.Random, n=14, w_max=20):
    """Two edge-disjoint matchings on a shared vertex set.

    Grown greedily from shuffled candidate edges; value-duplicate pairs
    across the two sides are allowed (they form 2-cycles in the union).
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    sides = []
    taken: set[tuple[int, int]] = set()
    for _ in range(2):
        rng.shuffle(pairs)
        used: set[int] = set()
        side = []
        budget = rng.randint(0, n // 2)
        for u, v in pairs:
            if len(side) >= budget:
                break
            if u in used or v in used or (u, v) in taken:
                continue
            used.add(u)
            used.add(v)
            taken.add((u, v))
            side.append(WeightedEdge(u, v, float(rng.randint(1, w_max))))
        sides.append(side)
    return sides[0], sides[1]
