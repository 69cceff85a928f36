"""Shared graph, stream, and solution types.

Everything downstream speaks in terms of these records: weighted undirected
edges, a single-pass edge stream with summary statistics, matchings and their
k-disjoint and degree-capacitated generalizations, plus report-only validators
that every algorithm's output is checked against.

Weights use 64-bit float semantics throughout, and all algorithm conditions
compare them exactly (no tolerance), so any two runs over the same stream are
bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

VertexId = int


class StreamFormatError(ValueError):
    """Raised when an edge-list file cannot be ingested."""


@dataclass(frozen=True, slots=True)
class WeightedEdge:
    """Undirected edge with a strictly positive weight.

    Endpoint order is preserved as given (stream fidelity); use `pair` or
    `key` for orientation-independent identity.
    """

    u: VertexId
    v: VertexId
    w: float

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"self-loop ({self.u},{self.v}) is not a valid edge")
        if not (isinstance(self.w, (int, float)) and math.isfinite(self.w) and self.w > 0):
            raise ValueError(f"edge weight must be a positive finite number, got {self.w!r}")

    @property
    def pair(self) -> tuple[VertexId, VertexId]:
        """Endpoints as an ordered pair (min, max)."""
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    @property
    def key(self) -> tuple[VertexId, VertexId, float]:
        """Value identity: ordered endpoints plus weight."""
        a, b = self.pair
        return (a, b, self.w)

    def other(self, x: VertexId) -> VertexId:
        """The endpoint that is not `x`."""
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x} is not an endpoint of ({self.u},{self.v})")


@dataclass(frozen=True, slots=True)
class InstanceStats:
    """Summary of one fully consumed stream.

    `n` is the declared vertex count when the input provided one, otherwise
    max id + 1 discovered during the pass. `W` is the max/min weight ratio;
    an empty stream reports the neutral 1.0.
    """

    n: int
    m: int
    w_max: float
    w_min: float
    W: float


class EdgeStream:
    """Single-pass sequence of weighted edges.

    Yields each edge exactly once; a second iteration attempt raises, which is
    how the one-pass contract is enforced rather than merely documented.
    Summary statistics become available once the pass completes.
    """

    def __init__(
        self,
        edges: Iterable[WeightedEdge],
        declared_n: int | None = None,
        self_loops_skipped: int = 0,
    ) -> None:
        self._source = iter(edges)
        self.declared_n = declared_n
        self.self_loops_skipped = self_loops_skipped
        self._started = False
        self._finished = False
        self._m = 0
        self._max_id = -1
        self._w_min = math.inf
        self._w_max = 0.0

    @classmethod
    def from_edges(cls, edges: Iterable[WeightedEdge], n: int | None = None) -> "EdgeStream":
        return cls(list(edges), declared_n=n)

    def __iter__(self) -> Iterator[WeightedEdge]:
        if self._started:
            raise RuntimeError("EdgeStream is single-pass and was already consumed")
        self._started = True
        for e in self._source:
            self._m += 1
            if e.u > self._max_id:
                self._max_id = e.u
            if e.v > self._max_id:
                self._max_id = e.v
            if e.w < self._w_min:
                self._w_min = e.w
            if e.w > self._w_max:
                self._w_max = e.w
            yield e
        self._finished = True

    @property
    def stats(self) -> InstanceStats:
        if not self._finished:
            raise RuntimeError("stream statistics are available only after a complete pass")
        if self.declared_n is not None:
            n = self.declared_n
        else:
            n = self._max_id + 1
        if self._m == 0:
            return InstanceStats(n=n, m=0, w_max=1.0, w_min=1.0, W=1.0)
        return InstanceStats(
            n=n, m=self._m, w_max=self._w_max, w_min=self._w_min, W=self._w_max / self._w_min
        )


def read_edge_list(path: str) -> tuple[list[WeightedEdge], int | None, int]:
    """Parse an edge-list file: (edges, declared n or None, self-loops skipped).

    Format: optional first line "n m" (two integers); every other non-comment
    line is "u v w" with integer endpoints and a decimal weight; lines starting
    with '#' are ignored; UTF-8, LF or CRLF. Self-loop lines are skipped and
    counted. Raises StreamFormatError (with the line number) on malformed
    lines, non-positive weights, or a vertex id at or above a declared n.
    """
    edges: list[WeightedEdge] = []
    declared_n: int | None = None
    self_loops = 0
    saw_data_line = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if not saw_data_line and len(tokens) == 2:
                saw_data_line = True
                try:
                    declared_n = int(tokens[0])
                    int(tokens[1])  # declared m is informational only
                except ValueError:
                    raise StreamFormatError(f"{path}:{lineno}: malformed header {line!r}") from None
                if declared_n < 0:
                    raise StreamFormatError(f"{path}:{lineno}: negative vertex count in header")
                continue
            saw_data_line = True
            if len(tokens) != 3:
                raise StreamFormatError(
                    f"{path}:{lineno}: expected 'u v w', got {len(tokens)} fields"
                )
            try:
                u, v = int(tokens[0]), int(tokens[1])
                w = float(tokens[2])
            except ValueError:
                raise StreamFormatError(f"{path}:{lineno}: malformed edge line {line!r}") from None
            if u < 0 or v < 0:
                raise StreamFormatError(f"{path}:{lineno}: negative vertex id")
            if declared_n is not None and (u >= declared_n or v >= declared_n):
                raise StreamFormatError(
                    f"{path}:{lineno}: vertex id {max(u, v)} outside declared range n={declared_n}"
                )
            if u == v:
                self_loops += 1
                continue
            if not (math.isfinite(w) and w > 0):
                raise StreamFormatError(f"{path}:{lineno}: non-positive weight {tokens[2]}")
            edges.append(WeightedEdge(u, v, w))
    return edges, declared_n, self_loops


def open_stream(path: str, format: str = "edge_list") -> EdgeStream:
    """Parse an edge-list file into a single-pass stream.

    Parsing is eager (see read_edge_list), so all format errors surface here
    and the returned stream is a pure in-memory pass over the parsed edges.
    """
    if format != "edge_list":
        raise ValueError(f"unknown stream format {format!r}")
    edges, declared_n, self_loops = read_edge_list(path)
    return EdgeStream(edges, declared_n=declared_n, self_loops_skipped=self_loops)


@dataclass(frozen=True, slots=True)
class Matching:
    """A set of edges no two of which share an endpoint.

    The container itself does not enforce the property (validators do, and
    they need to be able to describe broken inputs), but every algorithm in
    this package only ever constructs valid ones.
    """

    edges: frozenset[WeightedEdge] = field(default_factory=frozenset)

    @classmethod
    def of(cls, edges: Iterable[WeightedEdge]) -> "Matching":
        return cls(frozenset(edges))

    @property
    def weight(self) -> float:
        # summed in sorted order: float addition is order-sensitive and the
        # reported weight must not depend on set layout
        return sum(e.w for e in sorted(self.edges, key=lambda e: e.key))

    def vertices(self) -> set[VertexId]:
        out: set[VertexId] = set()
        for e in self.edges:
            out.add(e.u)
            out.add(e.v)
        return out

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[WeightedEdge]:
        return iter(self.edges)


@dataclass(frozen=True, slots=True)
class KDisjointMatching:
    """k color classes, each a matching, pairwise edge-disjoint.

    weight sums all classes; class order is meaningful (color c is
    matchings[c-1]).
    """

    k: int
    matchings: tuple[Matching, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if len(self.matchings) != self.k:
            raise ValueError(f"expected {self.k} matchings, got {len(self.matchings)}")

    @classmethod
    def of(cls, matchings: Iterable[Iterable[WeightedEdge]]) -> "KDisjointMatching":
        ms = tuple(Matching.of(m) for m in matchings)
        return cls(k=len(ms), matchings=ms)

    @property
    def weight(self) -> float:
        return sum(m.weight for m in self.matchings)

    @property
    def per_color_weights(self) -> list[float]:
        return [m.weight for m in self.matchings]

    def all_edges(self) -> list[WeightedEdge]:
        return [e for m in self.matchings for e in m.edges]


@dataclass(frozen=True, slots=True)
class BMatching:
    """Edge set respecting per-vertex degree capacities b(v)."""

    edges: frozenset[WeightedEdge]
    b: Mapping[VertexId, int]

    @property
    def weight(self) -> float:
        return sum(e.w for e in self.edges)


@dataclass(frozen=True, slots=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def matching_violations(m: Matching, label: str = "M") -> list[str]:
    """Vertices matched more than once, in deterministic order."""
    count: dict[VertexId, int] = {}
    for e in m.edges:
        count[e.u] = count.get(e.u, 0) + 1
        count[e.v] = count.get(e.v, 0) + 1
    return [f"vertex {v} matched {c} times in {label}" for v, c in sorted(count.items()) if c > 1]


def validate_kdm(sol: KDisjointMatching) -> ValidationReport:
    """Check every class is a matching and no edge value appears in two classes.

    Report-only: never raises. Edge identity is by value (endpoints plus
    weight), so parallel edges of distinct weight may legally occupy
    different colors.
    """
    violations: list[str] = []
    for c, m in enumerate(sol.matchings, start=1):
        violations.extend(matching_violations(m, label=f"M{c}"))
    seen: dict[tuple[VertexId, VertexId, float], int] = {}
    for c, m in enumerate(sol.matchings, start=1):
        for e in sorted(m.edges, key=lambda e: e.key):
            k = e.key
            if k in seen:
                violations.append(
                    f"edge ({k[0]},{k[1]}) w={k[2]} in both M{seen[k]} and M{c}"
                )
            else:
                seen[k] = c
    return ValidationReport(ok=not violations, violations=tuple(violations))


def bmatching_violations(f: BMatching) -> list[str]:
    """Capacity violations deg_F(v) > b(v), in deterministic order."""
    deg: dict[VertexId, int] = {}
    for e in f.edges:
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    out = []
    for v, d in sorted(deg.items()):
        cap = f.b.get(v, 0)
        if d > cap:
            out.append(f"vertex {v} has degree {d} > capacity {cap}")
    return out


def solution_weight(sol: KDisjointMatching) -> float:
    """Total weight over all color classes."""
    return sol.weight
