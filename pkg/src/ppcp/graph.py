"""Weighted graphs, exact shortest paths and the scenario (operational) view.

Lengths are exact: finite values are :class:`fractions.Fraction`, the missing
distance is ``math.inf``. Both compare and add correctly with each other, so
no wrapper type is needed.

Internally every graph keeps an integer copy of its edge lengths, scaled by
the least common multiple of the denominators. Shortest-path work runs on
those integers and results are divided by the scale on the way out, which
keeps everything exact without paying for ``Fraction`` arithmetic in the
inner loops.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

INF = math.inf

Length = Union[Fraction, float]  # float only ever for INF
LengthLike = Union[int, str, Fraction]

Edge = tuple[int, int]
Coord = tuple[int, int]


class GraphError(ValueError):
    """Raised for structurally invalid graphs or bad operation arguments."""


class DisconnectedGraphError(GraphError):
    """Raised when an operation needs a connected graph."""


def as_length(value: LengthLike) -> Fraction:
    """Parse an exact nonnegative length.

    Accepts ints, ``Fraction`` and strings such as ``"7/2"`` or ``"3"``.
    Floats are refused because they are not exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise GraphError(f"lengths must be exact rationals, got {value!r}")
    try:
        frac = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise GraphError(f"invalid length {value!r}") from exc
    if frac < 0:
        raise GraphError(f"negative length {value!r}")
    return frac


def format_length(value: Length) -> str:
    """Lossless ``num/den`` rendering; ``inf`` for the infinite length."""
    if value == INF:
        return "inf"
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def _unscale(value: int | float, scale: int) -> Length:
    if value == INF:
        return INF
    return Fraction(int(value), scale)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Immutable simple undirected graph with positive rational edge lengths.

    Vertices are ``0..n-1``. ``labels`` optionally gives display names (the
    figure fixtures use them), ``coords`` optional integer grid positions given
    as ``(row, col)``.
    """

    n: int
    edges: Mapping[Edge, Fraction]
    name: str | None = None
    coords: tuple[Coord, ...] | None = None
    labels: tuple[str, ...] | None = None
    _adj: tuple[tuple[tuple[int, Fraction], ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise GraphError(f"vertex count must be a nonnegative int, got {self.n!r}")
        clean: dict[Edge, Fraction] = {}
        for key, raw in dict(self.edges).items():
            u, v = key
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {key} has an endpoint outside [0, {self.n})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in clean:
                raise GraphError(f"duplicate edge {e}")
            length = as_length(raw)
            if length <= 0:
                raise GraphError(f"edge {e} must have a positive length")
            clean[e] = length
        object.__setattr__(self, "edges", dict(sorted(clean.items())))
        if self.coords is not None:
            coords = tuple((int(r), int(c)) for r, c in self.coords)
            if len(coords) != self.n:
                raise GraphError("coords must give one position per vertex")
            object.__setattr__(self, "coords", coords)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n or len(set(labels)) != self.n:
                raise GraphError("labels must be unique, one per vertex")
            object.__setattr__(self, "labels", labels)
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for (u, v), length in self.edges.items():
            adj[u].append((v, length))
            adj[v].append((u, length))
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    # Construction helpers -------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence],
        *,
        name: str | None = None,
        coords: Sequence[Coord] | None = None,
        labels: Sequence[str] | None = None,
    ) -> WeightedGraph:
        """Build from ``(u, v)`` or ``(u, v, length)`` items; length defaults to 1."""
        table: dict[Edge, LengthLike] = {}
        for item in edges:
            if len(item) == 2:
                u, v = item
                length: LengthLike = 1
            else:
                u, v, length = item
            key = (min(u, v), max(u, v))
            if key in table:
                raise GraphError(f"duplicate edge {key}")
            table[(u, v)] = length
        return cls(
            n,
            table,
            name=name,
            coords=tuple(coords) if coords is not None else None,
            labels=tuple(labels) if labels is not None else None,
        )

    def with_name(self, name: str | None) -> WeightedGraph:
        return WeightedGraph(self.n, self.edges, name=name, coords=self.coords, labels=self.labels)

    def relabel_lengths(self, lengths: Mapping[Edge, LengthLike]) -> WeightedGraph:
        """Same topology, new edge lengths (missing edges keep theirs)."""
        new = {e: lengths.get(e, l) for e, l in self.edges.items()}
        return WeightedGraph(self.n, new, name=self.name, coords=self.coords, labels=self.labels)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[WeightedGraph, list[int]]:
        """Induced subgraph on ``vertices`` (re-indexed ascending) and the old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = {
            (index[u], index[v]): l
            for (u, v), l in self.edges.items()
            if u in index and v in index
        }
        coords = tuple(self.coords[v] for v in keep) if self.coords else None
        labels = tuple(self.labels[v] for v in keep) if self.labels else None
        return WeightedGraph(len(keep), edges, name=self.name, coords=coords, labels=labels), keep

    # Basic queries ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, u: int) -> tuple[tuple[int, Fraction], ...]:
        """``(v, length)`` pairs in ascending ``v``."""
        return self._adj[u]

    def neighbor_ids(self, u: int) -> list[int]:
        return [v for v, _ in self._adj[u]]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def length(self, u: int, v: int) -> Fraction:
        return self.edges[(min(u, v), max(u, v))]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def index(self, label: str | int) -> int:
        """Vertex id from a display label (falls back to integer ids)."""
        if self.labels is not None and str(label) in self.labels:
            return self.labels.index(str(label))
        try:
            v = int(label)
        except (TypeError, ValueError):
            raise GraphError(f"unknown vertex {label!r}") from None
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range [0, {self.n})")
        return v

    @property
    def min_length(self) -> Fraction:
        if not self.edges:
            raise GraphError("graph has no edges")
        return min(self.edges.values())

    @property
    def max_length(self) -> Fraction:
        if not self.edges:
            raise GraphError("graph has no edges")
        return max(self.edges.values())

    @property
    def is_uniform(self) -> bool:
        """All edge lengths equal to 1."""
        return all(l == 1 for l in self.edges.values())

    @property
    def average_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(2 * self.m, self.n)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for v, _ in self._adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            out.append(sorted(comp))
        return out

    @property
    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    @property
    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (self.n, self.edges, self.coords, self.labels) == (
            other.n,
            other.edges,
            other.coords,
            other.labels,
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.edges.items())))

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<WeightedGraph{tag} n={self.n} m={self.m}>"

    # Integer view ----------------------------------------------------------

    @cached_property
    def scale(self) -> int:
        """LCM of all edge-length denominators."""
        s = 1
        for l in self.edges.values():
            s = s * l.denominator // math.gcd(s, l.denominator)
        return s

    @cached_property
    def int_adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        s = self.scale
        return tuple(
            tuple((v, int(l * s)) for v, l in nbrs) for nbrs in self._adj
        )


def require_connected(g: WeightedGraph) -> None:
    if not g.is_connected:
        raise DisconnectedGraphError(f"{g!r} is not connected")


# Shortest paths -------------------------------------------------------------


def _dijkstra(
    adj: Sequence[Sequence[tuple[int, int]]],
    sources: Iterable[int],
    banned: int | None = None,
) -> list[float | int]:
    """Multi-source Dijkstra on integer lengths; ``banned`` is never entered."""
    n = len(adj)
    dist: list[float | int] = [INF] * n
    heap = []
    for s in sources:
        if s != banned and dist[s] != 0:
            dist[s] = 0
            heap.append((0, s))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            if v == banned:
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs shortest-path distances.

    ``scaled`` holds integer distances multiplied by ``scale`` (``inf`` across
    components); indexing with ``dm[i, j]`` returns the exact ``Length``.
    """

    scaled: tuple[tuple[float | int, ...], ...]
    scale: int

    @property
    def n(self) -> int:
        return len(self.scaled)

    def __getitem__(self, ij: tuple[int, int]) -> Length:
        i, j = ij
        return _unscale(self.scaled[i][j], self.scale)

    def row(self, i: int) -> list[Length]:
        return [_unscale(x, self.scale) for x in self.scaled[i]]

    def to_lists(self) -> list[list[Length]]:
        return [self.row(i) for i in range(self.n)]

    def unscale(self, value: int | float) -> Length:
        return _unscale(value, self.scale)

    def distance_set(self) -> list[Fraction]:
        """Sorted distinct finite distances (always contains 0 when n > 0)."""
        vals = {x for row in self.scaled for x in row if x != INF}
        return [Fraction(int(x), self.scale) for x in sorted(vals)]

    def scaled_distance_set(self) -> list[int]:
        return sorted({int(x) for row in self.scaled for x in row if x != INF})


def all_pairs_shortest(g: WeightedGraph) -> DistanceMatrix:
    """Exact shortest-path distances between every pair of vertices."""
    adj = g.int_adj
    rows = tuple(tuple(_dijkstra(adj, [s])) for s in range(g.n))
    return DistanceMatrix(rows, g.scale)


def distance_set(g: WeightedGraph) -> list[Fraction]:
    """The sorted set ``{d(x, y)}`` of finite pairwise distances."""
    return all_pairs_shortest(g).distance_set()


def distances_to_set(g: WeightedGraph, centers: Iterable[int]) -> list[Length]:
    """``d(v, C)`` for every vertex in the plain graph."""
    dist = _dijkstra(g.int_adj, _checked(g, centers))
    return [_unscale(x, g.scale) for x in dist]


def _checked(g: WeightedGraph, vertices: Iterable[int]) -> list[int]:
    out = sorted(set(vertices))
    for v in out:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise GraphError(f"vertex {v!r} out of range [0, {g.n})")
    return out


def scenario_scaled_distances(
    g: WeightedGraph, s: int, centers: Sequence[int]
) -> list[float | int]:
    """Integer-scaled ``d^s(j, C)`` for all ``j`` under fire at ``s``.

    For ``j != s`` no path may enter ``s``, so this is a multi-source search
    from ``C - {s}`` in ``G - s``. The entry for ``s`` itself is the best exit
    through one of its (outgoing) edges.
    """
    adj = g.int_adj
    dist = _dijkstra(adj, [c for c in centers if c != s], banned=s)
    if s in centers:
        dist[s] = 0
    else:
        dist[s] = min((w + dist[v] for v, w in adj[s]), default=INF)
    return dist


def distances_to_set_in_scenario(
    g: WeightedGraph, s: int, centers: Iterable[int]
) -> list[Length]:
    """``d^s(j, C)`` in the operational graph of scenario ``s``, for every ``j``.

    An empty center set gives ``inf`` everywhere.
    """
    if not 0 <= s < g.n:
        raise GraphError(f"scenario {s} out of range [0, {g.n})")
    dist = scenario_scaled_distances(g, s, _checked(g, centers))
    return [_unscale(x, g.scale) for x in dist]


# Derived graphs -------------------------------------------------------------


def metric_closure(g: WeightedGraph) -> WeightedGraph:
    """Complete graph on ``V`` whose edge lengths are the distances of ``g``."""
    require_connected(g)
    dm = all_pairs_shortest(g)
    edges = {(i, j): dm[i, j] for i in range(g.n) for j in range(i + 1, g.n)}
    return WeightedGraph(g.n, edges, name=g.name, labels=g.labels)


def threshold_graph(k: WeightedGraph, d: LengthLike) -> WeightedGraph:
    """Unit-length graph keeping the edges of ``k`` no longer than ``d``."""
    limit = as_length(d)
    edges = {e: Fraction(1) for e, l in k.edges.items() if l <= limit}
    return WeightedGraph(k.n, edges, name=k.name, labels=k.labels)


def threshold_from_distances(dm: DistanceMatrix, d: LengthLike) -> WeightedGraph:
    """:func:`threshold_graph` of the metric closure, read off a distance matrix."""
    limit = as_length(d) * dm.scale
    n = dm.n
    edges = {
        (i, j): Fraction(1)
        for i in range(n)
        for j in range(i + 1, n)
        if dm.scaled[i][j] <= limit
    }
    return WeightedGraph(n, edges)


def expand_with_paths(
    g: WeightedGraph, f: int
) -> tuple[WeightedGraph, dict[Edge, list[int]]]:
    """``f``-expansion plus, for each original edge ``(u, v)`` with ``u < v``,
    the vertex sequence of its subdivided path from ``u`` to ``v``."""
    if not isinstance(f, int) or f < 1:
        raise GraphError(f"expansion factor must be a positive int, got {f!r}")
    if not g.is_uniform:
        raise GraphError("f-expansion needs a uniform graph")
    coords = list(g.coords) if g.coords is not None else None
    if coords is not None:
        coords = [(r * f, c * f) for r, c in coords]
        for u, v in g.edges:
            (r1, c1), (r2, c2) = g.coords[u], g.coords[v]
            if abs(r1 - r2) + abs(c1 - c2) != 1:
                raise GraphError(f"edge {(u, v)} is not a unit grid step")
    nxt = g.n
    new_edges: dict[Edge, int] = {}
    paths: dict[Edge, list[int]] = {}
    for u, v in g.edges:
        seq = [u]
        for step in range(1, f):
            seq.append(nxt)
            if coords is not None:
                (r1, c1), (r2, c2) = g.coords[u], g.coords[v]
                coords.append((r1 * f + step * (r2 - r1), c1 * f + step * (c2 - c1)))
            nxt += 1
        seq.append(v)
        for a, b in zip(seq, seq[1:]):
            new_edges[(a, b)] = 1
        paths[(u, v)] = seq
    labels = None
    if g.labels is not None:
        labels = list(g.labels) + [f"~{i}" for i in range(g.n, nxt)]
    out = WeightedGraph(
        nxt,
        new_edges,
        name=g.name,
        coords=tuple(coords) if coords is not None else None,
        labels=tuple(labels) if labels is not None else None,
    )
    return out, paths


def f_expansion(g: WeightedGraph, f: int) -> WeightedGraph:
    """Subdivide every edge of a uniform graph into a path of ``f`` unit edges.

    Original ids are kept; inserted vertices get new ids edge by edge in
    sorted edge order, walking from the smaller endpoint. Coordinates, when
    present, are multiplied by ``f``.
    """
    return expand_with_paths(g, f)[0]


def subgrid_violations(g: WeightedGraph, *, induced: bool = True) -> list[str]:
    """Reasons why ``g`` is not a (partial or induced) subgrid of its coords.

    Every edge must be a unit grid step and cells must be distinct; for an
    induced subgrid, every pair of grid-adjacent vertices must be joined.
    """
    if g.coords is None:
        return ["graph has no coordinates"]
    problems = []
    where: dict[Coord, int] = {}
    for v, cell in enumerate(g.coords):
        if cell in where:
            problems.append(f"vertices {where[cell]} and {v} share cell {cell}")
        where.setdefault(cell, v)
    for u, v in g.edges:
        (r1, c1), (r2, c2) = g.coords[u], g.coords[v]
        if abs(r1 - r2) + abs(c1 - c2) != 1:
            problems.append(f"edge {(u, v)} is not a unit step")
    if induced:
        for (r, c), u in where.items():
            for cell in ((r + 1, c), (r, c + 1)):
                v = where.get(cell)
                if v is not None and not g.has_edge(u, v):
                    problems.append(f"adjacent cells of {u} and {v} are not joined")
    return problems
