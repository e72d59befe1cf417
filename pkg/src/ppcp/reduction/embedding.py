"""Grid embeddings of small planar graphs.

An embedding places every vertex on a grid cell and draws every edge as a
path of unit grid steps; paths may only meet at their endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import networkx as nx

from ..graph import Coord, Edge, GraphError, WeightedGraph


class EmbeddingError(GraphError):
    """Invalid embedding, or none could be found."""


def _step(a: Coord, b: Coord) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


@dataclass(frozen=True, eq=False)
class GridEmbedding:
    """A base graph drawn on a ``rows x cols`` grid.

    ``paths[(u, v)]`` (with ``u < v``) is the cell sequence from ``u`` to
    ``v``, both endpoints included.
    """

    graph: WeightedGraph
    dims: tuple[int, int]
    coords: tuple[Coord, ...]
    paths: Mapping[Edge, tuple[Coord, ...]]

    def __post_init__(self) -> None:
        g = self.graph
        if not g.is_uniform:
            raise EmbeddingError("embedded graphs must be uniform")
        rows, cols = self.dims
        coords = tuple((int(r), int(c)) for r, c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != g.n or len(set(coords)) != g.n:
            raise EmbeddingError("need one distinct cell per vertex")
        inside = lambda cell: 0 <= cell[0] < rows and 0 <= cell[1] < cols  # noqa: E731
        if not all(inside(c) for c in coords):
            raise EmbeddingError("vertex cell outside the grid")
        paths = {}
        for key, raw in dict(self.paths).items():
            e = (min(key), max(key))
            seq = tuple((int(r), int(c)) for r, c in raw)
            if key != e:
                seq = seq[::-1]
            paths[e] = seq
        if set(paths) != set(g.edges):
            raise EmbeddingError("paths must be given for exactly the graph's edges")
        used: dict[Coord, Edge] = {}
        vertex_cells = set(coords)
        for (u, v), seq in sorted(paths.items()):
            if len(seq) < 2 or seq[0] != coords[u] or seq[-1] != coords[v]:
                raise EmbeddingError(f"path of {(u, v)} must run from {coords[u]} to {coords[v]}")
            for a, b in zip(seq, seq[1:]):
                if not _step(a, b):
                    raise EmbeddingError(f"path of {(u, v)} makes a non-unit step {a}->{b}")
            for cell in seq[1:-1]:
                if not inside(cell):
                    raise EmbeddingError(f"path of {(u, v)} leaves the grid at {cell}")
                if cell in vertex_cells:
                    raise EmbeddingError(f"path of {(u, v)} runs through a vertex cell {cell}")
                if cell in used:
                    raise EmbeddingError(f"paths {used[cell]} and {(u, v)} cross at {cell}")
                used[cell] = (u, v)
        object.__setattr__(self, "paths", dict(sorted(paths.items())))

    def path_length(self, e: Edge) -> int:
        return len(self.paths[(min(e), max(e))]) - 1

    def to_graph(self) -> tuple[WeightedGraph, dict[Edge, list[int]]]:
        """The embedded graph ``H`` and, per base edge, its vertex path in ``H``.

        ``H`` keeps the base ids and appends path cells edge by edge.
        """
        g = self.graph
        coords = list(self.coords)
        labels = [g.label(v) for v in g.vertices]
        edges = {}
        out_paths = {}
        for (u, v), seq in self.paths.items():
            ids = [u]
            for cell in seq[1:-1]:
                ids.append(len(coords))
                coords.append(cell)
                labels.append(f"{g.label(u)}{g.label(v)}~{len(ids) - 1}")
            ids.append(v)
            for a, b in zip(ids, ids[1:]):
                edges[(a, b)] = 1
            out_paths[(u, v)] = ids
        h = WeightedGraph(len(coords), edges, name=g.name, coords=tuple(coords), labels=tuple(labels))
        return h, out_paths


def embed_tiny_planar(g: WeightedGraph, *, max_side: int = 6) -> GridEmbedding:
    """Find a grid embedding by exhaustive search (at most 6 vertices).

    Grids are tried by increasing area. Vertices are placed one at a time and
    each edge to an already placed neighbour is routed immediately, by
    depth-first search over simple paths through free cells.
    """
    if g.n > 6:
        raise EmbeddingError("exhaustive embedding is limited to 6 vertices")
    if not g.is_uniform:
        raise EmbeddingError("embedded graphs must be uniform")
    if any(g.degree(v) > 4 for v in g.vertices):
        raise EmbeddingError("grid embeddings need maximum degree 4")
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges)
    planar, _ = nx.check_planarity(nxg)
    if not planar:
        raise EmbeddingError(f"{g!r} is not planar")
    if g.n == 0:
        return GridEmbedding(g, (0, 0), (), {})
    order = _placement_order(g)
    shapes = sorted(
        ((r, c) for r in range(1, max_side + 1) for c in range(r, max_side + 1)),
        key=lambda rc: (rc[0] * rc[1], rc[0]),
    )
    for rows, cols in shapes:
        if rows * cols < g.n:
            continue
        found = _search(g, order, rows, cols)
        if found is not None:
            coords, paths = found
            return GridEmbedding(g, (rows, cols), coords, paths)
    raise EmbeddingError(f"no embedding of {g!r} within {max_side}x{max_side}")


def _placement_order(g: WeightedGraph) -> list[int]:
    start = max(g.vertices, key=lambda v: (g.degree(v), -v))
    order, seen = [start], {start}
    while len(order) < g.n:
        nxt = max(
            (v for v in g.vertices if v not in seen),
            key=lambda v: (sum(w in seen for w in g.neighbor_ids(v)), g.degree(v), -v),
        )
        order.append(nxt)
        seen.add(nxt)
    return order


def _search(g: WeightedGraph, order: Sequence[int], rows: int, cols: int):
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    cell_deg = {
        cell: sum(
            0 <= cell[0] + dr < rows and 0 <= cell[1] + dc < cols
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1))
        )
        for cell in cells
    }
    limit = rows * cols
    pos: dict[int, Coord] = {}
    occupied: set[Coord] = set()
    paths: dict[Edge, tuple[Coord, ...]] = {}

    def free_around(cell: Coord) -> int:
        r, c = cell
        return sum(
            (r + dr, c + dc) not in occupied
            and 0 <= r + dr < rows
            and 0 <= c + dc < cols
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1))
        )

    def routes(a: Coord, b: Coord):
        stack = [(a, [a])]
        while stack:
            cur, seq = stack.pop()
            r, c = cur
            for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                nxt = (r + dr, c + dc)
                if not (0 <= nxt[0] < rows and 0 <= nxt[1] < cols):
                    continue
                if nxt == b:
                    yield seq + [b]
                    continue
                if nxt in occupied or nxt in seq or len(seq) >= limit:
                    continue
                stack.append((nxt, seq + [nxt]))

    def route_all(pending: list[Edge], k: int) -> bool:
        if not pending:
            return place(k + 1)
        (u, v), rest = pending[0], pending[1:]
        for seq in routes(pos[u], pos[v]):
            inner = seq[1:-1]
            occupied.update(inner)
            paths[(min(u, v), max(u, v))] = tuple(seq) if u < v else tuple(reversed(seq))
            if route_all(rest, k):
                return True
            del paths[(min(u, v), max(u, v))]
            occupied.difference_update(inner)
        return False

    def place(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for cell in cells:
            if cell in occupied or cell_deg[cell] < g.degree(v):
                continue
            if k == 0 and (cell[0] > (rows - 1) // 2 or cell[1] > (cols - 1) // 2):
                continue  # mirror symmetry
            pos[v] = cell
            occupied.add(cell)
            pending = [(v, w) for w in g.neighbor_ids(v) if w in pos and w != v]
            ok = all(
                free_around(pos[x]) >= sum(1 for y in g.neighbor_ids(x) if y not in pos)
                for x in pos
            )
            if ok and route_all(pending, k):
                return True
            occupied.discard(cell)
            del pos[v]
        return False

    if place(0):
        return tuple(pos[v] for v in g.vertices), dict(paths)
    return None
