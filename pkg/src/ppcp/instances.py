"""Instance generators and the small graphs drawn in the figures.

Random generators take an integer seed and use their own
``random.Random``, so the same arguments always give the same graph.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from itertools import combinations

from .graph import GraphError, LengthLike, WeightedGraph, as_length
from .reduction.embedding import GridEmbedding, embed_tiny_planar


def _positive(name: str, value: int, least: int = 1) -> None:
    if not isinstance(value, int) or value < least:
        raise GraphError(f"{name} must be an integer >= {least}, got {value!r}")


def path(n: int) -> WeightedGraph:
    _positive("n", n)
    return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"p{n}")


def cycle(n: int) -> WeightedGraph:
    _positive("n", n, 3)
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"c{n}")


def complete(n: int) -> WeightedGraph:
    _positive("n", n)
    return WeightedGraph.from_edges(n, list(combinations(range(n), 2)), name=f"k{n}")


def star(leaves: int) -> WeightedGraph:
    _positive("leaves", leaves)
    return WeightedGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], name=f"star{leaves}")


def grid(n: int, m: int) -> WeightedGraph:
    """``n x m`` grid, vertex ``r * m + c`` at cell ``(r, c)``."""
    _positive("n", n)
    _positive("m", m)
    edges = []
    for r in range(n):
        for c in range(m):
            v = r * m + c
            if c + 1 < m:
                edges.append((v, v + 1))
            if r + 1 < n:
                edges.append((v, v + m))
    coords = [(r, c) for r in range(n) for c in range(m)]
    return WeightedGraph.from_edges(n * m, edges, name=f"grid{n}x{m}", coords=coords)


def random_lengths(g: WeightedGraph, seed: int, low: LengthLike = 1, steps: int = 4) -> WeightedGraph:
    """Same graph with lengths drawn from ``{low * (1 + i/steps) : 0 <= i <= steps}``,
    all within ``[low, 2 low]``."""
    rng = random.Random(seed)
    base = as_length(low)
    if base <= 0:
        raise GraphError("low must be positive")
    return g.relabel_lengths({e: base * Fraction(steps + rng.randint(0, steps), steps) for e in g.edges})


def tree_random(n: int, seed: int) -> WeightedGraph:
    """Uniform tree where vertex ``i`` hangs below a random earlier vertex."""
    _positive("n", n)
    rng = random.Random(seed)
    return WeightedGraph.from_edges(
        n, [(rng.randrange(i), i) for i in range(1, n)], name=f"tree{n}-s{seed}"
    )


def connected_random(n: int, m: int, seed: int) -> WeightedGraph:
    """Uniform connected graph with ``m`` edges (clipped to ``[n-1, n(n-1)/2]``)."""
    _positive("n", n)
    rng = random.Random(seed)
    m = max(n - 1, min(m, n * (n - 1) // 2))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[rng.randrange(i)], perm[i]))) for i in range(1, n)}
    rest = [e for e in combinations(range(n), 2) if e not in edges]
    rng.shuffle(rest)
    edges.update(rest[: m - len(edges)])
    return WeightedGraph.from_edges(n, sorted(edges), name=f"rand{n}-{m}-s{seed}")


def _induced_grid(cells: list[tuple[int, int]], name: str) -> WeightedGraph:
    cells = sorted(cells)
    index = {cell: i for i, cell in enumerate(cells)}
    edges = []
    for (r, c), i in index.items():
        for nb in ((r + 1, c), (r, c + 1)):
            if nb in index:
                edges.append((i, index[nb]))
    return WeightedGraph.from_edges(len(cells), edges, name=name, coords=cells)


def _largest_component(g: WeightedGraph) -> WeightedGraph:
    comps = g.components()
    if not comps:
        return g
    best = max(comps, key=lambda c: (len(c), [-v for v in c]))
    return g.induced_subgraph(best)[0]


def subgrid_random(n: int, m: int, density: float, seed: int) -> WeightedGraph:
    """Largest component of the subgrid induced by a random set of cells."""
    _positive("n", n)
    _positive("m", m)
    if not 0 < density <= 1:
        raise GraphError("density must lie in (0, 1]")
    rng = random.Random(seed)
    cells = [(r, c) for r in range(n) for c in range(m) if rng.random() < density]
    if not cells:
        cells = [(rng.randrange(n), rng.randrange(m))]
    g = _induced_grid(cells, f"subgrid{n}x{m}-s{seed}")
    return _largest_component(g)


def prune_to_degrees_2_3(g: WeightedGraph) -> WeightedGraph | None:
    """Strip vertices of degree 4 or below 2 until the largest component has
    all degrees in ``{2, 3}``; ``None`` if nothing survives."""
    while True:
        g = _largest_component(g)
        if g.n < 3:
            return None
        drop = [v for v in g.vertices if not 2 <= g.degree(v) <= 3]
        if not drop:
            return g
        g = g.induced_subgraph([v for v in g.vertices if v not in set(drop)])[0]


def subgrid_degrees_2_3(n: int, m: int, density: float, seed: int) -> WeightedGraph | None:
    """Random induced subgrid with all degrees in ``{2, 3}`` (or ``None``)."""
    g = subgrid_random(n, m, density, seed)
    out = prune_to_degrees_2_3(g)
    return out.with_name(g.name) if out is not None else None


# Fixtures -------------------------------------------------------------------


def _labelled(labels: list[str], edges, name: str) -> WeightedGraph:
    index = {x: i for i, x in enumerate(labels)}
    items = [(index[u], index[v], l) for u, v, l in edges]
    return WeightedGraph.from_edges(len(labels), items, name=name, labels=labels)


def fig1_star() -> WeightedGraph:
    """Spider with three legs of two unit edges: x is the best single center."""
    edges = [("x", "a", 1), ("a", "b", 1), ("x", "c", 1), ("c", "d", 1), ("x", "e", 1), ("e", "f", 1)]
    return _labelled(list("xabcdef"), edges, "fig1")


FIG2_EDGES = (
    (2, 1, 1), (2, 3, 2), (2, 7, 3), (1, 6, 4), (3, 4, 3), (3, 8, 6),
    (4, 5, 1), (5, 9, 8), (6, 7, 8), (6, 10, 4), (7, 8, 5), (7, 11, 5),
    (8, 12, 6), (9, 14, 1), (10, 11, 4), (12, 13, 3), (13, 14, 2),
)  # fmt: skip


def fig2_graph() -> WeightedGraph:
    """The 14-zone weighted landscape; labels ``"1"``..``"14"``, id = label - 1."""
    labels = [str(i) for i in range(1, 15)]
    return _labelled(labels, [(str(u), str(v), l) for u, v, l in FIG2_EDGES], "fig2")


def fig7_caterpillar(z: LengthLike = 4) -> WeightedGraph:
    """Spine x - y - z with edges of length ``z``, one unit leaf on each."""
    z = as_length(z)
    edges = [("x", "y", z), ("y", "z", z), ("a", "x", 1), ("b", "y", 1), ("c", "z", 1)]
    return _labelled(["x", "y", "z", "a", "b", "c"], edges, f"fig7[{z}]")


def fig8_path(z: LengthLike = 4) -> WeightedGraph:
    """Path 1..8 with unit edges except the middle edge 4-5 of length ``z``."""
    z = as_length(z)
    edges = [(str(i), str(i + 1), z if i == 4 else 1) for i in range(1, 8)]
    return _labelled([str(i) for i in range(1, 9)], edges, f"fig8[{z}]")


def fig4_k4_embedding() -> GridEmbedding:
    """K4 on a, b, c, d drawn in a 3 x 3 grid; ad and cd bend once, ac three times."""
    k4 = WeightedGraph.from_edges(
        4, list(combinations(range(4), 2)), name="fig4", labels=["a", "b", "c", "d"]
    )
    a, b, c, d = (0, 1), (1, 1), (2, 1), (1, 0)
    paths = {
        (0, 1): [a, b],
        (1, 2): [b, c],
        (1, 3): [b, d],
        (0, 3): [a, (0, 0), d],
        (2, 3): [c, (2, 0), d],
        (0, 2): [a, (0, 2), (1, 2), (2, 2), c],
    }
    return GridEmbedding(k4, (3, 3), [a, b, c, d], paths)


def c4_embedding() -> GridEmbedding:
    """The 4-cycle as a unit square."""
    c4 = cycle(4)
    coords = [(0, 0), (0, 1), (1, 1), (1, 0)]
    paths = {(0, 1): [coords[0], coords[1]], (1, 2): [coords[1], coords[2]],
             (2, 3): [coords[2], coords[3]], (0, 3): [coords[0], coords[3]]}  # fmt: skip
    return GridEmbedding(c4, (2, 2), coords, paths)


# Names accepted on the command line -----------------------------------------

_SIZED = re.compile(r"^(p|c|k|star)(\d+)$")
_GRID = re.compile(r"^grid(\d+)x(\d+)$")
_FIG = re.compile(r"^(fig7|fig8)(?:[:\[](\d+(?:/\d+)?)\]?)?$")


def builtin_graph(name: str) -> WeightedGraph | None:
    """Graph for a built-in name such as ``fig2``, ``fig8:7/2``, ``p5`` or
    ``grid3x4``; ``None`` if the name is not built in."""
    key = name.strip().lower()
    if key == "fig1":
        return fig1_star()
    if key == "fig2":
        return fig2_graph()
    m = _FIG.match(key)
    if m:
        z = Fraction(m.group(2)) if m.group(2) else Fraction(4)
        return fig7_caterpillar(z) if m.group(1) == "fig7" else fig8_path(z)
    m = _SIZED.match(key)
    if m:
        kind, size = m.group(1), int(m.group(2))
        return {"p": path, "c": cycle, "k": complete, "star": star}[kind](size)
    m = _GRID.match(key)
    if m:
        return grid(int(m.group(1)), int(m.group(2)))
    return None


def builtin_embedding(name: str) -> GridEmbedding | None:
    """Embedding for ``fig4``/``c4``; other tiny built-in graphs are embedded by search."""
    key = name.strip().lower()
    if key == "fig4":
        return fig4_k4_embedding()
    if key == "c4":
        return c4_embedding()
    g = builtin_graph(key)
    if g is None:
        return None
    return embed_tiny_planar(g)
