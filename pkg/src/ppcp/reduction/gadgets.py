"""Layouts of the two edge gadgets used to build ``F``.

Each layout lists internal vertices as ``name -> (along, perp)`` offsets from
the tail endpoint, in F grid units: ``along`` runs towards the head, ``perp``
towards the bump side. The edges list includes the two endpoint links, with
``"tail"`` and ``"head"`` standing for the endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..graph import WeightedGraph

T1_SPAN = 7
T2_SPAN = 14

# short gadget: replaces one unit edge of the expanded graph
T1_LAYOUT: dict[str, tuple[int, int]] = {
    "z1": (1, 0),
    "z2": (2, 0),
    "z3": (2, 1),
    "a": (2, 2),
    "b": (2, 3),
    "c": (3, 3),
    "d": (3, 2),
    "z4.1": (4, 3),
    "z4.2": (5, 3),
    "z4.3": (5, 2),
    "z4.4": (5, 1),
    "z5": (5, 0),
    "z6": (6, 0),
}
T1_EDGES: tuple[tuple[str, str], ...] = (
    ("tail", "z1"),
    ("z1", "z2"),
    ("z2", "z3"),
    ("z3", "a"),
    ("a", "b"),
    ("a", "d"),
    ("b", "c"),
    ("d", "c"),
    ("c", "z4.1"),
    ("z4.1", "z4.2"),
    ("z4.2", "z4.3"),
    ("z4.3", "z4.4"),
    ("z4.4", "z5"),
    ("z5", "z6"),
    ("z6", "head"),
)

# long gadget: replaces the first two unit edges of an oriented path; z7 is
# the contracted vertex
T2_LAYOUT: dict[str, tuple[int, int]] = {
    "z1": (1, 0),
    "z2": (2, 0),
    "z3": (3, 0),
    "a": (4, 0),
    "b": (5, 0),
    "c": (5, 1),
    "d": (4, 1),
    "z6.1": (6, 1),
    "z6.2": (7, 1),
    "z7": (7, 0),
    **{f"z{i}": (i, 0) for i in range(8, 14)},
}
T2_EDGES: tuple[tuple[str, str], ...] = (
    ("tail", "z1"),
    ("z1", "z2"),
    ("z2", "z3"),
    ("z3", "a"),
    ("a", "b"),
    ("a", "d"),
    ("b", "c"),
    ("d", "c"),
    ("c", "z6.1"),
    ("z6.1", "z6.2"),
    ("z6.2", "z7"),
    *((f"z{i}", f"z{i + 1}") for i in range(7, 13)),
    ("z13", "head"),
)

# vertices added to a dominating set, depending on which endpoint is in it
T1_WITH_TAIL = ("z3", "c", "z4.3", "z6")
T1_WITH_HEAD = ("z1", "a", "z4.1", "z4.4")
T2_WITH_TAIL = ("z3", "c", "z7", "z10", "z13")
T2_WITH_HEAD = ("z1", "a", "z6.1", "z8", "z11")


@dataclass(frozen=True)
class GadgetKind:
    name: str
    span: int
    layout: Mapping[str, tuple[int, int]]
    edges: tuple[tuple[str, str], ...]
    with_tail: tuple[str, ...]
    with_head: tuple[str, ...]


T1 = GadgetKind("T1", T1_SPAN, T1_LAYOUT, T1_EDGES, T1_WITH_TAIL, T1_WITH_HEAD)
T2 = GadgetKind("T2", T2_SPAN, T2_LAYOUT, T2_EDGES, T2_WITH_TAIL, T2_WITH_HEAD)
KINDS = {"T1": T1, "T2": T2}


def left_of(direction: tuple[int, int]) -> tuple[int, int]:
    """Unit vector to the left of travel, in ``(row, col)`` with rows going down."""
    dr, dc = direction
    return (-dc, dr)


def place(
    kind: GadgetKind, tail: tuple[int, int], direction: tuple[int, int], side: int
) -> dict[str, tuple[int, int]]:
    """Absolute cells of the internal vertices; ``side`` is +1 (left) or -1."""
    nr, nc = left_of(direction)
    dr, dc = direction
    return {
        name: (tail[0] + a * dr + p * side * nr, tail[1] + a * dc + p * side * nc)
        for name, (a, p) in kind.layout.items()
    }


def gadget_graph(kind: GadgetKind) -> tuple[WeightedGraph, list[str]]:
    """The gadget alone, endpoints included: ids 0 (tail), 1 (head), then internals.

    Returns ``(graph, names)`` with ``names[i]`` the name of vertex ``i``.
    """
    names = ["tail", "head", *kind.layout]
    index = {n: i for i, n in enumerate(names)}
    coords = [(0, 0), (0, kind.span)] + [(p, a) for a, p in kind.layout.values()]
    g = WeightedGraph.from_edges(
        len(names),
        [(index[a], index[b]) for a, b in kind.edges],
        name=f"gadget {kind.name}",
        coords=coords,
        labels=names,
    )
    return g, names
