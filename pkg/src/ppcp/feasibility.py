"""Articulation points, minimal articulation components and feasibility.

A center set has a finite probabilistic radius exactly when it holds at least
two centers and meets every minimal articulation component (MAC). The MACs
are the components of ``G`` minus its articulation points that touch a single
articulation point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .graph import DisconnectedGraphError, GraphError, WeightedGraph, _checked


def articulation_points(g: WeightedGraph) -> frozenset[int]:
    """Cut vertices of a connected graph (iterative DFS with low points)."""
    if not g.is_connected:
        raise DisconnectedGraphError(f"{g!r} is not connected")
    n = g.n
    if n <= 2:
        return frozenset()
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cut: set[int] = set()
    timer = 0
    root = 0
    root_children = 0
    disc[root] = low[root] = timer
    timer += 1
    stack = [(root, iter(g.neighbor_ids(root)))]
    while stack:
        u, it = stack[-1]
        advanced = False
        for v in it:
            if disc[v] == -1:
                parent[v] = u
                disc[v] = low[v] = timer
                timer += 1
                if u == root:
                    root_children += 1
                stack.append((v, iter(g.neighbor_ids(v))))
                advanced = True
                break
            if v != parent[u]:
                low[u] = min(low[u], disc[v])
        if advanced:
            continue
        stack.pop()
        p = parent[u]
        if p != -1:
            low[p] = min(low[p], low[u])
            if p != root and low[u] >= disc[p]:
                cut.add(p)
    if root_children > 1:
        cut.add(root)
    return frozenset(cut)


@dataclass(frozen=True)
class Mac:
    vertices: frozenset[int]
    articulation_point: int

    def __contains__(self, v: object) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class MacDecomposition:
    articulation_points: frozenset[int]
    macs: tuple[Mac, ...]

    @property
    def min_feasible_p(self) -> int:
        return max(2, len(self.macs))

    def mac_of(self, v: int) -> int | None:
        """Index of the MAC containing ``v``, if any."""
        for i, mac in enumerate(self.macs):
            if v in mac.vertices:
                return i
        return None


def mac_decomposition(g: WeightedGraph) -> MacDecomposition:
    """All MACs with their articulation points, ordered by smallest member."""
    if g.n < 2:
        raise GraphError("MAC decomposition needs at least two vertices")
    cut = articulation_points(g)
    if not cut:
        return MacDecomposition(frozenset(), ())
    seen = set(cut)
    macs = []
    for s in range(g.n):
        if s in seen:
            continue
        comp, touching, stack = [], set(), [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.neighbor_ids(u):
                if v in cut:
                    touching.add(v)
                elif v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(touching) == 1:
            macs.append(Mac(frozenset(comp), next(iter(touching))))
    macs.sort(key=lambda m: min(m.vertices))
    return MacDecomposition(cut, tuple(macs))


class Reason(enum.Enum):
    OK = "ok"
    TOO_FEW_CENTERS = "too-few-centers"
    TOO_MANY_CENTERS = "too-many-centers"
    MISSED_MAC = "missed-mac"


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    reason: Reason
    min_feasible_p: int
    missed_mac: int | None = None

    def __bool__(self) -> bool:
        return self.feasible


def hits_all_macs(decomp: MacDecomposition, centers: Iterable[int]) -> int | None:
    """Index of the first MAC missed by ``centers``, or ``None``."""
    cs = set(centers)
    for i, mac in enumerate(decomp.macs):
        if cs.isdisjoint(mac.vertices):
            return i
    return None


def is_feasible(
    g: WeightedGraph,
    centers: Iterable[int],
    p: int,
    decomp: MacDecomposition | None = None,
) -> FeasibilityVerdict:
    """Whether ``centers`` is a feasible solution with budget ``p``."""
    cs = _checked(g, centers)
    decomp = decomp or mac_decomposition(g)
    low = decomp.min_feasible_p
    if len(cs) > p:
        return FeasibilityVerdict(False, Reason.TOO_MANY_CENTERS, low)
    if len(cs) < 2:
        return FeasibilityVerdict(False, Reason.TOO_FEW_CENTERS, low)
    missed = hits_all_macs(decomp, cs)
    if missed is not None:
        return FeasibilityVerdict(False, Reason.MISSED_MAC, low, missed)
    return FeasibilityVerdict(True, Reason.OK, low)
