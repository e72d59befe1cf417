"""Evacuation distances, scenario radii and the probabilistic radius.

Under scenario ``s`` the zone ``s`` is on fire: nobody may pass through it, and
people standing on ``s`` (without a shelter there) flee along one of its edges
without choosing well, so their distance is the worst exit rather than the
best one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import (
    INF,
    GraphError,
    Length,
    WeightedGraph,
    _checked,
    _dijkstra,
    _unscale,
    all_pairs_shortest,
    distances_to_set,
)


@dataclass(frozen=True)
class ScenarioReport:
    scenario: int
    distances: tuple[Length, ...]
    radius: Length
    argmax: int

    @property
    def finite(self) -> bool:
        return self.radius != INF


@dataclass(frozen=True)
class EvaluationReport:
    centers: tuple[int, ...]
    scenarios: tuple[ScenarioReport, ...]
    probabilistic_radius: Length
    radius: Length

    @property
    def feasible(self) -> bool:
        return self.probabilistic_radius != INF


def _scenario_scaled(g: WeightedGraph, centers: Sequence[int], s: int) -> list[float | int]:
    """Scaled evacuation distance of every vertex under scenario ``s``."""
    adj = g.int_adj
    cset = set(centers)
    dist = _dijkstra(adj, [c for c in centers if c != s], banned=s)
    for c in cset:
        dist[c] = 0
    if s not in cset:
        dist[s] = max((w + dist[v] for v, w in adj[s]), default=INF)
    return dist


def evac_distance(g: WeightedGraph, centers: Iterable[int], s: int, j: int) -> Length:
    """Evacuation distance ``r^s(C, j)`` of zone ``j`` when ``s`` burns."""
    cs = _checked(g, centers)
    _checked(g, [s, j])
    return _unscale(_scenario_scaled(g, cs, s)[j], g.scale)


def evac_radius(g: WeightedGraph, centers: Iterable[int], s: int) -> ScenarioReport:
    """Worst evacuation distance under scenario ``s`` (smallest id on ties)."""
    cs = _checked(g, centers)
    _checked(g, [s])
    dist = _scenario_scaled(g, cs, s)
    worst = max(dist)
    arg = dist.index(worst)
    return ScenarioReport(
        scenario=s,
        distances=tuple(_unscale(x, g.scale) for x in dist),
        radius=_unscale(worst, g.scale),
        argmax=arg,
    )


def probabilistic_radius(g: WeightedGraph, centers: Iterable[int]) -> EvaluationReport:
    """Average scenario radius over uniformly likely single-vertex fires.

    The result is an exact ``Fraction``, or ``inf`` as soon as one scenario
    leaves someone without a reachable shelter.
    """
    cs = _checked(g, centers)
    reports = tuple(evac_radius(g, cs, s) for s in range(g.n))
    if any(r.radius == INF for r in reports):
        expected: Length = INF
    else:
        expected = sum((r.radius for r in reports), Fraction(0)) / g.n
    return EvaluationReport(
        centers=tuple(cs),
        scenarios=reports,
        probabilistic_radius=expected,
        radius=radius(g, cs),
    )


def expected_radius(g: WeightedGraph, centers: Iterable[int]) -> Length:
    """Just the number from :func:`probabilistic_radius`."""
    return probabilistic_radius(g, centers).probabilistic_radius


def radius(g: WeightedGraph, centers: Iterable[int]) -> Length:
    """Deterministic radius ``max_v d(v, C)``; ``inf`` for no centers."""
    cs = _checked(g, centers)
    if not cs:
        return INF
    return max(distances_to_set(g, cs))


def partial_radius(g: WeightedGraph, centers: Iterable[int], targets: Iterable[int]) -> Length:
    """``max_{x in U} d(x, C)``, zero when ``U`` is empty."""
    us = _checked(g, targets)
    if not us:
        return Fraction(0)
    cs = _checked(g, centers)
    if not cs:
        return INF
    dist = distances_to_set(g, cs)
    return max(dist[x] for x in us)


class ScenarioTable:
    """Per-scenario distance tables for evaluating many center sets.

    Stores, for every fire location ``s``, all shortest distances in
    ``G - s``. Memory is cubic in ``n``; meant for the small instances the
    exhaustive solvers work on.
    """

    def __init__(self, g: WeightedGraph):
        self.graph = g
        self.scale = g.scale
        adj = g.int_adj
        self._cut = [
            [_dijkstra(adj, [k], banned=s) for k in range(g.n)] for s in range(g.n)
        ]
        self._adj = adj
        self.plain = all_pairs_shortest(g)

    def scenario_radius_scaled(self, centers: Sequence[int], s: int) -> float | int:
        cols = self._cut[s]
        others = [cols[k] for k in centers if k != s]
        if not others:
            return INF
        near = list(map(min, zip(*others))) if len(others) > 1 else list(others[0])
        for k in centers:
            near[k] = 0
        if s not in centers:
            near[s] = max((w + near[v] for v, w in self._adj[s]), default=INF)
        else:
            near[s] = 0
        return max(near)

    def total_scaled(self, centers: Sequence[int], stop_above: float | int = INF) -> float | int:
        """Sum of scaled scenario radii; returns ``inf`` once it exceeds ``stop_above``."""
        total = 0
        for s in range(self.graph.n):
            total += self.scenario_radius_scaled(centers, s)
            if total > stop_above:
                return INF
        return total

    def expected(self, centers: Iterable[int]) -> Length:
        cs = sorted(set(centers))
        total = self.total_scaled(cs)
        if total == INF:
            return INF
        return Fraction(int(total), self.scale * self.graph.n)

    def radius_scaled(self, centers: Sequence[int]) -> float | int:
        if not centers:
            return INF
        rows = self.plain.scaled
        return max(map(min, zip(*(rows[c] for c in centers))))

    def partial_radius_scaled(self, centers: Sequence[int], targets: Sequence[int]) -> float | int:
        if not targets:
            return 0
        if not centers:
            return INF
        rows = self.plain.scaled
        return max(min(rows[c][x] for c in centers) for x in targets)


def check_centers(g: WeightedGraph, centers: Iterable[int]) -> tuple[int, ...]:
    """Validate and normalise a center set (sorted, duplicates dropped)."""
    try:
        return tuple(_checked(g, centers))
    except TypeError as exc:
        raise GraphError(f"invalid center set: {exc}") from exc
