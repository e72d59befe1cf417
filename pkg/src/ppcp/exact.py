"""Exhaustive and branch-and-bound solvers used as ground truth in tests.

Every solver refuses instances above a size guard unless called with
``override=True`` or with ``PPCP_GUARD_OVERRIDE=1`` in the environment.
Subsets are scanned in lexicographic order of their sorted tuples and only a
strict improvement replaces the incumbent, so the reported optimum is always
the lexicographically smallest one.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .evacuation import ScenarioTable
from .feasibility import hits_all_macs, mac_decomposition
from .graph import INF, GraphError, Length, WeightedGraph, _checked, all_pairs_shortest, require_connected


class GuardExceeded(RuntimeError):
    """The instance is larger than the exhaustive solver is allowed to take."""


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SolveReport:
    value: Length | int
    solution: tuple[int, ...]
    explored: int
    status: Status

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def guard_override_enabled() -> bool:
    return os.environ.get("PPCP_GUARD_OVERRIDE", "") == "1"


def _guard(what: str, size: int, limit: int, override: bool) -> None:
    if size > limit and not (override or guard_override_enabled()):
        raise GuardExceeded(
            f"{what}: size {size} exceeds the guard {limit} "
            f"(pass override=True or set PPCP_GUARD_OVERRIDE=1)"
        )


def _infeasible(explored: int = 0) -> SolveReport:
    return SolveReport(INF, (), explored, Status.INFEASIBLE)


def _lex_subsets(n: int, sizes: Iterable[int]) -> list[tuple[int, ...]]:
    subsets = [c for k in sizes for c in combinations(range(n), k)]
    subsets.sort()
    return subsets


def solve_ppcp_exact(
    g: WeightedGraph,
    p: int,
    *,
    max_n: int = 16,
    max_p: int = 5,
    override: bool = False,
) -> SolveReport:
    """Minimum probabilistic radius over all feasible sets of at most ``p`` centers."""
    require_connected(g)
    if g.n < 2:
        raise GraphError("need at least two vertices")
    decomp = mac_decomposition(g)
    if p < decomp.min_feasible_p:
        return _infeasible()
    p = min(p, g.n)
    _guard("solve_ppcp_exact vertices", g.n, max_n, override)
    _guard("solve_ppcp_exact centers", p, max_p, override)
    table = ScenarioTable(g)
    best_total: float | int = INF
    best: tuple[int, ...] = ()
    explored = 0
    for c in _lex_subsets(g.n, range(2, p + 1)):
        if hits_all_macs(decomp, c) is not None:
            continue
        explored += 1
        total = table.total_scaled(c, stop_above=best_total - 1)
        if total < best_total:
            best_total, best = total, c
    value = Fraction(int(best_total), g.scale * g.n)
    return SolveReport(value, best, explored, Status.OPTIMAL)


def _best_radius(
    g: WeightedGraph,
    candidates: Iterable[tuple[int, ...]],
    targets: Sequence[int] | None = None,
) -> tuple[float | int, tuple[int, ...], int]:
    rows = all_pairs_shortest(g).scaled
    cols = [rows[x] for x in range(g.n)]
    best: float | int = INF
    arg: tuple[int, ...] = ()
    explored = 0
    tset = range(g.n) if targets is None else targets
    for c in candidates:
        explored += 1
        if not c:
            val = 0 if not tset else INF
        else:
            near = map(min, zip(*(cols[k] for k in c)))
            if targets is None:
                val = max(near)
            else:
                near = list(near)
                val = max((near[x] for x in targets), default=0)
        if val < best:
            best, arg = val, c
    return best, arg, explored


def solve_pcenter_exact(
    g: WeightedGraph, p: int, *, max_n: int = 16, override: bool = False
) -> SolveReport:
    """Minimum radius over all nonempty sets of at most ``p`` centers."""
    require_connected(g)
    if p < 1 or g.n == 0:
        return _infeasible()
    p = min(p, g.n)
    _guard("solve_pcenter_exact vertices", g.n, max_n, override)
    best, arg, explored = _best_radius(g, _lex_subsets(g.n, range(1, p + 1)))
    return SolveReport(Fraction(int(best), g.scale), arg, explored, Status.OPTIMAL)


def solve_mac_pcenter_exact(
    g: WeightedGraph, p: int, *, max_n: int = 16, override: bool = False
) -> SolveReport:
    """Minimum radius over feasible sets (at least two centers, one per MAC)."""
    require_connected(g)
    if g.n < 2:
        raise GraphError("need at least two vertices")
    decomp = mac_decomposition(g)
    if p < decomp.min_feasible_p:
        return _infeasible()
    p = min(p, g.n)
    _guard("solve_mac_pcenter_exact vertices", g.n, max_n, override)
    candidates = (
        c for c in _lex_subsets(g.n, range(2, p + 1)) if hits_all_macs(decomp, c) is None
    )
    best, arg, explored = _best_radius(g, candidates)
    return SolveReport(Fraction(int(best), g.scale), arg, explored, Status.OPTIMAL)


def solve_partial_pcenter_exact(
    g: WeightedGraph,
    targets: Iterable[int],
    p: int,
    *,
    max_n: int = 16,
    override: bool = False,
) -> SolveReport:
    """Minimum partial radius on ``targets``; centers may be any vertex."""
    us = _checked(g, targets)
    if not us:
        return SolveReport(Fraction(0), (), 1, Status.OPTIMAL)
    require_connected(g)
    if p < 1:
        return _infeasible()
    p = min(p, g.n)
    _guard("solve_partial_pcenter_exact vertices", g.n, max_n, override)
    best, arg, explored = _best_radius(g, _lex_subsets(g.n, range(1, p + 1)), us)
    return SolveReport(Fraction(int(best), g.scale), arg, explored, Status.OPTIMAL)


# Vertex cover ---------------------------------------------------------------


def _is_cover(g: WeightedGraph, cover: set[int]) -> bool:
    return all(u in cover or v in cover for u, v in g.edges)


def min_vertex_cover(g: WeightedGraph, *, max_n: int = 40, override: bool = False) -> SolveReport:
    """Minimum vertex cover by branch and bound.

    Pendant vertices are resolved by taking their neighbour; otherwise the
    search branches on a maximum-degree vertex ``v``: either ``v`` is in the
    cover or all of its neighbours are.
    """
    _guard("min_vertex_cover vertices", g.n, max_n, override)
    adj = {v: set(g.neighbor_ids(v)) for v in g.vertices if g.degree(v)}
    best = _greedy_cover(adj)
    explored = 0

    def take(adj: dict[int, set[int]], vs: Iterable[int]) -> dict[int, set[int]]:
        adj = {u: set(n) for u, n in adj.items()}
        for v in vs:
            for w in adj.pop(v, ()):
                if w in adj:
                    adj[w].discard(v)
                    if not adj[w]:
                        del adj[w]
        return adj

    def rec(adj: dict[int, set[int]], chosen: frozenset[int]) -> None:
        nonlocal best, explored
        explored += 1
        while True:
            pend = next((u for u in sorted(adj) if len(adj[u]) == 1), None)
            if pend is None:
                break
            (w,) = adj[pend]
            chosen = chosen | {w}
            adj = take(adj, [w])
        if len(chosen) >= len(best):
            return
        if not adj:
            best = set(chosen)
            return
        edges = sum(len(s) for s in adj.values()) // 2
        top = max(len(s) for s in adj.values())
        if len(chosen) + math.ceil(edges / top) >= len(best):
            return
        v = max(sorted(adj), key=lambda u: len(adj[u]))
        rec(take(adj, [v]), chosen | {v})
        nbrs = sorted(adj[v])
        rec(take(adj, nbrs), chosen | set(nbrs))

    rec(adj, frozenset())
    assert _is_cover(g, best)
    return SolveReport(len(best), tuple(sorted(best)), explored, Status.OPTIMAL)


def _greedy_cover(adj: dict[int, set[int]]) -> set[int]:
    adj = {u: set(n) for u, n in adj.items()}
    cover: set[int] = set()
    while adj:
        v = max(sorted(adj), key=lambda u: len(adj[u]))
        cover.add(v)
        for w in adj.pop(v):
            adj[w].discard(v)
            if not adj[w]:
                del adj[w]
    return cover


# Domination -----------------------------------------------------------------


def _closed(g: WeightedGraph) -> list[frozenset[int]]:
    return [frozenset([v, *g.neighbor_ids(v)]) for v in g.vertices]


def is_dominating(g: WeightedGraph, d: Iterable[int]) -> bool:
    ds = set(d)
    return all(v in ds or not ds.isdisjoint(g.neighbor_ids(v)) for v in g.vertices)


def min_dominating_set(g: WeightedGraph, *, max_n: int = 60, override: bool = False) -> SolveReport:
    """Minimum dominating set by branch and bound.

    Branches on the closed neighbourhood of an undominated vertex with the
    fewest options; bounds with ``ceil(undominated / (maxdeg + 1))``.
    """
    _guard("min_dominating_set vertices", g.n, max_n, override)
    closed = _closed(g)
    reach = max((len(c) for c in closed), default=1)
    best = _greedy_dominating(g, closed)
    explored = 0

    def rec(chosen: list[int], undominated: frozenset[int]) -> None:
        nonlocal best, explored
        explored += 1
        if not undominated:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        if len(chosen) + math.ceil(len(undominated) / reach) >= len(best):
            return
        u = min(sorted(undominated), key=lambda x: len(closed[x]))
        options = sorted(closed[u], key=lambda w: (-len(closed[w] & undominated), w))
        for w in options:
            chosen.append(w)
            rec(chosen, undominated - closed[w])
            chosen.pop()

    rec([], frozenset(g.vertices))
    return SolveReport(len(best), tuple(sorted(best)), explored, Status.OPTIMAL)


def _greedy_dominating(g: WeightedGraph, closed: list[frozenset[int]]) -> list[int]:
    left = set(g.vertices)
    out = []
    while left:
        w = max(g.vertices, key=lambda v: (len(closed[v] & left), -v))
        out.append(w)
        left -= closed[w]
    return sorted(out)


def min_partial_dominating_set(
    g: WeightedGraph,
    targets: Iterable[int],
    *,
    max_n: int = 16,
    override: bool = False,
) -> SolveReport:
    """Smallest ``X`` such that every target is in ``X`` or adjacent to it.

    ``g`` is typically a threshold graph ``K_d``; enumeration by size.
    """
    us = _checked(g, targets)
    _guard("min_partial_dominating_set vertices", g.n, max_n, override)
    closed = _closed(g)
    explored = 0
    for k in range(0, g.n + 1):
        for x in combinations(range(g.n), k):
            explored += 1
            xs = set(x)
            if all(not xs.isdisjoint(closed[u]) for u in us):
                return SolveReport(k, x, explored, Status.OPTIMAL)
    return _infeasible(explored)  # only reachable for targets outside the graph


def max_strong_independent_set(
    g: WeightedGraph,
    targets: Iterable[int],
    *,
    max_n: int = 16,
    override: bool = False,
) -> SolveReport:
    """Largest ``S`` within the targets such that every closed neighbourhood
    meets ``S`` at most once.

    The constraint is hereditary, so enumeration stops at the first size with
    no feasible set.
    """
    us = _checked(g, targets)
    _guard("max_strong_independent_set vertices", g.n, max_n, override)
    closed = _closed(g)
    explored = 0
    best: tuple[int, ...] = ()
    for k in range(1, len(us) + 1):
        found = None
        for s in combinations(us, k):
            explored += 1
            ss = set(s)
            if all(len(ss & closed[v]) <= 1 for v in g.vertices):
                found = s
                break
        if found is None:
            break
        best = found
    return SolveReport(len(best), best, explored, Status.OPTIMAL)
