"""Approximation algorithms and the polynomial tree solvers.

All candidate radii are taken from the distance set ``SL`` (every pairwise
distance, including 0). Every free choice is resolved towards the smallest
vertex id, which keeps the traces reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .evacuation import expected_radius
from .exact import SolveReport, Status
from .feasibility import mac_decomposition
from .graph import (
    INF,
    GraphError,
    Length,
    WeightedGraph,
    _checked,
    _unscale,
    all_pairs_shortest,
    require_connected,
)


class LengthRangeError(GraphError):
    """Edge lengths leave the ``[l, 2l]`` band the ratio guarantee needs."""


@dataclass(frozen=True)
class TraceStep:
    d: Fraction
    accepted: bool
    size: int
    radius: Length
    seeds_in_candidates: bool = True
    seeds_separated: bool = True
    centers: tuple[int, ...] = ()


@dataclass(frozen=True)
class ApproxReport:
    solution: tuple[int, ...]
    value: Length
    certified_bound: Length
    trace: tuple[TraceStep, ...] = ()
    status: Status = Status.OPTIMAL
    lower_bound: Length = Fraction(0)
    radius: Length | None = None
    ratio_bound: Fraction | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


def _infeasible() -> ApproxReport:
    return ApproxReport((), INF, INF, status=Status.INFEASIBLE, lower_bound=INF)


def greedy_maximal_independent_set(
    h: WeightedGraph, seed: Iterable[int] = (), candidates: Iterable[int] | None = None
) -> tuple[int, ...]:
    """Grow ``seed`` into a maximal independent set over ``candidates``.

    Candidates are scanned in ascending id; a vertex joins when it has no
    neighbour in the set built so far.
    """
    chosen = set(_checked(h, seed))
    for u in chosen:
        if any(v in chosen for v in h.neighbor_ids(u)):
            raise GraphError(f"seed is not independent (vertex {u})")
    pool = h.vertices if candidates is None else _checked(h, candidates)
    for v in pool:
        if v not in chosen and chosen.isdisjoint(h.neighbor_ids(v)):
            chosen.add(v)
    return tuple(sorted(chosen))


def _spread(rows, pool: Sequence[int], limit: int, seed: Sequence[int] = ()) -> list[int]:
    """Greedy maximal set of ``pool`` vertices pairwise farther than ``limit``."""
    chosen = list(seed)
    near = [INF] * len(rows)
    for s in chosen:
        near = [min(a, b) for a, b in zip(near, rows[s])]
    for v in pool:
        if near[v] > limit:
            chosen.append(v)
            near = [min(a, b) for a, b in zip(near, rows[v])]
    return chosen


def _cover_radius(rows, centers: Sequence[int], targets: Iterable[int]) -> float | int:
    if not centers:
        return INF
    return max((min(rows[c][x] for c in centers) for x in targets), default=0)


def approx_partial_pcenter(g: WeightedGraph, targets: Iterable[int], p: int) -> ApproxReport:
    """2-approximation for the partial p-center on ``targets``.

    For each ``d`` the candidate is a greedy maximal independent set of the
    targets in the threshold graph at ``min(2d, d_max)``; the best candidate
    with at most ``p`` vertices wins. Centers are always targets.
    """
    us = _checked(g, targets)
    if not us:
        return ApproxReport((), Fraction(0), Fraction(0))
    require_connected(g)
    if p < 1:
        return _infeasible()
    dm = all_pairs_shortest(g)
    rows, scale = dm.scaled, dm.scale
    levels = dm.scaled_distance_set()
    d_max = levels[-1]
    trace = []
    best = None
    d_low = None
    for d in levels:
        s = _spread(rows, us, min(2 * d, d_max))
        ok = len(s) <= p
        r = _cover_radius(rows, s, us)
        step = TraceStep(Fraction(d, scale), ok, len(s), _unscale(r, scale), centers=tuple(sorted(s)))
        trace.append(step)
        if ok:
            if d_low is None:
                d_low = d
            if best is None or r < best[0]:
                best = (r, s)
    if best is None:  # unreachable: d = d_max always gives a single vertex
        raise RuntimeError("no threshold accepted")
    r, s = best
    return ApproxReport(
        solution=tuple(sorted(s)),
        value=_unscale(r, scale),
        certified_bound=Fraction(2 * d_low, scale),
        trace=tuple(trace),
        lower_bound=Fraction(d_low, scale),
    )


def approx_mac_pcenter(g: WeightedGraph, p: int) -> ApproxReport:
    """2-approximation for the minimum-radius MAC p-center.

    Small MACs (within ``d`` of their articulation point) get their smallest
    vertex; the rest of the graph, away from those articulation points, is
    covered greedily at radius ``2d`` starting from the farthest vertex of
    every large MAC.
    """
    require_connected(g)
    if g.n < 2:
        raise GraphError("need at least two vertices")
    decomp = mac_decomposition(g)
    if p < decomp.min_feasible_p:
        return _infeasible()
    dm = all_pairs_shortest(g)
    rows, scale = dm.scaled, dm.scale
    macs = decomp.macs
    ecc = [max(rows[m.articulation_point][x] for x in m.vertices) for m in macs]
    far = [
        min(m.vertices, key=lambda x: (-rows[m.articulation_point][x], x)) for m in macs
    ]
    trace = []
    best = None
    d_low = None
    notes = []
    for d in dm.scaled_distance_set():
        small = [i for i in range(len(macs)) if ecc[i] <= d]
        large = [i for i in range(len(macs)) if ecc[i] > d]
        picks = [min(macs[i].vertices) for i in small]
        hubs = sorted({macs[i].articulation_point for i in small})
        if hubs:
            pool = [v for v in g.vertices if min(rows[a][v] for a in hubs) > d]
        else:
            pool = list(g.vertices)
        seeds = [far[i] for i in large]
        pool_set = set(pool)
        inside = all(x in pool_set for x in seeds)
        apart = all(rows[x][y] > 2 * d for i, x in enumerate(seeds) for y in seeds[i + 1 :])
        s = _spread(rows, pool, 2 * d, seeds)
        ok = len(s) <= p - len(small)
        centers = sorted(set(picks) | set(s))
        if ok and len(centers) < 2:
            filler = next(v for v in g.vertices if v not in centers)
            centers = sorted([*centers, filler])
        r = _cover_radius(rows, centers, g.vertices)
        trace.append(
            TraceStep(Fraction(d, scale), ok, len(s), _unscale(r, scale), inside, apart, tuple(centers))
        )
        if not (inside and apart):
            notes.append(f"seed invariant failed at d={Fraction(d, scale)}")
        if ok:
            if d_low is None:
                d_low = d
            if best is None or r < best[0]:
                best = (r, centers)
    r, centers = best  # d = d_max is always accepted once p >= #MACs
    return ApproxReport(
        solution=tuple(centers),
        value=_unscale(r, scale),
        certified_bound=Fraction(2 * d_low, scale),
        trace=tuple(trace),
        lower_bound=Fraction(d_low, scale),
        radius=_unscale(r, scale),
        notes=tuple(notes),
    )


def check_length_range(g: WeightedGraph) -> None:
    if g.m and g.max_length > 2 * g.min_length:
        raise LengthRangeError(
            f"edge lengths span [{g.min_length}, {g.max_length}]; "
            "the ratio guarantee needs max <= 2 * min"
        )


def approx_ppcp(g: WeightedGraph, p: int) -> ApproxReport:
    """Use the MAC p-center approximation as a probabilistic-radius heuristic.

    The outcome is within ``4 * avgdeg + 2`` of the optimum as long as all
    edge lengths lie within a factor two of each other, which is checked.
    ``certified_bound`` is the a-posteriori upper bound
    ``(2 avgdeg + 1) r(C) + (l_max - 2 l_min) avgdeg`` on ``E(C)``.
    """
    require_connected(g)
    check_length_range(g)
    inner = approx_mac_pcenter(g, p)
    if not inner.feasible:
        return inner
    avg = g.average_degree
    value = expected_radius(g, inner.solution)
    r = inner.value
    if r == 0:
        bound = Fraction(0)  # C = V; the formula below would go negative
    else:
        bound = (2 * avg + 1) * r + (g.max_length - 2 * g.min_length) * avg
    return ApproxReport(
        solution=inner.solution,
        value=value,
        certified_bound=bound,
        trace=inner.trace,
        lower_bound=inner.lower_bound,
        radius=r,
        ratio_bound=4 * avg + 2,
        notes=inner.notes,
    )


# Trees ----------------------------------------------------------------------


def _require_tree(t: WeightedGraph) -> None:
    if not t.is_tree:
        raise GraphError(f"{t!r} is not a tree")


def _postorder(t: WeightedGraph, root: int) -> tuple[list[int], list[int], list[int]]:
    parent = [-1] * t.n
    up = [0] * t.n  # scaled length of the edge to the parent
    order = []
    stack = [root]
    seen = [False] * t.n
    seen[root] = True
    while stack:
        u = stack.pop()
        order.append(u)
        for v, w in t.int_adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                up[v] = w
                stack.append(v)
    order.reverse()
    return order, parent, up


def _tree_cover(t: WeightedGraph, d: int, p: int) -> list[int] | None:
    """Fewest vertex centers covering ``t`` within scaled radius ``d``.

    Bottom-up greedy: a vertex keeps the distance to its farthest uncovered
    descendant and to its nearest center below; it becomes a center when
    that uncovered descendant could not be reached from its parent. Returns
    ``None`` as soon as more than ``p`` centers are required.
    """
    order, parent, up = _postorder(t, 0)
    need: list[float | int] = [0] * t.n  # each vertex starts uncovered; -inf once covered
    have: list[float | int] = [INF] * t.n
    centers = []
    for v in order:
        if need[v] + have[v] <= d:
            need[v] = -INF
        pv = parent[v]
        if need[v] != -INF and (pv == -1 or need[v] + up[v] > d):
            centers.append(v)
            if len(centers) > p:
                return None
            need[v], have[v] = -INF, 0
        if pv != -1:
            have[pv] = min(have[pv], have[v] + up[v])
            if need[v] != -INF:
                need[pv] = max(need[pv], need[v] + up[v])
    return sorted(centers)


def tree_pcenter_exact(t: WeightedGraph, p: int) -> SolveReport:
    """Optimal vertex p-center of a tree by binary search over ``SL``."""
    _require_tree(t)
    if p < 1:
        return SolveReport(INF, (), 0, Status.INFEASIBLE)
    levels = all_pairs_shortest(t).scaled_distance_set()
    lo, hi = 0, len(levels) - 1
    witness = _tree_cover(t, levels[hi], p)
    explored = 1
    while lo < hi:
        mid = (lo + hi) // 2
        found = _tree_cover(t, levels[mid], p)
        explored += 1
        if found is None:
            lo = mid + 1
        else:
            hi, witness = mid, found
    return SolveReport(Fraction(levels[lo], t.scale), tuple(witness), explored, Status.OPTIMAL)


def glue_leaf_edges(t: WeightedGraph, d: Length) -> tuple[WeightedGraph, dict[int, int]]:
    """Attach a new pendant edge of length ``d`` to every leaf of ``t``.

    Returns the glued tree and the map from each new vertex to its leaf.
    """
    d = Fraction(d)
    if d <= 0:
        raise GraphError("glued edges need a positive length")
    leaves = [v for v in t.vertices if t.degree(v) == 1]
    edges = dict(t.edges)
    twin = {}
    for i, leaf in enumerate(leaves):
        edges[(leaf, t.n + i)] = d
        twin[t.n + i] = leaf
    return WeightedGraph(t.n + len(leaves), edges, name=t.name), twin


def tree_mac_pcenter_exact(t: WeightedGraph, p: int) -> SolveReport:
    """Optimal MAC p-center of a tree.

    A tree has a MAC p-center of radius ``d`` exactly when the tree with a
    length-``d`` edge glued to every leaf has an ordinary p-center of radius
    ``d``; glued vertices in that witness are replaced by their leaves.
    """
    _require_tree(t)
    if t.n < 2:
        raise GraphError("need at least two vertices")
    leaves = [v for v in t.vertices if t.degree(v) == 1]
    if p < max(2, len(leaves)):
        return SolveReport(INF, (), 0, Status.INFEASIBLE)
    levels = all_pairs_shortest(t).scaled_distance_set()
    explored = 0

    def attempt(i: int) -> list[int] | None:
        nonlocal explored
        explored += 1
        d = levels[i]
        if d == 0:
            return list(t.vertices) if p >= t.n else None
        glued, twin = glue_leaf_edges(t, Fraction(d, t.scale))
        cover = _tree_cover(glued, d * glued.scale // t.scale, p)
        if cover is None:
            return None
        return sorted({twin.get(c, c) for c in cover})

    lo, hi = 0, len(levels) - 1
    witness = attempt(hi)
    if witness is None:
        raise RuntimeError("largest threshold rejected")
    while lo < hi:
        mid = (lo + hi) // 2
        found = attempt(mid)
        if found is None:
            lo = mid + 1
        else:
            hi, witness = mid, found
    return SolveReport(Fraction(levels[lo], t.scale), tuple(witness), explored, Status.OPTIMAL)
