"""From a grid-embedded graph ``G`` to the gadget graph ``F``.

The chain is ``G -> H`` (the embedding as a graph), ``H -> H_q`` (a
``2q``-expansion), ``H_q -> H~_q`` (the first internal vertex of every
oriented base path contracted away) and ``H_q -> F`` (gadget substitution).
Vertex covers of ``H~_q`` and dominating sets of ``F`` translate into each
other, which the helpers at the bottom implement in both directions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..evacuation import _scenario_scaled
from ..exact import GuardExceeded, is_dominating, min_vertex_cover
from ..graph import Edge, GraphError, WeightedGraph, _checked, expand_with_paths, subgrid_violations
from .embedding import GridEmbedding
from .gadgets import KINDS, T1, T2, GadgetKind, place

SCALE = 7  # F grid units per H_q grid unit


class ReductionError(GraphError):
    """The construction cannot be completed on this input."""


Orientation = Mapping[Edge, tuple[int, int]]


def default_orientation(g: WeightedGraph) -> dict[Edge, tuple[int, int]]:
    """Every edge from its smaller to its larger endpoint."""
    return {e: e for e in g.edges}


def random_orientation(g: WeightedGraph, seed: int) -> dict[Edge, tuple[int, int]]:
    rng = random.Random(seed)
    return {(u, v): (u, v) if rng.random() < 0.5 else (v, u) for u, v in g.edges}


def _check_orientation(g: WeightedGraph, orientation: Orientation) -> dict[Edge, tuple[int, int]]:
    out = {}
    for e in g.edges:
        pair = orientation.get(e)
        if pair is None or set(pair) != set(e):
            raise ReductionError(f"orientation must give both endpoints of edge {e}")
        out[e] = (int(pair[0]), int(pair[1]))
    if len(orientation) != g.m:
        raise ReductionError("orientation has entries for non-edges")
    return out


# Scaled grid graph ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Expansion:
    """``H`` and its ``2q``-expansion ``H_q``.

    ``paths[e]`` is the ``H_q`` vertex path of base edge ``e = (u, v)``,
    ``u < v``, from ``u`` to ``v``; ``k[e] = q * len_H(e) - 1``.
    """

    h: WeightedGraph
    h_q: WeightedGraph
    q: int
    k: dict[Edge, int]
    paths: dict[Edge, tuple[int, ...]]


def transformation1(embedding: GridEmbedding, q: int) -> Expansion:
    """Expand the embedded graph so that every base path has even length ``2q * m``."""
    if not isinstance(q, int) or q < 2:
        raise ReductionError(f"q must be an integer >= 2, got {q!r}")
    h, h_paths = embedding.to_graph()
    h_q, sub = expand_with_paths(h, 2 * q)
    paths = {}
    k = {}
    for e, seq in h_paths.items():
        full = [seq[0]]
        for a, b in zip(seq, seq[1:]):
            step = sub[(min(a, b), max(a, b))]
            full.extend(step[1:] if a < b else list(reversed(step))[1:])
        paths[e] = tuple(full)
        k[e] = q * (len(seq) - 1) - 1
    return Expansion(h, h_q, q, k, paths)


def _oriented(path: Sequence[int], e: Edge, orientation: Orientation) -> tuple[int, ...]:
    return tuple(path) if orientation[e][0] == e[0] else tuple(reversed(path))


# H~_q -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Contracted:
    """``H~_q`` with its id map from ``H_q`` and the oriented base paths,
    both in ``H_q`` ids (``hq_paths``) and in ``H~_q`` ids (``paths``)."""

    graph: WeightedGraph
    index: dict[int, int]
    contracted: dict[Edge, int]
    paths: dict[Edge, tuple[int, ...]]
    hq_paths: dict[Edge, tuple[int, ...]]


def build_h_tilde(expansion: Expansion, orientation: Orientation) -> Contracted:
    """Contract the first internal vertex of every oriented base path.

    Each path keeps ``2 k_e`` internal vertices, so ``H~_q`` is ``G`` with
    every edge subdivided an even number of times.
    """
    h_q = expansion.h_q
    base_edges = list(expansion.paths)
    orient = {e: orientation[e] for e in base_edges}
    removed = {}
    oriented = {}
    for e in base_edges:
        p = _oriented(expansion.paths[e], e, orient)
        removed[e] = p[1]
        oriented[e] = p
    gone = set(removed.values())
    keep = [v for v in h_q.vertices if v not in gone]
    index = {v: i for i, v in enumerate(keep)}
    edges = {
        (index[u], index[v]): 1
        for u, v in h_q.edges
        if u not in gone and v not in gone
    }
    paths = {}
    for e, p in oriented.items():
        edges[(index[p[0]], index[p[2]])] = 1
        paths[e] = tuple(index[x] for x in (p[0], *p[2:]))
    labels = tuple(h_q.label(v) for v in keep) if h_q.labels else None
    graph = WeightedGraph(len(keep), edges, name=h_q.name, labels=labels)
    return Contracted(graph, index, removed, paths, oriented)


# Gadget graph ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Gadget:
    """One gadget of ``F``. ``tail``/``head`` are ``H~_q`` (and ``F``) ids."""

    kind: str
    base_edge: Edge
    tail: int
    head: int
    side: int
    vertices: dict[str, int]

    @property
    def spec(self) -> GadgetKind:
        return KINDS[self.kind]

    def canonical(self, tail_in: bool) -> list[int]:
        names = self.spec.with_tail if tail_in else self.spec.with_head
        return [self.vertices[n] for n in names]


@dataclass(frozen=True)
class _Plan:
    kind: GadgetKind
    base_edge: Edge
    tail_hq: int
    head_hq: int
    origin: tuple[int, int]
    direction: tuple[int, int]
    contracted: int | None = None


def _plans(expansion: Expansion, contracted: Contracted) -> list[_Plan]:
    coords = expansion.h_q.coords
    plans = []
    for e, p in contracted.hq_paths.items():
        first = (coords[p[1]][0] - coords[p[0]][0], coords[p[1]][1] - coords[p[0]][1])
        second = (coords[p[2]][0] - coords[p[1]][0], coords[p[2]][1] - coords[p[1]][1])
        if first != second:
            raise ReductionError(f"the first two steps of base edge {e} are not collinear")
        origin = (coords[p[0]][0] * SCALE, coords[p[0]][1] * SCALE)
        plans.append(_Plan(T2, e, p[0], p[2], origin, first, contracted=p[1]))
        for a, b in zip(p[2:], p[3:]):
            d = (coords[b][0] - coords[a][0], coords[b][1] - coords[a][1])
            plans.append(_Plan(T1, e, a, b, (coords[a][0] * SCALE, coords[a][1] * SCALE), d))
    return plans


def _touch(a: Iterable[tuple[int, int]], b: Iterable[tuple[int, int]]) -> bool:
    bs = set(b)
    for r, c in a:
        if (r, c) in bs or (r + 1, c) in bs or (r - 1, c) in bs or (r, c + 1) in bs or (r, c - 1) in bs:
            return True
    return False


def _choose_sides(plans: Sequence[_Plan]) -> list[int]:
    """Pick bump sides so that gadgets meeting at a vertex keep clear.

    Long gadgets always bump left. Short ones prefer left; the constraints
    are pairwise between gadgets sharing an endpoint, i.e. a 2-SAT instance,
    solved by assign-and-propagate.
    """
    options = [(1,) if pl.kind is T2 else (1, -1) for pl in plans]
    cells = [
        {s: list(place(pl.kind, pl.origin, pl.direction, s).values()) for s in options[i]}
        for i, pl in enumerate(plans)
    ]
    at: dict[int, list[int]] = {}
    for i, pl in enumerate(plans):
        at.setdefault(pl.tail_hq, []).append(i)
        at.setdefault(pl.head_hq, []).append(i)
    banned: dict[tuple[int, int], list[tuple[int, int]]] = {}
    forced: dict[int, set[int]] = {}
    for group in at.values():
        for x in range(len(group)):
            for y in range(x + 1, len(group)):
                i, j = group[x], group[y]
                for si in options[i]:
                    for sj in options[j]:
                        if not _touch(cells[i][si], cells[j][sj]):
                            continue
                        if len(options[i]) == 1 and len(options[j]) == 1:
                            raise ReductionError("two long gadgets collide at a shared endpoint")
                        if len(options[i]) == 1:
                            forced.setdefault(j, set()).add(sj)
                        elif len(options[j]) == 1:
                            forced.setdefault(i, set()).add(si)
                        else:
                            banned.setdefault((i, si), []).append((j, sj))
                            banned.setdefault((j, sj), []).append((i, si))
    side: dict[int, int] = {i: 1 for i, o in enumerate(options) if len(o) == 1}

    def propagate(start: list[tuple[int, int]], trial: dict[int, int]) -> bool:
        queue = list(start)
        while queue:
            i, s = queue.pop()
            if i in forced and s in forced[i]:
                return False
            for j, sj in banned.get((i, s), ()):
                want = -sj
                if trial.get(j) == sj:
                    return False
                if j not in trial:
                    trial[j] = want
                    queue.append((j, want))
        return True

    for i, bad in sorted(forced.items()):
        if len(bad) == 2:
            raise ReductionError("a short gadget fits on neither side")
        (s,) = {1, -1} - bad
        if side.get(i, s) != s:
            raise ReductionError("contradictory gadget side constraints")
        trial = dict(side)
        trial[i] = s
        if not propagate([(i, s)], trial):
            raise ReductionError("contradictory gadget side constraints")
        side = trial
    for i in range(len(plans)):
        if i in side:
            continue
        for s in (1, -1):
            trial = dict(side)
            trial[i] = s
            if propagate([(i, s)], trial):
                side = trial
                break
        else:
            raise ReductionError("no consistent choice of gadget sides")
    return [side[i] for i in range(len(plans))]


@dataclass(frozen=True, eq=False)
class GadgetGraph:
    graph: WeightedGraph
    gadgets: tuple[Gadget, ...]


def transformation2(expansion: Expansion, contracted: Contracted) -> GadgetGraph:
    """Replace edges of ``H_q`` by gadgets, giving the induced subgrid ``F``.

    The first two edges of every oriented base path become one long gadget
    (the contracted vertex sits in its middle); every other edge becomes a
    short gadget. ``F`` keeps the ``H~_q`` ids and appends gadget vertices.
    Coordinates are ``H_q`` coordinates times 7.
    """
    h_q = expansion.h_q
    if h_q.coords is None:
        raise ReductionError("H_q needs coordinates")
    plans = _plans(expansion, contracted)
    sides = _choose_sides(plans)
    index = contracted.index
    n0 = contracted.graph.n
    coords = [None] * n0
    labels = list(contracted.graph.labels or [str(v) for v in range(n0)])
    for v, i in index.items():
        coords[i] = (h_q.coords[v][0] * SCALE, h_q.coords[v][1] * SCALE)
    edges: dict[Edge, int] = {}
    gadgets = []
    for pl, side in zip(plans, sides):
        tail, head = index[pl.tail_hq], index[pl.head_hq]
        cells = place(pl.kind, pl.origin, pl.direction, side)
        names = {}
        for name, cell in cells.items():
            names[name] = len(coords)
            coords.append(cell)
            labels.append(f"{pl.kind.name}[{labels[tail]}>{labels[head]}].{name}")
        ids = {"tail": tail, "head": head, **names}
        for a, b in pl.kind.edges:
            u, v = ids[a], ids[b]
            edges[(min(u, v), max(u, v))] = 1
        gadgets.append(Gadget(pl.kind.name, pl.base_edge, tail, head, side, names))
    f = WeightedGraph(len(coords), edges, name="F", coords=tuple(coords), labels=tuple(labels))
    problems = subgrid_violations(f)
    if problems:
        raise ReductionError("F is not an induced subgrid: " + "; ".join(problems[:5]))
    return GadgetGraph(f, tuple(gadgets))


# Bundle ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ReductionBundle:
    embedding: GridEmbedding
    q: int
    orientation: dict[Edge, tuple[int, int]]
    expansion: Expansion
    contracted: Contracted
    gadget_graph: GadgetGraph

    @property
    def base(self) -> WeightedGraph:
        return self.embedding.graph

    @property
    def h(self) -> WeightedGraph:
        return self.expansion.h

    @property
    def h_q(self) -> WeightedGraph:
        return self.expansion.h_q

    @property
    def h_tilde(self) -> WeightedGraph:
        return self.contracted.graph

    @property
    def f(self) -> WeightedGraph:
        return self.gadget_graph.graph

    @property
    def gadgets(self) -> tuple[Gadget, ...]:
        return self.gadget_graph.gadgets

    @property
    def k(self) -> dict[Edge, int]:
        return self.expansion.k

    @property
    def sum_k(self) -> int:
        return sum(self.expansion.k.values())

    # read-only view of the schedule that ties q to the target ratio
    @property
    def epsilon(self) -> Fraction:
        return Fraction(17, self.q - 1)

    @property
    def ratio_threshold(self) -> Fraction:
        eps = self.epsilon
        return (56 + 2 * eps) / (55 + 2 * eps)

    @property
    def value_ceiling(self) -> Fraction:
        return 2 - 1 / (28 + self.epsilon)

    def registry(self) -> dict:
        """JSON-ready map from gadget vertex names to ``F`` ids."""
        return {
            "format": "ppcp-registry",
            "version": 1,
            "q": self.q,
            "orientation": [list(self.orientation[e]) for e in sorted(self.orientation)],
            "k": [[u, v, self.k[(u, v)]] for u, v in sorted(self.k)],
            "h_tilde": {
                "n": self.h_tilde.n,
                "edges": [list(e) for e in self.h_tilde.edges],
            },
            "gadgets": [
                {
                    "kind": g.kind,
                    "base_edge": list(g.base_edge),
                    "tail": g.tail,
                    "head": g.head,
                    "side": "left" if g.side == 1 else "right",
                    "vertices": dict(g.vertices),
                }
                for g in self.gadgets
            ],
        }


def build_reduction(
    embedding: GridEmbedding, q: int = 2, orientation: Orientation | None = None
) -> ReductionBundle:
    g = embedding.graph
    orient = _check_orientation(g, orientation if orientation is not None else default_orientation(g))
    expansion = transformation1(embedding, q)
    contracted = build_h_tilde(expansion, orient)
    gg = transformation2(expansion, contracted)
    return ReductionBundle(embedding, q, orient, expansion, contracted, gg)


# Covers and dominating sets -------------------------------------------------


def _is_cover(g: WeightedGraph, cover: set[int]) -> bool:
    return all(u in cover or v in cover for u, v in g.edges)


def lift_vertex_cover(bundle: ReductionBundle, cover: Iterable[int]) -> tuple[int, ...]:
    """A cover of ``G`` of size ``t`` becomes a cover of ``H~_q`` of size ``t + sum k``.

    On each subdivided edge take every other internal vertex, starting next
    to the covered endpoint's far side.
    """
    base = set(_checked(bundle.base, cover))
    if not _is_cover(bundle.base, base):
        raise GraphError("not a vertex cover of the base graph")
    index = bundle.contracted.index
    out = {index[v] for v in base}
    for e, path in bundle.contracted.paths.items():
        inner = path[1:-1]
        tail_hq = bundle.orientation[e][0]
        start = 1 if tail_hq in base else 0
        out.update(inner[start::2])
    return tuple(sorted(out))


def construct_dominating_from_vc(bundle: ReductionBundle, vc: Iterable[int]) -> tuple[int, ...]:
    """Dominating set of ``F`` of size ``|vc| + 4|E~| + |E|`` from a cover of ``H~_q``."""
    cover = set(_checked(bundle.h_tilde, vc))
    if not _is_cover(bundle.h_tilde, cover):
        raise GraphError("not a vertex cover of H~_q")
    d = set(cover)
    for g in bundle.gadgets:
        d.update(g.canonical(g.tail in cover))
    return tuple(sorted(d))


def normalize_dominating_set(bundle: ReductionBundle, d: Iterable[int]) -> tuple[int, ...]:
    """Rewrite a dominating set of ``F`` gadget by gadget into canonical form.

    Every gadget ends up with an endpoint in the set and its canonical
    internal vertices; when neither endpoint was present the tail is added.
    """
    f = bundle.f
    ds = set(_checked(f, d))
    if not is_dominating(f, ds):
        raise GraphError("not a dominating set of F")
    n0 = bundle.h_tilde.n
    out = {v for v in ds if v < n0}
    for g in bundle.gadgets:
        if g.tail not in out and g.head not in out:
            out.add(g.tail)
    for g in bundle.gadgets:
        out.update(g.canonical(g.tail in out))
    return tuple(sorted(out))


def extract_vc_from_ds(bundle: ReductionBundle, d: Iterable[int]) -> tuple[int, ...]:
    """Vertex cover of ``H~_q`` read off a dominating set of ``F``."""
    n0 = bundle.h_tilde.n
    return tuple(v for v in normalize_dominating_set(bundle, d) if v < n0)


# Verification ---------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]
    dominating_set: tuple[int, ...]
    expected_radius: Fraction | None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "dominating_set_size": len(self.dominating_set),
            "expected_radius": str(self.expected_radius) if self.expected_radius is not None else None,
        }


def verify_reduction(
    bundle: ReductionBundle,
    tau_g: int | None = None,
    *,
    tau_oracle: bool | None = None,
    radius_profile: bool = True,
) -> VerificationReport:
    """Check the counting identities, the cover/domination link and the
    radius profile of the constructed dominating set.

    ``tau_oracle`` runs the exact vertex-cover solver on ``H~_q`` (default:
    only when it has at most 40 vertices).
    """
    g, ht, f = bundle.base, bundle.h_tilde, bundle.f
    nv, ne, sk = g.n, g.m, bundle.sum_k
    checks: list[Check] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        checks.append(Check(name, bool(ok), detail))

    def equal(name: str, got, want) -> None:
        check(name, got == want, f"got {got}, expected {want}")

    base_cover = min_vertex_cover(g).solution
    if tau_g is None:
        tau_g = len(base_cover)
    equal("tau(G) matches the supplied value", len(base_cover), tau_g)

    equal("|V~| = |V| + 2 sum k", ht.n, nv + 2 * sk)
    equal("|E~| = |E| + 2 sum k", ht.m, ne + 2 * sk)
    low = min(bundle.k.values(), default=bundle.q - 1)
    check("k_e >= q - 1", low >= bundle.q - 1, f"min k = {low}, q = {bundle.q}")
    equal("|V^F| = |V~| + 13|E~| + 3|E|", f.n, ht.n + 13 * ht.m + 3 * ne)
    equal("|E^F| = 15|E~| + 3|E|", f.m, 15 * ht.m + 3 * ne)
    equal("|V^F| = |V| + 16|E| + 28 sum k", f.n, nv + 16 * ne + 28 * sk)
    equal("|E^F| = 18|E| + 30 sum k", f.m, 18 * ne + 30 * sk)

    even = all((len(p) - 1) % 2 == 0 for p in bundle.expansion.paths.values())
    odd = all((len(p) - 1) % 2 == 1 for p in bundle.contracted.paths.values())
    check("H_q base paths have even length", even)
    check("H~_q base paths have odd length", odd)

    problems = subgrid_violations(f)
    check("F is an induced subgrid", not problems, "; ".join(problems[:3]))
    degrees = {f.degree(v) for v in f.vertices}
    check("F has degrees in {2, 3}", degrees <= {2, 3}, f"degrees {sorted(degrees)}")
    tri = any(
        set(f.neighbor_ids(u)) & set(f.neighbor_ids(v)) for u, v in f.edges
    )
    check("F is triangle-free", not tri)

    if tau_oracle is None:
        tau_oracle = ht.n <= 40
    lifted = lift_vertex_cover(bundle, base_cover)
    equal("lifted cover size = tau(G) + sum k", len(lifted), tau_g + sk)
    tau_ht = len(lifted)
    if tau_oracle:
        try:
            tau_ht = min_vertex_cover(ht, override=True).value
            equal("tau(H~) = tau(G) + sum k", tau_ht, tau_g + sk)
        except GuardExceeded as exc:  # pragma: no cover - override is set
            check("tau(H~) = tau(G) + sum k", False, str(exc))

    d = construct_dominating_from_vc(bundle, lifted)
    check("constructed set dominates F", is_dominating(f, d))
    equal("|D| = |cover| + 4|E~| + |E|", len(d), len(lifted) + 4 * ht.m + ne)
    equal("|D| = tau(G) + 5|E| + 9 sum k", len(d), tau_g + 5 * ne + 9 * sk)
    back = extract_vc_from_ds(bundle, d)
    check("extracted set covers H~", _is_cover(ht, set(back)))
    check("extraction does not grow the cover", len(back) <= len(d) - 4 * ht.m - ne)

    e_d = None
    if radius_profile:
        dset = set(d)
        total = 0
        bad = []
        for s in f.vertices:
            r = max(_scenario_scaled(f, sorted(dset), s))
            want = 1 if (s < ht.n and s not in dset) else 2
            if r != want:
                bad.append((s, r, want))
            total += r
        check(
            "scenario radii: 1 on uncovered H~ vertices, 2 elsewhere",
            not bad,
            f"{len(bad)} mismatches, first {bad[:3]}",
        )
        e_d = Fraction(total, f.n)
        d_in = len([v for v in d if v < ht.n])
        equal("E(D) = (2|V^F| - (|V~| - |D cap V~|)) / |V^F|", e_d, Fraction(2 * f.n - (ht.n - d_in), f.n))
        equal("|V^F| E(D) = |V| + 32|E| + 55 sum k + tau(G)", e_d * f.n, nv + 32 * ne + 55 * sk + tau_g)
        check("E(D) < 2", e_d < 2, str(e_d))
        if sk:
            cap = 2 - Fraction(sk, 17 * ne + 28 * sk)
            check("E(D) <= 2 - sum k / (17|E| + 28 sum k)", e_d <= cap, f"{e_d} vs {cap}")
        check("E(D) <= 2 - 1/(28 + 17/(q-1))", e_d <= bundle.value_ceiling, f"{e_d} vs {bundle.value_ceiling}")
    return VerificationReport(tuple(checks), d, e_d)
