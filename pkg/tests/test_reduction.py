import random
from fractions import Fraction

import pytest

import oracles
from ppcp.evacuation import evac_radius, expected_radius
from ppcp.exact import is_dominating, min_partial_dominating_set, min_vertex_cover
from ppcp.graph import GraphError, WeightedGraph, subgrid_violations
from ppcp.instances import c4_embedding, complete, cycle, fig4_k4_embedding, path
from ppcp.reduction import (
    T1,
    T2,
    EmbeddingError,
    GridEmbedding,
    build_reduction,
    construct_dominating_from_vc,
    embed_tiny_planar,
    extract_vc_from_ds,
    gadget_graph,
    random_orientation,
    verify_reduction,
)
from ppcp.reduction.pipeline import default_orientation, lift_vertex_cover, transformation1


@pytest.fixture(scope="module")
def c4():
    return build_reduction(c4_embedding(), 2)


@pytest.fixture(scope="module")
def k4():
    return build_reduction(fig4_k4_embedding(), 2)


def named_k(bundle):
    g = bundle.base
    return {g.label(u) + g.label(v): k for (u, v), k in bundle.k.items()}


class TestOrientation:
    def test_default_is_id_order(self):
        g = complete(4)
        assert sorted(default_orientation(g).values()) == list(g.edges)

    def test_seeded(self):
        g = complete(4)
        assert random_orientation(g, 5) == random_orientation(g, 5)
        assert set(map(frozenset, random_orientation(g, 5).values())) == set(map(frozenset, g.edges))

    def test_rejects_foreign_pairs(self):
        with pytest.raises(GraphError):
            build_reduction(c4_embedding(), 2, {(0, 1): (0, 1)})


class TestEmbedding:
    def test_k4_fits_three_by_three(self):
        emb = embed_tiny_planar(complete(4))
        assert emb.dims == (3, 3)

    def test_c4_unit_square(self):
        emb = embed_tiny_planar(cycle(4))
        assert emb.dims == (2, 2)
        assert all(emb.path_length(e) == 1 for e in emb.graph.edges)

    def test_k5_is_rejected(self):
        with pytest.raises(EmbeddingError, match="not planar"):
            embed_tiny_planar(complete(5))

    def test_too_big(self):
        with pytest.raises(EmbeddingError):
            embed_tiny_planar(path(7))

    def test_crossing_paths_rejected(self):
        g = WeightedGraph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(EmbeddingError, match="cross"):
            GridEmbedding(
                g,
                (3, 3),
                [(0, 1), (2, 1), (1, 0), (1, 2)],
                {(0, 1): [(0, 1), (1, 1), (2, 1)], (2, 3): [(1, 0), (1, 1), (1, 2)]},
            )

    def test_fixture_matches_drawing(self):
        emb = fig4_k4_embedding()
        lengths = {emb.graph.label(u) + emb.graph.label(v): emb.path_length((u, v)) for u, v in emb.paths}
        assert lengths == {"ab": 1, "bc": 1, "bd": 1, "ad": 2, "cd": 2, "ac": 4}

    @pytest.mark.parametrize("g", [path(5), cycle(5), cycle(6), complete(4)])
    def test_found_embeddings_are_valid(self, g):
        h, _ = embed_tiny_planar(g).to_graph()
        assert subgrid_violations(h, induced=False) == []


class TestScaledGrid:
    def test_fig4_k_values(self, k4):
        assert named_k(k4) == {"ab": 1, "ac": 7, "ad": 3, "bc": 1, "bd": 1, "cd": 3}
        assert k4.sum_k == 16

    def test_fig4_nine_by_nine(self, k4):
        rows = {r for r, _ in k4.h_q.coords}
        cols = {c for _, c in k4.h_q.coords}
        assert (max(rows) + 1, max(cols) + 1) == (9, 9)
        assert subgrid_violations(k4.h_q, induced=False) == []

    def test_c4(self, c4):
        assert set(c4.k.values()) == {1}
        assert c4.h_q.n == 16 and c4.h_q.m == 16

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_lower_bound_on_k(self, q):
        ex = transformation1(fig4_k4_embedding(), q)
        assert min(ex.k.values()) >= q - 1


class TestHTilde:
    def test_k4_counts(self, k4):
        assert (k4.h_tilde.n, k4.h_tilde.m) == (36, 38)

    def test_c4_counts(self, c4):
        assert c4.h_tilde.n == 12

    def test_c4_cover_number(self, c4):
        assert min_vertex_cover(c4.h_tilde).value == 2 + 4 == min_vertex_cover(c4.base).value + c4.sum_k

    def test_parities(self, k4):
        assert all((len(p) - 1) % 2 == 0 for p in k4.expansion.paths.values())
        assert all((len(p) - 1) % 2 == 1 for p in k4.contracted.paths.values())

    def test_lifted_cover(self, k4):
        cover = lift_vertex_cover(k4, min_vertex_cover(k4.base).solution)
        assert len(cover) == 3 + 16
        assert all(u in cover or v in cover for u, v in k4.h_tilde.edges)


class TestGadgets:
    @pytest.mark.parametrize("kind,n,m", [(T1, 15, 15), (T2, 18, 18)])
    def test_isolated_sizes(self, kind, n, m):
        g, names = gadget_graph(kind)
        assert (g.n, g.m) == (n, m)
        assert subgrid_violations(g) == []
        assert {g.degree(0), g.degree(1)} == {1}

    @pytest.mark.parametrize("kind,total,internal", [(T1, 5, 4), (T2, 6, 5)])
    def test_minimum_vertices_needed(self, kind, total, internal):
        g, _ = gadget_graph(kind)
        inner = list(range(2, g.n))
        assert min_partial_dominating_set(g, inner, override=True).value == total
        assert oracles.min_dominating_bruteforce(g.n, g.edges, inner) == total
        h, keep = g.induced_subgraph(inner)
        free = [i for i, v in enumerate(keep) if not {0, 1} & set(g.neighbor_ids(v))]
        assert min_partial_dominating_set(h, free, override=True).value == internal

    @pytest.mark.parametrize("kind", [T1, T2])
    def test_canonical_sets_dominate_with_their_endpoint(self, kind):
        g, names = gadget_graph(kind)
        at = {x: i for i, x in enumerate(names)}
        for end, chosen in (("tail", kind.with_tail), ("head", kind.with_head)):
            d = [at[end], *(at[x] for x in chosen)]
            assert all(set(d) & {v, *g.neighbor_ids(v)} for v in range(2, g.n))


class TestGadgetGraph:
    @pytest.mark.parametrize("name", ["c4", "k4"])
    def test_counts(self, name, request):
        b = request.getfixturevalue(name)
        ht, f, g = b.h_tilde, b.f, b.base
        assert f.n == ht.n + 13 * ht.m + 3 * g.m == g.n + 16 * g.m + 28 * b.sum_k
        assert f.m == 15 * ht.m + 3 * g.m == 18 * g.m + 30 * b.sum_k

    def test_sizes(self, c4, k4):
        assert (c4.f.n, c4.f.m) == (180, 192)
        assert k4.f.n == 548

    @pytest.mark.parametrize("name", ["c4", "k4"])
    def test_structure(self, name, request):
        f = request.getfixturevalue(name).f
        assert subgrid_violations(f) == []
        assert {f.degree(v) for v in f.vertices} <= {2, 3}
        assert not any(
            f.has_edge(u, w) for u in f.vertices for v in f.neighbor_ids(u) for w in f.neighbor_ids(v) if w > u
        )

    def test_gadget_registry(self, k4):
        kinds = [g.kind for g in k4.gadgets]
        assert kinds.count("T2") == k4.base.m
        assert kinds.count("T1") == k4.h_tilde.m - k4.base.m
        reg = k4.registry()
        assert reg["format"] == "ppcp-registry" and len(reg["gadgets"]) == k4.h_tilde.m

    @pytest.mark.parametrize("seed", range(6))
    def test_random_orientations(self, seed):
        emb = fig4_k4_embedding()
        b = build_reduction(emb, 2, random_orientation(emb.graph, seed))
        assert subgrid_violations(b.f) == [] and b.f.n == 548

    def test_larger_q(self):
        b = build_reduction(c4_embedding(), 3)
        assert b.f.n == 4 + 16 * 4 + 28 * b.sum_k
        assert verify_reduction(b, radius_profile=False).passed


class TestCoverDomination:
    def test_c4_constructed_set(self, c4):
        vc = min_vertex_cover(c4.h_tilde).solution
        d = construct_dominating_from_vc(c4, vc)
        assert len(d) == 6 + 4 * 12 + 4 == 58
        assert is_dominating(c4.f, d)

    def test_k4_constructed_set(self, k4):
        vc = lift_vertex_cover(k4, min_vertex_cover(k4.base).solution)
        d = construct_dominating_from_vc(k4, vc)
        assert len(d) == 19 + 4 * 38 + 6 == 177 == 3 + 5 * 6 + 9 * 16
        assert is_dominating(k4.f, d)

    def test_rejects_non_cover(self, c4):
        with pytest.raises(GraphError):
            construct_dominating_from_vc(c4, [0])

    def test_round_trip(self, c4):
        vc = min_vertex_cover(c4.h_tilde).solution
        back = extract_vc_from_ds(c4, construct_dominating_from_vc(c4, vc))
        assert len(back) == len(vc)
        assert all(u in back or v in back for u, v in c4.h_tilde.edges)

    def test_everything(self, c4):
        assert extract_vc_from_ds(c4, c4.f.vertices) == tuple(c4.h_tilde.vertices)

    def test_rejects_non_dominating(self, c4):
        with pytest.raises(GraphError):
            extract_vc_from_ds(c4, [0])

    @pytest.mark.parametrize("seed", range(120))
    def test_noisy_dominating_sets(self, c4, seed):
        rng = random.Random(seed)
        f = c4.f
        d = set(rng.sample(range(f.n), rng.randint(0, f.n // 2)))
        order = list(f.vertices)
        rng.shuffle(order)
        for v in order:
            if not d & {v, *f.neighbor_ids(v)}:
                d.add(rng.choice([v, *f.neighbor_ids(v)]))
        vc = extract_vc_from_ds(c4, d)
        assert all(u in vc or w in vc for u, w in c4.h_tilde.edges)
        assert len(vc) <= len(d) - 4 * c4.h_tilde.m - c4.base.m


class TestVerification:
    def test_c4_full(self, c4):
        rep = verify_reduction(c4)
        assert rep.passed, rep.failures
        assert len(rep.dominating_set) == 58
        assert rep.expected_radius == Fraction(59, 30)

    def test_k4(self, k4):
        rep = verify_reduction(k4, 3)
        assert rep.passed, rep.failures
        assert rep.expected_radius == Fraction(1079, 548)
        assert 548 * rep.expected_radius == 4 + 32 * 6 + 55 * 16 + 3

    def test_wrong_tau_is_reported(self, c4):
        rep = verify_reduction(c4, 3, radius_profile=False)
        assert not rep.passed
        names = [c.name for c in rep.failures]
        assert names[0] == "tau(G) matches the supplied value"
        assert "lifted cover size = tau(G) + sum k" in names

    def test_schedule(self, c4):
        assert c4.epsilon == 17
        assert c4.ratio_threshold == Fraction(56 + 34, 55 + 34)
        assert c4.value_ceiling == 2 - Fraction(1, 45)

    def test_radius_profile(self, c4):
        d = construct_dominating_from_vc(c4, min_vertex_cover(c4.h_tilde).solution)
        ht = set(range(c4.h_tilde.n))
        for s in c4.f.vertices:
            want = 1 if (s in ht and s not in d) else 2
            assert evac_radius(c4.f, d, s).radius == want


class TestNonDominatingSets:
    @pytest.mark.parametrize("seed", range(30))
    def test_some_scenario_reaches_three(self, c4, seed):
        f = c4.f
        rng = random.Random(seed)
        d = set(construct_dominating_from_vc(c4, min_vertex_cover(c4.h_tilde).solution))
        c = sorted(d - set(rng.sample(sorted(d), rng.randint(1, 5))))
        assert not is_dominating(f, c)
        assert max(evac_radius(f, c, s).radius for s in f.vertices) >= 3
        assert expected_radius(f, c) > 2
