import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs, rational_lengths
from ppcp.graph import GraphError, WeightedGraph, all_pairs_shortest, subgrid_violations
from ppcp.instances import (
    FIG2_EDGES,
    builtin_embedding,
    builtin_graph,
    c4_embedding,
    complete,
    connected_random,
    cycle,
    fig1_star,
    fig2_graph,
    fig4_k4_embedding,
    fig7_caterpillar,
    fig8_path,
    grid,
    path,
    random_lengths,
    star,
    subgrid_degrees_2_3,
    subgrid_random,
    tree_random,
)
from ppcp.io import (
    InstanceDocument,
    ParseError,
    UnsupportedFeatureError,
    dump,
    load,
    load_embedding,
    parse,
    parse_embedding,
    parse_json,
    parse_length,
    parse_text,
    serialize,
    serialize_embedding,
    serialize_json,
    serialize_text,
)


class TestGenerators:
    @pytest.mark.parametrize(
        "g,n,m", [(path(5), 5, 4), (cycle(6), 6, 6), (complete(5), 5, 10), (star(4), 5, 4), (grid(3, 4), 12, 17)]
    )
    def test_sizes(self, g, n, m):
        assert (g.n, g.m) == (n, m) and g.is_connected

    def test_grid_two_by_two_is_c4(self):
        g = grid(2, 2)
        assert sorted(g.edges) == [(0, 1), (0, 2), (1, 3), (2, 3)]
        assert g.coords == ((0, 0), (0, 1), (1, 0), (1, 1))
        assert subgrid_violations(g) == []

    def test_bad_sizes(self):
        with pytest.raises(GraphError):
            cycle(2)
        with pytest.raises(GraphError):
            path(0)

    @pytest.mark.parametrize("seed", range(5))
    def test_seeded_generators_are_deterministic(self, seed):
        assert tree_random(9, seed) == tree_random(9, seed)
        assert connected_random(8, 12, seed) == connected_random(8, 12, seed)
        assert subgrid_random(5, 5, 0.7, seed) == subgrid_random(5, 5, 0.7, seed)
        assert random_lengths(cycle(5), seed) == random_lengths(cycle(5), seed)

    @given(st.integers(1, 12), st.integers(0, 10**6))
    def test_trees(self, n, seed):
        t = tree_random(n, seed)
        assert t.m == n - 1 and t.is_connected

    @given(st.integers(2, 10), st.integers(0, 40), st.integers(0, 10**6))
    def test_connected_random(self, n, m, seed):
        g = connected_random(n, m, seed)
        assert g.is_connected and g.m == max(n - 1, min(m, n * (n - 1) // 2))

    @given(st.integers(0, 10**6))
    def test_length_band(self, seed):
        g = random_lengths(cycle(6), seed, low=Fraction(3, 2))
        assert all(Fraction(3, 2) <= l <= 3 for l in g.edges.values())

    @given(st.integers(2, 8), st.integers(2, 8), st.floats(0.3, 1.0), st.integers(0, 10**6))
    def test_subgrids_are_induced(self, n, m, density, seed):
        g = subgrid_random(n, m, density, seed)
        assert g.is_connected and subgrid_violations(g) == []

    @given(st.integers(0, 10**6))
    def test_degree_two_three_subgrids(self, seed):
        g = subgrid_degrees_2_3(7, 7, 0.75, seed)
        if g is not None:
            assert {g.degree(v) for v in g.vertices} <= {2, 3}
            assert subgrid_violations(g) == [] and g.is_connected


class TestFixtures:
    def test_fig1(self):
        g = fig1_star()
        assert (g.n, g.m) == (7, 6)
        assert g.degree(g.index("x")) == 3
        leaves = [v for v in g.vertices if g.degree(v) == 1]
        dist = all_pairs_shortest(g)
        assert len(leaves) == 3 and all(dist[g.index("x"), v] == 2 for v in leaves)

    def test_fig2(self):
        g = fig2_graph()
        assert (g.n, g.m) == (14, 17)
        assert g.length(g.index("5"), g.index("9")) == 8
        assert g.length(g.index("9"), g.index("14")) == 1
        drawn = {frozenset((str(u), str(v))): l for u, v, l in FIG2_EDGES}
        assert drawn == {frozenset((g.label(u), g.label(v))): l for (u, v), l in g.edges.items()}

    def test_fig7(self):
        g = fig7_caterpillar(Fraction(5, 2))
        assert g.length(g.index("x"), g.index("y")) == Fraction(5, 2)
        assert g.length(g.index("a"), g.index("x")) == 1

    def test_fig8(self):
        g = fig8_path(7)
        assert g.length(g.index("4"), g.index("5")) == 7
        assert g.length(g.index("5"), g.index("6")) == 1

    @pytest.mark.parametrize(
        "name,n", [("fig1", 7), ("fig2", 14), ("fig8:7/2", 8), ("fig7[3]", 6), ("p5", 5), ("K4", 4), ("grid3x4", 12)]
    )
    def test_builtin_names(self, name, n):
        assert builtin_graph(name).n == n

    def test_builtin_z(self):
        g = builtin_graph("fig8:7/2")
        assert g.length(g.index("4"), g.index("5")) == Fraction(7, 2)

    def test_unknown_name(self):
        assert builtin_graph("nonsense.json") is None

    def test_builtin_embeddings(self):
        assert builtin_embedding("fig4").dims == (3, 3)
        assert builtin_embedding("c4").dims == (2, 2)
        assert builtin_embedding("p3").graph.n == 3


class TestLengths:
    @pytest.mark.parametrize("text,value", [("3", 3), ("7/2", Fraction(7, 2)), ("4/2", 2)])
    def test_valid(self, text, value):
        assert parse_length(text) == value

    @pytest.mark.parametrize("text", ["0", "-1", "1.5", "2/0", "a", "0/3"])
    def test_invalid(self, text):
        with pytest.raises(ParseError):
            parse_length(text)


class TestJson:
    def test_fixture_round_trip(self):
        for g in (fig1_star(), fig2_graph(), fig8_path(Fraction(9, 4)), grid(2, 3)):
            doc = InstanceDocument(g, 3)
            assert parse_json(serialize_json(doc)) == doc

    @given(connected_graphs(min_n=1, max_n=9, lengths=rational_lengths()), st.one_of(st.none(), st.integers(0, 5)))
    def test_round_trip(self, g, p):
        doc = InstanceDocument(g, p)
        text = serialize_json(doc)
        assert parse(text) == doc
        assert serialize_json(parse(text)) == text

    def test_edges_sorted(self):
        g = WeightedGraph.from_edges(4, [(3, 2), (0, 3), (1, 0)])
        text = serialize_json(InstanceDocument(g))
        assert text.index("[0, 1,") < text.index("[0, 3,") < text.index("[2, 3,")

    def test_subgrid_example(self):
        assert subgrid_random(4, 4, 0.7, seed=1) == subgrid_random(4, 4, 0.7, seed=1)

    def test_canonical_layout(self):
        text = serialize_json(InstanceDocument(path(2), 2))
        assert text.splitlines()[:3] == ["{", '  "format": "ppcp-instance",', '  "version": 1,']
        assert '[0, 1, "1/1"]' in text

    def _doc(self, **over):
        base = {"format": "ppcp-instance", "version": 1, "n": 2, "edges": [[0, 1, "1"]]}
        base.update(over)
        return json.dumps(base)

    def test_minimal(self):
        assert parse_json(self._doc()).graph.m == 1

    def test_negative_length(self):
        with pytest.raises(ParseError, match="invalid length"):
            parse_json(self._doc(edges=[[0, 1, "-2"]]))

    def test_duplicate_edge(self):
        with pytest.raises(ParseError):
            parse_json(self._doc(edges=[[0, 1, "1"], [1, 0, "2"]]))

    def test_non_uniform_probabilities(self):
        with pytest.raises(UnsupportedFeatureError):
            parse_json(self._doc(scenario_probabilities=[0.5, 0.5]))

    def test_wrong_version(self):
        with pytest.raises(UnsupportedFeatureError):
            parse_json(self._doc(version=2))

    def test_unknown_field(self):
        with pytest.raises(ParseError, match="unknown"):
            parse_json(self._doc(colour="red"))

    def test_bad_endpoint(self):
        with pytest.raises(ParseError):
            parse_json(self._doc(edges=[[0, 5, "1"]]))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_json('{\n  "format": ,\n}')
        assert (info.value.line, info.value.column) == (2, 13)


class TestText:
    def test_example(self):
        doc = parse_text("# tiny\nppcp 3 2 2\n0 1 1\n1 2 5/2  # long\n")
        assert doc.p == 2 and doc.graph.name == "tiny"
        assert doc.graph.length(1, 2) == Fraction(5, 2)

    @given(connected_graphs(min_n=1, max_n=9, lengths=rational_lengths()), st.one_of(st.none(), st.integers(0, 5)))
    def test_round_trip(self, g, p):
        doc = parse_text(serialize_text(InstanceDocument(g, p)))
        assert doc.graph == g and doc.p == p

    @pytest.mark.parametrize(
        "text,line,column",
        [
            ("ppcp 2 1\n0 1 -3\n", 2, 5),
            ("ppcp 2 1\n0 7 1\n", 2, 3),
            ("ppcp 2 2\n0 1 1\n1 0 2\n", 3, 1),
            ("ppcp 3 1\n1 1 1\n", 2, 1),
            ("ppcp x 1\n", 1, 6),
            ("graph 2 1\n", 1, 1),
            ("ppcp 2 1\n0 1\n", 2, 1),
        ],
    )
    def test_error_positions(self, text, line, column):
        with pytest.raises(ParseError) as info:
            parse_text(text)
        assert (info.value.line, info.value.column) == (line, column)
        assert str(info.value).startswith(f"line {line}, column {column}: ")

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError, match="announces 2"):
            parse_text("ppcp 3 2\n0 1 1\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="missing header"):
            parse_text("# only a comment\n")


class TestFiles:
    def test_dump_and_load(self, tmp_path):
        doc = InstanceDocument(fig2_graph(), 2)
        dump(doc, tmp_path / "a.json")
        assert load(tmp_path / "a.json") == doc
        dump(doc, tmp_path / "a.txt")
        back = load(tmp_path / "a.txt")
        # the text format keeps structure and lengths, not labels
        assert back.graph.edges == doc.graph.edges and back.p == 2
        assert back.graph.labels is None

    def test_unknown_serializer(self):
        with pytest.raises(ValueError):
            serialize(InstanceDocument(path(2)), "xml")


class TestEmbeddingFiles:
    @pytest.mark.parametrize("emb", [fig4_k4_embedding(), c4_embedding()])
    def test_round_trip(self, emb, tmp_path):
        text = serialize_embedding(emb)
        back = parse_embedding(text)
        assert back.graph == emb.graph and back.dims == emb.dims
        assert back.coords == emb.coords and back.paths == emb.paths
        (tmp_path / "e.json").write_text(text)
        assert load_embedding(tmp_path / "e.json").paths == emb.paths

    def test_invalid_path_is_reported(self):
        obj = json.loads(serialize_embedding(c4_embedding()))
        obj["paths"][0][2] = [[0, 0], [1, 1]]
        with pytest.raises(ParseError):
            parse_embedding(json.dumps(obj))

    def test_wrong_format(self):
        with pytest.raises(ParseError):
            parse_embedding(serialize_json(InstanceDocument(path(2))))
