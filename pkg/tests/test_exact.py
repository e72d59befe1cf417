from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import connected_graphs, rational_lengths
from ppcp.evacuation import expected_radius, radius
from ppcp.exact import (
    GuardExceeded,
    Status,
    is_dominating,
    max_strong_independent_set,
    min_dominating_set,
    min_partial_dominating_set,
    min_vertex_cover,
    solve_mac_pcenter_exact,
    solve_partial_pcenter_exact,
    solve_pcenter_exact,
    solve_ppcp_exact,
)
from ppcp.feasibility import mac_decomposition
from ppcp.graph import INF, metric_closure, threshold_graph
from ppcp.instances import complete, connected_random, cycle, fig1_star, fig8_path, grid, path, star


def labels(g, sol):
    return {g.label(v) for v in sol}


class TestPPCP:
    def test_fig8(self):
        g = fig8_path(4)
        rep = solve_ppcp_exact(g, 4)
        assert rep.value == 2 and rep.optimal
        assert labels(g, rep.solution) == {"1", "4", "5", "8"}

    def test_k2(self):
        rep = solve_ppcp_exact(path(2), 2)
        assert rep.value == 0 and rep.solution == (0, 1)

    def test_fig1_infeasible(self):
        rep = solve_ppcp_exact(fig1_star(), 2)
        assert rep.status is Status.INFEASIBLE and rep.value == INF

    def test_p5_two_centers(self):
        # hand check: {0, 4} is the only feasible pair
        assert solve_ppcp_exact(path(5), 2).solution == (0, 4)

    def test_guard(self, monkeypatch):
        monkeypatch.delenv("PPCP_GUARD_OVERRIDE", raising=False)
        with pytest.raises(GuardExceeded):
            solve_ppcp_exact(path(17), 2)
        with pytest.raises(GuardExceeded):
            solve_ppcp_exact(cycle(8), 6)

    def test_guard_env_override(self, monkeypatch):
        monkeypatch.setenv("PPCP_GUARD_OVERRIDE", "1")
        assert solve_ppcp_exact(path(17), 2).value > 0

    @given(connected_graphs(min_n=2, max_n=6, lengths=rational_lengths()), st.integers(2, 4))
    def test_matches_brute_force(self, g, p):
        rep = solve_ppcp_exact(g, p)
        want, _ = oracles.brute_ppcp(g.n, g.edges, p)
        assert rep.value == want
        if want != INF:
            assert expected_radius(g, rep.solution) == want
            best = [
                c
                for k in range(1, p + 1)
                for c in combinations(range(g.n), k)
                if expected_radius(g, c) == want
            ]
            assert rep.solution == min(best)

    @given(connected_graphs(min_n=2, max_n=7))
    def test_non_increasing_in_p(self, g):
        values = [solve_ppcp_exact(g, p).value for p in range(2, 6)]
        assert values == sorted(values, reverse=True)


class TestPCenter:
    def test_fig1(self):
        assert solve_pcenter_exact(fig1_star(), 2).value == 2

    def test_all_centers(self):
        assert solve_pcenter_exact(cycle(5), 5).value == 0

    def test_c6(self):
        assert solve_pcenter_exact(cycle(6), 2).value == 1

    @given(connected_graphs(min_n=1, max_n=7, lengths=rational_lengths()), st.integers(1, 3))
    def test_matches_brute_force(self, g, p):
        assert solve_pcenter_exact(g, p).value == oracles.brute_pcenter(g.n, g.edges, p)[0]


class TestMacPCenter:
    def test_fig8(self):
        g = fig8_path(4)
        rep = solve_mac_pcenter_exact(g, 4)
        assert rep.value == 1
        # the drawn solution is optimal too; the oracle reports the lex-smallest one
        assert radius(g, [g.index(x) for x in "1368"]) == 1
        assert labels(g, rep.solution) == {"1", "3", "5", "8"}

    def test_p4(self):
        rep = solve_mac_pcenter_exact(path(4), 2)
        assert (rep.value, rep.solution) == (1, (0, 3))

    def test_c4(self):
        assert solve_mac_pcenter_exact(cycle(4), 2).value == 1

    def test_infeasible(self):
        assert solve_mac_pcenter_exact(star(3), 2).status is Status.INFEASIBLE

    @given(connected_graphs(min_n=2, max_n=7, lengths=rational_lengths()), st.integers(2, 4))
    def test_matches_brute_force(self, g, p):
        macs = [m.vertices for m in mac_decomposition(g).macs]
        want = oracles.brute_pcenter(g.n, g.edges, p, macs=macs)[0]
        assert solve_mac_pcenter_exact(g, p).value == want

    @given(connected_graphs(min_n=2, max_n=7), st.integers(2, 4))
    def test_ordering_of_optima(self, g, p):
        mac = solve_mac_pcenter_exact(g, p)
        if mac.status is Status.INFEASIBLE:
            return
        assert mac.value >= solve_pcenter_exact(g, p).value
        best = solve_ppcp_exact(g, p)
        assert best.value >= radius(g, best.solution) >= mac.value


class TestPartialPCenter:
    def test_whole_vertex_set(self):
        g = cycle(6)
        assert solve_partial_pcenter_exact(g, g.vertices, 2).value == solve_pcenter_exact(g, 2).value

    def test_p4_ends(self):
        rep = solve_partial_pcenter_exact(path(4), [0, 3], 1)
        assert rep.value == 2 and rep.solution in ((1,), (2,))

    def test_empty_targets(self):
        rep = solve_partial_pcenter_exact(path(4), [], 0)
        assert (rep.value, rep.solution) == (0, ())

    def test_no_budget(self):
        assert solve_partial_pcenter_exact(path(4), [1], 0).status is Status.INFEASIBLE

    @given(connected_graphs(min_n=1, max_n=7, lengths=rational_lengths()), st.data())
    def test_matches_brute_force(self, g, data):
        u = data.draw(st.lists(st.integers(0, g.n - 1), unique=True, min_size=1))
        p = data.draw(st.integers(1, 3))
        want = oracles.brute_pcenter(g.n, g.edges, p, targets=u)[0]
        assert solve_partial_pcenter_exact(g, u, p).value == want


class TestCoversAndDomination:
    @pytest.mark.parametrize("g,tau", [(complete(4), 3), (path(4), 2), (cycle(5), 3)])
    def test_vertex_cover_values(self, g, tau):
        rep = min_vertex_cover(g)
        assert rep.value == tau
        assert all(u in rep.solution or v in rep.solution for u, v in g.edges)

    @pytest.mark.parametrize("g,gamma", [(star(3), 1), (cycle(4), 2), (grid(3, 3), 3)])
    def test_dominating_values(self, g, gamma):
        rep = min_dominating_set(g)
        assert rep.value == gamma and is_dominating(g, rep.solution)

    @given(connected_graphs(min_n=1, max_n=10))
    def test_vertex_cover_matches_brute_force(self, g):
        assert min_vertex_cover(g).value == oracles.min_vertex_cover_bruteforce(g.n, g.edges)

    @given(connected_graphs(min_n=1, max_n=10))
    def test_dominating_matches_brute_force(self, g):
        rep = min_dominating_set(g)
        assert rep.value == oracles.min_dominating_bruteforce(g.n, g.edges)
        assert oracles.is_dominating(g.n, g.edges, rep.solution)

    def test_larger_instances_within_guard(self):
        g = connected_random(40, 60, 3)
        vc = min_vertex_cover(g)
        assert all(u in vc.solution or v in vc.solution for u, v in g.edges)
        ds = min_dominating_set(grid(6, 6))
        assert ds.value == 10

    def test_cover_guard(self):
        with pytest.raises(GuardExceeded):
            min_vertex_cover(path(41))


class TestPartialDominationDuality:
    def test_empty_targets(self):
        g = path(3)
        assert min_partial_dominating_set(g, []).value == 0
        assert max_strong_independent_set(g, []).value == 0

    def test_k3(self):
        g = complete(3)
        assert min_partial_dominating_set(g, g.vertices).value == 1
        assert max_strong_independent_set(g, g.vertices).value == 1

    def test_p4_threshold_one(self):
        h = threshold_graph(metric_closure(path(4)), 1)
        pds = min_partial_dominating_set(h, h.vertices).value
        sis = max_strong_independent_set(h, h.vertices).value
        assert pds == 2 and sis <= 2 and sis <= pds

    @given(connected_graphs(min_n=1, max_n=8, lengths=rational_lengths()), st.data())
    def test_weak_duality(self, g, data):
        d = data.draw(st.sampled_from(sorted({l for r in _dist(g) for l in r})))
        h = threshold_graph(metric_closure(g), d) if g.n > 1 else g
        u = data.draw(st.lists(st.integers(0, g.n - 1), unique=True))
        pds = min_partial_dominating_set(h, u)
        sis = max_strong_independent_set(h, u)
        assert sis.value <= pds.value
        assert oracles.is_dominating(h.n, h.edges, pds.solution, u)
        assert pds.value == oracles.min_dominating_bruteforce(h.n, h.edges, u)


def _dist(g):
    from ppcp.graph import all_pairs_shortest

    return all_pairs_shortest(g).to_lists()


def test_guard_message_mentions_override():
    with pytest.raises(GuardExceeded, match="PPCP_GUARD_OVERRIDE"):
        min_partial_dominating_set(path(17), [0])


def test_values_are_exact():
    rep = solve_ppcp_exact(fig8_path(Fraction(7, 2)), 4)
    assert isinstance(rep.value, Fraction)
    assert rep.value == min(Fraction(7, 4) + 1, Fraction(2))
