from __future__ import annotations

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ppcp.graph import WeightedGraph

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def connected_graphs(draw, min_n=2, max_n=7, lengths=None, extra=None):
    """Random spanning tree plus extra edges; ``lengths`` draws one length."""
    n = draw(st.integers(min_n, max_n))
    edges = {}
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges[(j, i)] = None
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        more = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=extra or len(pairs)))
        for e in more:
            edges[e] = None
    length = lengths if lengths is not None else st.just(Fraction(1))
    items = [(u, v, draw(length)) for (u, v) in edges]
    return WeightedGraph.from_edges(n, items)


def rational_lengths(low=1, high=6, den=3):
    return st.builds(Fraction, st.integers(low, high * den), st.just(den))


def banded_lengths(base=Fraction(1), steps=4):
    """Lengths in ``[base, 2 base]``."""
    return st.integers(0, steps).map(lambda i: base * Fraction(steps + i, steps))


@st.composite
def trees(draw, min_n=2, max_n=9, lengths=None):
    n = draw(st.integers(min_n, max_n))
    length = lengths if lengths is not None else st.just(Fraction(1))
    items = [(draw(st.integers(0, i - 1)), i, draw(length)) for i in range(1, n)]
    return WeightedGraph.from_edges(n, items)


@st.composite
def graph_and_subset(draw, graphs, min_size=0):
    g = draw(graphs)
    c = draw(st.lists(st.integers(0, g.n - 1), unique=True, min_size=min_size, max_size=g.n))
    return g, sorted(c)


@pytest.fixture
def edges_of():
    return lambda g: dict(g.edges)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
