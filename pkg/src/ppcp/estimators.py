"""Estimator-style wrappers around the solvers.

``fit(graph)`` picks the centers; ``predict()`` assigns every vertex to its
nearest center (smallest center id on ties), which is the evacuation plan
when nothing is on fire.

>>> from ppcp.instances import fig8_path
>>> est = PPCPSolver(p=4).fit(fig8_path(4))
>>> est.centers_, est.value_
((0, 3, 4, 7), Fraction(2, 1))
"""

from __future__ import annotations

from typing import Iterable

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .approx import (
    approx_mac_pcenter,
    approx_partial_pcenter,
    approx_ppcp,
    tree_mac_pcenter_exact,
    tree_pcenter_exact,
)
from .exact import (
    Status,
    solve_mac_pcenter_exact,
    solve_partial_pcenter_exact,
    solve_pcenter_exact,
    solve_ppcp_exact,
)
from .graph import GraphError, WeightedGraph, _checked, all_pairs_shortest

_METHODS = ("exact", "approx", "tree")


def check_graph(graph) -> WeightedGraph:
    """Input validation: a connected :class:`WeightedGraph`."""
    if not isinstance(graph, WeightedGraph):
        raise TypeError(f"expected a WeightedGraph, got {type(graph).__name__}")
    if not graph.is_connected:
        raise GraphError(f"{graph!r} is not connected")
    return graph


def check_centers(graph: WeightedGraph, centers: Iterable[int]) -> tuple[int, ...]:
    """Sorted, de-duplicated, range-checked center ids."""
    return tuple(_checked(graph, centers))


class _CenterEstimator(BaseEstimator):
    def __init__(self, p: int = 2, method: str = "exact"):
        self.p = p
        self.method = method

    def _validate(self, graph) -> WeightedGraph:
        if not isinstance(self.p, int) or self.p < 0:
            raise ValueError(f"p must be a nonnegative integer, got {self.p!r}")
        if self.method not in self._methods:
            raise ValueError(f"method must be one of {self._methods}, got {self.method!r}")
        return check_graph(graph)

    def _solve(self, graph: WeightedGraph):  # pragma: no cover - overridden
        raise NotImplementedError

    def fit(self, graph, y=None):
        g = self._validate(graph)
        report = self._solve(g)
        if report.status is Status.INFEASIBLE:
            raise GraphError(f"no feasible solution with p={self.p}")
        self.graph_ = g
        self.report_ = report
        self.centers_ = tuple(report.solution)
        self.value_ = report.value
        return self

    def _fitted(self):
        if not hasattr(self, "centers_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")

    def predict(self, vertices: Iterable[int] | None = None) -> list[int]:
        """Nearest center of each vertex (all vertices by default)."""
        self._fitted()
        g = self.graph_
        vs = list(range(g.n)) if vertices is None else list(vertices)
        _checked(g, vs)
        rows = all_pairs_shortest(g).scaled
        return [min(self.centers_, key=lambda c: (rows[v][c], c)) for v in vs]

    def fit_predict(self, graph, y=None) -> list[int]:
        return self.fit(graph).predict()


class PPCPSolver(_CenterEstimator):
    """Minimum probabilistic radius; ``method`` is ``exact`` or ``approx``."""

    _methods = ("exact", "approx")

    def _solve(self, g):
        if self.method == "exact":
            return solve_ppcp_exact(g, self.p)
        return approx_ppcp(g, self.p)


class MacPCenter(_CenterEstimator):
    """Minimum radius among center sets hitting every MAC."""

    _methods = _METHODS

    def _solve(self, g):
        if self.method == "exact":
            return solve_mac_pcenter_exact(g, self.p)
        if self.method == "approx":
            return approx_mac_pcenter(g, self.p)
        return tree_mac_pcenter_exact(g, self.p)


class PCenter(_CenterEstimator):
    """Classic p-center (``tree`` needs a tree)."""

    _methods = ("exact", "tree")

    def _solve(self, g):
        if self.method == "exact":
            return solve_pcenter_exact(g, self.p)
        return tree_pcenter_exact(g, self.p)


class PartialPCenter(_CenterEstimator):
    """p-center judged on the ``targets`` only."""

    _methods = ("exact", "approx")

    def __init__(self, p: int = 1, method: str = "exact", targets: tuple[int, ...] = ()):
        super().__init__(p=p, method=method)
        self.targets = targets

    def _solve(self, g):
        targets = check_centers(g, self.targets)
        if self.method == "exact":
            return solve_partial_pcenter_exact(g, targets, self.p)
        return approx_partial_pcenter(g, targets, self.p)
