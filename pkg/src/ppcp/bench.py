"""Seeded ratio benchmarks: approximation versus exact oracle.

Every instance is generated from ``(suite, seed, index)`` alone, so records
can be computed in any order or in parallel and still come out identical.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .approx import approx_mac_pcenter, approx_partial_pcenter, approx_ppcp, tree_mac_pcenter_exact
from .evacuation import expected_radius
from .exact import solve_mac_pcenter_exact, solve_partial_pcenter_exact, solve_ppcp_exact
from .feasibility import mac_decomposition
from .graph import INF, Length, WeightedGraph, format_length
from .instances import connected_random, tree_random

COLUMNS = ("instance", "n", "m", "p", "avgdeg", "exact", "approx", "ratio", "bound")
TIME_COLUMNS = ("time_exact", "time_approx")


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    n: int
    m: int
    p: int
    avgdeg: Fraction
    exact: Length
    approx: Length
    ratio: Length
    bound: Fraction
    time_exact: float = 0.0
    time_approx: float = 0.0

    @property
    def within_bound(self) -> bool:
        return self.ratio <= self.bound

    def row(self, timings: bool = False) -> list[str]:
        out = [
            self.instance,
            str(self.n),
            str(self.m),
            str(self.p),
            format_length(self.avgdeg),
            format_length(self.exact),
            format_length(self.approx),
            format_length(self.ratio),
            format_length(self.bound),
        ]
        if timings:
            out += [f"{self.time_exact:.6f}", f"{self.time_approx:.6f}"]
        return out


def ratio(approx: Length, exact: Length) -> Length:
    if approx == exact:
        return Fraction(1)
    if exact == 0 or exact == INF:
        return INF
    return Fraction(approx) / Fraction(exact)


def _rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def _random_graph(rng: random.Random, low: int, high: int, max_p: int) -> tuple[WeightedGraph, int]:
    """Connected uniform graph whose MAC count leaves room for ``p <= max_p``."""
    while True:
        n = rng.randint(low, high)
        m = rng.randint(n - 1, min(n * (n - 1) // 2, 2 * n))
        g = connected_random(n, m, rng.randrange(2**31))
        need = mac_decomposition(g).min_feasible_p
        if need <= max_p:
            return g, rng.randint(need, max_p)


def _timed(fn: Callable, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def _mac(name: str, seed: int, i: int) -> BenchRecord:
    rng = _rng("ratio-mac", seed, i)
    g, p = _random_graph(rng, 4, 12, 4)
    ex, te = _timed(solve_mac_pcenter_exact, g, p)
    ap, ta = _timed(approx_mac_pcenter, g, p)
    return BenchRecord(name, g.n, g.m, p, g.average_degree, ex.value, ap.value,
                       ratio(ap.value, ex.value), Fraction(2), te, ta)  # fmt: skip


def _ppcp(name: str, seed: int, i: int) -> BenchRecord:
    rng = _rng("ratio-ppcp", seed, i)
    g, p = _random_graph(rng, 4, 12, 5)
    ex, te = _timed(solve_ppcp_exact, g, p)
    ap, ta = _timed(approx_ppcp, g, p)
    return BenchRecord(name, g.n, g.m, p, g.average_degree, ex.value, ap.value,
                       ratio(ap.value, ex.value), ap.ratio_bound, te, ta)  # fmt: skip


def _partial(name: str, seed: int, i: int) -> BenchRecord:
    rng = _rng("ratio-partial", seed, i)
    n = rng.randint(3, 10)
    m = rng.randint(n - 1, min(n * (n - 1) // 2, 2 * n))
    g = connected_random(n, m, rng.randrange(2**31))
    targets = sorted(rng.sample(range(n), rng.randint(1, n)))
    p = rng.randint(1, 3)
    ex, te = _timed(solve_partial_pcenter_exact, g, targets, p)
    ap, ta = _timed(approx_partial_pcenter, g, targets, p)
    return BenchRecord(name, g.n, g.m, p, g.average_degree, ex.value, ap.value,
                       ratio(ap.value, ex.value), Fraction(2), te, ta)  # fmt: skip


def _tree(name: str, seed: int, i: int) -> BenchRecord:
    """Probabilistic radius of the optimal tree MAC p-center against the PpCP optimum."""
    rng = _rng("ratio-tree", seed, i)
    while True:
        t = tree_random(rng.randint(2, 12), rng.randrange(2**31))
        need = max(2, sum(1 for v in t.vertices if t.degree(v) == 1))
        if need <= 5:
            break
    p = rng.randint(need, 5)
    ex, te = _timed(solve_ppcp_exact, t, p)
    t0 = time.perf_counter()
    tm = tree_mac_pcenter_exact(t, p)
    value = expected_radius(t, tm.solution)
    ta = time.perf_counter() - t0
    return BenchRecord(name, t.n, t.m, p, t.average_degree, ex.value, value,
                       ratio(value, ex.value), Fraction(3), te, ta)  # fmt: skip


SUITES: dict[str, Callable[[str, int, int], BenchRecord]] = {
    "ratio-mac": _mac,
    "ratio-ppcp": _ppcp,
    "ratio-partial": _partial,
    "ratio-tree": _tree,
}


def _task(args: tuple[str, int, int]) -> BenchRecord:
    suite, seed, i = args
    return SUITES[suite](f"{suite}-{i:04d}", seed, i)


def run_suite(suite: str, seed: int = 0, count: int = 200, parallel: int = 1) -> list[BenchRecord]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    tasks = [(suite, seed, i) for i in range(count)]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            records = list(pool.map(_task, tasks, chunksize=max(1, count // (4 * parallel))))
    else:
        records = [_task(t) for t in tasks]
    return sorted(records, key=lambda r: r.instance)


def to_csv(records: list[BenchRecord], timings: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS + (TIME_COLUMNS if timings else ()))
    for r in records:
        w.writerow(r.row(timings))
    return buf.getvalue()


def summary(records: list[BenchRecord]) -> dict:
    worst = max((r.ratio for r in records), default=Fraction(1))
    return {
        "count": len(records),
        "max_ratio": format_length(worst),
        "violations": sum(not r.within_bound for r in records),
    }


def to_json(suite: str, seed: int, records: list[BenchRecord], timings: bool = False) -> str:
    cols = COLUMNS + (TIME_COLUMNS if timings else ())
    doc = {
        "format": "ppcp-bench",
        "version": 1,
        "suite": suite,
        "seed": seed,
        **summary(records),
        "records": [dict(zip(cols, r.row(timings))) for r in records],
    }
    return json.dumps(doc, indent=2) + "\n"
