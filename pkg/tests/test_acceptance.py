"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import itertools
import json
import random
import statistics
import time
from typing import Callable

import pytest

from capfactor import figures
from capfactor.cfcore import (
    enumerate_kcfs,
    extend_kcf,
    kcf_membership,
    split_kcf,
    verify_kcf,
)
from capfactor.classify import classify_edges
from capfactor.cli import run
from capfactor.maxflow import flow_value, max_flow
from capfactor.netmodel import CyclicNetworkError, Edge, Network, is_acyclic, remove_edges
from capfactor.reductions import NaesatInstance, max_partially_connected_cut, reduce_naesat
from oracles import (
    all_flows,
    in_some_max_flow,
    kcf_table,
    min_bipartition_cut,
    nae_brute,
    nx_flow,
    on_some_path,
    partially_connected_cut_table,
    random_network,
)
from test_classify import fig5_variant
from test_reductions import all_instances, check_line_correspondence

RESULTS: list[str] = []


def _cli(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def _timed(fn: Callable[[], object], repeat: int = 5) -> tuple[object, float]:
    """Median wall time in seconds over ``repeat`` calls after one warm-up call."""
    result = fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, statistics.median(times)


def c1() -> tuple[bool, str]:
    (code, out), dt = _timed(lambda: _cli("classify", "builtin:fig2"))
    doc = json.loads(out)
    ok = code == 0 and doc["D"] == [1, 2, 3, 5, 6, 7] and doc["H"] == [4] and dt < 0.010
    return ok, f"D={doc['D']} H={doc['H']} in {dt * 1e3:.2f} ms (limit 10 ms)"


def c2() -> tuple[bool, str]:
    (code, out), dt = _timed(lambda: _cli("enumerate", "builtin:fig7", "--k", "1"))
    got = {frozenset(f) for f in json.loads(out)["factors"]}
    want = {frozenset(f) for f in [(1,), (2,), (7,), (3, 5), (3, 6), (4, 5), (4, 6)]}
    ok = code == 0 and got == want and len(json.loads(out)["factors"]) == 7 and dt < 0.100
    return ok, f"{len(got)} factors, exact match={got == want}, {dt * 1e3:.2f} ms (limit 100 ms)"


def c3() -> tuple[bool, str]:
    counts = []
    dt4 = 0.0
    for n in (1, 2, 3, 4):
        net = figures.exponential_family(n)
        t0 = time.perf_counter()
        counts.append(len(enumerate_kcfs(net, 1)))
        if n == 4:
            dt4 = time.perf_counter() - t0
    ok = counts == [3**n + 1 for n in (1, 2, 3, 4)] and dt4 < 10
    return ok, f"counts={counts} (expect [4, 10, 28, 82]), n=4 in {dt4:.3f} s (limit 10 s)"


def c4() -> tuple[bool, str]:
    n = figures.fig4()
    a = verify_kcf(n, {4, 5}, 2)
    b = verify_kcf(remove_edges(n, {4, 5}), {7, 9}, 1)
    c = verify_kcf(n, {4, 5, 7, 9}, 3)
    return (a, b, c) == (True, True, False), f"verify results {a}, {b}, {c} (expect True, True, False)"


def c5() -> tuple[bool, str]:
    n = figures.fig3()
    h = classify_edges(n, method="enumerate").h_set
    h_edges = {(n.edge(e).tail, n.edge(e).head) for e in h}
    try:
        kcf_membership(n, 3, 1)
        refused = False
    except CyclicNetworkError:
        refused = True
    ok = h_edges == {("v1", "v2"), ("v2", "v1")} and refused
    return ok, f"H={sorted(h_edges)}, membership shortcut refused cyclic input: {refused}"


def c6() -> tuple[bool, str]:
    matching = []
    for flip8, flip15 in itertools.product((False, True), repeat=2):
        v = fig5_variant(flip8, flip15)
        d = set(classify_edges(v, strict=False).d_set)
        oracle_d = in_some_max_flow(v) & on_some_path(v)
        if is_acyclic(v):
            oracle_d &= set().union(*kcf_table(v, 1))
        if d == oracle_d and nx_flow(v) == 3 and len(d) == 11 and len(v.edges) - len(d) == 4:
            matching.append((flip8, flip15))
    n = figures.fig5()
    r = classify_edges(n, strict=False)
    golden = (r.d_set, r.h_set) == ((1, 2, 3, 5, 6, 7, 9, 10, 11, 12, 15), (4, 8, 13, 14))
    ok = max_flow(n).value == 3 and len(r.d_set) == 11 and len(r.h_set) == 4 and golden and matching == [(False, False)]
    return ok, f"flow={max_flow(n).value} |D|={len(r.d_set)} |H|={len(r.h_set)} H={list(r.h_set)}; orientations reproducing 3/11/4: {matching}"


def c7() -> tuple[bool, str]:
    rng = random.Random(2024)
    t0 = time.perf_counter()
    violations, nets, checks = 0, 0, 0
    while nets < 200:
        n = random_network(rng, rng.randint(2, 8), rng.randint(1, 14), acyclic=True)
        nets += 1
        flows = all_flows(n)
        c = int(flows[0])
        checks += 1
        violations += max_flow(n).value != min_bipartition_cut(n) or c != max_flow(n).value
        tables = {k: kcf_table(n, k, flows) for k in range(1, c + 1)}
        for k, table in tables.items():
            covered = set().union(*table)
            for e in n.edge_ids:
                checks += 1
                violations += bool(kcf_membership(n, e, k)) != (e in covered)
        if c >= 1:
            checks += 1
            violations += set(classify_edges(n, strict=False).d_set) != set().union(*tables[1])
        if c >= 2:
            for e in on_some_path(n):
                checks += 1
                violations += not kcf_membership(n, e, 2)
        for k, table in tables.items():
            for f in sorted(table, key=sorted):
                if k < c:
                    g = extend_kcf(n, f, k)
                    checks += 1
                    violations += not (set(f) <= set(g) and verify_kcf(n, g, k + 1))
                for m in range(1, k):
                    a, b = split_kcf(n, f, k, m)
                    checks += 1
                    violations += not (verify_kcf(n, a, m) and verify_kcf(remove_edges(n, a), b, k - m))
    dt = time.perf_counter() - t0
    return violations == 0 and dt < 60, f"{nets} DAGs, {checks} checks, {violations} violations, {dt:.1f} s (limit 60 s)"


def c8() -> tuple[bool, str]:
    rng = random.Random(77)
    nets = violations = 0
    while nets < 100:
        n = random_network(rng, rng.randint(2, 10), rng.randint(1, 16), acyclic=rng.random() < 0.5)
        if flow_value(n) != 1:
            continue
        nets += 1
        violations += set(map(frozenset, enumerate_kcfs(n, 1))) != partially_connected_cut_table(n)
    return violations == 0, f"{nets} networks with flow 1, {violations} violations"


def c9() -> tuple[bool, str]:
    t0 = time.perf_counter()
    count = violations = 0
    for nv in (1, 2, 3):
        for m in (1, 2):
            for t in all_instances(nv, m):
                r = reduce_naesat(t)
                count += 1
                violations += nae_brute(nv, t.clauses) != (max_partially_connected_cut(r.network)[0] >= r.k)
    fig6 = reduce_naesat(NaesatInstance(3, figures.FIG6_CLAUSES))
    best = max_partially_connected_cut(fig6.network)[0]
    count += 1
    violations += nae_brute(3, figures.FIG6_CLAUSES) != (best >= fig6.k)
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 120 and best == fig6.k == 102
    return ok, f"{count} instances, {violations} violations, fig6 gadget max partially connected cut = {best} (k={fig6.k}), {dt:.1f} s (limit 120 s)"


def c10() -> tuple[bool, str]:
    rng = random.Random(10)
    nets = [figures.fig7()] + [
        random_network(rng, rng.randint(2, 6), rng.randint(1, 10), acyclic=rng.random() < 0.5) for _ in range(60)
    ]
    violations = 0
    for n in nets:
        try:
            check_line_correspondence(n)
        except AssertionError:
            violations += 1
    return violations == 0, f"{len(nets)} networks (fig7 + {len(nets) - 1} random), {violations} violations"


def connected_dag(rng: random.Random, nv: int, ne: int) -> Network:
    """Random DAG in which every vertex has an edge from below and an edge to above."""
    names = ["s", *(f"v{i}" for i in range(1, nv - 1)), "t"]
    pairs = [(rng.randrange(0, j), j) for j in range(1, nv)]
    pairs += [(i, rng.randrange(i + 1, nv)) for i in range(nv - 1)]
    while len(pairs) < ne:
        a, b = sorted(rng.sample(range(nv), 2))
        pairs.append((a, b))
    edges = tuple(Edge(i, names[a], names[b]) for i, (a, b) in enumerate(pairs, start=1))
    return Network(tuple(names), edges, "s", "t")


def c11() -> tuple[bool, str]:
    n = connected_dag(random.Random(11), 1000, 5000)
    classify_edges(figures.fig2())  # compile outside the timed region
    t0 = time.perf_counter()
    r = classify_edges(n, strict=False)
    dt = time.perf_counter() - t0
    return dt < 5 and not r.pruned, f"|V|=1000 |E|=5000: |D|={len(r.d_set)} |H|={len(r.h_set)} in {dt:.3f} s (limit 5 s)"


CRITERIA = [
    (1, "fig2 classification", c1),
    (2, "fig7 enumeration", c2),
    (3, "fig1 family counts", c3),
    (4, "fig4 regression", c4),
    (5, "fig3 cyclic network", c5),
    (6, "fig5 D/H partition", c6),
    (7, "property suite on random DAGs", c7),
    (8, "cut characterisation at flow 1", c8),
    (9, "NAESAT reduction equivalence", c9),
    (10, "line-network correspondence", c10),
    (11, "classification performance", c11),
]


def _line(num: int, title: str, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {title}: {detail}"


@pytest.mark.parametrize("num, title, check", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, check):
    ok, detail = check()
    line = _line(num, title, ok, detail)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, title, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, title, ok, detail), flush=True)
    raise SystemExit(1 if failed else 0)
