"""Capacity factors: verification, enumeration, rank and decomposition.

A ``k``-CF of ``N`` is a non-empty edge set ``F`` with
``C(N \\ F) <= C(N) - k`` such that every proper subset leaves the flow
above ``C(N) - k``.  Since restoring one edge lifts the flow by at most one,
minimality only needs the ``|F|`` single-edge restorations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .maxflow import flow_value, max_flow, min_cut
from .netmodel import (
    CyclicNetworkError,
    EdgeSet,
    MulticastNetwork,
    Network,
    NetworkError,
    _reach,
    as_edge_set,
    is_acyclic,
    normalize,
    remove_edges,
)


class FactorError(ValueError):
    """Raised when an argument violates a capacity-factor precondition."""


@dataclass(frozen=True)
class CapacityFactorReport:
    factor: EdgeSet
    order: int
    flow_before: int
    flow_after: int


@dataclass(frozen=True)
class RankResult:
    edge: int
    rank: float  # int, or math.inf when no factor contains the edge
    witness: EdgeSet | None = None

    def to_dict(self) -> dict:
        finite = self.rank != math.inf
        return {
            "edge": self.edge,
            "rank": int(self.rank) if finite else "inf",
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class Membership:
    """Answer of :func:`kcf_membership`; truthy when the edge is covered."""

    member: bool
    path: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.member


def _check_order(n: Network, k: int) -> int:
    c = flow_value(n)
    if not 1 <= k <= c:
        raise FactorError(f"order k={k} outside 1..{c}")
    return c


def verify_kcf(n: Network, f: Iterable[int], k: int) -> bool:
    """Whether ``f`` is a ``k``-th order capacity factor of ``n``."""
    f = n.check_edges(f)
    if not f:
        raise FactorError("a capacity factor is non-empty")
    c = _check_order(n, k)
    bound = c - k
    if flow_value(n, f, limit=bound + 1) > bound:
        return False
    for e in f:
        rest = tuple(x for x in f if x != e)
        if flow_value(n, rest, limit=bound + 1) <= bound:
            return False
    return True


def kcf_report(n: Network, f: Iterable[int], k: int) -> CapacityFactorReport:
    f = n.check_edges(f)
    if not verify_kcf(n, f, k):
        raise FactorError(f"{list(f)} is not a {k}-CF")
    return CapacityFactorReport(f, k, flow_value(n), flow_value(n, f))


# -- level-wise search ---------------------------------------------------------


def _edge_groups(n: Network) -> tuple[np.ndarray, np.ndarray]:
    m = len(n.edges)
    return np.arange(m + 1, dtype=np.int64), np.arange(m, dtype=np.int64)


def _level_search(
    n: Network,
    groups: tuple[np.ndarray, np.ndarray],
    cand: Sequence[int],
    threshold: int,
    max_size: int,
    required: int = -1,
    stop_at_first_level: bool = False,
) -> list[tuple[int, ...]]:
    """Minimal element sets whose deletion leaves flow ``<= threshold``.

    Elements are indices into ``groups`` (CSR lists of edge positions).
    Results come out by size, then lexicographically on ``cand`` order.
    """
    a = n.arrays
    cand_arr = np.asarray(cand, dtype=np.int64)
    src = n.vertex_index[n.source]
    dst = n.vertex_index[n.sink]
    base_dead = np.zeros(len(n.edges), np.int32)
    found: list[tuple[int, ...]] = []
    for size in range(1, min(max_size, len(cand_arr)) + 1):
        found_ptr = np.zeros(len(found) + 1, np.int64)
        np.cumsum([len(f) for f in found], out=found_ptr[1:])
        found_item = np.fromiter((x for f in found for x in f), np.int64, int(found_ptr[-1]))
        level = K.scan_level(
            a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads, base_dead, src, dst,
            groups[0], groups[1], cand_arr, size, threshold, found_ptr, found_item, required,
        )
        found.extend(tuple(int(x) for x in row) for row in level)
        if stop_at_first_level and len(level):
            break
    return found


def _candidates(n: Network, k: int, prune: bool) -> list[int]:
    """Edge positions that may belong to a ``k``-CF."""
    _, off_path = normalize(n)
    skip = set(off_path)
    if prune and k == 1 and is_acyclic(n):
        from .classify import classify_edges

        skip |= set(classify_edges(n, strict=False).h_set)
    return [p for p, e in enumerate(n.edges) if e.id not in skip]


def enumerate_kcfs(n: Network, k: int, max_size: int | None = None, prune: bool = True) -> list[EdgeSet]:
    """All ``k``-CFs (optionally only those with at most ``max_size`` edges).

    Edges on no source-to-sink walk never matter for the flow and are left
    out.  With ``prune`` and ``k == 1`` on an acyclic network the search is
    further restricted to the D-set.  Output is sorted by size, then
    lexicographically.
    """
    c = _check_order(n, k)
    cand = _candidates(n, k, prune)
    limit = len(cand) if max_size is None else max_size
    found = _level_search(n, _edge_groups(n), cand, c - k, limit)
    return [as_edge_set(n.edges[p].id for p in f) for f in found]


def d_set_by_enumeration(n: Network) -> EdgeSet:
    """Union of all capacity factors, by exhaustive search."""
    if flow_value(n) == 0:
        return ()
    return as_edge_set(e for f in enumerate_kcfs(n, 1, prune=False) for e in f)


def capacity_rank(n: Network, e: int) -> RankResult:
    """Smallest capacity factor containing ``e`` (``inf`` when there is none)."""
    n.edge(e)
    if flow_value(n) < 1:
        raise FactorError("capacity rank needs a network with positive flow")
    cand = _candidates(n, 1, prune=True)
    pos = n.edge_position[e]
    if pos not in cand:
        return RankResult(e, math.inf, None)
    found = _level_search(
        n, _edge_groups(n), cand, flow_value(n) - 1, len(cand), required=pos, stop_at_first_level=True
    )
    if not found:
        return RankResult(e, math.inf, None)
    witness = as_edge_set(n.edges[p].id for p in found[0])
    return RankResult(e, len(witness), witness)


# -- path characterisation (acyclic networks) ----------------------------------


def kcf_membership(n: Network, e: int, k: int) -> Membership:
    """Whether some ``k``-CF of the acyclic network ``n`` contains ``e``.

    Decided by searching a source-to-sink path ``p`` through ``e`` with
    ``C(N \\ p) >= C(N) - k``; such a path is returned as witness.  Prefixes
    whose removal already pushes the flow below the bound are abandoned,
    since extending a path only removes more edges.
    """
    edge = n.edge(e)
    if not is_acyclic(n):
        raise CyclicNetworkError(
            "path characterisation only holds on acyclic networks; use enumerate_kcfs instead"
        )
    need = _check_order(n, k) - k
    out: dict[str, list] = {v: [] for v in n.vertices}
    for x in n.edges:
        out[x.tail].append(x)

    def ok(path: list[int]) -> bool:
        return flow_value(n, path, limit=need) >= need

    useful = {
        edge.tail: _reach(n, edge.tail, reverse=True),
        n.sink: _reach(n, n.sink, reverse=True),
    }

    def walk(v: str, goal: str, path: list[int]):
        if v == goal:
            yield path
            return
        for x in out[v]:
            if x.head not in useful[goal]:
                continue
            path.append(x.id)
            if ok(path):
                yield from walk(x.head, goal, path)
            path.pop()

    for prefix in walk(n.source, edge.tail, []):
        prefix = prefix + [e]
        if not ok(prefix):
            continue
        for full in walk(edge.head, n.sink, prefix):
            return Membership(True, tuple(full))
    return Membership(False, None)


# -- structural constructions --------------------------------------------------


def extend_kcf(n: Network, f: Iterable[int], k: int) -> EdgeSet:
    """Grow a ``k``-CF into a ``(k+1)``-CF by adding one min-cut edge of ``N \\ F``."""
    f = n.check_edges(f)
    c = _check_order(n, k)
    if k >= c:
        raise FactorError(f"no {k + 1}-CF exists when the flow is {c}")
    if not verify_kcf(n, f, k):
        raise FactorError(f"{list(f)} is not a {k}-CF")
    cut = min_cut(remove_edges(n, f))
    return as_edge_set(f + cut[:1])


def split_kcf(n: Network, f: Iterable[int], k: int, m: int) -> tuple[EdgeSet, EdgeSet]:
    """Split a ``k``-CF into an ``m``-CF ``F'`` and a ``(k-m)``-CF of ``N \\ F'``.

    ``F'`` is a smallest subset of ``F`` dropping the flow by exactly ``m``,
    the first one in lexicographic order.
    """
    f = n.check_edges(f)
    if not 1 <= m <= k - 1:
        raise FactorError(f"m={m} must lie in 1..{k - 1}")
    if not verify_kcf(n, f, k):
        raise FactorError(f"{list(f)} is not a {k}-CF")
    target = flow_value(n) - m
    for size in range(1, len(f) + 1):
        for sub in combinations(f, size):
            if flow_value(n, sub) == target:
                return as_edge_set(sub), as_edge_set(set(f) - set(sub))
    raise AssertionError("no subset drops the flow by m; input was not a k-CF")


def split_along(n: Network, f: Iterable[int], parts: Sequence[int]) -> list[EdgeSet]:
    """Cut a ``sum(parts)``-CF into pieces, piece ``i`` a ``parts[i]``-CF of
    the network left after deleting the earlier pieces."""
    f = n.check_edges(f)
    if not parts or any(p < 1 for p in parts):
        raise FactorError("parts must be positive integers")
    remaining, total = f, sum(parts)
    if not verify_kcf(n, f, total):
        raise FactorError(f"{list(f)} is not a {total}-CF")
    current, pieces = n, []
    for p in parts[:-1]:
        head, remaining = split_kcf(current, remaining, total, p)
        pieces.append(head)
        current = remove_edges(current, head)
        total -= p
    pieces.append(remaining)
    return pieces


def shrink_to_kcf(n: Network, f: Iterable[int], e: int, k: int) -> EdgeSet:
    """Smallest ``F ⊆ f`` containing ``e`` with ``C(N\\F) = C - k`` and
    ``C(N\\(F - e)) > C - k``; such a set is a ``k``-CF containing ``e``."""
    f = n.check_edges(f)
    if e not in f:
        raise FactorError(f"edge {e} not in the given set")
    target = _check_order(n, k) - k

    def qualifies(sub: tuple[int, ...]) -> bool:
        rest = tuple(x for x in sub if x != e)
        return flow_value(n, sub) == target and flow_value(n, rest) > target

    if not qualifies(f):
        raise FactorError("the given set does not satisfy the premise")
    others = [x for x in f if x != e]
    for size in range(0, len(others) + 1):
        for sub in combinations(others, size):
            cand = as_edge_set(sub + (e,))
            if qualifies(cand):
                return cand
    raise AssertionError("unreachable: f itself qualifies")


# -- partially connected cuts ----------------------------------------------------


def is_partially_connected_cut(n: Network, f: Iterable[int]) -> bool:
    """Whether ``f`` equals some partially connected cut ``[V1, V1c]``.

    Taking ``V1`` as the set ``R`` reachable from the source in ``N \\ f`` is
    without loss of generality: every admissible ``V1`` contains ``R``, and
    both reachability conditions only ever use edges of ``N \\ f``.  So ``f``
    qualifies iff all tails lie in ``R``, no head nor the sink lies in ``R``,
    and every head reaches the sink in ``N \\ f``.
    """
    f = n.check_edges(f)
    if not f:
        return False
    rest = remove_edges(n, f)
    fwd = _reach(rest, n.source, reverse=False)
    bwd = _reach(rest, n.sink, reverse=True)
    if n.sink in fwd:
        return False
    for eid in f:
        e = n.edge(eid)
        if e.tail not in fwd or e.head in fwd or e.head not in bwd:
            return False
    return True


def bipartition_cuts(n: Network) -> list[tuple[int, EdgeSet, frozenset[str]]]:
    """Every partially connected cut, by enumerating all bipartitions.

    Returns ``(size, cut, V1)`` triples; empty cuts (source and sink
    already disconnected) are skipped.  Exponential in the number of
    vertices besides source and sink (limited to 24).
    """
    free = [v for v in n.vertices if v not in (n.source, n.sink)]
    if len(free) > 24:
        raise FactorError("too many vertices for exhaustive bipartition search")
    a = n.arrays
    idx = n.vertex_index
    masks, _ = K.scan_bipartitions(
        a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads,
        idx[n.source], idx[n.sink], np.array([idx[v] for v in free], dtype=np.int64),
    )
    result = []
    for mask in masks:
        side = frozenset([n.source] + [v for i, v in enumerate(free) if (int(mask) >> i) & 1])
        cut = as_edge_set(e.id for e in n.edges if e.tail in side and e.head not in side)
        if cut:
            result.append((len(cut), cut, side))
    return result


def partially_connected_cuts(n: Network) -> list[EdgeSet]:
    """Distinct partially connected cuts, sorted by size then ids."""
    cuts = {cut for _, cut, _ in bipartition_cuts(n)}
    return sorted(cuts, key=lambda c: (len(c), c))


# -- multicast -----------------------------------------------------------------


def _check_kvec(mn: MulticastNetwork, kvec: Sequence[int]) -> tuple[int, ...]:
    kvec = tuple(int(x) for x in kvec)
    if len(kvec) != len(mn.sinks):
        raise FactorError(f"k-vector has {len(kvec)} entries for {len(mn.sinks)} sinks")
    if any(x < 0 for x in kvec):
        raise FactorError("k-vector entries must be non-negative")
    if not any(kvec):
        raise FactorError("k-vector must not be all zeros")
    return kvec


def _sink_flows(mn: MulticastNetwork, removed: Iterable[int] = ()) -> list[int]:
    removed = tuple(removed)
    return [flow_value(mn, removed, sink=t) for t in mn.sinks]  # type: ignore[arg-type]


def verify_multicast_cf(mn: MulticastNetwork, f: Iterable[int], kvec: Sequence[int]) -> bool:
    """Whether ``f`` is a ``kvec``-order capacity factor of the multicast network."""
    f = mn.check_edges(f)
    if not f:
        raise FactorError("a capacity factor is non-empty")
    kvec = _check_kvec(mn, kvec)
    bounds = [c - k for c, k in zip(_sink_flows(mn), kvec)]
    if any(after > b for after, b in zip(_sink_flows(mn, f), bounds)):
        return False
    for e in f:
        rest = tuple(x for x in f if x != e)
        if all(after <= b for after, b in zip(_sink_flows(mn, rest), bounds)):
            return False
    return True


def multicast_sufficient(mn: MulticastNetwork, f: Iterable[int], kvec: Sequence[int]) -> bool:
    """Sufficient condition for a ``kvec``-CF through a single sink.

    True when, for some sink ``i``, ``f`` is a ``k_i``-CF of the unicast
    network towards ``t_i`` and every sink ``j`` loses exactly ``k_j``.
    """
    f = mn.check_edges(f)
    if not f:
        raise FactorError("a capacity factor is non-empty")
    kvec = _check_kvec(mn, kvec)
    before, after = _sink_flows(mn), _sink_flows(mn, f)
    if any(b - a != k for b, a, k in zip(before, after, kvec)):
        return False
    for i, k in enumerate(kvec):
        if 1 <= k <= before[i] and verify_kcf(mn.unicast(i), f, k):
            return True
    return False


def factors_to_json(factors: Iterable[EdgeSet]) -> str:
    return json.dumps([list(f) for f in factors], separators=(",", ":"))
