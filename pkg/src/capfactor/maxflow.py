"""Unit-capacity maximum flow, residual graphs and minimum cuts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels as K
from .netmodel import EdgeSet, Network, NetworkError, _Base, as_edge_set


@dataclass(frozen=True)
class Flow:
    """An integral flow given as edge-disjoint source-to-sink paths."""

    value: int
    paths: tuple[tuple[int, ...], ...]
    used_edges: EdgeSet


@dataclass(frozen=True)
class ResidualGraph:
    """Residual state of a unit-capacity network under a flow.

    ``forward`` edges keep their direction; ``reverse`` edges (those carrying
    flow) are traversed head to tail.
    """

    network: Network
    forward: frozenset[int]
    reverse: frozenset[int]


def _dead(n: _Base, removed: Iterable[int] = ()) -> np.ndarray:
    dead = np.zeros(len(n.edges), np.int32)
    removed = tuple(removed)
    if removed:
        dead[n.positions(removed)] = 1
    return dead


def flow_value(n: Network, removed: Iterable[int] = (), limit: int | None = None, sink: str | None = None) -> int:
    """``C_{N \\ removed}(s, t)``, optionally capped at ``limit``.

    ``sink`` overrides the network's sink (used for multicast networks).
    """
    a = n.arrays
    src = n.vertex_index[n.source]
    dst = n.check_vertex(sink if sink is not None else n.sink)
    return int(
        K.flow_value(
            a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads,
            _dead(n, removed), src, dst, -1 if limit is None else limit,
        )
    )


def _used_mask(n: Network) -> tuple[int, np.ndarray]:
    a = n.arrays
    used = np.zeros(len(n.edges), np.int8)
    value = K.augment(
        a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads, _dead(n),
        used, n.vertex_index[n.source], n.vertex_index[n.sink], -1,
    )
    return int(value), used


def decompose(n: Network, used_edges: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Split a set of flow edges into source-to-sink paths.

    Each walk leaves the current vertex through its lowest-id unconsumed flow
    edge.  Flow edges left over after all source edges are consumed form
    circulations and are ignored.
    """
    out: dict[str, list[int]] = {}
    for eid in as_edge_set(used_edges):
        out.setdefault(n.edge(eid).tail, []).append(eid)
    for lst in out.values():
        lst.reverse()  # pop() yields lowest id first
    paths = []
    while out.get(n.source):
        path = []
        v = n.source
        while v != n.sink:
            stack = out.get(v)
            if not stack:
                raise NetworkError("flow edges violate conservation")
            eid = stack.pop()
            path.append(eid)
            v = n.edge(eid).head
        paths.append(tuple(path))
    return tuple(paths)


def max_flow(n: Network) -> Flow:
    """Maximum flow with a path-decomposition witness."""
    value, used = _used_mask(n)
    paths = decompose(n, (n.edges[p].id for p in np.flatnonzero(used)))
    if len(paths) != value:
        raise AssertionError("path decomposition does not match the flow value")
    # circulations left over by the decomposition are dropped
    return Flow(value, paths, as_edge_set(e for p in paths for e in p))


def flow_from_paths(n: Network, paths: Iterable[Iterable[int]]) -> Flow:
    """Validate user-supplied paths and wrap them as a ``Flow``."""
    paths = tuple(tuple(int(e) for e in p) for p in paths)
    seen: set[int] = set()
    for p in paths:
        if not p:
            raise NetworkError("empty path")
        v = n.source
        for eid in p:
            e = n.edge(eid)
            if e.tail != v:
                raise NetworkError(f"path {p} is not contiguous at edge {eid}")
            if eid in seen:
                raise NetworkError(f"edge {eid} used by two paths")
            seen.add(eid)
            v = e.head
        if v != n.sink:
            raise NetworkError(f"path {p} does not end at the sink")
    return Flow(len(paths), paths, as_edge_set(seen))


def residual(n: Network, f: Flow) -> ResidualGraph:
    used = set(n.check_edges(f.used_edges))
    return ResidualGraph(n, frozenset(set(n.edge_ids) - used), frozenset(used))


def _used_from_residual(g: ResidualGraph) -> np.ndarray:
    used = np.zeros(len(g.network.edges), np.int8)
    if g.reverse:
        used[g.network.positions(g.reverse)] = 1
    return used


def reachable(g: ResidualGraph | Network, source: str, target: str) -> bool:
    """Directed reachability; a plain ``Network`` is its own zero-flow residual."""
    n = g.network if isinstance(g, ResidualGraph) else g
    used = _used_from_residual(g) if isinstance(g, ResidualGraph) else np.zeros(len(n.edges), np.int8)
    a = n.arrays
    src, dst = n.check_vertex(source), n.check_vertex(target)
    pred = np.empty(len(n.vertices), np.int64)
    return bool(
        K.residual_search(a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads, _dead(n), used, src, dst, pred)
    )


def source_side(n: Network, used: np.ndarray | None = None) -> frozenset[str]:
    """Vertices residual-reachable from the source under a maximum flow."""
    if used is None:
        _, used = _used_mask(n)
    a = n.arrays
    mask = np.zeros(len(n.vertices), np.bool_)
    K.reach_mask(a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads, _dead(n), used, n.vertex_index[n.source], mask)
    return frozenset(v for v, m in zip(n.vertices, mask) if m)


def min_cut(n: Network) -> EdgeSet:
    """The source-side minimum cut ``[V1, V1c]``."""
    side = source_side(n)
    return as_edge_set(e.id for e in n.edges if e.tail in side and e.head not in side)
