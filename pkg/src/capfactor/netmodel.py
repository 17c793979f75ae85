"""Directed unit-capacity multigraphs with a designated source and sink.

Edges carry explicit integer ids so that parallel edges stay distinguishable
and ids survive every deletion.  Networks are immutable; operations return
new networks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

EdgeSet = tuple[int, ...]


class NetworkError(ValueError):
    """Raised for malformed or inconsistent network input."""


class CyclicNetworkError(NetworkError):
    """Raised when an operation that needs a DAG receives a cyclic network."""


class Edge(NamedTuple):
    id: int
    tail: str
    head: str


def as_edge_set(ids: Iterable[int]) -> EdgeSet:
    """Canonical strictly increasing tuple of edge ids."""
    return tuple(sorted(set(int(i) for i in ids)))


class _Arrays(NamedTuple):
    """Index-based view of a network consumed by the kernels.

    Edge positions follow id order.  ``inc_*`` lists, per vertex, every
    incident edge position (``inc_dir`` +1 when the vertex is the tail, -1
    when it is the head), sorted by position.
    """

    tails: np.ndarray
    heads: np.ndarray
    inc_ptr: np.ndarray
    inc_edge: np.ndarray
    inc_dir: np.ndarray


@dataclass(frozen=True)
class _Base:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str

    def __post_init__(self) -> None:
        vertices = tuple(str(v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise NetworkError("duplicate vertex name")
        edges = tuple(sorted((Edge(int(e[0]), str(e[1]), str(e[2])) for e in self.edges)))
        known = set(vertices)
        seen: set[int] = set()
        for e in edges:
            if e.id < 0:
                raise NetworkError(f"negative edge id {e.id}")
            if e.id in seen:
                raise NetworkError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if e.tail not in known or e.head not in known:
                raise NetworkError(f"edge {e.id} has unknown endpoint")
            if e.tail == e.head:
                raise NetworkError(f"edge {e.id} is a self-loop on {e.tail!r}")
        if self.source not in known:
            raise NetworkError(f"unknown source {self.source!r}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @cached_property
    def edge_ids(self) -> EdgeSet:
        return tuple(e.id for e in self.edges)

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_position(self) -> dict[int, int]:
        return {e.id: p for p, e in enumerate(self.edges)}

    def edge(self, eid: int) -> Edge:
        try:
            return self.edges[self.edge_position[eid]]
        except KeyError:
            raise NetworkError(f"unknown edge id {eid}") from None

    def check_edges(self, ids: Iterable[int]) -> EdgeSet:
        ids = as_edge_set(ids)
        missing = [i for i in ids if i not in self.edge_position]
        if missing:
            raise NetworkError(f"unknown edge id(s) {missing}")
        return ids

    def check_vertex(self, v: str) -> int:
        try:
            return self.vertex_index[v]
        except KeyError:
            raise NetworkError(f"unknown vertex {v!r}") from None

    @cached_property
    def arrays(self) -> _Arrays:
        index = self.vertex_index
        m = len(self.edges)
        tails = np.fromiter((index[e.tail] for e in self.edges), np.int64, m)
        heads = np.fromiter((index[e.head] for e in self.edges), np.int64, m)
        pos = np.arange(m, dtype=np.int64)
        owner = np.concatenate([tails, heads])
        inc_edge = np.concatenate([pos, pos])
        inc_dir = np.concatenate([np.ones(m, np.int8), -np.ones(m, np.int8)])
        order = np.lexsort((inc_edge, owner))
        counts = np.bincount(owner, minlength=len(self.vertices))
        inc_ptr = np.zeros(len(self.vertices) + 1, np.int64)
        np.cumsum(counts, out=inc_ptr[1:])
        return _Arrays(tails, heads, inc_ptr, inc_edge[order], inc_dir[order])

    def positions(self, ids: Iterable[int]) -> np.ndarray:
        pos = self.edge_position
        return np.array([pos[i] for i in self.check_edges(ids)], dtype=np.int64)


@dataclass(frozen=True)
class Network(_Base):
    """Point-to-point network ``(V, E, s, t)`` with unit capacities."""

    sink: str

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.sink not in self.vertex_index:
            raise NetworkError(f"unknown sink {self.sink!r}")
        if self.sink == self.source:
            raise NetworkError("source and sink must differ")

    def replace_edges(self, edges: Iterable[Edge], vertices: Iterable[str] | None = None) -> Network:
        return Network(
            tuple(self.vertices if vertices is None else vertices), tuple(edges), self.source, self.sink
        )


@dataclass(frozen=True)
class MulticastNetwork(_Base):
    """Single-source network with an ordered list of sinks."""

    sinks: tuple[str, ...]

    def __post_init__(self) -> None:
        super().__post_init__()
        sinks = tuple(str(t) for t in self.sinks)
        if not sinks:
            raise NetworkError("multicast network needs at least one sink")
        for t in sinks:
            if t not in self.vertex_index:
                raise NetworkError(f"unknown sink {t!r}")
        if self.source in sinks:
            raise NetworkError("source may not be a sink")
        object.__setattr__(self, "sinks", sinks)

    def unicast(self, i: int) -> Network:
        """The point-to-point network towards the ``i``-th sink."""
        return Network(self.vertices, self.edges, self.source, self.sinks[i])


# -- serialization -----------------------------------------------------------


def _from_mapping(doc: dict) -> Network | MulticastNetwork:
    if not isinstance(doc, dict):
        raise NetworkError("network document must be a JSON object")
    try:
        vertices = doc["vertices"]
        raw_edges = doc["edges"]
        source = doc["source"]
    except KeyError as exc:
        raise NetworkError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(vertices, list) or not isinstance(raw_edges, list):
        raise NetworkError("'vertices' and 'edges' must be arrays")
    edges = []
    for item in raw_edges:
        try:
            eid, tail, head = item["id"], item["tail"], item["head"]
        except (KeyError, TypeError):
            raise NetworkError(f"malformed edge entry {item!r}") from None
        if isinstance(eid, bool) or not isinstance(eid, int):
            raise NetworkError(f"edge id must be an integer, got {eid!r}")
        edges.append(Edge(eid, tail, head))
    if "sinks" in doc and "sink" in doc:
        raise NetworkError("give either 'sink' or 'sinks', not both")
    if "sinks" in doc:
        return MulticastNetwork(tuple(vertices), tuple(edges), source, tuple(doc["sinks"]))
    if "sink" not in doc:
        raise NetworkError("missing field 'sink'")
    return Network(tuple(vertices), tuple(edges), source, doc["sink"])


def _from_edge_list(text: str) -> Network | MulticastNetwork:
    """Parse ``source sink [sink ...]`` followed by ``id tail head`` lines."""
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise NetworkError("empty edge-list document")
    header, body = rows[0], rows[1:]
    if len(header) < 2:
        raise NetworkError("edge-list header must be 'source sink'")
    vertices: dict[str, None] = dict.fromkeys(header)
    edges = []
    for r in body:
        if len(r) != 3:
            raise NetworkError(f"bad edge line {' '.join(r)!r}")
        try:
            eid = int(r[0])
        except ValueError:
            raise NetworkError(f"edge id must be an integer, got {r[0]!r}") from None
        vertices.setdefault(r[1])
        vertices.setdefault(r[2])
        edges.append(Edge(eid, r[1], r[2]))
    if len(header) == 2:
        return Network(tuple(vertices), tuple(edges), header[0], header[1])
    return MulticastNetwork(tuple(vertices), tuple(edges), header[0], tuple(header[1:]))


def parse_any(document: str) -> Network | MulticastNetwork:
    """Parse a JSON network document or the whitespace edge-list format."""
    if document.lstrip().startswith("{"):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise NetworkError(f"invalid JSON: {exc}") from None
        return _from_mapping(doc)
    return _from_edge_list(document)


def parse_network(document: str) -> Network:
    net = parse_any(document)
    if not isinstance(net, Network):
        raise NetworkError("expected a point-to-point network, got a multicast one")
    return net


def parse_multicast(document: str) -> MulticastNetwork:
    net = parse_any(document)
    if isinstance(net, Network):
        return MulticastNetwork(net.vertices, net.edges, net.source, (net.sink,))
    return net


def network_to_dict(n: Network | MulticastNetwork) -> dict:
    doc: dict = {
        "vertices": list(n.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in n.edges],
        "source": n.source,
    }
    if isinstance(n, MulticastNetwork):
        doc["sinks"] = list(n.sinks)
    else:
        doc["sink"] = n.sink
    return doc


def serialize_network(n: Network | MulticastNetwork) -> str:
    return json.dumps(network_to_dict(n), separators=(",", ":"))


def to_dot(n: Network | MulticastNetwork) -> str:
    """Graphviz description; edges labelled by id."""
    sinks = n.sinks if isinstance(n, MulticastNetwork) else (n.sink,)
    lines = ["digraph network {"]
    for v in n.vertices:
        shape = "doublecircle" if v == n.source or v in sinks else "circle"
        lines.append(f"  {json.dumps(v)} [shape={shape}];")
    for e in n.edges:
        lines.append(f"  {json.dumps(e.tail)} -> {json.dumps(e.head)} [label=\"e{e.id}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structural operations ---------------------------------------------------


def _reach(n: _Base, start: str, reverse: bool = False) -> set[str]:
    adj: dict[str, list[str]] = {v: [] for v in n.vertices}
    for e in n.edges:
        if reverse:
            adj[e.head].append(e.tail)
        else:
            adj[e.tail].append(e.head)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def normalize(n: Network) -> tuple[Network, EdgeSet]:
    """Drop edges that lie on no source-to-sink walk.

    An edge is kept when its tail is reachable from the source and the sink
    is reachable from its head.  Returns the pruned network and the removed
    edge ids.
    """
    fwd = _reach(n, n.source)
    bwd = _reach(n, n.sink, reverse=True)
    kept = [e for e in n.edges if e.tail in fwd and e.head in bwd]
    removed = as_edge_set(e.id for e in n.edges if not (e.tail in fwd and e.head in bwd))
    used = {n.source, n.sink}
    for e in kept:
        used.add(e.tail)
        used.add(e.head)
    return n.replace_edges(kept, [v for v in n.vertices if v in used]), removed


def is_normalized(n: Network) -> bool:
    return not normalize(n)[1]


def remove_edges(n: Network, f: Iterable[int]) -> Network:
    """``N \\ F``: delete the given edges, keep every vertex."""
    drop = set(n.check_edges(f))
    return n.replace_edges(e for e in n.edges if e.id not in drop)


def remove_vertices(n: Network, vs: Iterable[str]) -> Network:
    """Delete vertices together with all incident edges."""
    drop = set(vs)
    for v in drop:
        n.check_vertex(v)
    if n.source in drop or n.sink in drop:
        raise NetworkError("cannot delete the source or the sink")
    return n.replace_edges(
        (e for e in n.edges if e.tail not in drop and e.head not in drop),
        [v for v in n.vertices if v not in drop],
    )


def _topological_order(n: _Base) -> list[str] | None:
    indeg = {v: 0 for v in n.vertices}
    adj: dict[str, list[str]] = {v: [] for v in n.vertices}
    for e in n.edges:
        indeg[e.head] += 1
        adj[e.tail].append(e.head)
    ready = [v for v in n.vertices if indeg[v] == 0]
    ready.reverse()
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for w in adj[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == len(n.vertices) else None


def is_acyclic(n: _Base) -> bool:
    return _topological_order(n) is not None


def topological_labels(n: _Base) -> dict[str, int]:
    """Integer labels with ``L(tail) < L(head)`` for every edge."""
    order = _topological_order(n)
    if order is None:
        raise CyclicNetworkError("network contains a directed cycle")
    return {v: i for i, v in enumerate(order)}
