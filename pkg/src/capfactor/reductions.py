"""Executable hardness constructions.

* the NAESAT gadget whose largest capacity factor has size
  ``10mn + 2m + 2n`` exactly when the formula is not-all-equal satisfiable;
* the network in which the capacity rank of one probe edge encodes the
  maximum flow of an arbitrary input network;
* the line network, where edge capacity factors become vertex capacity
  factors.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cfcore import FactorError, _level_search, bipartition_cuts, verify_kcf
from .maxflow import flow_value
from .netmodel import Edge, EdgeSet, Network, NetworkError, _reach, as_edge_set, network_to_dict

CROSSING = "crossing"
FORCING = "forcing"
CONNECTING = "connecting"


# -- NAESAT --------------------------------------------------------------------


@dataclass(frozen=True)
class NaesatInstance:
    """Clauses of three literals over variables ``x1..xn``.

    Literals are signed 1-based integers as in DIMACS: ``-2`` is ``~x2``.
    """

    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        if self.n_vars < 1:
            raise ValueError("need at least one variable")
        for c in clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly three literals")
            if any(x == 0 or abs(x) > self.n_vars for x in c):
                raise ValueError(f"clause {c} has a literal outside 1..{self.n_vars}")
            if c[0] == c[1] == c[2]:
                raise ValueError(f"clause {c} repeats one literal three times")
        object.__setattr__(self, "clauses", clauses)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, self.n_vars + 1))

    def to_text(self) -> str:
        lines = [f"p naesat {self.n_vars} {len(self.clauses)}"]
        lines += [" ".join(str(x) for x in c) for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_naesat(text: str) -> NaesatInstance:
    """Read ``p naesat <n> <m>`` followed by one clause per line.

    Lines starting with ``c`` are comments; a trailing ``0`` on a clause line
    is accepted.
    """
    header = None
    clauses = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            m = re.fullmatch(r"p\s+naesat\s+(\d+)\s+(\d+)", line)
            if not m or header is not None:
                raise ValueError(f"bad header line {line!r}")
            header = (int(m.group(1)), int(m.group(2)))
            continue
        if header is None:
            raise ValueError("clause before 'p naesat' header")
        try:
            lits = [int(x) for x in line.split()]
        except ValueError:
            raise ValueError(f"bad clause line {line!r}") from None
        if len(lits) == 4 and lits[3] == 0:
            lits = lits[:3]
        clauses.append(tuple(lits))
    if header is None:
        raise ValueError("missing 'p naesat' header")
    if len(clauses) != header[1]:
        raise ValueError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return NaesatInstance(header[0], tuple(clauses))


def literal_vertex(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


def nae_satisfied(t: NaesatInstance, assignment: Sequence[bool]) -> bool:
    def value(lit: int) -> bool:
        return assignment[abs(lit) - 1] == (lit > 0)

    return all(len({value(x) for x in c}) == 2 for c in t.clauses)


def naesat_brute_force(t: NaesatInstance) -> tuple[bool, ...] | None:
    """First NAE-satisfying assignment in lexicographic order (False < True)."""
    if t.n_vars > 20:
        raise ValueError("brute force limited to 20 variables")
    for bits in product((False, True), repeat=t.n_vars):
        if nae_satisfied(t, bits):
            return bits
    return None


@dataclass(frozen=True)
class ReductionOutput:
    network: Network
    k: int
    vertex_map: Mapping[str, str]
    edge_roles: Mapping[int, str]
    instance: NaesatInstance = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "network": network_to_dict(self.network),
            "k": self.k,
            "edge_roles": {str(e): self.edge_roles[e] for e in sorted(self.edge_roles)},
        }


def reduce_naesat(t: NaesatInstance) -> ReductionOutput:
    """Build the gadget network and threshold ``k = 10mn + 2m + 2n``.

    Every bidirectional edge becomes two antiparallel directed edges.  The
    source feeds ``s'`` through one edge and ``t'`` drains into the sink
    through one edge, so the maximum flow is 1.
    """
    m, n = len(t.clauses), t.n_vars
    if m == 0:
        raise ValueError("instance has no clauses")
    literals = [literal_vertex(s * i) for i in range(1, n + 1) for s in (1, -1)]
    vertices = ["s", "s'", *literals, "t'", "t"]
    edges: list[Edge] = []
    roles: dict[int, str] = {}

    def add(u: str, v: str, role: str, times: int = 1) -> None:
        for _ in range(times):
            eid = len(edges) + 1
            edges.append(Edge(eid, u, v))
            roles[eid] = role

    add("s", "s'", CONNECTING)
    add("t'", "t", CONNECTING)
    for i in range(1, n + 1):
        pos, neg = literal_vertex(i), literal_vertex(-i)
        add("s'", pos, CONNECTING)
        add("s'", neg, CONNECTING)
        add(pos, "t'", CONNECTING)
        add(neg, "t'", CONNECTING)
    for i in range(1, n + 1):
        pos, neg = literal_vertex(i), literal_vertex(-i)
        add(pos, neg, FORCING, 4 * m)
        add(neg, pos, FORCING, 4 * m)
    add("s'", "t'", FORCING, 6 * m * n)
    for a, b, c in t.clauses:
        for x, y in ((a, b), (a, c), (b, c)):
            if x != y:
                add(literal_vertex(x), literal_vertex(y), CROSSING)
                add(literal_vertex(y), literal_vertex(x), CROSSING)
    net = Network(tuple(vertices), tuple(edges), "s", "t")
    return ReductionOutput(net, 10 * m * n + 2 * m + 2 * n, {v: v for v in vertices}, roles, t)


def assignment_to_factor(r: ReductionOutput, assignment: Sequence[bool]) -> EdgeSet:
    """The cut with ``s``, ``s'`` and all true literals on the source side."""
    t = r.instance
    if len(assignment) != t.n_vars:
        raise ValueError(f"assignment has {len(assignment)} values for {t.n_vars} variables")
    side = {"s", "s'"}
    for i, val in enumerate(assignment, start=1):
        side.add(r.vertex_map[literal_vertex(i if val else -i)])
    cut = as_edge_set(e.id for e in r.network.edges if e.tail in side and e.head not in side)
    if len(cut) != r.k:
        raise FactorError(f"assignment is not NAE-satisfying: cut has {len(cut)} edges, expected {r.k}")
    return cut


def max_partially_connected_cut(n: Network) -> tuple[int, EdgeSet, frozenset[str]]:
    """Largest partially connected cut by exhaustive bipartition search.

    On a network with maximum flow 1 these cuts are exactly the capacity
    factors, so the size is the largest capacity factor.
    """
    best = max(bipartition_cuts(n), key=lambda item: item[0])
    return best


# -- capacity rank versus max flow -------------------------------------------------


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def cr_bound_network(n: Network) -> tuple[Network, int]:
    """Embed ``n`` so that the capacity rank of a probe edge tracks ``C_N(s, t)``.

    Adds a new source ``s'`` with ``|E|`` parallel edges to ``s`` and the
    probe ``<s', t>``, and a new sink ``t'`` fed only by ``<t, t'>``.
    Returns the new network and the probe edge id.  Exhaustive search on
    small inputs gives ``CR(probe) = C_N(s, t) + 1``.
    """
    taken = set(n.vertices)
    s2, t2 = _fresh("s'", taken), _fresh("t'", taken)
    next_id = max(n.edge_ids, default=0) + 1
    probe = next_id
    extra = [Edge(probe, s2, n.sink), Edge(probe + 1, n.sink, t2)]
    extra += [Edge(probe + 2 + i, s2, n.source) for i in range(len(n.edges))]
    net = Network((*n.vertices, s2, t2), n.edges + tuple(extra), s2, t2)
    return net, probe


# -- line network -----------------------------------------------------------------


@dataclass(frozen=True)
class LineNetworkMap:
    base: Network
    network: Network
    fwd: Mapping[int, tuple[str, str]]
    internal_edge: Mapping[int, int]

    @property
    def owner(self) -> dict[str, int]:
        """Base edge id represented by each split vertex."""
        return {v: e for e, pair in self.fwd.items() for v in pair}


def line_network(n: Network) -> LineNetworkMap:
    """Split-vertex line network: each edge ``e`` becomes ``e_in -> e_out``."""
    fwd = {e.id: (f"e{e.id}_in", f"e{e.id}_out") for e in n.edges}
    s2, t2 = "s'", "t'"
    vertices = [s2, *(v for e in n.edges for v in fwd[e.id]), t2]
    edges: list[Edge] = []
    internal = {}

    def add(u: str, v: str) -> int:
        eid = len(edges) + 1
        edges.append(Edge(eid, u, v))
        return eid

    for e in n.edges:
        internal[e.id] = add(*fwd[e.id])
    for e1 in n.edges:
        for e2 in n.edges:
            if e1.id != e2.id and e1.head == e2.tail:
                add(fwd[e1.id][1], fwd[e2.id][0])
    for e in n.edges:
        if e.tail == n.source:
            add(s2, fwd[e.id][0])
    for e in n.edges:
        if e.head == n.sink:
            add(fwd[e.id][1], t2)
    net = Network(tuple(vertices), tuple(edges), s2, t2)
    return LineNetworkMap(n, net, fwd, internal)


def _incident(n: Network, vs: Iterable[str]) -> EdgeSet:
    vs = set(vs)
    return as_edge_set(e.id for e in n.edges if e.tail in vs or e.head in vs)


def vertex_cf_verify(n: Network, vs: Iterable[str]) -> bool:
    """Whether ``vs`` is a vertex capacity factor of ``n``.

    Deleting a vertex deletes every incident edge.  Restoring any single
    vertex must bring the flow back; by monotonicity this covers all proper
    subsets.
    """
    vs = frozenset(vs)
    if not vs:
        raise FactorError("a vertex capacity factor is non-empty")
    for v in vs:
        n.check_vertex(v)
    if n.source in vs or n.sink in vs:
        raise FactorError("source and sink cannot belong to a vertex capacity factor")
    c = flow_value(n)
    if flow_value(n, _incident(n, vs), limit=c) >= c:
        return False
    return all(flow_value(n, _incident(n, vs - {v}), limit=c) == c for v in vs)


def enumerate_vertex_cfs(n: Network, max_size: int | None = None) -> list[frozenset[str]]:
    """All vertex capacity factors, by level-wise search."""
    c = flow_value(n)
    if c == 0:
        return []
    fwd = _reach(n, n.source)
    bwd = _reach(n, n.sink, reverse=True)
    elems = [v for v in n.vertices if v not in (n.source, n.sink)]
    cand = [i for i, v in enumerate(elems) if v in fwd and v in bwd]
    pos = n.edge_position
    groups = [sorted(pos[e] for e in _incident(n, [v])) for v in elems]
    ptr = np.zeros(len(groups) + 1, np.int64)
    np.cumsum([len(g) for g in groups], out=ptr[1:])
    items = np.fromiter((p for g in groups for p in g), np.int64, int(ptr[-1]))
    found = _level_search(n, (ptr, items), cand, c - 1, len(cand) if max_size is None else max_size)
    return [frozenset(elems[i] for i in f) for f in found]


def edge_cf_to_vertex_cf(
    lm: LineNetworkMap, f: Iterable[int], choice: str | Mapping[int, str] = "in"
) -> frozenset[str]:
    """Map a capacity factor of the base network to the line network.

    ``choice`` picks ``"in"`` or ``"out"`` for every edge, or per edge id.
    """
    f = lm.base.check_edges(f)
    if not verify_kcf(lm.base, f, 1):
        raise FactorError(f"{list(f)} is not a capacity factor of the base network")
    out = set()
    for e in f:
        side = choice if isinstance(choice, str) else choice.get(e, "in")
        if side not in ("in", "out"):
            raise ValueError(f"choice must be 'in' or 'out', got {side!r}")
        out.add(lm.fwd[e][0 if side == "in" else 1])
    return frozenset(out)


def vertex_cf_to_edge_cf(lm: LineNetworkMap, vs: Iterable[str]) -> EdgeSet:
    """Map a vertex capacity factor of the line network back to base edges."""
    vs = frozenset(vs)
    owner = lm.owner
    unknown = [v for v in vs if v not in owner]
    if unknown:
        raise NetworkError(f"vertices {sorted(unknown)} do not represent base edges")
    if not vertex_cf_verify(lm.network, vs):
        raise FactorError("not a vertex capacity factor of the line network")
    return as_edge_set(owner[v] for v in vs)


def reduction_to_json(r: ReductionOutput) -> str:
    return json.dumps(r.to_dict(), sort_keys=True, separators=(",", ":"))
