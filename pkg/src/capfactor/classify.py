"""D-set / H-set classification from one maximum flow.

An edge belongs to some maximum flow iff it carries flow in a fixed maximum
flow ``f`` or closes a cycle in the residual network ``N_f``; for an unused
edge ``<u, v>`` the latter means ``v`` reaches ``u`` in ``N_f``.  On acyclic
networks this is exactly membership in the D-set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _kernels as K
from .maxflow import Flow, ResidualGraph, _dead, max_flow, reachable, residual
from .netmodel import EdgeSet, Network, NetworkError, as_edge_set, normalize

IN_FLOW = "in-flow"
RESIDUAL_CYCLE = "residual-cycle"
FACTOR = "factor"
NONE = "none"


class ZeroFlowError(NetworkError):
    """Raised when classification is requested for a disconnected network."""


class NotNormalizedError(NetworkError):
    """Raised when a network still has edges on no source-to-sink walk."""


@dataclass(frozen=True)
class ClassificationReport:
    d_set: EdgeSet
    h_set: EdgeSet
    witness: Mapping[int, str]
    pruned: EdgeSet = ()

    def to_json(self) -> str:
        doc = {
            "D": list(self.d_set),
            "H": list(self.h_set),
            "witness": {str(k): self.witness[k] for k in sorted(self.witness)},
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _flow_classes(n: Network, flow: Flow) -> np.ndarray:
    a = n.arrays
    used = np.zeros(len(n.edges), np.int8)
    if flow.used_edges:
        used[n.positions(flow.used_edges)] = 1
    out = np.empty(len(n.edges), np.int8)
    K.classify_all(a.inc_ptr, a.inc_edge, a.inc_dir, a.tails, a.heads, _dead(n), used, out)
    return out


def classify_edges(n: Network, strict: bool = True, method: str = "flow") -> ClassificationReport:
    """Partition the edges into D-set and H-set.

    ``method="flow"`` runs one max flow plus a residual reachability test per
    unused edge.  It characterises "lies in some maximum flow", which equals
    the D-set on acyclic networks.  ``method="enumerate"`` takes the union of
    all capacity factors by brute force and is the reference on cyclic
    networks.

    With ``strict`` the network must already be normalized.  Otherwise edges
    on no source-to-sink walk are pruned first and reported in the H-set
    with witness ``"none"``, as no capacity factor can contain them.
    """
    if strict:
        base, pruned = n, ()
        if normalize(n)[1]:
            raise NotNormalizedError("network has edges on no source-to-sink path; normalize it first")
    else:
        base, pruned = normalize(n)
    if method == "flow":
        flow = max_flow(base)
        if flow.value == 0:
            raise ZeroFlowError("maximum flow is zero; every edge set is trivially non-critical")
        classes = _flow_classes(base, flow)
        witness = {}
        for e, c in zip(base.edges, classes):
            witness[e.id] = IN_FLOW if c == 1 else RESIDUAL_CYCLE if c == 2 else NONE
    elif method == "enumerate":
        from .cfcore import enumerate_kcfs

        if max_flow(base).value == 0:
            raise ZeroFlowError("maximum flow is zero; every edge set is trivially non-critical")
        d = {e for f in enumerate_kcfs(base, 1, prune=False) for e in f}
        witness = {e.id: FACTOR if e.id in d else NONE for e in base.edges}
    else:
        raise ValueError(f"unknown method {method!r}")
    for e in pruned:
        witness[e] = NONE
    d_set = as_edge_set(e for e, w in witness.items() if w != NONE)
    h_set = as_edge_set(e for e, w in witness.items() if w == NONE)
    return ClassificationReport(d_set, h_set, witness, pruned)


def edge_in_some_max_flow(n: Network, f: Flow, e: int) -> bool:
    """Whether edge ``e`` appears in some maximum flow, given one maximum flow ``f``."""
    edge = n.edge(e)
    if e in f.used_edges:
        return True
    g: ResidualGraph = residual(n, f)
    return reachable(g, edge.head, edge.tail)
