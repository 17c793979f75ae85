"""Capacity factors, D/H classification and capacity ranks for unit-capacity networks."""

from .cfcore import (
    FactorError,
    capacity_rank,
    enumerate_kcfs,
    extend_kcf,
    kcf_membership,
    partially_connected_cuts,
    split_kcf,
    verify_kcf,
    verify_multicast_cf,
)
from .classify import ClassificationReport, classify_edges, edge_in_some_max_flow
from .maxflow import Flow, flow_value, max_flow, min_cut, residual
from .netmodel import (
    CyclicNetworkError,
    Edge,
    MulticastNetwork,
    Network,
    NetworkError,
    normalize,
    parse_network,
    serialize_network,
)
from .reductions import cr_bound_network, line_network, parse_naesat, reduce_naesat

__all__ = [
    "ClassificationReport",
    "CyclicNetworkError",
    "Edge",
    "FactorError",
    "Flow",
    "MulticastNetwork",
    "Network",
    "NetworkError",
    "capacity_rank",
    "classify_edges",
    "cr_bound_network",
    "edge_in_some_max_flow",
    "enumerate_kcfs",
    "extend_kcf",
    "flow_value",
    "kcf_membership",
    "line_network",
    "max_flow",
    "min_cut",
    "normalize",
    "parse_naesat",
    "parse_network",
    "partially_connected_cuts",
    "reduce_naesat",
    "residual",
    "serialize_network",
    "split_kcf",
    "verify_kcf",
    "verify_multicast_cf",
]
