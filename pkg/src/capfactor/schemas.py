"""JSON Schemas for every ``capfactor`` subcommand's standard output."""

from __future__ import annotations

_ids = {"type": "array", "items": {"type": "integer", "minimum": 0}}

NETWORK = {
    "type": "object",
    "required": ["vertices", "edges", "source"],
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "tail", "head"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "tail": {"type": "string"},
                    "head": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "source": {"type": "string"},
        "sink": {"type": "string"},
        "sinks": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    },
    "oneOf": [{"required": ["sink"]}, {"required": ["sinks"]}],
    "additionalProperties": False,
}

SCHEMAS: dict[str, dict] = {
    "maxflow": {
        "type": "object",
        "required": ["value", "paths", "min_cut"],
        "properties": {
            "value": {"type": "integer", "minimum": 0},
            "paths": {"type": "array", "items": _ids},
            "min_cut": _ids,
        },
        "additionalProperties": False,
    },
    "classify": {
        "type": "object",
        "required": ["D", "H", "witness"],
        "properties": {
            "D": _ids,
            "H": _ids,
            "witness": {
                "type": "object",
                "patternProperties": {
                    "^[0-9]+$": {"enum": ["in-flow", "residual-cycle", "factor", "none"]}
                },
                "additionalProperties": False,
            },
        },
        "additionalProperties": False,
    },
    "enumerate": {
        "type": "object",
        "required": ["k", "count", "factors"],
        "properties": {
            "k": {"type": "integer", "minimum": 1},
            "count": {"type": "integer", "minimum": 0},
            "factors": {"type": "array", "items": _ids},
        },
        "additionalProperties": False,
    },
    "rank": {
        "type": "object",
        "required": ["edge", "rank", "witness"],
        "properties": {
            "edge": {"type": "integer"},
            "rank": {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]},
            "witness": {"oneOf": [_ids, {"type": "null"}]},
        },
        "additionalProperties": False,
    },
    "verify": {
        "type": "object",
        "required": ["edges", "k", "valid", "flow_before", "flow_after"],
        "properties": {
            "edges": _ids,
            "k": {"type": "integer", "minimum": 1},
            "valid": {"type": "boolean"},
            "flow_before": {"type": "integer", "minimum": 0},
            "flow_after": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
    "membership": {
        "type": "object",
        "required": ["edge", "k", "member", "path"],
        "properties": {
            "edge": {"type": "integer"},
            "k": {"type": "integer", "minimum": 1},
            "member": {"type": "boolean"},
            "path": {"oneOf": [_ids, {"type": "null"}]},
        },
        "additionalProperties": False,
    },
    "reduce-naesat": {
        "type": "object",
        "required": ["network", "k", "edge_roles"],
        "properties": {
            "network": NETWORK,
            "k": {"type": "integer", "minimum": 1},
            "edge_roles": {
                "type": "object",
                "patternProperties": {"^[0-9]+$": {"enum": ["crossing", "forcing", "connecting"]}},
                "additionalProperties": False,
            },
        },
        "additionalProperties": False,
    },
    "line-graph": {
        "type": "object",
        "required": ["network", "fwd", "internal_edge"],
        "properties": {
            "network": NETWORK,
            "fwd": {
                "type": "object",
                "patternProperties": {
                    "^[0-9]+$": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}
                },
                "additionalProperties": False,
            },
            "internal_edge": {
                "type": "object",
                "patternProperties": {"^[0-9]+$": {"type": "integer"}},
                "additionalProperties": False,
            },
        },
        "additionalProperties": False,
    },
    "cr-bound": {
        "type": "object",
        "required": ["network", "probe"],
        "properties": {"network": NETWORK, "probe": {"type": "integer", "minimum": 0}},
        "additionalProperties": False,
    },
    "gen": NETWORK,
}
