"""Command-line front end.  Every subcommand prints one line of JSON.

Exit status: 0 success, 1 domain error (including a failed ``verify``),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Sequence, TextIO

from . import figures
from .cfcore import FactorError, capacity_rank, enumerate_kcfs, kcf_membership, verify_kcf
from .classify import classify_edges
from .maxflow import flow_value, max_flow, min_cut
from .netmodel import Network, NetworkError, network_to_dict, parse_network, to_dot
from .reductions import cr_bound_network, line_network, parse_naesat, reduce_naesat


class InputError(Exception):
    """Unreadable or malformed input; maps to exit status 2."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_network(spec: str) -> Network:
    """A file path, ``-`` for stdin, or ``builtin:<figure>``."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name.startswith("fig1-"):
            return figures.exponential_family(int(name[5:]))
        if name not in figures.FIGURES:
            raise InputError(f"unknown built-in network {name!r}")
        return figures.FIGURES[name]()
    try:
        return parse_network(_read(spec))
    except NetworkError as exc:
        raise InputError(str(exc)) from None


def _edge_ids(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad edge id list {text!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit_network(net: Network, extra: dict | None, args) -> str:
    if args.dot:
        return to_dot(net).rstrip("\n")
    if extra is None:
        return _dump(network_to_dict(net))
    return _dump({"network": network_to_dict(net), **extra})


def _cmd_maxflow(args) -> tuple[str, int]:
    n = load_network(args.network)
    f = max_flow(n)
    return _dump({"value": f.value, "paths": [list(p) for p in f.paths], "min_cut": list(min_cut(n))}), 0


def _cmd_classify(args) -> tuple[str, int]:
    n = load_network(args.network)
    return classify_edges(n, strict=args.strict, method=args.method).to_json(), 0


def _cmd_enumerate(args) -> tuple[str, int]:
    n = load_network(args.network)
    fs = enumerate_kcfs(n, args.k, args.max_size)
    return _dump({"k": args.k, "count": len(fs), "factors": [list(f) for f in fs]}), 0


def _cmd_rank(args) -> tuple[str, int]:
    return _dump(capacity_rank(load_network(args.network), args.edge).to_dict()), 0


def _cmd_verify(args) -> tuple[str, int]:
    n = load_network(args.network)
    edges = n.check_edges(args.edges)
    ok = verify_kcf(n, edges, args.k)
    doc = {
        "edges": list(edges), "k": args.k, "valid": ok,
        "flow_before": flow_value(n), "flow_after": flow_value(n, edges),
    }
    return _dump(doc), 0 if ok else 1


def _cmd_membership(args) -> tuple[str, int]:
    r = kcf_membership(load_network(args.network), args.edge, args.k)
    doc = {"edge": args.edge, "k": args.k, "member": r.member, "path": list(r.path) if r.path else None}
    return _dump(doc), 0


def _cmd_reduce(args) -> tuple[str, int]:
    try:
        inst = parse_naesat(_read(args.cnf))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    r = reduce_naesat(inst)
    roles = {str(e): r.edge_roles[e] for e in sorted(r.edge_roles)}
    return _emit_network(r.network, {"k": r.k, "edge_roles": roles}, args), 0


def _cmd_line(args) -> tuple[str, int]:
    lm = line_network(load_network(args.network))
    extra = {
        "fwd": {str(e): list(pair) for e, pair in sorted(lm.fwd.items())},
        "internal_edge": {str(e): i for e, i in sorted(lm.internal_edge.items())},
    }
    return _emit_network(lm.network, extra, args), 0


def _cmd_cr_bound(args) -> tuple[str, int]:
    net, probe = cr_bound_network(load_network(args.network))
    return _emit_network(net, {"probe": probe}, args), 0


def _cmd_gen(args) -> tuple[str, int]:
    if args.family == "fig1":
        if args.n is None or args.n < 1:
            raise InputError("gen fig1 needs --n N with N >= 1")
        net = figures.exponential_family(args.n)
    else:
        if args.name is None:
            raise InputError("gen figure needs --name")
        net = figures.FIGURES[args.name]()
    return _emit_network(net, None, args), 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="capfactor", description="Link criticality via capacity factors.")
    sub = p.add_subparsers(dest="command", required=True)
    net_help = "network file (JSON or edge list), '-' for stdin, or builtin:<fig2|fig3|fig4|fig5|fig7|fig1-N>"

    def cmd(name: str, func, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = cmd("maxflow", _cmd_maxflow, "maximum flow, path witness and source-side min cut")
    sp.add_argument("network", help=net_help)
    sp = cmd("classify", _cmd_classify, "D-set / H-set partition")
    sp.add_argument("network", help=net_help)
    sp.add_argument("--method", choices=("flow", "enumerate"), default="flow")
    sp.add_argument("--strict", action="store_true", help="fail unless the network is already normalized")
    sp = cmd("enumerate", _cmd_enumerate, "list all k-th order capacity factors")
    sp.add_argument("network", help=net_help)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--max-size", type=int, default=None)
    sp = cmd("rank", _cmd_rank, "capacity rank of one edge")
    sp.add_argument("network", help=net_help)
    sp.add_argument("--edge", type=int, required=True)
    sp = cmd("verify", _cmd_verify, "check whether an edge set is a k-CF (exit 1 if not)")
    sp.add_argument("network", help=net_help)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--edges", type=_edge_ids, required=True, help="comma-separated edge ids")
    sp = cmd("membership", _cmd_membership, "is an edge in some k-CF (acyclic networks)")
    sp.add_argument("network", help=net_help)
    sp.add_argument("--edge", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    for name, func, help_, arg in (
        ("reduce-naesat", _cmd_reduce, "build the NAESAT gadget network", "cnf"),
        ("line-graph", _cmd_line, "split-vertex line network", "network"),
        ("cr-bound", _cmd_cr_bound, "capacity-rank lower-bound network", "network"),
    ):
        sp = cmd(name, func, help_)
        sp.add_argument(arg)
        sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    sp = cmd("gen", _cmd_gen, "generate example networks")
    sp.add_argument("family", choices=("fig1", "figure"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--name", choices=sorted(figures.FIGURES))
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    return p


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except InputError as exc:
        print(f"capfactor: {exc}", file=stderr)
        return 2
    except (FactorError, NetworkError, ValueError) as exc:
        print(f"capfactor: {exc}", file=stderr)
        return 1
    print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
