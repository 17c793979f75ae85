"""Small example networks used throughout the tests and by ``capfactor gen``.

Edge ids follow the labels ``e_i`` of the classic capacity-factor examples;
where a drawing leaves edges unlabelled, ids are assigned in drawing order.
"""

from __future__ import annotations

from .netmodel import Edge, Network


def _net(edges: list[tuple[int, str, str]], source: str = "s", sink: str = "t") -> Network:
    vertices: dict[str, None] = {source: None}
    for _, u, v in edges:
        vertices.setdefault(u)
        vertices.setdefault(v)
    vertices.pop(sink)
    vertices[sink] = None
    return Network(tuple(vertices), tuple(Edge(*e) for e in edges), source, sink)


def exponential_family(n: int) -> Network:
    """``s -> s'`` followed by ``n`` internally disjoint 3-edge paths to ``t``.

    Edge ``e0`` is ``<s, s'>``; path ``i`` (1-based) uses ``e_{3i-2}``,
    ``e_{3i-1}``, ``e_{3i}``.  The network has ``3**n + 1`` capacity factors.
    """
    if n < 1:
        raise ValueError("n must be positive")
    edges = [(0, "s", "s'")]
    for i in range(1, n + 1):
        a, b = f"a{i}", f"b{i}"
        edges += [(3 * i - 2, "s'", a), (3 * i - 1, a, b), (3 * i, b, "t")]
    return _net(edges)


def fig2() -> Network:
    """Acyclic network whose only H-set edge is ``e4 = <v3, v2>``."""
    return _net([
        (1, "s", "v1"), (2, "s", "v2"), (3, "v1", "v3"), (4, "v3", "v2"),
        (5, "v2", "v4"), (6, "v3", "t"), (7, "v4", "t"),
    ])


def fig3() -> Network:
    """Cyclic network with the antiparallel pair ``e3 = <v1, v2>``, ``e4 = <v2, v1>``."""
    return _net([
        (1, "s", "v1"), (2, "s", "v2"), (3, "v1", "v2"),
        (4, "v2", "v1"), (5, "v1", "t"), (6, "v2", "t"),
    ])


def fig4() -> Network:
    """Network where a 2-CF plus a 1-CF of the remainder is not a 3-CF."""
    return _net([
        (1, "s", "v1"), (2, "s", "v2"), (3, "s", "v3"), (4, "v1", "v4"),
        (5, "v2", "v5"), (6, "v3", "v5"), (7, "v3", "v6"), (8, "v4", "t"),
        (9, "v5", "t"), (10, "v6", "t"),
    ])


FIG5_DRAWN = {8: ("v5", "v9"), 15: ("v9", "v4")}
FIG5_TEXT = {8: ("v9", "v5"), 15: ("v4", "v9")}


def fig5(orientation: str = "text") -> Network:
    """Source ``v1``, sink ``v10``, 15 edges.

    Two edges are drawn one way and listed the other way in the worked
    example.  ``"text"`` (default) uses ``e8 = <v9, v5>`` and
    ``e15 = <v4, v9>``, the only combination giving max flow 3 with 11 D-set
    and 4 H-set edges; ``"drawn"`` reverses both.
    """
    pick = {"text": FIG5_TEXT, "drawn": FIG5_DRAWN}[orientation]
    edges = [
        (1, "v1", "v2"), (2, "v1", "v3"), (3, "v1", "v4"), (4, "v1", "v5"),
        (5, "v2", "v6"), (6, "v3", "v7"), (7, "v4", "v8"), (8, *pick[8]),
        (9, "v6", "v10"), (10, "v7", "v10"), (11, "v8", "v10"), (12, "v9", "v10"),
        (13, "v7", "v2"), (14, "v8", "v3"), (15, *pick[15]),
    ]
    vertices = tuple(f"v{i}" for i in range(1, 11))
    return Network(vertices, tuple(Edge(*e) for e in edges), "v1", "v10")


def fig7() -> Network:
    """Flow-2 network with seven capacity factors."""
    return _net([
        (1, "s", "v1"), (2, "s", "v2"), (3, "v2", "v3"), (4, "v3", "t"),
        (5, "v2", "v4"), (6, "v4", "t"), (7, "v1", "t"),
    ])


FIGURES = {"fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5, "fig7": fig7}

# (x1 | x2 | x3) & (x1 | x3 | ~x3) & (~x1 | ~x2 | x3)
FIG6_CLAUSES = ((1, 2, 3), (1, 3, -3), (-1, -2, 3))
