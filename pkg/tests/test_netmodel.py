import json

import pytest
from hypothesis import given, settings

from capfactor import figures
from capfactor.netmodel import (
    CyclicNetworkError,
    Edge,
    MulticastNetwork,
    Network,
    NetworkError,
    is_acyclic,
    is_normalized,
    normalize,
    parse_any,
    parse_multicast,
    parse_network,
    remove_edges,
    remove_vertices,
    serialize_network,
    to_dot,
    topological_labels,
)
from oracles import networks


def single_edge() -> Network:
    return Network(("s", "t"), (Edge(1, "s", "t"),), "s", "t")


class TestConstruction:
    def test_edges_sorted_by_id(self):
        n = Network(("s", "t"), ((5, "s", "t"), (2, "s", "t")), "s", "t")
        assert n.edge_ids == (2, 5)

    @pytest.mark.parametrize(
        "vertices, edges, msg",
        [
            (("s", "s", "t"), (), "duplicate vertex"),
            (("s", "t"), ((1, "s", "t"), (1, "s", "t")), "duplicate edge id"),
            (("s", "t"), ((-1, "s", "t"),), "negative"),
            (("s", "t"), ((1, "s", "x"),), "unknown endpoint"),
            (("s", "t"), ((1, "s", "s"),), "self-loop"),
        ],
    )
    def test_rejects(self, vertices, edges, msg):
        with pytest.raises(NetworkError, match=msg):
            Network(vertices, edges, "s", "t")

    def test_source_equals_sink(self):
        with pytest.raises(NetworkError):
            Network(("s",), (), "s", "s")

    def test_unknown_lookup(self):
        n = figures.fig2()
        with pytest.raises(NetworkError):
            n.edge(99)
        with pytest.raises(NetworkError):
            n.check_vertex("nowhere")

    def test_parallel_edges_are_distinct(self):
        n = Network(("s", "t"), ((1, "s", "t"), (2, "s", "t")), "s", "t")
        assert len(n.edges) == 2

    def test_multicast(self):
        m = MulticastNetwork(("s", "a", "b"), ((1, "s", "a"), (2, "s", "b")), "s", ("a", "b"))
        assert m.unicast(1).sink == "b"
        with pytest.raises(NetworkError):
            MulticastNetwork(("s", "a"), (), "s", ())


class TestParsing:
    def test_json_document(self):
        doc = '{"vertices":["s","v1","t"],"edges":[{"id":1,"tail":"s","head":"v1"},{"id":2,"tail":"v1","head":"t"}],"source":"s","sink":"t"}'
        n = parse_network(doc)
        assert n.edge(2) == Edge(2, "v1", "t")
        assert serialize_network(n) == doc

    def test_edge_list(self):
        text = "# two hops\ns t\n1 s a\n2 a t  # tail comment\n"
        n = parse_network(text)
        assert n.vertices == ("s", "t", "a") and n.edge_ids == (1, 2)

    def test_multicast_formats(self):
        assert isinstance(parse_any("s a b\n1 s a\n2 s b\n"), MulticastNetwork)
        doc = json.dumps({"vertices": ["s", "a"], "edges": [], "source": "s", "sinks": ["a"]})
        assert parse_multicast(doc).sinks == ("a",)
        with pytest.raises(NetworkError):
            parse_network(doc)

    @pytest.mark.parametrize(
        "doc",
        [
            "",
            "{not json",
            '{"vertices":["s","t"],"source":"s","sink":"t"}',
            '{"vertices":["s","t"],"edges":[{"id":"1","tail":"s","head":"t"}],"source":"s","sink":"t"}',
            '{"vertices":["s","t"],"edges":[],"source":"s"}',
            '{"vertices":["s","t"],"edges":[],"source":"s","sink":"t","sinks":["t"]}',
            "s t\n1 s\n",
            "s t\nx s t\n",
        ],
    )
    def test_malformed(self, doc):
        with pytest.raises(NetworkError):
            parse_network(doc)

    @given(networks())
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, n):
        assert parse_network(serialize_network(n)) == n

    def test_dot(self):
        text = to_dot(figures.fig2())
        assert text.startswith("digraph") and '"v3" -> "v2" [label="e4"]' in text


class TestStructure:
    def test_normalize_prunes_dead_ends(self):
        n = Network(("s", "a", "b", "t"), ((1, "s", "t"), (2, "s", "a"), (3, "b", "t")), "s", "t")
        m, removed = normalize(n)
        assert removed == (2, 3) and m.edge_ids == (1,)
        assert not is_normalized(n) and is_normalized(m)

    @given(networks())
    @settings(max_examples=60, deadline=None)
    def test_normalize_idempotent(self, n):
        m, _ = normalize(n)
        assert normalize(m)[1] == ()

    @given(networks())
    @settings(max_examples=60, deadline=None)
    def test_remove_edges_extensional(self, n):
        f = n.edge_ids[::2]
        m = remove_edges(n, f)
        assert m.vertices == n.vertices
        assert set(m.edges) == {e for e in n.edges if e.id not in f}

    def test_remove_edges_unknown(self):
        with pytest.raises(NetworkError):
            remove_edges(figures.fig2(), [42])

    def test_remove_vertices(self):
        m = remove_vertices(figures.fig2(), ["v3"])
        assert "v3" not in m.vertices and m.edge_ids == (1, 2, 5, 7)
        with pytest.raises(NetworkError):
            remove_vertices(figures.fig2(), ["s"])

    def test_acyclicity(self):
        assert is_acyclic(figures.fig2())
        assert not is_acyclic(figures.fig3())
        with pytest.raises(CyclicNetworkError):
            topological_labels(figures.fig3())

    def test_single_edge_labels(self):
        lab = topological_labels(single_edge())
        assert lab["s"] == 0 < lab["t"]

    @given(networks(acyclic=True))
    @settings(max_examples=60, deadline=None)
    def test_labels_respect_edges(self, n):
        lab = topological_labels(n)
        assert all(lab[e.tail] < lab[e.head] for e in n.edges)
