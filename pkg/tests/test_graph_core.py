"""Tests for ground-truth distances, file I/O and brute-force oracles."""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from graph_recon.errors import ArgumentError, EnumerationLimitError, GraphFormatError, GraphValidationError
from graph_recon.graph_core import (
    all_pairs_distances,
    bfs_distances,
    cluster_sizes,
    components_after_removal,
    dump_graph,
    enumerate_all_shortest_paths,
    is_connected,
    is_self_contained,
    load_graph,
    parse_graph_text,
    save_graph,
)
from graph_recon.graph_types import DistanceMatrix, Graph

from tests.conftest import graph_from_networkx
from tests.strategies import connected_graphs


@pytest.mark.unit
class TestGraph:
    """Test the Graph model."""

    def test_from_edges(self, f6):
        """Adjacency rows are sorted and symmetric."""
        assert f6.n == 6
        assert f6.m == 7
        assert f6.adj[2] == (0, 1, 3, 5)
        assert f6.degree(2) == 4
        assert f6.max_degree() == 4
        assert (2, 3) in f6.edges()

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(0, 1), (1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ValueError):
            Graph(n=2, adj=((1,), ()))

    def test_single_vertex(self):
        g = Graph.from_edges(1, [])
        assert g.m == 0
        assert is_connected(g)


@pytest.mark.unit
class TestDistances:
    """Test BFS and all-pairs distances."""

    def test_bfs(self, f6):
        assert bfs_distances(f6, 0).tolist() == [0, 1, 1, 2, 3, 2]

    def test_bfs_bad_source(self, f6):
        with pytest.raises(ArgumentError):
            bfs_distances(f6, 6)

    def test_disconnected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert not is_connected(g)
        with pytest.raises(GraphValidationError):
            all_pairs_distances(g)
        with pytest.raises(GraphValidationError):
            bfs_distances(g, 0)

    def test_distance_matrix_is_read_only(self, f6_dist):
        with pytest.raises(ValueError):
            f6_dist.d[0, 1] = 5

    def test_distance_matrix_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            DistanceMatrix(d=np.array([[0, 1], [2, 0]]))

    @given(connected_graphs(max_n=25))
    @settings(max_examples=40, deadline=None)
    def test_matches_networkx(self, graph):
        """APSP agrees with networkx and with per-source BFS."""
        dist = all_pairs_distances(graph)
        lengths = dict(nx.all_pairs_shortest_path_length(graph.to_networkx()))
        for u in range(graph.n):
            for v in range(graph.n):
                assert dist[u, v] == lengths[u][v]
        assert np.array_equal(bfs_distances(graph, 0), dist.d[0])


@pytest.mark.unit
class TestGraphText:
    """Test the graph text format."""

    def test_dump(self, f6):
        text = dump_graph(f6, "f6")
        lines = text.splitlines()
        assert lines[0] == "# f6"
        assert lines[1] == "6 7"
        assert lines[2] == "0 1"
        assert text.endswith("\n")

    def test_parse_with_comments(self):
        g = parse_graph_text("# triangle\n3 3\n0 1\n\n1 2\n# edge\n0 2\n")
        assert g.edges() == {(0, 1), (1, 2), (0, 2)}

    @pytest.mark.parametrize("text", [
        "",
        "three 2\n",
        "3 2\n0 1\n",
        "3 2\n0 1\n1 1\n",
        "3 2\n0 1\n1 0\n",
        "3 2\n0 1\n1 3\n",
        "3 2\n0 1\n1 x\n",
    ])
    def test_parse_rejects(self, text):
        with pytest.raises(GraphFormatError):
            parse_graph_text(text)

    def test_save_and_load(self, f6, tmp_path):
        path = tmp_path / "f6.txt"
        save_graph(f6, path)
        assert load_graph(path) == f6

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_graph(tmp_path / "nope.txt")

    def test_load_disconnected(self, tmp_path):
        path = tmp_path / "split.txt"
        path.write_text("4 2\n0 1\n2 3\n")
        with pytest.raises(GraphValidationError):
            load_graph(path)
        assert load_graph(path, connected=False).m == 2

    def test_load_not_utf8(self, tmp_path):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"\xff\xfe\x00 2 1\n")
        with pytest.raises(GraphFormatError, match="UTF-8"):
            load_graph(path)


@pytest.mark.unit
class TestBruteForce:
    """Test the brute-force helpers used as test oracles."""

    def test_components_after_removal(self, f6):
        comps = components_after_removal(f6, 2, range(6))
        assert comps == [frozenset({0, 1}), frozenset({3, 4, 5})]

    def test_components_requires_member(self, f6):
        with pytest.raises(ArgumentError):
            components_after_removal(f6, 2, [0, 1])

    def test_all_shortest_paths(self):
        square = graph_from_networkx(nx.cycle_graph(4))
        paths = enumerate_all_shortest_paths(square, 0, 2)
        assert sorted(paths) == [[0, 1, 2], [0, 3, 2]]

    def test_enumeration_cap(self):
        big = graph_from_networkx(nx.path_graph(30))
        with pytest.raises(EnumerationLimitError):
            enumerate_all_shortest_paths(big, 0, 29)

    def test_self_contained(self, f6_dist):
        assert is_self_contained(f6_dist, [0, 1, 2])
        assert is_self_contained(f6_dist, [2, 3, 4, 5])
        assert is_self_contained(f6_dist, [4])
        assert not is_self_contained(f6_dist, [0, 3])
        assert not is_self_contained(f6_dist, [3, 5])

    def test_self_contained_cycle(self):
        dist = all_pairs_distances(graph_from_networkx(nx.cycle_graph(6)))
        assert is_self_contained(dist, [0, 1, 2])
        assert not is_self_contained(dist, [0, 2])
        assert not is_self_contained(dist, [0, 1, 2, 3])

    def test_cluster_sizes_without_centers(self, f6_dist):
        assert cluster_sizes(f6_dist, []).tolist() == [6] * 6

    def test_cluster_sizes_on_path(self):
        dist = all_pairs_distances(graph_from_networkx(nx.path_graph(4)))
        assert cluster_sizes(dist, [0]).tolist() == [0, 3, 2, 2]
