"""Tests for the oracle-only outerplanar subroutines."""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from graph_recon.errors import ArgumentError, StructuralError
from graph_recon.graph_core import all_pairs_distances, components_after_removal
from graph_recon.graph_types import Graph
from graph_recon.oracle import CountingOracle
from graph_recon.reconstructors.outerplanar_primitives import (
    find_polygon,
    left_or_right,
    neighbors_in_order,
    partition_by_edge,
    partition_by_node,
    partition_by_polygon,
    shortest_path,
    side_containing,
)
from graph_recon.recon_types import Polygon, PolygonStrategy, Side

from tests.strategies import outerplanar_graphs


@pytest.fixture
def hexagon():
    """Cycle 0..5 with the chord (0, 3)."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])


def sides(result):
    return {result.right, result.left}


@pytest.mark.unit
class TestShortestPath:
    """Test midpoint-recursive shortest paths."""

    def test_same_vertex(self, f6_oracle):
        assert shortest_path(f6_oracle, 3, 3, range(6)) == [3]

    def test_f6(self, f6_oracle):
        path = shortest_path(f6_oracle, 0, 4, range(6))
        assert path in ([0, 2, 3, 4], [0, 2, 5, 4])

    def test_requires_members(self, f6_oracle):
        with pytest.raises(ArgumentError):
            shortest_path(f6_oracle, 0, 4, [0, 1, 2])

    @given(outerplanar_graphs(min_n=2, max_n=40), st.data())
    @settings(max_examples=40, deadline=None)
    def test_is_shortest(self, graph, data):
        dist = all_pairs_distances(graph)
        oracle = CountingOracle(dist)
        a = data.draw(st.integers(0, graph.n - 1))
        b = data.draw(st.integers(0, graph.n - 1))
        path = shortest_path(oracle, a, b, range(graph.n))
        assert path[0] == a and path[-1] == b
        assert len(path) == dist[a, b] + 1
        edges = graph.edges()
        assert all(tuple(sorted(p)) in edges for p in zip(path, path[1:]))


@pytest.mark.unit
class TestPartitionByNode:
    """Test splitting U at a vertex."""

    def test_cut_vertex(self, f6_oracle):
        result = partition_by_node(f6_oracle, 2, range(6))
        assert result.parts == (frozenset({0, 1, 2}), frozenset({2, 3, 4, 5}))
        assert result.part_containing(4) == frozenset({2, 3, 4, 5})
        assert result.count == 2

    def test_non_cut_vertex(self, f6_oracle):
        result = partition_by_node(f6_oracle, 4, range(6))
        assert result.parts == (frozenset(range(6)),)

    def test_star(self, star5, make_oracle):
        result = partition_by_node(make_oracle(star5), 0, range(5))
        assert result.parts == tuple(frozenset({0, leaf}) for leaf in range(1, 5))

    def test_single_vertex(self, f6_oracle):
        assert partition_by_node(f6_oracle, 3, [3]).parts == (frozenset({3}),)

    def test_pivot_lookup(self, f6_oracle):
        result = partition_by_node(f6_oracle, 2, range(6))
        with pytest.raises(ArgumentError):
            result.part_containing(2)

    def test_pivot_not_in_u(self, f6_oracle):
        with pytest.raises(ArgumentError):
            partition_by_node(f6_oracle, 2, [0, 1])

    @given(outerplanar_graphs(min_n=2, max_n=40), st.data())
    @settings(max_examples=50, deadline=None)
    def test_matches_components(self, graph, data):
        """Parts are the components of G - x, each with x added back."""
        oracle = CountingOracle(all_pairs_distances(graph))
        x = data.draw(st.integers(0, graph.n - 1))
        result = partition_by_node(oracle, x, range(graph.n))
        expected = {c | {x} for c in components_after_removal(graph, x, range(graph.n))}
        assert set(result.parts) == expected


@pytest.mark.unit
class TestNeighborsInOrder:
    """Test the circular order of neighbors around a non-cut vertex."""

    def test_fan(self, fan10, make_oracle):
        assert neighbors_in_order(make_oracle(fan10), 0, range(10)) == list(range(1, 10))

    def test_square(self, f6_oracle):
        assert neighbors_in_order(f6_oracle, 2, [2, 3, 4, 5]) == [3, 5]

    def test_chord_endpoint(self, hexagon, make_oracle):
        assert neighbors_in_order(make_oracle(hexagon), 0, range(6)) == [1, 3, 5]

    def test_leaf(self, f6_oracle):
        assert neighbors_in_order(f6_oracle, 4, [3, 4]) == [3]

    def test_cut_vertex_has_no_order(self, star5, make_oracle):
        with pytest.raises(StructuralError):
            neighbors_in_order(make_oracle(star5), 0, range(5))


@pytest.mark.unit
class TestPartitionByEdge:
    """Test the two sides of an edge."""

    def test_outer_edge(self, f6_oracle):
        result = partition_by_edge(f6_oracle, 2, 3, [2, 3, 4, 5])
        assert sides(result) == {frozenset({2, 3}), frozenset({2, 3, 4, 5})}

    def test_trims_to_block(self, f6_oracle):
        result = partition_by_edge(f6_oracle, 0, 2, range(6))
        assert sides(result) == {frozenset({0, 2}), frozenset({0, 1, 2})}

    def test_chord(self, hexagon, make_oracle):
        result = partition_by_edge(make_oracle(hexagon), 0, 3, range(6))
        assert result.right == frozenset({0, 1, 2, 3})
        assert result.left == frozenset({0, 3, 4, 5})
        assert result.side_of(5) == result.left

    def test_chord_reversed(self, hexagon, make_oracle):
        result = partition_by_edge(make_oracle(hexagon), 3, 0, range(6))
        assert sides(result) == {frozenset({0, 1, 2, 3}), frozenset({0, 3, 4, 5})}

    def test_bare_edge(self, f6_oracle):
        result = partition_by_edge(f6_oracle, 3, 4, [3, 4])
        assert result.right == result.left == frozenset({3, 4})

    def test_not_an_edge(self, f6_oracle):
        with pytest.raises(ArgumentError):
            partition_by_edge(f6_oracle, 0, 3, range(6))

    def test_side_of_trimmed_vertex(self, f6_oracle):
        result = partition_by_edge(f6_oracle, 0, 2, range(6))
        with pytest.raises(StructuralError):
            side_containing(result, 4)
        with pytest.raises(ArgumentError):
            result.side_of(0)

    @pytest.mark.parametrize("du_x,du_y,z,t,expected", [
        (1, 2, [0, 2, 2], [9, 9, 9], Side.RIGHT),
        (1, 2, [2, 2, 0], [9, 9, 9], Side.LEFT),
        (2, 1, [9, 9, 9], [0, 2, 2], Side.LEFT),
        (2, 1, [9, 9, 9], [2, 2, 0], Side.RIGHT),
    ])
    def test_left_or_right(self, du_x, du_y, z, t, expected):
        assert left_or_right(du_x, du_y, np.array(z), np.array(t), 1, 1) == expected


@pytest.mark.unit
class TestFindPolygon:
    """Test recovery of the polygon between consecutive neighbors."""

    def test_square(self, f6, f6_oracle):
        polygon = find_polygon(f6_oracle, 3, 2, 4, range(6))
        assert polygon.vertices[0] == 3
        assert set(polygon.vertices) == {2, 3, 4, 5}
        assert all(tuple(sorted(e)) in f6.edges() for e in polygon.edges())

    def test_chord_polygon(self, hexagon, make_oracle):
        polygon = find_polygon(make_oracle(hexagon), 0, 1, 3, range(6))
        assert polygon.vertices == (0, 1, 2, 3)

    def test_triangle(self, f6_oracle):
        polygon = find_polygon(f6_oracle, 2, 0, 1, [0, 1, 2])
        assert polygon.vertices == (2, 0, 1)

    @given(outerplanar_graphs(min_n=3, max_n=16))
    @settings(max_examples=40, deadline=None)
    def test_matches_minimal_avoiding_path(self, graph):
        """Every polygon is x plus a shortest y_i-y_{i+1} path in G - x."""
        oracle = CountingOracle(all_pairs_distances(graph))
        g = graph.to_networkx()
        for x in range(graph.n):
            rest = g.subgraph(set(g) - {x})
            if graph.degree(x) < 2 or not nx.is_connected(rest):
                continue
            order = neighbors_in_order(oracle, x, range(graph.n))
            for a, b in zip(order, order[1:]):
                polygon = find_polygon(oracle, x, a, b, range(graph.n))
                assert polygon.vertices[:2] == (x, a)
                assert polygon.vertices[-1] == b
                assert len(polygon) == nx.shortest_path_length(rest, a, b) + 2
                assert all(g.has_edge(u, v) for u, v in polygon.edges())

    def test_polygon_model(self):
        polygon = Polygon(vertices=(2, 3, 4, 5))
        assert len(polygon) == 4
        assert polygon.q(1) == polygon.q(5) == 2
        assert polygon.edges()[-1] == (5, 2)
        with pytest.raises(ValidationError):
            Polygon(vertices=(1, 2, 1))
        with pytest.raises(ValidationError):
            Polygon(vertices=(1, 2))


@pytest.mark.unit
class TestPartitionByPolygon:
    """Test outgrowths and strips of a polygon."""

    @pytest.mark.parametrize("strategy", list(PolygonStrategy))
    def test_square_with_triangle(self, f6_oracle, strategy):
        result = partition_by_polygon(f6_oracle, Polygon(vertices=(2, 3, 4, 5)), range(6), strategy)
        assert result.w == (frozenset({0, 1, 2}), frozenset({3}), frozenset({4}), frozenset({5}))
        assert result.r == (
            frozenset({2, 3}), frozenset({3, 4}), frozenset({4, 5}), frozenset({2, 5}),
        )

    @pytest.mark.parametrize("strategy", list(PolygonStrategy))
    def test_chord_strip(self, hexagon, make_oracle, strategy):
        result = partition_by_polygon(
            make_oracle(hexagon), Polygon(vertices=(0, 1, 2, 3)), range(6), strategy
        )
        assert result.r[3] == frozenset({0, 3, 4, 5})
        assert all(len(w) == 1 for w in result.w)

    def test_cycle(self, cycle12, make_oracle):
        polygon = Polygon(vertices=tuple(range(12)))
        result = partition_by_polygon(make_oracle(cycle12), polygon, range(12))
        assert list(result.r) == [frozenset({i, (i + 1) % 12}) for i in range(12)]
        assert list(result.w) == [frozenset({i}) for i in range(12)]

    def test_corner_not_in_u(self, f6_oracle):
        with pytest.raises(ArgumentError):
            partition_by_polygon(f6_oracle, Polygon(vertices=(2, 3, 4, 5)), [2, 3, 4])

    def test_parts_cover_edges(self, cycle12, make_oracle):
        """Every edge of G[U] lies inside some part."""
        g = nx.cycle_graph(12)
        g.add_edges_from([(0, 12), (12, 13)])
        graph = Graph.from_edges(14, g.edges())
        polygon = Polygon(vertices=tuple(range(12)))
        result = partition_by_polygon(make_oracle(graph), polygon, range(14))
        assert result.w[0] == frozenset({0, 12, 13})
        for u, v in graph.edges():
            assert any(u in part and v in part for part in result.parts())
