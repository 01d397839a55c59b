"""Tests for outerplanar reconstruction."""

import pytest
from hypothesis import given, settings

from graph_recon.generators import gen_tree
from graph_recon.graph_core import all_pairs_distances
from graph_recon.oracle import CountingOracle
from graph_recon.reconstructors.outerplanar import OuterplanarReconstructor, reconstruct_outerplanar
from graph_recon.recon_types import BalancedPartitionConfig, PolygonStrategy
from graph_recon.rng import make_rng

from tests.strategies import outerplanar_graphs, seeds, trees


def reconstruct(graph, seed=0, cfg=None):
    oracle = CountingOracle(all_pairs_distances(graph))
    edges, stats = reconstruct_outerplanar(
        oracle, cfg or BalancedPartitionConfig(), make_rng(seed, "partition")
    )
    return edges, stats, oracle


@pytest.mark.unit
class TestOuterplanarReconstruction:
    """Exactness on fixed and random outerplanar graphs."""

    def test_small_graph_is_a_base_case(self, f6):
        edges, stats, oracle = reconstruct(f6)
        assert edges == f6.edges()
        assert stats["base_cases"] == 1
        assert stats["partition_calls"] == 0
        assert oracle.stats().distinct_count == 15

    @pytest.mark.parametrize("fixture", ["path10", "cycle12", "fan10"])
    def test_fixed_graphs(self, fixture, request):
        graph = request.getfixturevalue(fixture)
        edges, stats, _ = reconstruct(graph)
        assert edges == graph.edges()
        assert stats["partition_calls"] >= 1
        assert stats["max_depth"] >= 1

    @pytest.mark.parametrize("seed", range(5))
    def test_trees(self, seed):
        graph = gen_tree(50, 3, seed)
        edges, _, oracle = reconstruct(graph, seed)
        assert edges == graph.edges()
        assert oracle.stats().distinct_count <= 50 * 49 // 2

    @given(outerplanar_graphs(min_n=2, max_n=60), seeds)
    @settings(max_examples=40, deadline=None)
    def test_random_outerplanar(self, graph, seed):
        edges, _, oracle = reconstruct(graph, seed)
        assert edges == graph.edges()
        assert oracle.stats().distinct_count <= graph.n * (graph.n - 1) // 2

    @given(trees(min_n=10, max_n=60), seeds)
    @settings(max_examples=20, deadline=None)
    def test_random_trees(self, graph, seed):
        assert reconstruct(graph, seed)[0] == graph.edges()

    @given(outerplanar_graphs(min_n=10, max_n=40), seeds)
    @settings(max_examples=15, deadline=None)
    def test_naive_polygon_strategy(self, graph, seed):
        cfg = BalancedPartitionConfig(polygon_strategy=PolygonStrategy.NAIVE)
        assert reconstruct(graph, seed, cfg)[0] == graph.edges()

    def test_reproducible(self, cycle12):
        first = reconstruct(cycle12, seed=3)
        second = reconstruct(cycle12, seed=3)
        assert first[1] == second[1]
        assert first[2].stats().distinct_count == second[2].stats().distinct_count

    def test_reconstructor(self, fan10, make_oracle):
        outcome = OuterplanarReconstructor().reconstruct(make_oracle(fan10), make_rng(0, "partition"))
        assert outcome.edges == fan10.edges()
        assert outcome.algo.value == "outerplanar"
        assert {"partition_calls", "samplings", "escalations", "max_depth"} <= set(outcome.details)
