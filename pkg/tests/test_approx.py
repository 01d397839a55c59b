"""Tests for f-approximate metric reconstruction."""

import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from graph_recon.errors import ArgumentError
from graph_recon.generators import gen_bounded_degree
from graph_recon.graph_core import all_pairs_distances
from graph_recon.graph_types import Graph
from graph_recon.oracle import CountingOracle
from graph_recon.reconstructors.approx import approx_reconstruct, verify_approx
from graph_recon.recon_types import ApproxMetric
from graph_recon.rng import make_rng

from tests.conftest import graph_from_networkx
from tests.strategies import connected_graphs, seeds


@pytest.fixture
def path3_dist():
    return all_pairs_distances(Graph.from_edges(3, [(0, 1), (1, 2)]))


@pytest.mark.unit
class TestApproxReconstruct:
    """Test the sampled estimate matrix."""

    def test_f_one_is_exact(self, f6_dist):
        metric = approx_reconstruct(CountingOracle(f6_dist), 1.0, make_rng(0, "approx"))
        assert np.array_equal(metric.est, f6_dist.d)
        verdict = verify_approx(metric, f6_dist)
        assert verdict.ok
        assert verdict.worst_ratio == 1.0

    def test_one_sample_covers_a_small_diameter(self, star5, make_oracle):
        """With f >= 2*eccentricity + 1 the first sample finishes the job."""
        oracle = make_oracle(star5)
        metric = approx_reconstruct(oracle, 5.0, make_rng(0, "approx"))
        assert metric.samples == 1
        assert oracle.stats().distinct_count == 4
        off = ~np.eye(5, dtype=bool)
        assert np.all(metric.est[off] == 1)
        assert verify_approx(metric, all_pairs_distances(star5)).worst_ratio == 2.0

    def test_single_vertex(self):
        oracle = CountingOracle(all_pairs_distances(Graph.from_edges(1, [])))
        metric = approx_reconstruct(oracle, 2.0, make_rng(0, "approx"))
        assert metric.samples == 0
        assert metric.est.tolist() == [[0]]

    def test_rejects_small_f(self, f6_oracle):
        with pytest.raises(ArgumentError):
            approx_reconstruct(f6_oracle, 0.5, make_rng(0, "approx"))

    @given(connected_graphs(min_n=2, max_n=40), st.sampled_from([1.0, 1.5, 2.0, 3.0, 5.0, 8.0]), seeds)
    @settings(max_examples=60, deadline=None)
    def test_sandwich(self, graph, f, seed):
        """est <= delta <= f * est on every pair."""
        dist = all_pairs_distances(graph)
        oracle = CountingOracle(dist)
        metric = approx_reconstruct(oracle, f, make_rng(seed, "approx"))
        verdict = verify_approx(metric, dist)
        assert verdict.ok, verdict.violations[:3]
        assert 1.0 <= verdict.worst_ratio <= f + 1e-9
        assert oracle.stats().distinct_count <= graph.n * (graph.n - 1) // 2

    def test_larger_f_needs_fewer_queries(self):
        graph = graph_from_networkx(nx.grid_2d_graph(8, 8))
        dist = all_pairs_distances(graph)
        counts = []
        for f in (1.0, 9.0):
            oracle = CountingOracle(dist)
            approx_reconstruct(oracle, f, make_rng(4, "approx"))
            counts.append(oracle.stats().distinct_count)
        assert counts[1] < counts[0]


@pytest.mark.unit
class TestVerifyApprox:
    """Test the sandwich checker on hand-made estimates."""

    def test_upper_violation(self, path3_dist):
        metric = ApproxMetric(f=1.0, est=np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
        verdict = verify_approx(metric, path3_dist)
        assert not verdict.ok
        assert [(v.u, v.v, v.kind) for v in verdict.violations] == [(0, 2, "upper")]
        assert verdict.worst_ratio == 2.0

    def test_within_factor(self, path3_dist):
        metric = ApproxMetric(f=2.0, est=np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
        assert verify_approx(metric, path3_dist).ok

    def test_lower_violation(self, path3_dist):
        metric = ApproxMetric(f=3.0, est=np.array([[0, 2, 2], [2, 0, 1], [2, 1, 0]]))
        verdict = verify_approx(metric, path3_dist)
        assert [(v.u, v.v, v.kind) for v in verdict.violations] == [(0, 1, "lower")]
        assert verdict.violations[0].estimate == 2

    def test_size_mismatch(self, f6_dist):
        metric = ApproxMetric(f=1.0, est=np.zeros((1, 1), dtype=np.int64))
        with pytest.raises(ArgumentError):
            verify_approx(metric, f6_dist)

    @pytest.mark.parametrize("est", [
        [[0, 1], [2, 0]],
        [[1, 1], [1, 0]],
        [[0, 0], [0, 0]],
    ])
    def test_metric_validation(self, est):
        with pytest.raises(ValidationError):
            ApproxMetric(f=1.0, est=np.array(est))


@pytest.mark.acceptance
class TestApproxAtScale:
    """Sandwich bound and query budget on n=256 graphs."""

    N = 256

    @pytest.fixture(scope="class")
    def instances(self):
        return [all_pairs_distances(gen_bounded_degree(self.N, 4, seed)) for seed in range(20)]

    @pytest.mark.parametrize("f", [1.0, 16.0, math.sqrt(N)])
    def test_sandwich(self, instances, f):
        for seed, dist in enumerate(instances):
            metric = approx_reconstruct(CountingOracle(dist), f, make_rng(seed, "approx"))
            verdict = verify_approx(metric, dist)
            assert verdict.ok, verdict.violations[:3]
            assert verdict.worst_ratio <= f

    def test_query_budget(self, instances):
        n, f = self.N, 16.0
        counts = []
        for seed, dist in enumerate(instances):
            oracle = CountingOracle(dist)
            approx_reconstruct(oracle, f, make_rng(seed, "approx"))
            counts.append(oracle.stats().distinct_count)
        assert np.mean(counts) <= 8 * n * n * math.log(n) / f
        assert max(counts) < n * (n - 1) // 2
