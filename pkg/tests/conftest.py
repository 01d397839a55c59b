"""Test configuration and fixtures for graph-recon tests."""

from typing import Callable

import networkx as nx
import pytest

from graph_recon.graph_core import all_pairs_distances
from graph_recon.graph_types import DistanceMatrix, Graph
from graph_recon.oracle import CountingOracle

# Vertex ids of the six-vertex reference graph
A, B, C, D, E, F = range(6)


def graph_from_networkx(g: nx.Graph) -> Graph:
    """Relabel to 0..n-1 in sorted order and convert."""
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def fan(n: int) -> Graph:
    """Hub 0 joined to every vertex of the path 1..n-1."""
    edges = [(0, v) for v in range(1, n)] + [(v, v + 1) for v in range(1, n - 1)]
    return Graph.from_edges(n, edges)


@pytest.fixture
def f6() -> Graph:
    """Triangle abc glued at c to the square cdef."""
    return Graph.from_edges(6, [(A, B), (A, C), (B, C), (C, D), (D, E), (E, F), (F, C)])


@pytest.fixture
def make_oracle() -> Callable[..., CountingOracle]:
    """Factory building a fresh counting oracle over a graph's true distances."""
    def _make(graph: Graph, memoize: bool = True) -> CountingOracle:
        return CountingOracle(all_pairs_distances(graph), memoize=memoize)
    return _make


@pytest.fixture
def f6_dist(f6) -> DistanceMatrix:
    return all_pairs_distances(f6)


@pytest.fixture
def f6_oracle(f6, make_oracle) -> CountingOracle:
    return make_oracle(f6)


@pytest.fixture
def path10() -> Graph:
    return graph_from_networkx(nx.path_graph(10))


@pytest.fixture
def cycle12() -> Graph:
    return graph_from_networkx(nx.cycle_graph(12))


@pytest.fixture
def fan10() -> Graph:
    return fan(10)


@pytest.fixture
def star5() -> Graph:
    """K_{1,4} with center 0."""
    return graph_from_networkx(nx.star_graph(4))


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every RECON_* variable so model defaults apply."""
    for key in (
        "RECON_MASTER_SEED", "RECON_CENTER_S", "RECON_CENTER_K", "RECON_BETA",
        "RECON_SAMPLING_C", "RECON_MAX_SAMPLINGS", "RECON_WORKERS", "RECON_LOG_LEVEL",
    ):
        monkeypatch.delenv(key, raising=False)
