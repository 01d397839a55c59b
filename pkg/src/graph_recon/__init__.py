"""Graph Reconstruction

Recovers a hidden unweighted graph, or an f-approximation of its metric,
using only pairwise distance queries, and measures how many queries it took.
"""

from .errors import ReconstructionError
from .graph_types import DistanceMatrix, GenSpec, Graph, GraphKind
from .oracle import CountingOracle
from .recon_manager import ReconstructionManager
from .recon_types import ReconAlgorithm, ReconstructionReport

__version__ = "0.1.0"

__all__ = [
    "CountingOracle",
    "DistanceMatrix",
    "GenSpec",
    "Graph",
    "GraphKind",
    "ReconAlgorithm",
    "ReconstructionError",
    "ReconstructionManager",
    "ReconstructionReport",
]
