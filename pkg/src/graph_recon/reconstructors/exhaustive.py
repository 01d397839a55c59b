"""Brute-force reconstruction: ask every pair."""

from typing import Iterable, Optional

import numpy as np
from pydantic import BaseModel

from ..graph_types import EdgeSet
from ..oracle import CountingOracle
from ..recon_types import ReconAlgorithm
from .base import BaseReconstructor, ReconstructionOutcome


def exhaustive_reconstruct(oracle: CountingOracle, U: Iterable[int]) -> EdgeSet:
    """Query every pair of U and keep those at distance 1."""
    members = np.array(sorted(set(U)), dtype=np.intp)
    edges = set()
    for idx, u in enumerate(members[:-1]):
        later = members[idx + 1:]
        row = oracle.query_row(int(u), later)
        edges.update((int(u), int(v)) for v in later[row == 1])
    return frozenset(edges)


class ExhaustiveReconstructor(BaseReconstructor):
    """Baseline using n(n-1)/2 distinct queries."""

    algorithm = ReconAlgorithm.EXHAUSTIVE

    @classmethod
    def default_config(cls) -> Optional[BaseModel]:
        return None

    def reconstruct(self, oracle: CountingOracle, rng: np.random.Generator) -> ReconstructionOutcome:
        return self._create_outcome(exhaustive_reconstruct(oracle, range(oracle.n)))
