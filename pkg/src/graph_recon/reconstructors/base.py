"""Base reconstructor interface."""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..graph_types import Edge, EdgeSet, normalize_edge
from ..oracle import CountingOracle
from ..recon_types import ReconAlgorithm

logger = logging.getLogger(__name__)


class ReconstructionOutcome(BaseModel):
    """Edges a reconstructor found plus algorithm-specific run details."""
    algo: ReconAlgorithm
    edges: EdgeSet
    details: Dict[str, Any] = Field(default_factory=dict)


class BaseReconstructor(ABC):
    """Abstract base class for exact reconstruction algorithms.

    Implementations see the hidden graph only through the oracle they are
    handed.
    """

    algorithm: ReconAlgorithm

    def __init__(self, config: Optional[BaseModel] = None):
        self.config = config if config is not None else self.default_config()
        self._validate_config()

    @classmethod
    @abstractmethod
    def default_config(cls) -> Optional[BaseModel]:
        """Configuration used when none is given."""
        pass

    @abstractmethod
    def reconstruct(self, oracle: CountingOracle, rng: np.random.Generator) -> ReconstructionOutcome:
        """Recover the full edge set of the hidden graph."""
        pass

    def _validate_config(self) -> bool:
        """Reject configurations of the wrong model type."""
        expected = self.default_config()
        if expected is not None and not isinstance(self.config, type(expected)):
            raise TypeError(
                f"{type(self).__name__} expects {type(expected).__name__}, "
                f"got {type(self.config).__name__}"
            )
        return True

    def _create_outcome(self, edges: Iterable[Edge], details: Optional[dict] = None) -> ReconstructionOutcome:
        """Create a standardized outcome with normalized edges."""
        return ReconstructionOutcome(
            algo=self.algorithm,
            edges=frozenset(normalize_edge(u, v) for u, v in edges),
            details=details or {},
        )
