"""Reconstruction manager for coordinating algorithms, oracles and seeds."""

import logging
import os
from typing import Any, Dict, Optional, Type

from dotenv import load_dotenv
from pydantic import BaseModel

from .errors import ArgumentError
from .graph_core import all_pairs_distances, require_connected
from .graph_types import Graph
from .oracle import CountingOracle
from .reconstructors.approx import approx_reconstruct, verify_approx
from .reconstructors.base import BaseReconstructor
from .reconstructors.bounded import BoundedDegreeReconstructor
from .reconstructors.exhaustive import ExhaustiveReconstructor
from .reconstructors.outerplanar import OuterplanarReconstructor
from .recon_types import (
    ApproxConfig,
    ApproxReport,
    BalancedPartitionConfig,
    CenterConfig,
    ReconAlgorithm,
    ReconstructionReport,
)
from .rng import make_rng

load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    return int(raw) if raw not in (None, "") else None


def _env_float(name: str) -> Optional[float]:
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else None


def _drop_unset(values: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in values.items() if v is not None}


class ReconstructionManager:
    """Runs reconstruction algorithms against ground-truth graphs."""

    # Algorithm class mapping
    ALGORITHMS: Dict[ReconAlgorithm, Type[BaseReconstructor]] = {
        ReconAlgorithm.BOUNDED: BoundedDegreeReconstructor,
        ReconAlgorithm.OUTERPLANAR: OuterplanarReconstructor,
        ReconAlgorithm.EXHAUSTIVE: ExhaustiveReconstructor,
    }

    # PRNG substream each algorithm draws from
    STREAMS: Dict[ReconAlgorithm, str] = {
        ReconAlgorithm.BOUNDED: "center",
        ReconAlgorithm.OUTERPLANAR: "partition",
        ReconAlgorithm.EXHAUSTIVE: "center",
        ReconAlgorithm.APPROX: "approx",
    }

    def __init__(self, memoize: bool = True):
        self.memoize = memoize
        self._configs: Dict[ReconAlgorithm, Optional[BaseModel]] = {}
        self._load_configs()

    def _load_configs(self):
        """Load run settings and algorithm configurations from environment variables."""
        self.master_seed = int(os.getenv("RECON_MASTER_SEED", "0"))
        self.workers = int(os.getenv("RECON_WORKERS", "1"))
        self.log_level = os.getenv("RECON_LOG_LEVEL", "WARNING")

        self._configs[ReconAlgorithm.BOUNDED] = CenterConfig(**_drop_unset({
            "s": _env_int("RECON_CENTER_S"),
            "K": _env_float("RECON_CENTER_K"),
        }))
        self._configs[ReconAlgorithm.OUTERPLANAR] = BalancedPartitionConfig(**_drop_unset({
            "beta": _env_float("RECON_BETA"),
            "C": _env_float("RECON_SAMPLING_C"),
            "max_samplings": _env_int("RECON_MAX_SAMPLINGS"),
        }))
        self._configs[ReconAlgorithm.EXHAUSTIVE] = None

    def config_for(
        self, algo: ReconAlgorithm, overrides: Optional[Dict[str, Any]] = None
    ) -> Optional[BaseModel]:
        """Environment-derived config for ``algo`` with explicit overrides applied.

        Overrides are re-validated, so out-of-range values raise
        ``pydantic.ValidationError``.
        """
        if algo not in self.ALGORITHMS:
            raise ArgumentError(f"{algo.value} is not an exact reconstruction algorithm")
        base = self._configs[algo]
        updates = _drop_unset(overrides or {})
        if base is None:
            if updates:
                raise ArgumentError(f"{algo.value} takes no options, got {sorted(updates)}")
            return None
        return type(base).model_validate({**base.model_dump(), **updates})

    def reconstruct(
        self,
        graph: Graph,
        algo: ReconAlgorithm,
        seed: Optional[int] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ) -> ReconstructionReport:
        """Reconstruct ``graph`` through a counting oracle and compare with the truth."""
        seed = self.master_seed if seed is None else seed
        config = self.config_for(algo, overrides)
        oracle = CountingOracle(all_pairs_distances(require_connected(graph)), memoize=self.memoize)
        reconstructor = self.ALGORITHMS[algo](config)
        outcome = reconstructor.reconstruct(oracle, make_rng(seed, self.STREAMS[algo]))

        truth = graph.edges()
        missing = truth - outcome.edges
        extra = outcome.edges - truth
        stats = oracle.stats()
        logger.info(
            "%s on n=%d: %d distinct queries, correct=%s",
            algo.value, graph.n, stats.distinct_count, not (missing or extra),
        )
        return ReconstructionReport(
            algo=algo,
            n=graph.n,
            m=graph.m,
            seed=seed,
            edges_found=len(outcome.edges),
            correct=not (missing or extra),
            missing_edges=len(missing),
            extra_edges=len(extra),
            stats=stats,
            config=config.model_dump(mode="json") if config is not None else {},
            details=outcome.details,
        )

    def approximate(self, graph: Graph, f: float, seed: Optional[int] = None) -> ApproxReport:
        """Build an f-approximate metric and verify it against the truth."""
        seed = self.master_seed if seed is None else seed
        config = ApproxConfig(f=f)
        dist = all_pairs_distances(require_connected(graph))
        oracle = CountingOracle(dist, memoize=self.memoize)
        metric = approx_reconstruct(oracle, config.f, make_rng(seed, self.STREAMS[ReconAlgorithm.APPROX]))
        verdict = verify_approx(metric, dist)
        if not verdict.ok:
            logger.warning("approximation violated on %d pairs", len(verdict.violations))
        return ApproxReport(
            n=graph.n,
            m=graph.m,
            seed=seed,
            f=config.f,
            ok=verdict.ok,
            worst_ratio=verdict.worst_ratio,
            violation_count=len(verdict.violations),
            samples=metric.samples,
            stats=oracle.stats(),
        )
