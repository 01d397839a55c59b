"""Reconstruction of bounded-degree graphs.

Phase 1 (``modified_center``) picks a center set A such that every cluster
C_w^A = {v : delta(w, v) < delta(A, v)} is small. Phase 2
(``local_reconstruction``) then only needs to query pairs inside the local
regions D_a around each center.
"""

import logging
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..errors import ArgumentError, CenterSelectionError
from ..graph_types import EdgeSet
from ..oracle import CountingOracle
from ..recon_types import CenterConfig, CenterCover, ClusterEstimator, ReconAlgorithm
from .base import BaseReconstructor, ReconstructionOutcome

logger = logging.getLogger(__name__)


def estimate_cluster_size(
    oracle: CountingOracle, w: int, dist_to_centers: np.ndarray, sample: np.ndarray
) -> float:
    """Estimate |C_w^A| from a multiset of vertices drawn uniformly from V.

    Membership x in C_w^A is delta(x, w) < delta(A, x); with A empty every
    sentinel is +inf so every x counts.
    """
    if len(sample) == 0:
        return 0.0
    dw = oracle.query_row(w, sample)
    hits = int(np.count_nonzero(dw < dist_to_centers[sample]))
    return hits * oracle.n / len(sample)


def modified_center(
    oracle: CountingOracle,
    cfg: CenterConfig,
    rng: np.random.Generator,
) -> CenterCover:
    """Sample centers until every remaining w has an estimated cluster below 5n/s.

    Raises:
        ArgumentError: fewer than two vertices.
        CenterSelectionError: the while loop exceeded its cap.
    """
    n = oracle.n
    if n < 2:
        raise ArgumentError("modified_center needs at least two vertices")
    s = cfg.resolve_s(n)
    sample_size = s * cfg.sample_rounds(n)
    cap = cfg.while_cap(n)
    threshold = 5 * n / s
    everyone = np.arange(n)

    centers = set()
    dist_to_centers = np.full(n, np.inf)
    remaining = list(range(n))
    iterations = 0
    samples = 0

    while remaining:
        iterations += 1
        if iterations > cap:
            raise CenterSelectionError(
                f"no center set after {cap} iterations ({len(remaining)} vertices left)"
            )
        p = min(1.0, s / len(remaining))
        coins = rng.random(len(remaining))
        fresh = [w for w, c in zip(remaining, coins) if c < p]
        for a in fresh:
            dist_to_centers = np.minimum(dist_to_centers, oracle.query_row(a, everyone))
        centers.update(fresh)

        kept = []
        for w in remaining:
            if cfg.estimator == ClusterEstimator.EXACT:
                sample = everyone
            else:
                sample = rng.integers(0, n, size=sample_size)
            samples += len(sample)
            if estimate_cluster_size(oracle, w, dist_to_centers, sample) >= threshold:
                kept.append(w)
        logger.debug(
            "center iteration %d: +%d centers, %d -> %d candidates",
            iterations, len(fresh), len(remaining), len(kept),
        )
        remaining = kept

    # 5n/s >= n when s <= 5, so small instances can drain W without a center
    if not centers:
        a = int(rng.integers(n))
        dist_to_centers = oracle.query_row(a, everyone).astype(float)
        centers.add(a)
        logger.debug("no center sampled; falling back to vertex %d", a)

    logger.info("modified_center: |A|=%d after %d iterations", len(centers), iterations)
    return CenterCover(
        centers=frozenset(centers),
        dist_to_centers=dist_to_centers,
        iterations=iterations,
        estimator_samples=samples,
    )


def local_regions(oracle: CountingOracle, cover: CenterCover) -> Dict[int, FrozenSet[int]]:
    """D_a for every center a.

    B_a is the ball of radius 2 around a; D_a adds, for every b in B_a, the
    cluster {v : delta(b, v) < delta(A, v)}.
    """
    if not cover.centers:
        raise ArgumentError("local reconstruction needs a nonempty center set")
    everyone = np.arange(oracle.n)
    dist_a = cover.dist_to_centers
    regions: Dict[int, FrozenSet[int]] = {}
    for a in sorted(cover.centers):
        ball = everyone[oracle.query_row(a, everyone) <= 2]
        region = set(ball.tolist())
        for b in ball:
            row = oracle.query_row(int(b), everyone)
            region.update(everyone[row < dist_a].tolist())
        regions[a] = frozenset(region)
    return regions


def local_reconstruction(oracle: CountingOracle, cover: CenterCover) -> EdgeSet:
    """Query all pairs inside each D_a and keep those at distance 1."""
    edges = set()
    for region in local_regions(oracle, cover).values():
        members = np.array(sorted(region), dtype=np.intp)
        for idx, u in enumerate(members[:-1]):
            later = members[idx + 1:]
            row = oracle.query_row(int(u), later)
            edges.update((int(u), int(v)) for v in later[row == 1])
    return frozenset(edges)


def run_bounded_degree(
    oracle: CountingOracle, cfg: CenterConfig, rng: np.random.Generator
) -> Tuple[EdgeSet, Optional[CenterCover]]:
    """Both phases; the cover is None for a single vertex."""
    if oracle.n == 1:
        return frozenset(), None
    cover = modified_center(oracle, cfg, rng)
    return local_reconstruction(oracle, cover), cover


def reconstruct_bounded_degree(
    oracle: CountingOracle, cfg: CenterConfig, rng: np.random.Generator
) -> EdgeSet:
    edges, _ = run_bounded_degree(oracle, cfg, rng)
    return edges


class BoundedDegreeReconstructor(BaseReconstructor):
    """Modified-Center followed by Local-Reconstruction."""

    algorithm = ReconAlgorithm.BOUNDED

    @classmethod
    def default_config(cls) -> Optional[BaseModel]:
        return CenterConfig()

    def reconstruct(self, oracle: CountingOracle, rng: np.random.Generator) -> ReconstructionOutcome:
        edges, cover = run_bounded_degree(oracle, self.config, rng)
        if cover is None:
            return self._create_outcome(edges, {"centers": 0, "iterations": 0})
        details = {
            "centers": len(cover.centers),
            "iterations": cover.iterations,
            "estimator_samples": cover.estimator_samples,
            "s": self.config.resolve_s(oracle.n),
            "T": self.config.sample_rounds(oracle.n),
        }
        return self._create_outcome(edges, details)
