"""Outerplanar reconstruction by recursive balanced partitioning.

``balanced_partition`` splits a self-contained U into self-contained parts of
size at most beta*|U| that together cover every edge of G[U]. The driver
recurses until parts are small enough to query exhaustively.
"""

import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..errors import ArgumentError, StructuralError
from ..graph_types import EdgeSet
from ..oracle import CountingOracle
from ..recon_types import BalancedPartitionConfig, BalancedPartitionResult, ReconAlgorithm
from .base import BaseReconstructor, ReconstructionOutcome
from .exhaustive import exhaustive_reconstruct
from .outerplanar_primitives import (
    find_polygon,
    neighbors_in_order,
    partition_by_edge,
    partition_by_node,
    partition_by_polygon,
    shortest_path,
    side_containing,
)

logger = logging.getLogger(__name__)

MIN_PARTITION_SIZE = 10

_Attempt = Optional[Tuple[List[frozenset], int, int]]


def _most_visited(
    oracle: CountingOracle, members: np.ndarray, cfg: BalancedPartitionConfig, rng: np.random.Generator
) -> int:
    """Vertex lying on the most of omega sampled shortest paths."""
    omega = cfg.pair_count(len(members))
    ends = rng.choice(members, size=2 * omega, replace=True)
    counts = np.zeros(oracle.n, dtype=np.int64)
    for k in range(omega):
        path = shortest_path(oracle, int(ends[2 * k]), int(ends[2 * k + 1]), members)
        counts[np.unique(path)] += 1
    return int(np.argmax(counts))


def _attempt(
    oracle: CountingOracle,
    members: np.ndarray,
    beta: float,
    cfg: BalancedPartitionConfig,
    rng: np.random.Generator,
) -> _Attempt:
    """One sampling. Returns (parts, pivot, step) or None when it must be redrawn."""
    U = frozenset(members.tolist())
    limit = beta * len(U)

    x = _most_visited(oracle, members, cfg, rng)
    by_x = partition_by_node(oracle, x, members)
    largest = max(by_x.parts, key=lambda p: (len(p), -min(p)))
    if len(largest) <= limit:
        return list(by_x.parts), x, 2

    D = largest
    ys = neighbors_in_order(oracle, x, D)
    if len(ys) <= 1:
        logger.debug("sampling rejected: %d has a single neighbor in its largest part", x)
        return None

    outer = [(U - D) | {x}]
    T = set(D)
    for y in ys:
        S = partition_by_node(oracle, y, members).part_containing(x)
        V = (U - S) | {y}
        if len(V) > limit:
            logger.debug("sampling rejected: branch at neighbor %d has %d vertices", y, len(V))
            return None
        outer.append(V)
        T &= S

    wedges = []
    for a, b in zip(ys, ys[1:]):
        side_a = side_containing(partition_by_edge(oracle, x, a, T), b)
        side_b = side_containing(partition_by_edge(oracle, x, b, T), a)
        wedges.append(side_a & side_b)
    oversized = [k for k, w in enumerate(wedges) if len(w) > limit]
    if not oversized:
        return wedges + outer, x, 5

    k = oversized[0]
    polygon = find_polygon(oracle, x, ys[k], ys[k + 1], wedges[k])
    split = partition_by_polygon(oracle, polygon, members, cfg.polygon_strategy)
    if any(len(part) > limit for part in split.parts()):
        logger.debug("sampling rejected: polygon of length %d leaves a large part", len(polygon))
        return None
    return split.parts(), x, 8


def _clean(parts: Iterable[frozenset]) -> Tuple[frozenset, ...]:
    """Drop singletons and duplicates; they cover no edge."""
    return tuple(dict.fromkeys(p for p in parts if len(p) > 1))


def balanced_partition(
    oracle: CountingOracle,
    U: Iterable[int],
    cfg: BalancedPartitionConfig,
    rng: np.random.Generator,
) -> BalancedPartitionResult:
    """Split U into self-contained parts of size at most beta*|U|.

    After ``max_samplings`` rejected samplings beta is relaxed to (1 + beta)/2.

    Raises:
        ArgumentError: |U| < 10.
        StructuralError: no partition even with beta >= 1 - 1/|U|.
    """
    members = np.array(sorted(set(U)), dtype=np.intp)
    size = len(members)
    if size < MIN_PARTITION_SIZE:
        raise ArgumentError(f"balanced_partition needs |U| >= {MIN_PARTITION_SIZE}, got {size}")

    beta = cfg.beta
    samplings = failed = escalations = streak = 0
    while True:
        samplings += 1
        found = _attempt(oracle, members, beta, cfg, rng)
        if found is not None:
            parts, pivot, step = found
            return BalancedPartitionResult(
                parts=_clean(parts),
                beta=beta,
                pivot=pivot,
                step=step,
                samplings=samplings,
                failed_samplings=failed,
                escalations=escalations,
            )
        failed += 1
        streak += 1
        if streak >= cfg.max_samplings:
            if beta >= 1 - 1 / size:
                raise StructuralError(
                    f"no balanced partition of {size} vertices after {samplings} samplings"
                )
            beta = (1 + beta) / 2
            escalations += 1
            streak = 0
            logger.warning("relaxing beta to %.4f for |U|=%d", beta, size)


def reconstruct_outerplanar(
    oracle: CountingOracle, cfg: BalancedPartitionConfig, rng: np.random.Generator
) -> Tuple[EdgeSet, dict]:
    """Recover every edge; returns the edge set and recursion statistics."""
    stats = {
        "partition_calls": 0,
        "samplings": 0,
        "failed_samplings": 0,
        "escalations": 0,
        "max_depth": 0,
        "base_cases": 0,
    }
    edges = set()
    work: List[Tuple[frozenset, int]] = [(frozenset(range(oracle.n)), 0)]
    while work:
        U, depth = work.pop()
        stats["max_depth"] = max(stats["max_depth"], depth)
        if len(U) < cfg.base_case_size:
            edges |= exhaustive_reconstruct(oracle, U)
            stats["base_cases"] += 1
            continue
        result = balanced_partition(oracle, U, cfg, rng)
        stats["partition_calls"] += 1
        stats["samplings"] += result.samplings
        stats["failed_samplings"] += result.failed_samplings
        stats["escalations"] += result.escalations
        for part in result.parts:
            if len(part) >= len(U):
                raise StructuralError(f"partition of {len(U)} vertices made no progress")
            work.append((part, depth + 1))
    logger.info(
        "outerplanar reconstruction: %d edges, depth %d, %d partitions",
        len(edges), stats["max_depth"], stats["partition_calls"],
    )
    return frozenset(edges), stats


class OuterplanarReconstructor(BaseReconstructor):
    """Balanced-Partition recursion with an exhaustive base case."""

    algorithm = ReconAlgorithm.OUTERPLANAR

    @classmethod
    def default_config(cls) -> Optional[BaseModel]:
        return BalancedPartitionConfig()

    def reconstruct(self, oracle: CountingOracle, rng: np.random.Generator) -> ReconstructionOutcome:
        edges, stats = reconstruct_outerplanar(oracle, self.config, rng)
        return self._create_outcome(edges, stats)
