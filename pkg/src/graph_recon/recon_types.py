"""Type definitions for reconstruction runs, partitions, reports and benchmarks."""

import math
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import ArgumentError
from .graph_types import Edge, GraphKind

REPORT_SCHEMA_VERSION = 1


class ReconAlgorithm(str, Enum):
    """Available reconstruction algorithms."""
    BOUNDED = "bounded"
    OUTERPLANAR = "outerplanar"
    EXHAUSTIVE = "exhaustive"
    APPROX = "approx"


class ClusterEstimator(str, Enum):
    """How Modified-Center sizes the clusters C_w^A."""
    SAMPLED = "sampled"  # s*T multiset drawn with replacement
    EXACT = "exact"  # every vertex, n queries per w


class PolygonStrategy(str, Enum):
    """How partition_by_polygon finds the W_i and R_i sets."""
    DICHOTOMY = "dichotomy"
    NAIVE = "naive"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class QueryStats(BaseModel):
    """Snapshot of an oracle's counters.

    distinct_count <= raw_count always. distinct_count <= n(n-1)/2 holds for a
    memoizing oracle only; without memoization repeats are charged again.
    """
    raw_count: int = 0
    distinct_count: int = 0
    wall_time: float = 0.0


class CenterConfig(BaseModel):
    """Configuration for Modified-Center."""
    s: Optional[int] = Field(default=None, ge=1)  # None -> floor(sqrt(n))
    K: float = Field(default=4.0, ge=1.0)
    max_while_iters: Optional[int] = Field(default=None, ge=1)  # None -> 64 ln n
    estimator: ClusterEstimator = ClusterEstimator.SAMPLED

    def resolve_s(self, n: int) -> int:
        s = self.s if self.s is not None else max(1, math.isqrt(n))
        if s > n:
            raise ArgumentError(f"s={s} exceeds n={n}")
        return s

    def sample_rounds(self, n: int) -> int:
        """T = K * ln n * ln ln n, at least 1."""
        if n < 3:
            return 1
        return max(1, math.ceil(self.K * math.log(n) * math.log(math.log(n))))

    def while_cap(self, n: int) -> int:
        if self.max_while_iters is not None:
            return self.max_while_iters
        return max(1, math.ceil(64 * math.log(max(n, 2))))


class CenterCover(BaseModel):
    """Center set A with the incrementally maintained distances delta(A, v)."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    centers: FrozenSet[int]
    dist_to_centers: np.ndarray  # float, +inf where A is empty
    iterations: int = 0
    estimator_samples: int = 0


class BalancedPartitionConfig(BaseModel):
    """Configuration for Balanced-Partition and the outerplanar recursion."""
    beta: float = Field(default=0.9, gt=0.7, lt=1.0)
    C: float = Field(default=10.0, ge=1.0)
    max_samplings: int = Field(default=50, ge=1)
    polygon_strategy: PolygonStrategy = PolygonStrategy.DICHOTOMY
    base_case_size: int = Field(default=10, ge=10)

    def pair_count(self, size: int) -> int:
        """omega = C * ln|U|, at least 1."""
        return max(1, math.ceil(self.C * math.log(size)))


class NodePartition(BaseModel):
    """Parts S_{v,i} = component of G[U] - v, plus v."""
    pivot: int
    parts: Tuple[FrozenSet[int], ...]

    def part_containing(self, v: int) -> FrozenSet[int]:
        if v == self.pivot:
            raise ArgumentError("every part contains the pivot")
        for part in self.parts:
            if v in part:
                return part
        raise ArgumentError(f"vertex {v} is not in the partitioned set")

    @property
    def count(self) -> int:
        return len(self.parts)


class EdgeSides(BaseModel):
    """The two sides of U separated by the edge (x, y); both include x and y."""
    x: int
    y: int
    right: FrozenSet[int]
    left: FrozenSet[int]

    def side_of(self, v: int) -> FrozenSet[int]:
        if v in (self.x, self.y):
            raise ArgumentError("edge endpoints lie on both sides")
        if v in self.right:
            return self.right
        if v in self.left:
            return self.left
        raise ArgumentError(f"vertex {v} was trimmed away from edge ({self.x},{self.y})")


class Polygon(BaseModel):
    """Induced cycle (q_1, ..., q_l) stored in cyclic order."""
    vertices: Tuple[int, ...] = Field(min_length=3)

    @field_validator("vertices")
    @classmethod
    def _check_distinct(cls, vs: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(set(vs)) != len(vs):
            raise ValueError("polygon vertices must be distinct")
        return vs

    def __len__(self) -> int:
        return len(self.vertices)

    def q(self, i: int) -> int:
        """1-based cyclic accessor: q(l+1) == q(1)."""
        return self.vertices[(i - 1) % len(self.vertices)]

    def edges(self) -> List[Edge]:
        return [(self.q(i), self.q(i + 1)) for i in range(1, len(self.vertices) + 1)]


class PolygonPartition(BaseModel):
    """Outgrowths W_i at each q_i and strips R_i between q_i and q_{i+1}."""
    polygon: Polygon
    w: Tuple[FrozenSet[int], ...]
    r: Tuple[FrozenSet[int], ...]

    def parts(self) -> List[FrozenSet[int]]:
        return list(self.r) + list(self.w)


class BalancedPartitionResult(BaseModel):
    """A beta-balanced partition plus the bookkeeping of how it was found."""
    parts: Tuple[FrozenSet[int], ...]
    beta: float
    pivot: int
    step: int  # 2, 5 or 8: the step that produced the parts
    samplings: int = 1
    failed_samplings: int = 0
    escalations: int = 0


class ApproxConfig(BaseModel):
    """Configuration for approximate reconstruction."""
    f: float = Field(ge=1.0)


class ApproxMetric(BaseModel):
    """Symmetric estimate matrix with its approximation factor f."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    f: float = Field(ge=1.0)
    est: np.ndarray
    samples: int = 0

    @field_validator("est")
    @classmethod
    def _check_estimate(cls, est: np.ndarray) -> np.ndarray:
        if est.ndim != 2 or est.shape[0] != est.shape[1]:
            raise ValueError("estimate matrix must be square")
        if np.any(np.diag(est) != 0):
            raise ValueError("estimate diagonal must be zero")
        if not np.array_equal(est, est.T):
            raise ValueError("estimate matrix must be symmetric")
        off = ~np.eye(est.shape[0], dtype=bool)
        if np.any(est[off] < 1):
            raise ValueError("off-diagonal estimates must be >= 1")
        return est

    @property
    def n(self) -> int:
        return int(self.est.shape[0])


class ApproxViolation(BaseModel):
    u: int
    v: int
    estimate: int
    true_distance: int
    kind: str  # "lower" (est > delta) or "upper" (delta > f * est)


class ApproxVerification(BaseModel):
    ok: bool
    worst_ratio: float
    violations: List[ApproxViolation] = Field(default_factory=list)


class ReconstructionReport(BaseModel):
    """JSON report of one exact reconstruction run."""
    schema_version: int = REPORT_SCHEMA_VERSION
    algo: ReconAlgorithm
    n: int
    m: int
    seed: int
    edges_found: int
    correct: bool
    missing_edges: int = 0
    extra_edges: int = 0
    stats: QueryStats
    config: Dict[str, Any] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)


class ApproxReport(BaseModel):
    """JSON report of one approximate reconstruction run."""
    schema_version: int = REPORT_SCHEMA_VERSION
    algo: ReconAlgorithm = ReconAlgorithm.APPROX
    n: int
    m: int
    seed: int
    f: float
    ok: bool
    worst_ratio: float
    violation_count: int = 0
    samples: int = 0
    stats: QueryStats


class BenchConfig(BaseModel):
    """A benchmark sweep, loadable from JSON."""
    algo: ReconAlgorithm
    n_values: List[int] = Field(min_length=1)
    delta: int = Field(default=4, ge=1)
    reps: int = Field(default=10, ge=1)
    f_rule: Optional[str] = None
    kind: Optional[GraphKind] = None  # None -> outerplanar for outerplanar, bounded otherwise
    out_csv: Optional[str] = None
    master_seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)
    center: CenterConfig = Field(default_factory=CenterConfig)
    partition: BalancedPartitionConfig = Field(default_factory=BalancedPartitionConfig)

    @field_validator("n_values")
    @classmethod
    def _check_sizes(cls, ns: List[int]) -> List[int]:
        if any(n < 2 for n in ns):
            raise ValueError("every n must be at least 2")
        return ns

    @model_validator(mode="after")
    def _check_f_rule(self) -> "BenchConfig":
        if self.algo == ReconAlgorithm.APPROX and not self.f_rule:
            raise ValueError("approx benchmarks need an f_rule")
        if self.kind == GraphKind.LOWERBOUND:
            raise ValueError("lower-bound instances are sized by f and k, not n")
        return self

    def instance_kind(self) -> GraphKind:
        if self.kind is not None:
            return self.kind
        if self.algo == ReconAlgorithm.OUTERPLANAR:
            return GraphKind.OUTERPLANAR
        return GraphKind.BOUNDED


class BenchRecord(BaseModel):
    """One CSV row of a benchmark sweep."""
    algo: ReconAlgorithm
    n: int
    delta: int
    seed: int
    f: Optional[float] = None
    queries_distinct: int
    queries_raw: int
    correct: bool
    worst_ratio: Optional[float] = None
    wall_ms: float
    rep: int = Field(default=0, exclude=True)


class FitResult(BaseModel):
    """Least-squares fit of log2(median distinct queries) against log2(n)."""
    algo: Optional[ReconAlgorithm] = None
    slope: float
    intercept: float
    n_values: List[int]
    medians: List[float]
    sample_sizes: List[int]
