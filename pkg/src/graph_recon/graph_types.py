"""Type definitions for hidden graphs, distance matrices and generator specs."""

from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import sparse

Edge = Tuple[int, int]
EdgeSet = FrozenSet[Edge]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the pair ordered so that the smaller id comes first."""
    return (u, v) if u < v else (v, u)


class GraphKind(str, Enum):
    """Instance families the generators can produce."""
    BOUNDED = "bounded"
    OUTERPLANAR = "outerplanar"
    TREE = "tree"
    LOWERBOUND = "lowerbound"


class Graph(BaseModel):
    """A simple undirected graph on vertices 0..n-1.

    Connectivity is not enforced here so that partial constructions (e.g. the
    lower-bound tree without root edges) can be represented; callers that need
    it use ``graph_core.require_connected``.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    adj: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_simple(self) -> "Graph":
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for u, row in enumerate(self.adj):
            if list(row) != sorted(set(row)):
                raise ValueError(f"neighbors of {u} must be sorted and unique")
            for v in row:
                if not 0 <= v < self.n:
                    raise ValueError(f"vertex {v} out of range")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if u not in self.adj[v]:
                    raise ValueError(f"edge ({u},{v}) is not symmetric")
        return self

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list; duplicates and loops are rejected."""
        rows: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in rows[u]:
                raise ValueError(f"duplicate edge ({u},{v})")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n=n, adj=tuple(tuple(sorted(r)) for r in rows))

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    def edges(self) -> EdgeSet:
        return frozenset((u, v) for u, row in enumerate(self.adj) for v in row if u < v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def to_csr(self) -> sparse.csr_matrix:
        rows = [u for u, row in enumerate(self.adj) for _ in row]
        cols = [v for row in self.adj for v in row]
        data = np.ones(len(rows), dtype=np.int8)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


class DistanceMatrix(BaseModel):
    """Hop distances between every pair of vertices of a connected graph."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d: np.ndarray

    @field_validator("d")
    @classmethod
    def _check_metric(cls, d: np.ndarray) -> np.ndarray:
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if np.any(np.diag(d) != 0):
            raise ValueError("distance matrix must have a zero diagonal")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(d < 0):
            raise ValueError("distances must be non-negative")
        d = np.array(d, dtype=np.int32)
        d.setflags(write=False)
        return d

    @property
    def n(self) -> int:
        return int(self.d.shape[0])

    def __getitem__(self, pair: Tuple[int, int]) -> int:
        return int(self.d[pair])


class ValidationReport(BaseModel):
    """Result of checking a generated or loaded graph against its constraints."""
    ok: bool
    n: int
    m: int
    connected: bool
    max_degree: int
    degree_cap: Optional[int] = None
    edge_bound_ok: Optional[bool] = None
    problems: List[str] = Field(default_factory=list)


class OuterplanarCertificate(BaseModel):
    """Circular boundary order and chord list an outerplanar instance was built from."""
    boundary: Tuple[int, ...]
    chords: Tuple[Edge, ...] = ()


class GenSpec(BaseModel):
    """Everything needed to regenerate an instance deterministically."""
    kind: GraphKind
    n: Optional[int] = Field(default=None, ge=1)
    delta: int = Field(default=4, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    extra_edge_ratio: float = Field(default=0.5, ge=0.0)

    # Lower-bound family
    f: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    perms: Optional[List[List[int]]] = None
    include_root_edges: bool = True

    @model_validator(mode="after")
    def _check_kind_fields(self) -> "GenSpec":
        if self.kind == GraphKind.LOWERBOUND:
            if self.f is None or self.k is None:
                raise ValueError("lowerbound instances need f and k")
        elif self.n is None:
            raise ValueError(f"{self.kind.value} instances need n")
        return self

    def describe(self) -> Dict[str, object]:
        return self.model_dump(exclude_none=True, mode="json")
