"""Counting distance oracle: the only view algorithms get of the hidden graph."""

import logging
import time
from typing import Dict, Iterable, Tuple

import numpy as np

from .errors import ArgumentError
from .graph_types import DistanceMatrix
from .recon_types import QueryStats

logger = logging.getLogger(__name__)


class CountingOracle:
    """Answers hop-distance queries and counts them.

    ``raw_count`` counts every call. ``distinct_count`` counts unordered pairs
    u != v the first time they are asked; with ``memoize=False`` every u != v
    call is charged as distinct, so the n(n-1)/2 ceiling on ``distinct_count``
    only holds when memoizing. Answers are identical in both modes.
    """

    def __init__(self, backing: DistanceMatrix, memoize: bool = True):
        self._d = backing.d
        self._n = backing.n
        self.memoize = memoize
        self._seen = np.zeros((self._n, self._n), dtype=bool)
        self._raw = 0
        self._distinct = 0
        self._started = time.perf_counter()

    @property
    def n(self) -> int:
        return self._n

    def _check(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise ArgumentError(f"vertex {v} out of range for n={self._n}")

    def query(self, u: int, v: int) -> int:
        """Return delta(u, v)."""
        self._check(u)
        self._check(v)
        self._raw += 1
        if u != v:
            if not self.memoize:
                self._distinct += 1
            elif not self._seen[u, v]:
                self._seen[u, v] = self._seen[v, u] = True
                self._distinct += 1
        return int(self._d[u, v])

    def query_row(self, u: int, targets) -> np.ndarray:
        """delta(u, t) for every t in ``targets``, counted as len(targets) single queries."""
        self._check(u)
        ts = np.asarray(targets, dtype=np.intp).ravel()
        if len(ts) == 0:
            return np.empty(0, dtype=np.int32)
        if ts.min() < 0 or ts.max() >= self._n:
            raise ArgumentError(f"target out of range for n={self._n}")
        self._raw += len(ts)
        others = ts[ts != u]
        if not self.memoize:
            self._distinct += len(others)
        elif len(others):
            uniq = np.unique(others)
            fresh = uniq[~self._seen[u, uniq]]
            self._seen[u, fresh] = True
            self._seen[fresh, u] = True
            self._distinct += len(fresh)
        return self._d[u, ts].astype(np.int32)

    def query_batch(self, A: Iterable[int], B: Iterable[int]) -> Dict[Tuple[int, int], int]:
        """delta(a, b) for every a in A and b in B."""
        bs = sorted(B)
        out: Dict[Tuple[int, int], int] = {}
        for a in sorted(A):
            row = self.query_row(a, bs)
            for b, dist in zip(bs, row):
                out[(a, b)] = int(dist)
        return out

    def stats(self) -> QueryStats:
        return QueryStats(
            raw_count=self._raw,
            distinct_count=self._distinct,
            wall_time=time.perf_counter() - self._started,
        )

    def queried_pairs(self) -> frozenset:
        """Normalized pairs asked so far (memoizing mode)."""
        us, vs = np.nonzero(np.triu(self._seen, k=1))
        return frozenset(zip(us.tolist(), vs.tolist()))
