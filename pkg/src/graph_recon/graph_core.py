"""Ground-truth distances, brute-force test oracles and graph file I/O.

Nothing in this module is reachable from the reconstruction algorithms; they
see the hidden graph only through ``oracle.CountingOracle``.
"""

import logging
from collections import deque
from pathlib import Path
from typing import Iterable, List, Optional, Union

import networkx as nx
import numpy as np
from scipy.sparse import csgraph

from .errors import (
    ArgumentError,
    EnumerationLimitError,
    GraphFormatError,
    GraphValidationError,
)
from .graph_types import DistanceMatrix, Graph

logger = logging.getLogger(__name__)

ENUMERATION_MAX_N = 24
ENUMERATION_MAX_PATHS = 10**6
APSP_CHUNK_ROWS = 512


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source`` to every vertex.

    Raises:
        ArgumentError: source is not a vertex of g.
        GraphValidationError: some vertex is unreachable.
    """
    if not 0 <= source < g.n:
        raise ArgumentError(f"source {source} out of range for n={g.n}")
    dist = np.full(g.n, -1, dtype=np.int32)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    if np.any(dist < 0):
        raise GraphValidationError("graph is disconnected")
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """All-pairs hop distances via unweighted BFS in scipy, row chunk by chunk."""
    csr = g.to_csr()
    out = np.empty((g.n, g.n), dtype=np.int32)
    for start in range(0, g.n, APSP_CHUNK_ROWS):
        rows = np.arange(start, min(start + APSP_CHUNK_ROWS, g.n))
        block = csgraph.shortest_path(csr, directed=False, unweighted=True, indices=rows)
        if np.isinf(block).any():
            raise GraphValidationError("graph is disconnected")
        out[rows] = block.astype(np.int32)
    logger.debug("computed APSP for n=%d m=%d", g.n, g.m)
    return DistanceMatrix(d=out)


def is_connected(g: Graph) -> bool:
    n_comp = csgraph.connected_components(g.to_csr(), directed=False, return_labels=False)
    return int(n_comp) == 1


def require_connected(g: Graph) -> Graph:
    if not is_connected(g):
        raise GraphValidationError("graph is disconnected")
    return g


def components_after_removal(g: Graph, v: int, U: Iterable[int]) -> List[frozenset]:
    """Connected components of G[U] minus v, ordered by smallest member."""
    members = set(U)
    if v not in members:
        raise ArgumentError(f"vertex {v} is not in U")
    sub = g.to_networkx().subgraph(members - {v})
    comps = [frozenset(c) for c in nx.connected_components(sub)]
    return sorted(comps, key=min)


def enumerate_all_shortest_paths(
    g: Graph,
    a: int,
    b: int,
    max_n: int = ENUMERATION_MAX_N,
    max_paths: int = ENUMERATION_MAX_PATHS,
) -> List[List[int]]:
    """Every shortest path from a to b. Exponential; test use only."""
    if g.n > max_n:
        raise EnumerationLimitError(f"n={g.n} exceeds enumeration cap {max_n}")
    paths: List[List[int]] = []
    for path in nx.all_shortest_paths(g.to_networkx(), a, b):
        paths.append(path)
        if len(paths) > max_paths:
            raise EnumerationLimitError(f"more than {max_paths} shortest paths")
    return paths


def is_self_contained(dist: DistanceMatrix, U: Iterable[int]) -> bool:
    """True iff every vertex on a shortest path between members of U is in U.

    A vertex w lies on some shortest a-b path exactly when
    d(a,w) + d(w,b) == d(a,b), which makes the test exact.
    """
    idx = np.array(sorted(set(U)), dtype=np.intp)
    if len(idx) <= 1:
        return True
    d = dist.d
    outside = np.setdiff1d(np.arange(dist.n), idx)
    if len(outside) == 0:
        return True
    inner = d[np.ix_(idx, idx)]
    to_out = d[np.ix_(idx, outside)]
    for col in range(len(outside)):
        through = to_out[:, col][:, None] + to_out[:, col][None, :]
        if np.any(through == inner):
            return False
    return True


def parse_graph_text(text: str) -> Graph:
    """Parse the ``n m`` header plus ``u v`` edge lines format."""
    lines = [
        ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise GraphFormatError(f"bad header line: {lines[0]!r}")
    if n < 1 or m < 0:
        raise GraphFormatError(f"bad header values n={n} m={m}")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(lines) - 1}")

    edges = []
    seen = set()
    for ln in lines[1:]:
        try:
            u, v = (int(tok) for tok in ln.split())
        except ValueError:
            raise GraphFormatError(f"bad edge line: {ln!r}")
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFormatError(f"invalid edge ({u},{v}) for n={n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u},{v})")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def dump_graph(g: Graph, header_comment: Optional[str] = None) -> str:
    """Render g in the text format; edges sorted so output is byte-stable."""
    out = []
    if header_comment:
        out.append(f"# {header_comment}")
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(out) + "\n"


def load_graph(path: Union[str, Path], connected: bool = True) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot read {path}: {e}")
    except UnicodeDecodeError:
        raise GraphFormatError(f"{path} is not a UTF-8 text file")
    g = parse_graph_text(text)
    return require_connected(g) if connected else g


def save_graph(g: Graph, path: Union[str, Path], header_comment: Optional[str] = None) -> None:
    Path(path).write_text(dump_graph(g, header_comment))


def cluster_sizes(dist: DistanceMatrix, centers: Iterable[int]) -> np.ndarray:
    """True |C_w^A| = |{v : d(w, v) < d(A, v)}| for every w."""
    ids = sorted(centers)
    if ids:
        to_centers = dist.d[ids].min(axis=0).astype(float)
    else:
        to_centers = np.full(dist.n, np.inf)
    return (dist.d < to_centers[None, :]).sum(axis=1)
