"""Hidden-instance generators.

All generators are pure functions of their arguments; randomness comes from
the ``generator`` substream of the given seed.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from .errors import GeneratorError
from .graph_core import is_connected
from .graph_types import (
    Edge,
    GenSpec,
    Graph,
    GraphKind,
    OuterplanarCertificate,
    ValidationReport,
    normalize_edge,
)
from .rng import make_rng

logger = logging.getLogger(__name__)


def _check_feasible(n: int, delta: int) -> None:
    if n < 1:
        raise GeneratorError("n must be at least 1")
    if n == 2 and delta < 1:
        raise GeneratorError("a connected graph on 2 vertices needs delta >= 1")
    if n >= 3 and delta < 2:
        raise GeneratorError(f"a connected graph on {n} vertices needs delta >= 2")


class _DegreeTracker:
    """Degrees plus a swap-remove pool of placed vertices that can take an edge."""

    def __init__(self, n: int, delta: int):
        self.delta = delta
        self.deg = np.zeros(n, dtype=np.int64)
        self.pool: List[int] = []
        self.where: Dict[int, int] = {}

    def admit(self, v: int) -> None:
        if self.deg[v] < self.delta and v not in self.where:
            self.where[v] = len(self.pool)
            self.pool.append(v)

    def _drop(self, v: int) -> None:
        i = self.where.pop(v)
        last = self.pool.pop()
        if last != v:
            self.pool[i] = last
            self.where[last] = i

    def bump(self, v: int) -> None:
        self.deg[v] += 1
        if self.deg[v] >= self.delta and v in self.where:
            self._drop(v)

    def pick(self, rng: np.random.Generator) -> int:
        if not self.pool:
            raise GeneratorError("no vertex left below the degree cap")
        return self.pool[int(rng.integers(len(self.pool)))]


def _attach(
    vertices: Sequence[int],
    tracker: _DegreeTracker,
    edges: Set[Edge],
    rng: np.random.Generator,
) -> None:
    """Hang each vertex off a random already-placed vertex with spare degree."""
    for v in vertices:
        u = tracker.pick(rng)
        edges.add(normalize_edge(u, v))
        tracker.bump(u)
        tracker.bump(v)
        tracker.admit(v)


def gen_tree(n: int, delta: int, seed: int) -> Graph:
    """Random tree with maximum degree delta (random attachment)."""
    _check_feasible(n, delta)
    rng = make_rng(seed, "generator")
    order = [int(v) for v in rng.permutation(n)]
    tracker = _DegreeTracker(n, delta)
    tracker.admit(order[0])
    edges: Set[Edge] = set()
    _attach(order[1:], tracker, edges, rng)
    return Graph.from_edges(n, edges)


def gen_bounded_degree(n: int, delta: int, seed: int, extra_edge_ratio: float = 0.5) -> Graph:
    """Random connected graph with maximum degree delta.

    A random degree-capped spanning tree plus about ``extra_edge_ratio * n``
    extra edges between vertices that still have spare degree.
    """
    _check_feasible(n, delta)
    rng = make_rng(seed, "generator")
    order = [int(v) for v in rng.permutation(n)]
    tracker = _DegreeTracker(n, delta)
    tracker.admit(order[0])
    edges: Set[Edge] = set()
    _attach(order[1:], tracker, edges, rng)

    target = int(round(extra_edge_ratio * n))
    added = 0
    for _ in range(20 * target):
        if added >= target or len(tracker.pool) < 2:
            break
        u, v = tracker.pick(rng), tracker.pick(rng)
        e = normalize_edge(u, v)
        if u == v or e in edges:
            continue
        edges.add(e)
        tracker.bump(u)
        tracker.bump(v)
        added += 1
    logger.debug("bounded-degree instance n=%d delta=%d extra=%d", n, delta, added)
    return Graph.from_edges(n, edges)


def _chords_cross(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    """Chords given as boundary positions (i < j) cross iff they interleave."""
    (i, j), (p, q) = a, b
    return i < p < j < q or p < i < q < j


def gen_outerplanar_certified(
    n: int, delta: int, seed: int
) -> Tuple[Graph, OuterplanarCertificate]:
    """Outerplanar instance together with the circular order it was built from.

    Boundary cycle over a random subset, non-crossing chords inside it, and
    the remaining vertices hung off as trees. With delta == 2 the instance is
    a Hamiltonian cycle or a path.
    """
    _check_feasible(n, delta)
    if n <= 2:
        edges = [(0, 1)] if n == 2 else []
        return Graph.from_edges(n, edges), OuterplanarCertificate(boundary=())

    rng = make_rng(seed, "generator")
    order = [int(v) for v in rng.permutation(n)]
    if delta == 2:
        c = n if rng.random() < 0.5 else 0
    else:
        c = int(rng.integers(3, n + 1))

    tracker = _DegreeTracker(n, delta)
    edges: Set[Edge] = set()
    chords: List[Tuple[int, int]] = []
    if c == 0:
        tracker.admit(order[0])
        _attach(order[1:], tracker, edges, rng)
        return Graph.from_edges(n, edges), OuterplanarCertificate(boundary=())

    cycle = order[:c]
    for p in range(c):
        u, v = cycle[p], cycle[(p + 1) % c]
        edges.add(normalize_edge(u, v))
        tracker.bump(u)
        tracker.bump(v)
    need_anchor = n > c

    for _ in range(c):
        i, j = sorted(int(x) for x in rng.integers(0, c, size=2))
        if j - i < 2 or (i == 0 and j == c - 1):
            continue
        u, v = cycle[i], cycle[j]
        if tracker.deg[u] >= delta or tracker.deg[v] >= delta:
            continue
        if any(_chords_cross((i, j), ch) for ch in chords):
            continue
        if need_anchor:
            spare = sum(
                1 for w in cycle
                if tracker.deg[w] + (w == u) + (w == v) < delta
            )
            if spare == 0:
                continue
        chords.append((i, j))
        edges.add(normalize_edge(u, v))
        tracker.bump(u)
        tracker.bump(v)

    for w in cycle:
        tracker.admit(w)
    _attach(order[c:], tracker, edges, rng)

    cert = OuterplanarCertificate(
        boundary=tuple(cycle),
        chords=tuple(normalize_edge(cycle[i], cycle[j]) for i, j in sorted(chords)),
    )
    logger.debug("outerplanar instance n=%d boundary=%d chords=%d", n, c, len(chords))
    return Graph.from_edges(n, edges), cert


def gen_outerplanar(n: int, delta: int, seed: int) -> Graph:
    return gen_outerplanar_certified(n, delta, seed)[0]


def check_outerplanar_certificate(g: Graph, cert: OuterplanarCertificate) -> List[str]:
    """Problems with ``cert`` as a proof that g is outerplanar; empty when valid."""
    problems: List[str] = []
    pos = {v: p for p, v in enumerate(cert.boundary)}
    c = len(cert.boundary)
    structural: Set[Edge] = set()
    if c:
        if c < 3:
            problems.append("boundary cycle needs at least 3 vertices")
        for p in range(c):
            e = normalize_edge(cert.boundary[p], cert.boundary[(p + 1) % c])
            structural.add(e)
            if e not in g.edges():
                problems.append(f"boundary edge {e} missing from graph")

    spans = []
    for u, v in cert.chords:
        if u not in pos or v not in pos:
            problems.append(f"chord ({u},{v}) leaves the boundary")
            continue
        i, j = sorted((pos[u], pos[v]))
        if j - i < 2 or (i == 0 and j == c - 1):
            problems.append(f"chord ({u},{v}) joins boundary neighbours")
        spans.append((i, j))
        structural.add(normalize_edge(u, v))
    for a in range(len(spans)):
        for b in range(a + 1, len(spans)):
            if _chords_cross(spans[a], spans[b]):
                problems.append(f"chords at positions {spans[a]} and {spans[b]} cross")

    rest = nx.Graph()
    rest.add_nodes_from(range(g.n))
    for u, v in g.edges():
        if (u, v) in structural:
            continue
        if u in pos and v in pos:
            problems.append(f"edge ({u},{v}) between boundary vertices is not a listed chord")
        rest.add_edge(u, v)
    if not nx.is_forest(rest):
        problems.append("pendant edges contain a cycle")
    for comp in nx.connected_components(rest):
        if sum(1 for v in comp if v in pos) > 1:
            problems.append("a pendant tree touches the boundary twice")
    if g.n >= 2 and g.m > 2 * g.n - 3:
        problems.append(f"m={g.m} exceeds 2n-3")
    return problems


def _lb_vertex(level: int, index: int, k: int) -> int:
    return (level - 2) * k + index


def lower_bound_levels(f: int, k: int) -> List[int]:
    """Level of every vertex of the lower-bound tree (root at level 1)."""
    return [1] + [2 + (v - 1) // k for v in range(1, 2 * f * k + 1)]


def gen_lower_bound_tree(
    f: int, k: int, perms: Sequence[Sequence[int]], include_root_edges: bool = True
) -> Graph:
    """Tree with a root and k branches of 2f levels; branches are rewired by perms.

    Vertex (level l, index i), 1-based i, has id (l-2)*k + i; the root is 0.
    Without root edges the result is a forest of k paths.
    """
    if f < 1 or k < 1:
        raise GeneratorError("f and k must be at least 1")
    if len(perms) != f:
        raise GeneratorError(f"need exactly {f} permutations, got {len(perms)}")
    for sigma in perms:
        if sorted(sigma) != list(range(1, k + 1)):
            raise GeneratorError(f"{list(sigma)} is not a permutation of 1..{k}")

    n = 2 * f * k + 1
    edges: List[Edge] = []
    if include_root_edges:
        edges.extend((0, _lb_vertex(2, i, k)) for i in range(1, k + 1))
    for level in range(2, 2 * f + 1):
        for i in range(1, k + 1):
            j = i if level <= f else perms[level - f - 1][i - 1]
            edges.append((_lb_vertex(level, i, k), _lb_vertex(level + 1, j, k)))
    return Graph.from_edges(n, edges)


def validate(g: Graph, delta: Optional[int] = None, outerplanar: bool = False) -> ValidationReport:
    """Check connectivity, the degree cap and (if tagged) the outerplanar edge bound."""
    problems: List[str] = []
    connected = is_connected(g)
    if not connected:
        problems.append("graph is disconnected")
    max_deg = g.max_degree()
    if delta is not None and max_deg > delta:
        worst = [v for v in range(g.n) if g.degree(v) > delta]
        problems.append(f"degree cap {delta} exceeded at vertices {worst[:10]}")
    edge_bound_ok = None
    if outerplanar:
        edge_bound_ok = g.n < 2 or g.m <= 2 * g.n - 3
        if not edge_bound_ok:
            problems.append(f"m={g.m} exceeds 2n-3={2 * g.n - 3}")
    return ValidationReport(
        ok=not problems,
        n=g.n,
        m=g.m,
        connected=connected,
        max_degree=max_deg,
        degree_cap=delta,
        edge_bound_ok=edge_bound_ok,
        problems=problems,
    )


def _from_spec_bounded(spec: GenSpec) -> Graph:
    return gen_bounded_degree(spec.n, spec.delta, spec.seed, spec.extra_edge_ratio)


def _from_spec_outerplanar(spec: GenSpec) -> Graph:
    return gen_outerplanar(spec.n, spec.delta, spec.seed)


def _from_spec_tree(spec: GenSpec) -> Graph:
    return gen_tree(spec.n, spec.delta, spec.seed)


def _from_spec_lowerbound(spec: GenSpec) -> Graph:
    perms = spec.perms
    if perms is None:
        rng = make_rng(spec.seed, "generator")
        perms = [[int(x) + 1 for x in rng.permutation(spec.k)] for _ in range(spec.f)]
    return gen_lower_bound_tree(spec.f, spec.k, perms, spec.include_root_edges)


GENERATORS: Dict[GraphKind, Callable[[GenSpec], Graph]] = {
    GraphKind.BOUNDED: _from_spec_bounded,
    GraphKind.OUTERPLANAR: _from_spec_outerplanar,
    GraphKind.TREE: _from_spec_tree,
    GraphKind.LOWERBOUND: _from_spec_lowerbound,
}


def generate(spec: GenSpec) -> Graph:
    """Build the instance a GenSpec describes."""
    return GENERATORS[spec.kind](spec)
