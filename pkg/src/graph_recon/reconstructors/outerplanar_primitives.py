"""Oracle-only subroutines used by the outerplanar reconstruction.

Every function takes a vertex subset U that is self-contained in the hidden
graph: each shortest path between two members of U stays inside U. Under that
assumption distances measured in G equal distances measured in G[U], which is
what lets the routines below reason about G[U] while only asking the oracle.
"""

import logging
from typing import Dict, Iterable, List, NamedTuple, Set, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from ..errors import ArgumentError, StructuralError
from ..graph_types import Edge, normalize_edge
from ..oracle import CountingOracle
from ..recon_types import (
    EdgeSides,
    NodePartition,
    Polygon,
    PolygonPartition,
    PolygonStrategy,
    Side,
)

logger = logging.getLogger(__name__)


def _members(U: Iterable[int], *required: int) -> np.ndarray:
    """Sorted vertex array of U; every ``required`` vertex must belong to it."""
    vertices = set(int(u) for u in U)
    for v in required:
        if v not in vertices:
            raise ArgumentError(f"vertex {v} is not in U")
    return np.array(sorted(vertices), dtype=np.intp)


def shortest_path(oracle: CountingOracle, a: int, b: int, U: Iterable[int]) -> List[int]:
    """Some shortest a-b path, found by recursive midpoint splitting.

    Two rows of queries per level; the distance halves at every level.
    """
    if a == b:
        _members(U, a)
        return [a]
    members = _members(U, a, b)
    da = oracle.query_row(a, members)
    db = oracle.query_row(b, members)
    d = int(da[np.searchsorted(members, b)])
    if d == 1:
        return [a, b]

    on_path = da + db == d
    half = d // 2
    mids = members[on_path & (da == half)]
    if len(mids) == 0:
        raise StructuralError(f"no midpoint between {a} and {b} inside U")
    c = int(mids[0])
    first = set(members[on_path & (da < half)].tolist()) | {c}
    second = set(members[on_path & (da > half)].tolist()) | {c}
    return shortest_path(oracle, a, c, first) + shortest_path(oracle, c, b, second)[1:]


class _NeighborEvidence(NamedTuple):
    """Distances from the neighbors of removed vertices to the rest of U."""
    members: np.ndarray  # U minus the removed vertices
    neighbors: np.ndarray  # Y, sorted
    dist: np.ndarray  # |Y| x |members|
    pairs: Set[Edge]  # candidate consecutive-neighbor pairs


def _neighbor_evidence(
    oracle: CountingOracle, removed: Tuple[int, ...], U: Iterable[int]
) -> _NeighborEvidence:
    """Collect the |A_u| = 2 and |A_u| = 1 pair evidence for every u in U."""
    members = _members(set(U) - set(removed))
    empty = _NeighborEvidence(members, np.empty(0, dtype=np.intp), np.empty((0, len(members))), set())
    if len(members) == 0:
        return empty
    adjacent = np.zeros(len(members), dtype=bool)
    for r in removed:
        adjacent |= oracle.query_row(r, members) == 1
    ys = members[adjacent]
    if len(ys) == 0:
        return empty

    dist = np.vstack([oracle.query_row(int(y), members) for y in ys])
    nearest = dist.min(axis=0)
    pairs: Set[Edge] = set()
    for col in range(len(members)):
        closest = np.flatnonzero(dist[:, col] == nearest[col])
        if len(closest) == 2:
            pairs.add(normalize_edge(int(ys[closest[0]]), int(ys[closest[1]])))
        elif len(closest) == 1:
            a = int(ys[closest[0]])
            for k in np.flatnonzero(dist[:, col] == nearest[col] + 1):
                pairs.add(normalize_edge(a, int(ys[k])))
    return _NeighborEvidence(members, ys, dist, pairs)


def _group_neighbors(evidence: _NeighborEvidence) -> Dict[int, int]:
    """Map each neighbor to a group index; groups ordered by smallest member."""
    uf = UnionFind(evidence.neighbors.tolist())
    for a, b in evidence.pairs:
        uf.union(a, b)
    groups = sorted((sorted(s) for s in uf.to_sets()), key=lambda s: s[0])
    return {y: idx for idx, group in enumerate(groups) for y in group}


def partition_by_node(oracle: CountingOracle, x: int, U: Iterable[int]) -> NodePartition:
    """Split U into the components of G[U] - x, each with x added back.

    Raises:
        ArgumentError: x is not in U.
        StructuralError: the answers are inconsistent with a connected,
            self-contained U.
    """
    members = _members(U, x)
    if len(members) == 1:
        return NodePartition(pivot=x, parts=(frozenset({x}),))

    evidence = _neighbor_evidence(oracle, (x,), members)
    if len(evidence.neighbors) == 0:
        raise StructuralError(f"vertex {x} has no neighbor inside U")
    group_of = _group_neighbors(evidence)
    n_groups = max(group_of.values()) + 1

    buckets: List[Set[int]] = [{x} for _ in range(n_groups)]
    nearest = evidence.dist.min(axis=0)
    for col, u in enumerate(evidence.members):
        closest = evidence.neighbors[evidence.dist[:, col] == nearest[col]]
        owners = {group_of[int(y)] for y in closest}
        if len(owners) != 1:
            raise StructuralError(f"vertex {u} is nearest to neighbors of {x} in different parts")
        buckets[owners.pop()].add(int(u))

    parts = sorted((frozenset(b) for b in buckets), key=lambda p: min(p - {x}))
    return NodePartition(pivot=x, parts=tuple(parts))


def neighbors_in_order(oracle: CountingOracle, x: int, U: Iterable[int]) -> List[int]:
    """Neighbors of a non-cut vertex x in the order they appear around x.

    The order is unique up to reversal; the lower-id end comes first.
    """
    members = _members(U, x)
    evidence = _neighbor_evidence(oracle, (x,), members)
    ys = evidence.neighbors.tolist()
    if len(ys) <= 1:
        return ys

    relation = nx.Graph()
    relation.add_nodes_from(ys)
    relation.add_edges_from(evidence.pairs)
    is_path = (
        relation.number_of_edges() == len(ys) - 1
        and max(d for _, d in relation.degree) <= 2
        and nx.is_connected(relation)
    )
    if not is_path:
        raise StructuralError(
            f"neighbors of {x} admit no consecutive ordering "
            f"({relation.number_of_edges()} pairs over {len(ys)} neighbors)"
        )
    start = min(v for v, d in relation.degree if d == 1)
    return list(nx.dfs_preorder_nodes(relation, start))


def _orient(
    oracle: CountingOracle,
    x: int,
    y: int,
    members: np.ndarray,
    z: List[int],
    t: List[int],
    i: int,
) -> List[int]:
    """Return t oriented so that t[j+1] lies on the same side as z[i-1]."""
    evidence = _neighbor_evidence(oracle, (x, y), members)
    group_of = _group_neighbors(evidence)
    right, left = group_of.get(z[i - 1]), group_of.get(z[i + 1])
    if right is None or left is None or right == left:
        raise StructuralError(f"cannot separate the two sides of edge ({x},{y})")

    def agrees(order: List[int]) -> bool:
        j = order.index(x)
        before = order[j - 1] if j > 0 else None
        after = order[j + 1] if j + 1 < len(order) else None
        ok_after = after is None or group_of.get(after) == right
        ok_before = before is None or group_of.get(before) == left
        return ok_after and ok_before

    forward, backward = agrees(t), agrees(t[::-1])
    if forward and not backward:
        return t
    if backward and not forward:
        return t[::-1]
    raise StructuralError(f"ambiguous neighbor orientation around edge ({x},{y})")


def left_or_right(
    dist_u_x: int,
    dist_u_y: int,
    z_dists: np.ndarray,
    t_dists: np.ndarray,
    i: int,
    j: int,
) -> Side:
    """Side of u relative to the edge (x, y) from its nearest ordered neighbor."""
    if dist_u_x <= dist_u_y:
        return Side.RIGHT if int(np.argmin(z_dists)) < i else Side.LEFT
    return Side.LEFT if int(np.argmin(t_dists)) < j else Side.RIGHT


def partition_by_edge(oracle: CountingOracle, x: int, y: int, U: Iterable[int]) -> EdgeSides:
    """The two sides of the boundary cycle that the edge (x, y) separates.

    U is first trimmed to the vertices on the x-side of y and the y-side of x,
    which makes both endpoints non-cut.

    Raises:
        ArgumentError: x or y is not in U, or (x, y) is not an edge.
        StructuralError: the answers are inconsistent with an outerplanar U.
    """
    members = _members(U, x, y)
    if oracle.query(x, y) != 1:
        raise ArgumentError(f"({x},{y}) is not an edge")
    endpoints = frozenset({x, y})
    if len(members) == 2:
        return EdgeSides(x=x, y=y, right=endpoints, left=endpoints)

    kept = (
        partition_by_node(oracle, x, members).part_containing(y)
        & partition_by_node(oracle, y, members).part_containing(x)
    )
    if kept == endpoints:
        return EdgeSides(x=x, y=y, right=endpoints, left=endpoints)
    trimmed = _members(kept)

    z = neighbors_in_order(oracle, x, trimmed)
    t = neighbors_in_order(oracle, y, trimmed)
    i = z.index(y)
    rest = frozenset(trimmed.tolist())
    # y at an end of x's order: (x, y) is on the outer face
    if i == 0:
        return EdgeSides(x=x, y=y, right=endpoints, left=rest)
    if i == len(z) - 1:
        return EdgeSides(x=x, y=y, right=rest, left=endpoints)

    t = _orient(oracle, x, y, trimmed, z, t, i)
    j = t.index(x)

    others = trimmed[(trimmed != x) & (trimmed != y)]
    from_x = oracle.query_row(x, others)
    from_y = oracle.query_row(y, others)
    z_rows = np.vstack([oracle.query_row(v, others) for v in z])
    t_rows = np.vstack([oracle.query_row(v, others) for v in t])
    right, left = set(endpoints), set(endpoints)
    for col, u in enumerate(others):
        side = left_or_right(
            int(from_x[col]), int(from_y[col]), z_rows[:, col], t_rows[:, col], i, j
        )
        (right if side == Side.RIGHT else left).add(int(u))
    return EdgeSides(x=x, y=y, right=frozenset(right), left=frozenset(left))


def side_containing(sides: EdgeSides, v: int) -> frozenset:
    try:
        return sides.side_of(v)
    except ArgumentError as e:
        raise StructuralError(str(e)) from e


def find_polygon(
    oracle: CountingOracle, x: int, y_a: int, y_b: int, U: Iterable[int]
) -> Polygon:
    """The unique polygon through the edges (x, y_a) and (x, y_b).

    y_a and y_b must be consecutive neighbors of the non-cut vertex x.
    """
    members = _members(U, x, y_a, y_b)
    wedge = side_containing(partition_by_edge(oracle, x, y_a, members), y_b) & side_containing(
        partition_by_edge(oracle, x, y_b, members), y_a
    )
    arr = _members(wedge)
    to_a = oracle.query_row(y_a, arr)
    to_b = oracle.query_row(y_b, arr)
    # vertices whose paths to both neighbors avoid x
    usable = (arr != x) & (np.abs(to_a - to_b) <= 1)
    if not usable.any():
        raise StructuralError(f"{y_a} and {y_b} are not consecutive neighbors of {x}")
    total = to_a + to_b
    d = int(total[usable].min())
    mids = arr[usable & (total == d) & (to_a == d // 2)]
    if len(mids) == 0:
        raise StructuralError(f"no midpoint between {y_a} and {y_b} avoiding {x}")
    z = int(mids[0])

    first = shortest_path(oracle, y_a, z, arr)
    second = shortest_path(oracle, z, y_b, arr)
    vertices = (x,) + tuple(first) + tuple(second[1:])
    if len(set(vertices)) != len(vertices):
        raise StructuralError(f"path between {y_a} and {y_b} passes through {x}")
    return Polygon(vertices=vertices)


class _PolygonSplitter:
    """Computes the outgrowths W_i and strips R_i of one polygon."""

    def __init__(self, oracle: CountingOracle, polygon: Polygon):
        self.oracle = oracle
        self.polygon = polygon
        self.corners = frozenset(polygon.vertices)
        self.w: Dict[int, frozenset] = {}
        self.r: Dict[int, frozenset] = {}

    def outgrowth(self, m: int, Z: Iterable[int]) -> frozenset:
        q = self.polygon.q(m)
        split = partition_by_node(self.oracle, q, Z)
        out = {q}
        for part in split.parts:
            if not (part - {q}) & self.corners:
                out |= part
        return frozenset(out)

    def strip(self, m: int, Z: Iterable[int]) -> frozenset:
        a, b = self.polygon.q(m), self.polygon.q(m + 1)
        sides = partition_by_edge(self.oracle, a, b, Z)
        out = {a, b}
        for side in (sides.right, sides.left):
            if not (side - {a, b}) & self.corners:
                out |= side
        return frozenset(out)

    def compute(self, m: int, Z: Iterable[int]) -> frozenset:
        members = frozenset(Z)
        self.w[m] = self.outgrowth(m, members)
        self.r[m] = self.strip(m, members)
        return self.w[m] | self.r[m]

    def segment(self, s: int, t: int, Z: frozenset) -> None:
        """Fill W_s..W_t and R_s..R_t from Z, their union plus corners."""
        if s > t:
            stray = Z - self.corners
            if stray:
                raise StructuralError(f"{len(stray)} vertices left outside every polygon part")
            return
        m = (s + t) // 2
        a, b = self.polygon.q(m), self.polygon.q(m + 1)
        rest = _members((Z - self.compute(m, Z)) | {a, b})
        to_a = self.oracle.query_row(a, rest)
        to_b = self.oracle.query_row(b, rest)
        if np.any(to_a == to_b):
            raise StructuralError(f"vertices equidistant from polygon corners {a} and {b}")
        self.segment(s, m - 1, frozenset(rest[to_a < to_b].tolist()))
        self.segment(m + 1, t, frozenset(rest[to_a > to_b].tolist()))

    def dichotomy(self, U: frozenset) -> None:
        length = len(self.polygon)
        h = length // 2
        covered: Set[int] = set()
        for m in sorted({1, h, h + 1, length}):
            covered |= self.compute(m, U)
        rest = _members(U - covered)
        q2, ql = self.polygon.q(2), self.polygon.q(length)
        near_start = rest[self.oracle.query_row(q2, rest) < self.oracle.query_row(ql, rest)]
        first = set(near_start.tolist())
        second = set(rest.tolist()) - first
        first |= {self.polygon.q(i) for i in range(2, h + 1)}
        second |= {self.polygon.q(i) for i in range(h + 2, length + 1)}
        self.segment(2, h - 1, frozenset(first))
        self.segment(h + 2, length - 1, frozenset(second))

    def naive(self, U: frozenset) -> None:
        for m in range(1, len(self.polygon) + 1):
            self.compute(m, U)


def partition_by_polygon(
    oracle: CountingOracle,
    polygon: Polygon,
    U: Iterable[int],
    strategy: PolygonStrategy = PolygonStrategy.DICHOTOMY,
) -> PolygonPartition:
    """Split U into the outgrowths W_i at each corner and the strips R_i.

    W_i holds q_i plus everything hanging off q_i away from the polygon.
    R_i holds q_i, q_{i+1} and everything beyond the edge (q_i, q_{i+1}).

    Raises:
        ArgumentError: a polygon vertex is not in U.
        StructuralError: some vertex of U lands in no part.
    """
    members = frozenset(_members(U, *polygon.vertices).tolist())
    splitter = _PolygonSplitter(oracle, polygon)
    if strategy == PolygonStrategy.NAIVE:
        splitter.naive(members)
    else:
        splitter.dichotomy(members)

    length = len(polygon)
    w = tuple(splitter.w[i] for i in range(1, length + 1))
    r = tuple(splitter.r[i] for i in range(1, length + 1))
    covered = frozenset().union(*w, *r)
    if covered != members:
        raise StructuralError(f"polygon parts miss {len(members - covered)} vertices of U")
    logger.debug("partition_by_polygon: l=%d |U|=%d strategy=%s", length, len(members), strategy.value)
    return PolygonPartition(polygon=polygon, w=w, r=r)
