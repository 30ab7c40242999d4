"""
Canonical representation of undirected trees.

Trees are stored on dense vertex ids 0..N-1 and are immutable once built.
Everything else in zagreb (indices, enumeration, transforms, the DP witnesses)
passes `Tree` objects around; `build_tree` is the only validating constructor.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from .common import (
    CycleError,
    DisconnectedTreeError,
    DuplicateEdgeError,
    SelfLoopError,
    TreeTooLargeError,
    VertexRangeError,
)
from .config import MAX_VERTICES

log = logging.getLogger(__name__)


class Tree(object):
    """
    Undirected labeled tree on vertices 0..N-1.

    Use `build_tree` to create one from an edge list; the constructor itself
    trusts its input.

    Attributes
    ----------
    vertex_count : int
        Number of vertices N.
    adjacency : tuple of tuple of int
        Sorted neighbor ids per vertex.
    degrees : np.ndarray
        Read-only degree vector.
    edges : np.ndarray
        Read-only (N-1, 2) array of edges with u < v, sorted.
    """

    __slots__ = ("_adjacency", "_degrees", "_edges")

    def __init__(self, adjacency: Sequence[Sequence[int]]):
        self._adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        degrees = np.array([len(nbrs) for nbrs in self._adjacency], dtype=np.int64)
        degrees.setflags(write=False)
        self._degrees = degrees

        edges = sorted(
            (u, v) for u, nbrs in enumerate(self._adjacency) for v in nbrs if u < v
        )
        edges = np.array(edges, dtype=np.int64).reshape(-1, 2)
        edges.setflags(write=False)
        self._edges = edges

    @property
    def vertex_count(self) -> int:
        return len(self._adjacency)

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def pendant_count(self) -> int:
        return int(np.count_nonzero(self._degrees == 1))

    @property
    def pendants(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self._degrees == 1))

    @property
    def internal_vertices(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self._degrees >= 2))

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adjacency[v]

    def edge_list(self):
        return [(int(u), int(v)) for u, v in self._edges]

    def __len__(self):
        return self.vertex_count

    def __eq__(self, other):
        # labeled equality; use canonical_code for isomorphism
        if not isinstance(other, Tree):
            return NotImplemented
        return self._adjacency == other._adjacency

    def __hash__(self):
        return hash(self._adjacency)

    def __repr__(self):
        return f"Tree(N={self.vertex_count}, n={self.pendant_count})"


@dataclass(frozen=True)
class DegreeSummary:
    """Pendant count n, internal count q and the internal degrees d_1..d_q."""

    n: int
    q: int
    internal_degrees: Tuple[int, ...]


def build_tree(edges: Iterable[Tuple[int, int]], vertex_count: Optional[int] = None):
    """
    Validate an edge list and build a `Tree`.

    Parameters
    ----------
    edges : iterable of (int, int)
        Edges over vertex ids 0..N-1.
    vertex_count : int, optional
        N. Defaults to one more than the largest id seen (1 for an empty list).

    Returns
    -------
    Tree

    Raises
    ------
    SelfLoopError, DuplicateEdgeError, CycleError, DisconnectedTreeError
        One distinct error per way the input can fail to be a tree.
    VertexRangeError
        Negative ids, or ids outside 0..vertex_count-1.
    TreeTooLargeError
        More than the supported number of vertices.

    Examples
    --------
    >>> build_tree([(0, 1), (0, 2), (0, 3)]).pendant_count
    3
    """
    edges = [(int(u), int(v)) for u, v in edges]
    max_id = max((max(e) for e in edges), default=0)
    if vertex_count is None:
        vertex_count = max_id + 1
    elif max_id >= vertex_count:
        raise VertexRangeError(
            f"Vertex id {max_id} out of range for {vertex_count} vertices"
        )
    if vertex_count > MAX_VERTICES:
        raise TreeTooLargeError(
            f"{vertex_count} vertices exceeds the supported maximum of {MAX_VERTICES}"
        )

    adjacency = [[] for _ in range(vertex_count)]
    seen = set()
    components = UnionFind(range(vertex_count))
    for u, v in edges:
        if u < 0 or v < 0:
            raise VertexRangeError(f"Negative vertex id in edge ({u}, {v})")
        if u == v:
            raise SelfLoopError(f"Self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"Duplicate edge {key}")
        seen.add(key)
        if components[u] == components[v]:
            raise CycleError(f"Cycle detected: edge {key} closes a cycle")
        components.union(u, v)
        adjacency[u].append(v)
        adjacency[v].append(u)

    # no cycles and fewer than N-1 edges leaves more than one component
    if len(edges) != vertex_count - 1:
        raise DisconnectedTreeError(
            f"Graph with {vertex_count} vertices and {len(edges)} edges is disconnected"
        )

    return Tree(adjacency)


def degree_summary(t: Tree) -> DegreeSummary:
    """
    Count pendants and internal vertices and collect the internal degrees.

    For n > 2 the degree identity n - 2 = sum(d_i - 2) is checked.
    """
    degrees = t.degrees
    n = int(np.count_nonzero(degrees == 1))
    internal = tuple(int(d) for d in degrees[degrees >= 2])
    summary = DegreeSummary(n=n, q=len(internal), internal_degrees=internal)
    if n > 2:
        assert n - 2 == sum(d - 2 for d in internal), "degree identity violated"
    return summary


def centers(t: Tree) -> Tuple[int, ...]:
    """Return the one or two center vertices, found by peeling leaves."""
    N = t.vertex_count
    if N <= 2:
        return tuple(range(N))
    deg = [len(nbrs) for nbrs in t.adjacency]
    leaves = [v for v, d in enumerate(deg) if d <= 1]
    removed = len(leaves)
    while removed < N:
        new_leaves = []
        for u in leaves:
            deg[u] = 0
            for v in t.adjacency[u]:
                if deg[v] > 0:
                    deg[v] -= 1
                    if deg[v] == 1:
                        new_leaves.append(v)
        removed += len(new_leaves)
        leaves = new_leaves
    return tuple(sorted(leaves))


def _rooted_code(t: Tree, root: int) -> bytes:
    """
    AHU level encoding of `t` rooted at `root`.

    Levels are processed deepest first. Each vertex gets the sorted tuple of
    its children's ranks; the distinct tuples of a level are ranked in sorted
    order. The code lists, per level, the sorted multiset of tuples, which
    determines the rooted tree up to isomorphism.
    """
    adjacency = t.adjacency
    parent = {root: -1}
    levels = [[root]]
    while True:
        nxt = []
        for u in levels[-1]:
            for v in adjacency[u]:
                if v != parent[u]:
                    parent[v] = u
                    nxt.append(v)
        if not nxt:
            break
        levels.append(nxt)

    rank = {}
    parts = []
    for level in reversed(levels):
        tuples = {}
        for u in level:
            tuples[u] = tuple(sorted(rank[v] for v in adjacency[u] if v != parent[u]))
        ordered = sorted(tuples.values())
        ranks = {}
        for tup in ordered:
            ranks.setdefault(tup, len(ranks))
        for u, tup in tuples.items():
            rank[u] = ranks[tup]
        parts.append(";".join(",".join(map(str, tup)) for tup in ordered))
    return "|".join(parts).encode("ascii")


def canonical_code(t: Tree) -> bytes:
    """
    Canonical byte string of `t`, equal for two trees iff they are isomorphic.

    The tree is rooted at its center; for a bicentral tree the smaller of the
    two center-rooted codes is used.
    """
    if t.vertex_count == 0:
        return b""
    return min(_rooted_code(t, c) for c in centers(t))


def relabel(t: Tree, perm: Sequence[int]) -> Tree:
    """Return `t` with vertex v renamed to perm[v]."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(t.vertex_count)):
        raise ValueError("perm must be a permutation of 0..N-1")
    return build_tree(
        [(perm[u], perm[v]) for u, v in t.edge_list()], vertex_count=t.vertex_count
    )


def random_tree(N: int, rng=None) -> Tree:
    """
    Uniformly random labeled tree on N vertices from a random Prüfer sequence.

    Parameters
    ----------
    N : int
        Number of vertices, at least 1.
    rng : np.random.Generator or int, optional
        Generator or seed.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, not {N}")
    rng = np.random.default_rng(rng)
    if N == 1:
        return build_tree([], vertex_count=1)
    if N == 2:
        return build_tree([(0, 1)])
    sequence = [int(x) for x in rng.integers(0, N, size=N - 2)]
    return from_networkx(nx.from_prufer_sequence(sequence))


def random_permutation(t: Tree, rng=None) -> Tree:
    rng = np.random.default_rng(rng)
    return relabel(t, rng.permutation(t.vertex_count))


def to_networkx(t: Tree) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(t.vertex_count))
    G.add_edges_from(t.edge_list())
    return G


def from_networkx(G: nx.Graph) -> Tree:
    """Build a `Tree` from a networkx graph, compacting node labels in sorted order."""
    index = {node: i for i, node in enumerate(sorted(G.nodes))}
    return build_tree(
        [(index[u], index[v]) for u, v in G.edges], vertex_count=len(index)
    )
