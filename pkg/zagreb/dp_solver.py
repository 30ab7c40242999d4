"""
Exact dynamic program for optimal attached-tree costs and the whole-tree M2
minimum built from it.

An attached tree is a rooted tree whose root is a leaf carrying a virtual
degree p, the degree of the vertex it would be glued to. Its cost under a weight
scheme is

    C_a(T, p) = c2(p, d(s)) + sum_{uv, u,v != root} c2(d(u), d(v)) + sum_{v != root} c1(d(v))

where s is the sub-root (the root's only neighbor). For M2 this is
p d(s) + the remaining degree products.

The optimum C*(m, p) over attached trees with m pendants obeys

    C*(1, p)   = c2(p, 1) + c1(1)
    C>2(m, p)  = min_{d = 3..D} c2(p, d) + c1(d) + min_{m_1 + .. + m_{d-1} = m} sum_i C*(m_i, d)
    C*(m, p)   = min(C>2(m, p), c2(p, 2) + c1(2) + C>2(m, 2))      p >= 3
    C*(m, p)   = C>2(m, p)                                         p <= 2

The inner minimum over compositions is a min-plus convolution, tabulated once
per d. Tables grow on demand and are shared between threads.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .common import DegreeCapError
from .config import TOLERANCE
from .indices import M2, WeightScheme, abstract_cost
from .tree import Tree, build_tree

log = logging.getLogger(__name__)

MAX_DEGREE_CAP = 8
M2_DEGREE_CAP = 6


@dataclass(frozen=True)
class AttachedProblem:
    """Pendant count `n` (root not counted) and virtual root degree `p`."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Attached trees need n >= 1 pendants, not {self.n}")
        if self.p < 1:
            raise DegreeCapError(f"Virtual degree must be >= 1, not {self.p}")


@dataclass(frozen=True)
class CostEntry:
    """
    Optimal cost and the choice attaining it: the sub-root degree `d` and the
    pendant split `parts` over its children (non-increasing). ``d == 1`` is the
    single-pendant base case; ``d == 2`` passes all pendants to one child.
    """

    cost: float
    d: int
    parts: Tuple[int, ...]


@dataclass(frozen=True)
class AttachedWitness:
    """An attached tree; vertex `root` is the leaf carrying virtual degree `p`."""

    tree: Tree
    root: int
    p: int
    cost: float

    @property
    def sub_root(self) -> int:
        return self.tree.neighbors(self.root)[0]


@dataclass(frozen=True)
class WholeTreeOptimum:
    """
    Minimum index over trees with `n` pendants. `stem_degree` is None when the
    star wins.
    """

    n: int
    value: float
    tree: Tree
    stem_degree: Optional[int]


def attached_cost(t: Tree, root: int, p: int, scheme: WeightScheme = M2):
    """
    Cost of `t` as an attached tree rooted at the leaf `root` with virtual
    degree `p`.

    Raises
    ------
    ValueError
        `root` is not a leaf of `t`.
    """
    if t.degree(root) != 1:
        raise ValueError(f"Root {root} has degree {t.degree(root)}; it must be a leaf")
    if p < 1:
        raise DegreeCapError(f"Virtual degree must be >= 1, not {p}")
    degrees = t.degrees
    terms = []
    for u, v in t.edge_list():
        if root in (u, v):
            other = v if u == root else u
            terms.append(scheme.c2(p, int(degrees[other])))
        else:
            terms.append(scheme.c2(int(degrees[u]), int(degrees[v])))
    terms += [scheme.c1(int(d)) for v, d in enumerate(degrees) if v != root]
    return sum(terms)


class AttachedSolver(object):
    """
    Memoized Bellman engine for C*(m, p) under one weight scheme.

    Parameters
    ----------
    scheme : WeightScheme, optional
        Cost scheme; M2 by default, the only scheme for which the optimum is
        proven exact over all reduced trees.
    degree_cap : int, optional
        Highest sub-root degree D considered, at most 8.
    allow_deg2 : bool, optional
        Allow degree-2 sub-roots below roots of virtual degree >= 3.
    """

    def __init__(
        self,
        scheme: WeightScheme = M2,
        degree_cap: int = M2_DEGREE_CAP,
        allow_deg2: bool = True,
    ):
        if not 3 <= degree_cap <= MAX_DEGREE_CAP:
            raise DegreeCapError(
                f"degree_cap must be in 3..{MAX_DEGREE_CAP}, not {degree_cap}"
            )
        if scheme.max_degree < degree_cap:
            raise DegreeCapError(
                f"Scheme {scheme.name!r} stops at degree {scheme.max_degree}, "
                f"below the cap {degree_cap}"
            )
        self.scheme = scheme
        self.degree_cap = degree_cap
        self.allow_deg2 = allow_deg2
        self._lock = threading.RLock()
        self._filled = 0
        self._best: Dict[Tuple[int, int], CostEntry] = {}
        self._gt2: Dict[Tuple[int, int], CostEntry] = {}
        # conv[d][(k, m)] = (min sum of C*(m_i, d) over k-part compositions of m, first part)
        self._conv = {d: {} for d in range(3, degree_cap + 1)}

    def __repr__(self):
        return (
            f"AttachedSolver({self.scheme.name!r}, degree_cap={self.degree_cap}, "
            f"allow_deg2={self.allow_deg2})"
        )

    @property
    def is_exact(self) -> bool:
        return self.scheme is M2 and self.degree_cap == M2_DEGREE_CAP and self.allow_deg2

    def _extend(self, target: int):
        with self._lock:
            if target <= self._filled:
                return
            log.debug(f"Extending {self!r} table from m={self._filled} to m={target}")
            w = self.scheme
            D = self.degree_cap
            for m in range(self._filled + 1, target + 1):
                for d in range(3, D + 1):
                    conv = self._conv[d]
                    for k in range(2, d):
                        best = None
                        for a in range(1, m - k + 2):
                            cost = self._best[(a, d)].cost + conv[(k - 1, m - a)][0]
                            if best is None or cost < best[0]:
                                best = (cost, a)
                        if best is not None:
                            conv[(k, m)] = best

                for p in range(1, D + 1):
                    best = None
                    for d in range(3, D + 1):
                        entry = self._conv[d].get((d - 1, m))
                        if entry is None:
                            continue
                        cost = w.c2(p, d) + w.c1(d) + entry[0]
                        if best is None or cost < best[0]:
                            best = (cost, d)
                    if best is not None:
                        cost, d = best
                        self._gt2[(m, p)] = CostEntry(cost, d, self._parts(d, m))

                for p in range(1, D + 1):
                    if m == 1:
                        self._best[(m, p)] = CostEntry(w.c2(p, 1) + w.c1(1), 1, ())
                        continue
                    entry = self._gt2[(m, p)]
                    if self.allow_deg2 and p >= 3:
                        chain = w.c2(p, 2) + w.c1(2) + self._gt2[(m, 2)].cost
                        # smallest sub-root degree wins ties
                        if chain <= entry.cost:
                            entry = CostEntry(chain, 2, (m,))
                    self._best[(m, p)] = entry

                for d in range(3, D + 1):
                    self._conv[d][(1, m)] = (self._best[(m, d)].cost, m)
            self._filled = target

    def _parts(self, d: int, m: int) -> Tuple[int, ...]:
        conv = self._conv[d]
        parts = []
        k = d - 1
        while k > 1:
            a = conv[(k, m)][1]
            parts.append(a)
            m -= a
            k -= 1
        parts.append(m)
        return tuple(sorted(parts, reverse=True))

    def _check(self, m: int, p: int):
        AttachedProblem(m, p)
        if p > self.degree_cap:
            raise DegreeCapError(
                f"Virtual degree {p} above the solver's degree cap {self.degree_cap}"
            )

    def solve(self, m: int, p: int) -> CostEntry:
        """Optimal entry for C*(m, p)."""
        self._check(m, p)
        self._extend(m)
        return self._best[(m, p)]

    def solve_gt2(self, m: int, p: int) -> Optional[CostEntry]:
        """Optimal entry with sub-root degree >= 3, None for m = 1."""
        self._check(m, p)
        self._extend(m)
        return self._gt2.get((m, p))

    def cost_table(self) -> Dict[Tuple[int, int], CostEntry]:
        """Snapshot of every (m, p) entry computed so far."""
        with self._lock:
            return dict(self._best)

    def witness(self, m: int, p: int) -> AttachedWitness:
        """
        Reconstruct an attached tree attaining C*(m, p). Vertex 0 is the root
        and vertex 1 the sub-root.
        """
        entry = self.solve(m, p)
        edges = []
        next_id = 1
        # (parent vertex, entry describing the subtree hung below it)
        stack = [(0, entry)]
        while stack:
            parent, entry = stack.pop()
            node = next_id
            next_id += 1
            edges.append((parent, node))
            if entry.d == 2:
                stack.append((node, self._gt2[(entry.parts[0], 2)]))
            elif entry.d >= 3:
                for a in reversed(entry.parts):
                    stack.append((node, self._best[(a, entry.d)]))
        t = build_tree(edges, vertex_count=next_id)
        cost = attached_cost(t, 0, p, self.scheme)
        expected = self._best[(m, p)].cost
        assert abs(cost - expected) <= TOLERANCE * max(1, abs(expected)), (
            f"witness cost {cost} differs from the table value {expected}"
        )
        return AttachedWitness(tree=t, root=0, p=p, cost=cost)

    def whole_tree(self, n: int) -> WholeTreeOptimum:
        """
        Minimum over trees with `n` pendants, assembled from a stem of degree
        d = 3..D carrying d - 1 pendants plus an optimal attached tree of
        virtual degree d, compared against the star. The star wins ties, then
        the smallest d.
        """
        if n < 2:
            raise ValueError(f"Trees have at least 2 pendants, not {n}")
        w = self.scheme
        if n == 2:
            t = build_tree([(0, 1)])
            return WholeTreeOptimum(n=n, value=abstract_cost(t, w), tree=t, stem_degree=None)

        best_value, best_d = None, None
        # only the exact M2 solver may return a star above the degree cap
        star_cap = w.max_degree if self.is_exact else min(w.max_degree, self.degree_cap)
        if n <= star_cap:
            best_value = w.c1(n) + n * (w.c1(1) + w.c2(1, n))
        else:
            log.debug(f"Skipping the star K_1,{n}: above degree {star_cap}")

        for d in range(3, min(self.degree_cap, n) + 1):
            m = n - d + 1
            value = w.c1(d) + (d - 1) * (w.c1(1) + w.c2(1, d)) + self.solve(m, d).cost
            if best_value is None or value < best_value:
                best_value, best_d = value, d

        if best_d is None:
            t = build_tree([(0, i) for i in range(1, n + 1)])
        else:
            attached = self.witness(n - best_d + 1, best_d)
            N = attached.tree.vertex_count
            edges = attached.tree.edge_list() + [(0, N + i) for i in range(best_d - 1)]
            t = build_tree(edges, vertex_count=N + best_d - 1)
        return WholeTreeOptimum(n=n, value=best_value, tree=t, stem_degree=best_d)


_M2_SOLVER = AttachedSolver()
_solvers: Dict[Tuple[int, int, bool], AttachedSolver] = {}
_solvers_lock = threading.Lock()


def get_solver(
    scheme: WeightScheme = M2, degree_cap: int = M2_DEGREE_CAP, allow_deg2: bool = True
) -> AttachedSolver:
    """Shared solver per (scheme, cap, deg2 switch); tables persist between calls."""
    if scheme is M2 and degree_cap == M2_DEGREE_CAP and allow_deg2:
        return _M2_SOLVER
    key = (id(scheme), degree_cap, allow_deg2)
    with _solvers_lock:
        if key not in _solvers or _solvers[key].scheme is not scheme:
            _solvers[key] = AttachedSolver(scheme, degree_cap, allow_deg2)
        return _solvers[key]


def solve_ca(n: int, p: int) -> CostEntry:
    """
    Optimal M2 attached-tree cost C*(n, p) and the choice attaining it.

    Parameters
    ----------
    n : int
        Pendant count, at least 1.
    p : int
        Virtual root degree, 2..6. Use `min_m2` for whole trees.

    Examples
    --------
    >>> solve_ca(4, 5).cost
    40
    """
    if not 2 <= p <= M2_DEGREE_CAP:
        raise DegreeCapError(f"p must be in 2..{M2_DEGREE_CAP}, not {p}")
    return _M2_SOLVER.solve(n, p)


def reconstruct_witness(n: int, p: int) -> AttachedWitness:
    """Attached tree whose cost equals ``solve_ca(n, p).cost``."""
    if not 2 <= p <= M2_DEGREE_CAP:
        raise DegreeCapError(f"p must be in 2..{M2_DEGREE_CAP}, not {p}")
    return _M2_SOLVER.witness(n, p)


def min_m2(n: int) -> WholeTreeOptimum:
    """
    Minimum M2 over trees with `n` pendants, with a witness tree.

    Equals 11n - 27 for n >= 9; n^2 (star) for n <= 7; 60 at n = 8.
    """
    return _M2_SOLVER.whole_tree(n)


def generalized_solve(
    n: int,
    p: int,
    scheme: WeightScheme,
    degree_cap: int = M2_DEGREE_CAP,
    allow_deg2_chain: bool = True,
) -> CostEntry:
    """
    Attached-tree optimum for an arbitrary scheme over the degree-capped,
    chain-restricted class.

    Only M2 with cap 6 is a proven global optimum; for anything else the value
    is the best tree of the restricted class, which can be above the true
    minimum.
    """
    solver = get_solver(scheme, degree_cap, allow_deg2_chain)
    if not solver.is_exact:
        log.warning(f"{solver!r} is a restricted search, not a proven optimum")
    return solver.solve(n, p)


def generalized_min(
    n: int,
    scheme: WeightScheme,
    degree_cap: int = M2_DEGREE_CAP,
    allow_deg2_chain: bool = True,
) -> WholeTreeOptimum:
    """Whole-tree counterpart of `generalized_solve`."""
    solver = get_solver(scheme, degree_cap, allow_deg2_chain)
    if not solver.is_exact:
        log.warning(f"{solver!r} is a restricted search, not a proven optimum")
    return solver.whole_tree(n)


def attached_broom(n: int, p: int) -> AttachedWitness:
    """
    Attached broom: root, a degree-2 sub-root, then a hub carrying `n`
    pendants. Optimal on the rows (4, 5), (3, 6), (4, 6) and (5, 6).
    """
    if n < 1:
        raise ValueError(f"attached_broom needs n >= 1, not {n}")
    if p < 1:
        raise DegreeCapError(f"Virtual degree must be >= 1, not {p}")
    edges = [(0, 1), (1, 2)] + [(2, 3 + i) for i in range(n)]
    t = build_tree(edges)
    return AttachedWitness(tree=t, root=0, p=p, cost=attached_cost(t, 0, p))
