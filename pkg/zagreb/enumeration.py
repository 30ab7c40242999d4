"""
Exhaustive generation of trees with a fixed number of pendants, used as an
independent oracle for the DP.

A tree with n >= 3 pendants is determined by its skeleton (the tree induced on
its vertices of degree >= 3, with degree-2 chains suppressed), the number of
pendants on each skeleton vertex, and the lengths of the degree-2 chains on
skeleton and pendant edges. Skeletons are grown leaf by leaf and deduplicated
by canonical code; each skeleton is then expanded independently, so the work
splits across threads by skeleton.

Reduced trees (no edge between two vertices of degree <= 2) have at most one
subdivision per skeleton edge and none on pendant edges. With q <= n - 2
skeleton vertices and at most q - 1 subdivisions they have N <= 3n - 5
vertices, which is the default order cap.
"""

import logging
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator, List, Optional, Union

from .common import BudgetExceededError
from .config import BRUTE_MAX_PENDANTS, DEFAULT_BUDGET, TOLERANCE
from .dp_solver import attached_cost
from .indices import M2, WeightScheme, abstract_cost, scheme_from_name
from .tree import Tree, build_tree, canonical_code

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumConstraints:
    """
    The class of trees to enumerate.

    Attributes
    ----------
    pendants : int
        Exact pendant count n >= 2.
    reduced : bool
        Forbid edges whose endpoints both have degree <= 2 (K_2 excepted).
    max_degree : int, optional
        Degree cap, at least 3. 4 gives chemical trees.
    max_order : int, optional
        Vertex cap; defaults to max(3n - 5, 2).
    """

    pendants: int
    reduced: bool = True
    max_degree: Optional[int] = None
    max_order: Optional[int] = None

    def __post_init__(self):
        if self.pendants < 2:
            raise ValueError(f"Trees have at least 2 pendants, not {self.pendants}")
        if self.max_degree is not None and self.max_degree < 3:
            raise ValueError(f"max_degree must be >= 3, not {self.max_degree}")
        if self.max_order is not None and self.max_order < 2:
            raise ValueError(f"max_order must be >= 2, not {self.max_order}")

    @property
    def order_cap(self) -> int:
        if self.max_order is not None:
            return self.max_order
        return max(3 * self.pendants - 5, 2)

    def admits(self, t: Tree) -> bool:
        """Check a tree against the constraints directly."""
        if t.pendant_count != self.pendants or t.vertex_count > self.order_cap:
            return False
        if self.max_degree is not None and t.degrees.max() > self.max_degree:
            return False
        if self.reduced and t.vertex_count > 2:
            d = t.degrees
            if any(d[u] <= 2 and d[v] <= 2 for u, v in t.edge_list()):
                return False
        return True


@dataclass
class MinimizationResult:
    """Exact minimum over an enumerated class and every tree attaining it."""

    min_value: float
    witnesses: List[Tree] = field(default_factory=list)
    trees_examined: int = 0
    scheme: str = "m2"


class Budget(object):
    """
    Thread-safe counter of candidate expansions with a hard cap, plus the
    largest pendant count an exhaustive run may be started for.
    """

    def __init__(self, limit: int = DEFAULT_BUDGET, max_pendants: int = BRUTE_MAX_PENDANTS):
        if limit <= 0:
            raise ValueError(f"budget must be positive, not {limit}")
        self.limit = limit
        self.max_pendants = max_pendants
        self.spent = 0
        self._lock = threading.Lock()

    @classmethod
    def from_config(cls, cfg):
        """Fresh budget from a `get_config` result."""
        return cls(cfg.budget, max_pendants=cfg.brute_max_pendants)

    def check_scale(self, n: int):
        if n > self.max_pendants:
            raise ValueError(
                f"Exhaustive runs are limited to n <= {self.max_pendants} pendants, not {n}"
            )

    def spend(self, k: int = 1):
        with self._lock:
            self.spent += k
            if self.spent > self.limit:
                raise BudgetExceededError(
                    f"Enumeration needs more than {self.limit} candidate expansions"
                )


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


# Skeletons
# ---------


def _pendant_need(t: Tree) -> int:
    return sum(max(0, 3 - int(d)) for d in t.degrees)


def skeletons(n: int, max_degree: Optional[int] = None, q_max: Optional[int] = None, budget=None):
    """
    Non-isomorphic skeleton trees that can carry `n` pendants, grouped by order.

    Returns
    -------
    dict of int -> list of Tree
        Order q -> skeletons sorted by canonical code.
    """
    budget = _as_budget(budget)
    q_max = n - 2 if q_max is None else min(q_max, n - 2)
    if q_max < 1:
        return {}
    layers = {1: [build_tree([], vertex_count=1)]}
    for q in range(2, q_max + 1):
        found = {}
        for t in layers[q - 1]:
            for v in range(t.vertex_count):
                if max_degree is not None and t.degree(v) + 1 > max_degree:
                    continue
                budget.spend()
                grown = build_tree(t.edge_list() + [(v, q - 1)], vertex_count=q)
                if _pendant_need(grown) > n:
                    continue
                found.setdefault(canonical_code(grown), grown)
        if not found:
            break
        layers[q] = [found[code] for code in sorted(found)]
        log.debug(f"{len(layers[q])} skeletons with q={q} vertices")
    return layers


def _allocations(lo, hi, total):
    """Vectors x with lo <= x <= hi elementwise and sum(x) == total."""
    if not lo:
        if total == 0:
            yield ()
        return
    rest_lo = sum(lo[1:])
    rest_hi = sum(hi[1:])
    for x in range(max(lo[0], total - rest_hi), min(hi[0], total - rest_lo) + 1):
        for tail in _allocations(lo[1:], hi[1:], total - x):
            yield (x,) + tail


def _weak_compositions(total, slots):
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for x in range(total, -1, -1):
        for tail in _weak_compositions(total - x, slots - 1):
            yield (x,) + tail


def _assemble(q, skel_edges, pendants, edge_subdiv, pendant_subdiv=None) -> Tree:
    edges = []
    next_id = q
    for (u, v), c in zip(skel_edges, edge_subdiv):
        prev = u
        for _ in range(c):
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
        edges.append((prev, v))
    k = 0
    for v, count in enumerate(pendants):
        for _ in range(count):
            chain = pendant_subdiv[k] if pendant_subdiv is not None else 0
            k += 1
            prev = v
            for _ in range(chain + 1):
                edges.append((prev, next_id))
                prev = next_id
                next_id += 1
    return build_tree(edges, vertex_count=next_id)


def _expand_skeleton(skel: Tree, c: EnumConstraints, budget: Budget) -> List[Tree]:
    n = c.pendants
    q = skel.vertex_count
    s = [int(d) for d in skel.degrees]
    lo = [max(0, 3 - d) for d in s]
    hi = [(c.max_degree - d) if c.max_degree is not None else n for d in s]
    slack = c.order_cap - n - q
    if slack < 0 or any(h < l for l, h in zip(lo, hi)):
        return []
    skel_edges = skel.edge_list()
    E = len(skel_edges)

    seen = set()
    out = []

    def emit(t):
        budget.spend()
        code = canonical_code(t)
        if code not in seen:
            seen.add(code)
            out.append(t)

    for pendants in _allocations(lo, hi, n):
        if c.reduced:
            for count in range(min(E, slack) + 1):
                for subset in combinations(range(E), count):
                    subdiv = [1 if i in subset else 0 for i in range(E)]
                    emit(_assemble(q, skel_edges, pendants, subdiv))
        else:
            for extra in range(slack + 1):
                for comp in _weak_compositions(extra, E + n):
                    emit(_assemble(q, skel_edges, pendants, comp[:E], comp[E:]))
    return out


def _paths(c: EnumConstraints) -> Iterator[Tree]:
    yield build_tree([(0, 1)])
    if c.reduced:
        return
    for N in range(3, c.order_cap + 1):
        yield build_tree([(i, i + 1) for i in range(N - 1)])


def enumerate_trees(c: EnumConstraints, threads: int = 1, budget=None) -> Iterator[Tree]:
    """
    Stream every tree in the class once, up to isomorphism.

    The order is deterministic: skeleton order q ascending, then skeleton
    canonical code, then first appearance within the skeleton. It does not
    depend on `threads`.

    Parameters
    ----------
    c : EnumConstraints
    threads : int, optional
        Worker threads expanding skeletons.
    budget : int or Budget, optional
        Cap on candidate expansions; defaults to the configured budget.

    Raises
    ------
    BudgetExceededError
        The class needs more expansions than the budget allows.
    """
    budget = _as_budget(budget)
    budget.check_scale(c.pendants)
    if c.pendants == 2:
        yield from _paths(c)
        return

    q_max = c.order_cap - c.pendants
    layers = skeletons(c.pendants, c.max_degree, q_max, budget)
    skels = [skel for q in sorted(layers) for skel in layers[q]]
    log.info(f"Expanding {len(skels)} skeletons for n={c.pendants}")

    if threads <= 1:
        for skel in skels:
            yield from _expand_skeleton(skel, c, budget)
        return
    with ThreadPoolExecutor(max_workers=threads) as executor:
        for batch in executor.map(lambda sk: _expand_skeleton(sk, c, budget), skels):
            yield from batch


def count_trees(c: EnumConstraints, threads: int = 1, budget=None) -> int:
    """Cardinality of the enumerated class."""
    return sum(1 for _ in enumerate_trees(c, threads=threads, budget=budget))


def _as_scheme(index: Union[WeightScheme, str]) -> WeightScheme:
    return index if isinstance(index, WeightScheme) else scheme_from_name(index)


def _minimize(trees, cost, scheme_name) -> MinimizationResult:
    result = None
    examined = 0
    for t in trees:
        examined += 1
        value = cost(t)
        if result is None or value < result.min_value - TOLERANCE:
            result = MinimizationResult(min_value=value, witnesses=[t], scheme=scheme_name)
        elif abs(value - result.min_value) <= TOLERANCE:
            result.witnesses.append(t)
    if result is None:
        raise ValueError("The constrained class is empty")
    result.trees_examined = examined
    return result


def brute_min(
    c: EnumConstraints, index: Union[WeightScheme, str] = "m2", threads: int = 1, budget=None
) -> MinimizationResult:
    """
    Exact minimum of `index` over the enumerated class with all minimizers.

    Examples
    --------
    >>> brute_min(EnumConstraints(pendants=8), "m2").min_value
    60
    """
    scheme = _as_scheme(index)
    log.info(f"Brute-force minimum of {scheme.name} over n={c.pendants}")
    trees = enumerate_trees(c, threads=threads, budget=budget)
    return _minimize(trees, lambda t: abstract_cost(t, scheme), scheme.name)


def naive_trees(
    n: int,
    max_order: Optional[int] = None,
    reduced: bool = False,
    max_degree: Optional[int] = None,
) -> List[Tree]:
    """
    Second, slower generator: grow every free tree of order <= max_order by
    attaching leaves, deduplicate by canonical code, then filter.
    """
    c = EnumConstraints(pendants=n, reduced=reduced, max_degree=max_degree, max_order=max_order)
    layer = {canonical_code(t): t for t in [build_tree([(0, 1)])]}
    kept = [t for t in layer.values() if c.admits(t)]
    for N in range(3, c.order_cap + 1):
        grown = {}
        for t in layer.values():
            for v in range(t.vertex_count):
                g = build_tree(t.edge_list() + [(v, N - 1)], vertex_count=N)
                # pendant counts never drop as leaves are added
                if g.pendant_count > n:
                    continue
                grown.setdefault(canonical_code(g), g)
        layer = {code: grown[code] for code in sorted(grown)}
        kept.extend(t for t in layer.values() if c.admits(t))
    return kept


# Attached trees
# --------------


def _partitions(m: int, k: int, largest: Optional[int] = None):
    """Non-increasing k-part partitions of m."""
    largest = m if largest is None else largest
    if k == 0:
        if m == 0:
            yield ()
        return
    for x in range(min(m - k + 1, largest), 0, -1):
        if x * k < m:
            break
        for tail in _partitions(m - x, k - 1, x):
            yield (x,) + tail


def enumerate_attached(
    n: int, p: int, max_degree: int = 6, allow_deg2: bool = True, budget=None
) -> List[Tree]:
    """
    All attached trees with `n` pendants below a root of virtual degree `p`.

    Vertex 0 of every returned tree is the root. Degrees are capped at
    `max_degree`; no edge joins two vertices of degree <= 2, with the root
    counted at degree p; degree-2 sub-roots need `allow_deg2`. A single pendant
    below the root is always allowed.
    """
    if n < 1 or p < 1:
        raise ValueError(f"Attached trees need n >= 1 and p >= 1, not n={n}, p={p}")
    budget = _as_budget(budget)
    memo = {}

    def shapes(m, low_parent):
        # rooted shapes as nested sorted tuples; a leaf is ()
        key = (m, low_parent)
        if key in memo:
            return memo[key]
        found = []
        if m == 1 and not low_parent:
            found.append(())
        if allow_deg2 and not low_parent and m >= 2:
            found.extend((child,) for child in shapes(m, True))
        for d in range(3, max_degree + 1):
            for parts in _partitions(m, d - 1):
                choices = []
                for size, count in sorted(Counter(parts).items()):
                    options = shapes(size, False)
                    choices.append(list(combinations_with_replacement(options, count)))
                for combo in product(*choices):
                    children = tuple(sorted(s for group in combo for s in group))
                    budget.spend()
                    found.append(children)
        memo[key] = found
        return found

    tops = [()] if n == 1 else shapes(n, p <= 2)
    trees = []
    for shape in tops:
        edges = []
        stack = [(0, shape)]
        next_id = 1
        while stack:
            parent, node = stack.pop()
            me = next_id
            next_id += 1
            edges.append((parent, me))
            stack.extend((me, child) for child in node)
        trees.append(build_tree(edges, vertex_count=next_id))
    log.debug(f"{len(trees)} attached trees for n={n}, p={p}")
    return trees


def brute_min_attached(
    n: int, p: int, scheme: WeightScheme = M2, max_degree: int = 6, allow_deg2: bool = True
) -> MinimizationResult:
    """Minimum attached cost over `enumerate_attached`, rooted at vertex 0."""
    trees = enumerate_attached(n, p, max_degree=max_degree, allow_deg2=allow_deg2)
    return _minimize(trees, lambda t: attached_cost(t, 0, p, scheme), scheme.name)
