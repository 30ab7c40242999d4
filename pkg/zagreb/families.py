"""
Constructors and closed-form index values for the extremal tree families:
stars, two-sided brooms D(a;m;b), Δ-trees and their bidegree perturbation, and
T45 trees (stems of degree 4 or 5 hung on a 3-tree).

Every constructor builds a concrete `Tree`; `closed_form` returns the stored
formula for a (family, index) pair, which the tests hold equal to the index
recomputed from the tree.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .common import ClosedFormNotFoundError, FamilyParamsError
from .tree import Tree, build_tree

log = logging.getLogger(__name__)


def _require(condition, msg):
    if not condition:
        raise FamilyParamsError(msg)


def star(n: int) -> Tree:
    """
    Star K_{1,n}: one hub of degree n and n pendants. ``star(1)`` is K_2.
    """
    _require(n >= 1, f"star needs n >= 1, not {n}")
    return build_tree([(0, i) for i in range(1, n + 1)])


def caterpillar(spine_degrees: Sequence[int]) -> Tree:
    """
    Caterpillar whose spine vertices 0..k-1 have the given degrees; every
    remaining slot is filled with a pendant.

    Parameters
    ----------
    spine_degrees : sequence of int
        Degree of each spine vertex, in path order. End vertices need at least
        degree 2 (degree 1 for a one-vertex spine), middle ones at least 2.
    """
    k = len(spine_degrees)
    _require(k >= 1, "caterpillar needs at least one spine vertex")
    edges = [(i, i + 1) for i in range(k - 1)]
    next_id = k
    for i, d in enumerate(spine_degrees):
        spine_nbrs = (i > 0) + (i < k - 1)
        free = d - spine_nbrs
        _require(free >= 0, f"spine vertex {i} cannot have degree {d}")
        for _ in range(free):
            edges.append((i, next_id))
            next_id += 1
    return build_tree(edges, vertex_count=next_id)


def double_broom(a: int, m: int, b: int) -> Tree:
    """
    Two-sided broom D(a;m;b).

    A path of `m` internal vertices carries `a` pendants on its first vertex and
    `b` on its last, so the tree has n = a + b pendants and a + b + m vertices.
    D(4;3;4) is the eight-pendant tree with M2 = 60.
    """
    _require(a >= 1 and b >= 1, f"double_broom needs a, b >= 1, not a={a}, b={b}")
    _require(m >= 2, f"double_broom needs m >= 2 path vertices, not {m}")
    return caterpillar([a + 1] + [2] * (m - 2) + [b + 1])


def delta_tree(delta: int, n: int) -> Tree:
    """
    Tree with `n` pendants whose q = (n-2)/(delta-2) internal vertices all have
    degree `delta`, laid out as a caterpillar.
    """
    _require(delta >= 3, f"delta_tree needs delta >= 3, not {delta}")
    _require(
        n > 2 and (n - 2) % (delta - 2) == 0,
        f"n - 2 = {n - 2} must be a positive multiple of delta - 2 = {delta - 2}",
    )
    q = (n - 2) // (delta - 2)
    return caterpillar([delta] * q)


def bidegree_tree(delta: int, n: int) -> Tree:
    """
    Δ-tree perturbed by one vertex of degree 2 + r, r = (n-2) mod (delta-2).

    All other internal vertices have degree `delta`. With r = 0 this is
    `delta_tree`; with delta = 4 and odd n it is the M1-optimal tree (9n - 15).
    """
    _require(delta >= 3, f"bidegree_tree needs delta >= 3, not {delta}")
    _require(n >= 3, f"bidegree_tree needs n >= 3, not {n}")
    q, r = divmod(n - 2, delta - 2)
    degrees = [delta] * q + ([2 + r] if r else [])
    return caterpillar(degrees)


def _three_tree_skeleton(k: int, rng=None) -> List[List[int]]:
    """
    Adjacency of a tree with k leaves whose internal vertices all have degree 3.

    Without `rng` the caterpillar with k - 2 centers is returned; with one,
    leaves of K_{1,3} are split at random until there are k of them.
    """
    if rng is None:
        t = caterpillar([3] * (k - 2))
        return [list(nbrs) for nbrs in t.adjacency]

    adjacency = [[1, 2, 3], [0], [0], [0]]
    while sum(len(nbrs) == 1 for nbrs in adjacency) < k:
        leaves = [v for v, nbrs in enumerate(adjacency) if len(nbrs) == 1]
        v = leaves[int(rng.integers(len(leaves)))]
        for _ in range(2):
            adjacency.append([v])
            adjacency[v].append(len(adjacency) - 1)
    return adjacency


def t45(s4: int, s5: int, rng=None) -> Tree:
    """
    T45 tree with `s4` stems of degree 4 and `s5` stems of degree 5.

    The stems are the leaves of a 3-tree with s4 + s5 leaves; a degree-4 stem
    carries 3 pendants and a degree-5 stem 4, so n = 3 s4 + 4 s5 and
    M2 = 33 s4 + 44 s5 - 27.

    Edges at degree-5 stems number 4 s5 (a published count of 3 s4 is a
    typo and does not add up to this M2).

    Parameters
    ----------
    s4, s5 : int
        Stem counts, s4 + s5 >= 3.
    rng : np.random.Generator or int, optional
        When given, the 3-tree skeleton and the order of stem degrees are
        random instead of the caterpillar layout.
    """
    _require(s4 >= 0 and s5 >= 0, f"t45 needs s4, s5 >= 0, not s4={s4}, s5={s5}")
    _require(s4 + s5 >= 3, f"t45 needs s4 + s5 >= 3, not {s4 + s5}")
    k = s4 + s5
    if rng is not None:
        rng = np.random.default_rng(rng)
    adjacency = _three_tree_skeleton(k, rng)

    stems = [v for v, nbrs in enumerate(adjacency) if len(nbrs) == 1]
    pendant_counts = [3] * s4 + [4] * s5
    if rng is not None:
        pendant_counts = [int(c) for c in rng.permutation(pendant_counts)]

    edges = [(u, v) for u, nbrs in enumerate(adjacency) for v in nbrs if u < v]
    next_id = len(adjacency)
    for stem, count in zip(stems, pendant_counts):
        for _ in range(count):
            edges.append((stem, next_id))
            next_id += 1
    return build_tree(edges, vertex_count=next_id)


def t45_for_pendants(n: int):
    """
    Stem counts (s4, s5) with 3 s4 + 4 s5 = n and s4 + s5 >= 3, taking s4 as
    large as possible. Defined for every n >= 9.
    """
    for s4 in range(n // 3, -1, -1):
        rest = n - 3 * s4
        if rest % 4 == 0 and s4 + rest // 4 >= 3:
            return s4, rest // 4
    raise FamilyParamsError(f"No T45 tree has {n} pendants")


# Family registry
# ---------------

FAMILY_PARAMS = {
    "star": ("n",),
    "double_broom": ("a", "m", "b"),
    "delta_tree": ("delta", "n"),
    "bidegree_tree": ("delta", "n"),
    "t45": ("s4", "s5"),
    "broom_attached": ("n", "p"),
}


def _double_broom_m2(a, m, b):
    if m == 2:
        return a * (a + 1) + b * (b + 1) + (a + 1) * (b + 1)
    return a * (a + 1) + b * (b + 1) + 2 * (a + 1) + 2 * (b + 1) + 4 * (m - 3)


def _bidegree_m1(delta, n):
    q, r = divmod(n - 2, delta - 2)
    return n + q * delta**2 + ((2 + r) ** 2 if r else 0)


CLOSED_FORMS = {
    ("star", "m1"): lambda n: n * (n + 1),
    ("star", "m2"): lambda n: n * n,
    ("double_broom", "m2"): _double_broom_m2,
    ("delta_tree", "m1"): lambda delta, n: n + (n - 2) // (delta - 2) * delta**2,
    ("bidegree_tree", "m1"): _bidegree_m1,
    ("t45", "m2"): lambda s4, s5: 33 * s4 + 44 * s5 - 27,
}


@dataclass(frozen=True)
class FamilyParams:
    """
    A family name plus its integer parameters.

    Examples
    --------
    >>> FamilyParams.from_string("double_broom", "a=4,m=3,b=4").build().vertex_count
    11
    """

    family: str
    params: Dict[str, int] = field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILY_PARAMS:
            raise FamilyParamsError(
                f"Unknown family {self.family!r}; expected one of {sorted(FAMILY_PARAMS)}"
            )
        expected = set(FAMILY_PARAMS[self.family])
        if set(self.params) != expected:
            raise FamilyParamsError(
                f"{self.family} takes parameters {sorted(expected)}, got {sorted(self.params)}"
            )

    @classmethod
    def from_string(cls, family: str, text: str, seed: Optional[int] = None):
        """Parse ``k=v,k=v`` parameter text."""
        params = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                raise FamilyParamsError(f"Expected key=value, got {item!r}")
            try:
                params[key.strip()] = int(value)
            except ValueError:
                raise FamilyParamsError(f"Parameter {key.strip()!r} must be an integer")
        return cls(family=family, params=params, seed=seed)

    def build(self) -> Tree:
        p = self.params
        if self.family == "star":
            return star(p["n"])
        if self.family == "double_broom":
            return double_broom(p["a"], p["m"], p["b"])
        if self.family == "delta_tree":
            return delta_tree(p["delta"], p["n"])
        if self.family == "bidegree_tree":
            return bidegree_tree(p["delta"], p["n"])
        if self.family == "t45":
            return t45(p["s4"], p["s5"], rng=self.seed)
        # broom_attached
        from .dp_solver import attached_broom

        return attached_broom(p["n"], p["p"]).tree


def closed_form(params: FamilyParams, index: str) -> int:
    """
    Stored closed-form value of `index` on the family instance.

    Raises
    ------
    ClosedFormNotFoundError
        No formula is stored for (family, index).
    """
    key = (params.family, index.lower())
    if key not in CLOSED_FORMS:
        raise ClosedFormNotFoundError(f"No closed form stored for {key}")
    # validates the parameters the same way the constructor does
    params.build()
    order = FAMILY_PARAMS[params.family]
    return CLOSED_FORMS[key](*(params.params[k] for k in order))
