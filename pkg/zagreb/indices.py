"""
Degree-based topological indices of trees.

Integer-valued indices (M1, M2, their sum) are computed in exact integer
arithmetic; real-valued ones in double precision. The multiplicative Zagreb
indices are always available in log-space and additionally as exact integers
for trees with at most `LOG_SPACE_THRESHOLD` vertices.

Any index of the form

    C(T) = sum_v c1(d(v)) + sum_{uv} c2(d(u), d(v))

can be evaluated with `abstract_cost` and a `WeightScheme`; the named schemes
below are the ones the CLI understands.
"""

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np

from .common import SchemeError
from .config import LOG_SPACE_THRESHOLD, MAX_SCHEME_DEGREE, RELATIVE_TOLERANCE
from .tree import Tree

log = logging.getLogger(__name__)

SCHEME_NAMES = ("m1", "m2", "pi1", "pi2", "randic0:<alpha>", "randic:<alpha>", "m1+m2", "custom")


class WeightScheme(object):
    """
    Vertex cost c1(d) and symmetric edge cost c2(d, d') of an abstract
    degree-based index.

    Parameters
    ----------
    name : str
        Display name (the CLI name for built-in schemes).
    vertex_cost : callable, optional
        c1(d); omitted means c1 = 0.
    edge_cost : callable, optional
        c2(a, b); omitted means c2 = 0. Always called with a <= b, which makes
        every closure-backed scheme symmetric.
    integer : bool, optional
        Costs are integers, so sums are exact.
    log_space : bool, optional
        Costs are logarithms of a multiplicative index.
    max_degree : int, optional
        Highest degree the scheme may be queried at.
    """

    def __init__(
        self,
        name: str,
        vertex_cost: Optional[Callable[[int], float]] = None,
        edge_cost: Optional[Callable[[int, int], float]] = None,
        integer: bool = False,
        log_space: bool = False,
        max_degree: int = MAX_SCHEME_DEGREE,
    ):
        if max_degree > MAX_SCHEME_DEGREE:
            raise SchemeError(
                f"max_degree {max_degree} above the supported cap {MAX_SCHEME_DEGREE}"
            )
        self.name = name
        self.vertex_cost = vertex_cost
        self.edge_cost = edge_cost
        self.integer = integer
        self.log_space = log_space
        self.max_degree = max_degree

    @property
    def vertex_only(self) -> bool:
        return self.edge_cost is None

    def _check(self, d):
        if not 0 <= d <= self.max_degree:
            raise SchemeError(
                f"Scheme {self.name!r} is not defined at degree {d} "
                f"(supported 0..{self.max_degree})"
            )

    def c1(self, d: int):
        self._check(d)
        if self.vertex_cost is None:
            return 0
        return self.vertex_cost(d)

    def c2(self, a: int, b: int):
        self._check(a)
        self._check(b)
        if self.edge_cost is None:
            return 0
        if a > b:
            a, b = b, a
        return self.edge_cost(a, b)

    def __repr__(self):
        return f"WeightScheme({self.name!r})"


def _xlogx(d):
    return d * math.log(d) if d > 0 else 0.0


def _log(d):
    return math.log(d) if d > 0 else -math.inf


M1 = WeightScheme("m1", vertex_cost=lambda d: d * d, integer=True)
M2 = WeightScheme("m2", edge_cost=lambda a, b: a * b, integer=True)
M1_PLUS_M2 = WeightScheme(
    "m1+m2", vertex_cost=lambda d: d * d, edge_cost=lambda a, b: a * b, integer=True
)
PI1 = WeightScheme("pi1", vertex_cost=lambda d: 2 * _log(d), log_space=True)
# ln Pi2 = sum_v d ln d on trees
PI2 = WeightScheme("pi2", vertex_cost=_xlogx, log_space=True)


def randic_zeroth_scheme(alpha: float) -> WeightScheme:
    return WeightScheme(f"randic0:{alpha:g}", vertex_cost=lambda d: float(d) ** alpha)


def randic_general_scheme(alpha: float) -> WeightScheme:
    return WeightScheme(
        f"randic:{alpha:g}", edge_cost=lambda a, b: float(a * b) ** alpha
    )


def load_custom_scheme(scheme_file: Union[str, Path]) -> WeightScheme:
    """
    Load tabulated costs from JSON.

    The file holds ``{"vertex": [c1(0), c1(1), ...], "edge": [[c2(0, 0), ...], ...]}``;
    either key may be omitted. The edge matrix must be square and symmetric.
    Degrees beyond the tables raise `SchemeError` when queried.
    """
    with open(scheme_file) as f:
        data = json.load(f)
    vertex = data.get("vertex")
    edge = data.get("edge")
    if vertex is None and edge is None:
        raise SchemeError(f"{Path(scheme_file).name} defines neither 'vertex' nor 'edge'")

    if edge is not None:
        size = len(edge)
        if any(len(row) != size for row in edge):
            raise SchemeError("Edge cost table must be a square matrix")
        for a in range(size):
            for b in range(a + 1, size):
                if edge[a][b] != edge[b][a]:
                    raise SchemeError(f"Edge cost table is not symmetric at ({a}, {b})")

    values = list(vertex or []) + [x for row in edge or [] for x in row]
    if any(not isinstance(x, (int, float)) or x < 0 for x in values):
        raise SchemeError("Custom costs must be non-negative numbers")
    integer = all(isinstance(x, int) for x in values)

    sizes = [len(t) for t in (vertex, edge) if t is not None]
    max_degree = min(min(sizes) - 1, MAX_SCHEME_DEGREE)

    def table_lookup(table, *idx):
        try:
            value = table
            for i in idx:
                value = value[i]
        except IndexError:
            raise SchemeError(f"Custom scheme has no entry for degree(s) {idx}")
        return value

    log.info(f"Loaded custom scheme from {Path(scheme_file).name}, degrees 0..{max_degree}")
    return WeightScheme(
        "custom",
        vertex_cost=(lambda d: table_lookup(vertex, d)) if vertex is not None else None,
        edge_cost=(lambda a, b: table_lookup(edge, a, b)) if edge is not None else None,
        integer=integer,
        max_degree=max_degree,
    )


def scheme_from_name(name: str, custom_file=None) -> WeightScheme:
    """
    Resolve a scheme name string.

    Parameters
    ----------
    name : str
        One of "m1", "m2", "pi1", "pi2", "randic0:<alpha>", "randic:<alpha>",
        "m1+m2" or "custom".
    custom_file : str or Path, optional
        JSON table file, required for "custom".
    """
    fixed = {"m1": M1, "m2": M2, "m1+m2": M1_PLUS_M2, "pi1": PI1, "pi2": PI2}
    key = name.strip().lower()
    if key in fixed:
        return fixed[key]
    if key.startswith(("randic0:", "randic:")):
        prefix, _, alpha = key.partition(":")
        try:
            alpha = float(alpha)
        except ValueError:
            raise SchemeError(f"Bad exponent in scheme name {name!r}")
        if prefix == "randic0":
            return randic_zeroth_scheme(alpha)
        return randic_general_scheme(alpha)
    if key == "custom":
        if custom_file is None:
            raise SchemeError("The 'custom' scheme needs a JSON cost file")
        return load_custom_scheme(custom_file)
    raise SchemeError(f"Unknown scheme {name!r}; expected one of {SCHEME_NAMES}")


# Indices
# -------


def m1(t: Tree) -> int:
    """First Zagreb index, sum of squared degrees."""
    return int(np.sum(t.degrees**2))


def m2(t: Tree) -> int:
    """Second Zagreb index, sum over edges of degree products."""
    if t.vertex_count < 2:
        return 0
    d = t.degrees
    return int(np.sum(d[t.edges[:, 0]] * d[t.edges[:, 1]]))


@dataclass(frozen=True)
class MultiplicativeValue:
    """
    A multiplicative index as its natural logarithm, plus the exact integer when
    the tree is small enough for it to be worth carrying.
    """

    log: float
    exact: Optional[int] = None

    @property
    def value(self):
        return self.exact if self.exact is not None else math.exp(self.log)


def multiplicative_zagreb(t: Tree, which: str = "first") -> MultiplicativeValue:
    """
    First or second multiplicative Zagreb index.

    Pi1 = prod_v d(v)^2 and Pi2 = prod_{uv} d(u) d(v). For the second index the
    tree identity Pi2 = prod_v d(v)^d(v) is checked on the way out.

    Parameters
    ----------
    t : Tree
    which : {"first", "second"}

    Returns
    -------
    MultiplicativeValue
        ``exact`` is None when the tree has more than LOG_SPACE_THRESHOLD
        vertices.
    """
    if which not in ("first", "second"):
        raise ValueError(f"which must be 'first' or 'second', not {which!r}")
    degrees = [int(d) for d in t.degrees]
    small = t.vertex_count <= LOG_SPACE_THRESHOLD

    if which == "first":
        log_value = math.fsum(2 * _log(d) for d in degrees)
        exact = math.prod(d * d for d in degrees) if small else None
        return MultiplicativeValue(log=log_value, exact=exact)

    pairs = [(degrees[u], degrees[v]) for u, v in t.edge_list()]
    log_value = math.fsum(_log(a) + _log(b) for a, b in pairs)
    log_identity = math.fsum(_xlogx(d) for d in degrees)
    exact = None
    if small:
        exact = math.prod(a * b for a, b in pairs)
        assert exact == math.prod(d**d for d in degrees), "Pi2 tree identity violated"
    else:
        assert math.isclose(
            log_value, log_identity, rel_tol=RELATIVE_TOLERANCE, abs_tol=1e-9
        ), "Pi2 tree identity violated"
    return MultiplicativeValue(log=log_value, exact=exact)


def randic_zeroth(t: Tree, alpha: float) -> float:
    """Zeroth-order general Randić index, sum_v d(v)^alpha."""
    return float(np.sum(t.degrees.astype(float) ** alpha))


def randic_general(t: Tree, alpha: float) -> float:
    """General Randić index, sum_{uv} (d(u) d(v))^alpha."""
    if t.vertex_count < 2:
        return 0.0
    d = t.degrees.astype(float)
    return float(np.sum((d[t.edges[:, 0]] * d[t.edges[:, 1]]) ** alpha))


def abstract_cost(t: Tree, w: WeightScheme):
    """
    Evaluate C(T) = sum_v c1(d(v)) + sum_{uv} c2(d(u), d(v)).

    Costs are evaluated once per distinct degree and degree pair. The result is
    an int for integer schemes and a float otherwise.

    Raises
    ------
    SchemeError
        The scheme is undefined at a degree present in `t`.
    """
    degrees = [int(d) for d in t.degrees]
    vertex_counts = Counter(degrees)
    edge_counts = Counter(
        (min(degrees[u], degrees[v]), max(degrees[u], degrees[v]))
        for u, v in t.edge_list()
    )
    terms = [count * w.c1(d) for d, count in sorted(vertex_counts.items())]
    terms += [count * w.c2(a, b) for (a, b), count in sorted(edge_counts.items())]
    if w.integer:
        return int(sum(terms))
    return math.fsum(terms)
