"""
M2-decreasing tree transformations with exact predicted deltas, and a local
search built from them.

contract_degree2
    Delete a degree-2 vertex v' between v and v'' and join v to v''. M2 changes
    by d d'' - 2d - 2d'', negative whenever d <= 2 or d'' <= 2.

split_high_degree
    For a vertex v of degree p >= 5 with neighbors ordered by degree
    d_1 >= d_2 >= ..., keep d_1..d_3 on v, hang a new degree-2 vertex v' on v
    and move neighbors 4..p onto a new vertex v'' adjacent to v'. M2 changes by

        2p + 4 - 2 sum_{i>=4} d_i - (p - 4) sum_{i<=3} d_i

    which is negative for p >= 7 when d_1 >= 2.

Both moves keep the pendant count.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .common import MoveError
from .indices import m2
from .tree import Tree, build_tree

log = logging.getLogger(__name__)

CONTRACT = "contract_degree2"
SPLIT = "split_high_degree"


@dataclass(frozen=True)
class Move:
    """A transformation applied at `vertex`, with its predicted M2 change."""

    kind: str
    vertex: int
    predicted_delta: int


def contract_delta(t: Tree, v_prime: int) -> int:
    v, v2 = t.neighbors(v_prime)
    d, d2 = t.degree(v), t.degree(v2)
    return d * d2 - 2 * d - 2 * d2


def contract_degree2(t: Tree, v_prime: int, relaxed: bool = False) -> Tuple[Tree, Move]:
    """
    Contract the degree-2 vertex `v_prime`. Vertex ids above it shift down by one.

    Parameters
    ----------
    t : Tree
    v_prime : int
        Vertex of degree 2.
    relaxed : bool, optional
        Allow the move when neither neighbor has degree <= 2 (the delta is exact
        either way, but then it is no longer improving).

    Raises
    ------
    MoveError
        `v_prime` does not have degree 2, or the strict precondition fails.
    """
    if not 0 <= v_prime < t.vertex_count:
        raise MoveError(f"No vertex {v_prime} in a tree on {t.vertex_count} vertices")
    if t.degree(v_prime) != 2:
        raise MoveError(f"Vertex {v_prime} has degree {t.degree(v_prime)}, not 2")
    v, v2 = t.neighbors(v_prime)
    if not relaxed and min(t.degree(v), t.degree(v2)) > 2:
        raise MoveError(
            f"Vertex {v_prime} has no neighbor of degree <= 2; pass relaxed=True to contract anyway"
        )
    delta = contract_delta(t, v_prime)

    def shift(u):
        return u - 1 if u > v_prime else u

    edges = [(shift(a), shift(b)) for a, b in t.edge_list() if v_prime not in (a, b)]
    edges.append((shift(v), shift(v2)))
    result = build_tree(edges, vertex_count=t.vertex_count - 1)
    return result, Move(CONTRACT, v_prime, delta)


def _split_order(t: Tree, v: int):
    return sorted(t.neighbors(v), key=lambda u: (-t.degree(u), u))


def split_delta(t: Tree, v: int) -> int:
    p = t.degree(v)
    degrees = [t.degree(u) for u in _split_order(t, v)]
    return 2 * p + 4 - 2 * sum(degrees[3:]) - (p - 4) * sum(degrees[:3])


def split_high_degree(t: Tree, v: int) -> Tuple[Tree, Move]:
    """
    Split the vertex `v` of degree p >= 5. The new vertices get ids N (degree
    2) and N + 1 (degree p - 2).

    Neighbors are ranked by degree, descending, ties by id; the top three stay
    on `v`.

    Raises
    ------
    MoveError
        `v` has degree below 5.
    """
    if not 0 <= v < t.vertex_count:
        raise MoveError(f"No vertex {v} in a tree on {t.vertex_count} vertices")
    p = t.degree(v)
    if p < 5:
        raise MoveError(f"Vertex {v} has degree {p}; splitting needs degree >= 5")
    N = t.vertex_count
    v1, v2 = N, N + 1
    moved = set(_split_order(t, v)[3:])
    edges = []
    for a, b in t.edge_list():
        if a == v and b in moved:
            edges.append((v2, b))
        elif b == v and a in moved:
            edges.append((a, v2))
        else:
            edges.append((a, b))
    edges += [(v, v1), (v1, v2)]
    result = build_tree(edges, vertex_count=N + 2)
    return result, Move(SPLIT, v, split_delta(t, v))


def _first_improving_move(t: Tree) -> Optional[Move]:
    for v in range(t.vertex_count):
        if t.degree(v) == 2:
            delta = contract_delta(t, v)
            if delta < 0:
                return Move(CONTRACT, v, delta)
    for v in range(t.vertex_count):
        if t.degree(v) >= 5:
            delta = split_delta(t, v)
            if delta < 0:
                return Move(SPLIT, v, delta)
    return None


def apply_move(t: Tree, move: Move) -> Tree:
    if move.kind == CONTRACT:
        return contract_degree2(t, move.vertex, relaxed=True)[0]
    if move.kind == SPLIT:
        return split_high_degree(t, move.vertex)[0]
    raise MoveError(f"Unknown move kind {move.kind!r}")


def iter_local_search(t: Tree, max_steps: Optional[int] = None) -> Iterator[dict]:
    """
    Apply strictly improving moves until none is left, yielding one step
    record per move: ``{step, move, vertex, delta, m2, tree}``.

    Contracts are tried before splits, each over vertices in ascending id
    order; the first improving move is applied. M2 drops by at least one per
    step, so the search terminates.
    """
    current = t
    value = m2(current)
    step = 0
    while max_steps is None or step < max_steps:
        move = _first_improving_move(current)
        if move is None:
            break
        current = apply_move(current, move)
        new_value = m2(current)
        assert new_value - value == move.predicted_delta, (
            f"{move.kind} at {move.vertex}: predicted {move.predicted_delta}, "
            f"observed {new_value - value}"
        )
        value = new_value
        step += 1
        log.debug(f"step {step}: {move.kind} at {move.vertex}, M2 -> {value}")
        yield dict(
            step=step,
            move=move.kind,
            vertex=move.vertex,
            delta=move.predicted_delta,
            m2=value,
            tree=current,
        )


def local_search(t: Tree, index: str = "m2", max_steps: Optional[int] = None) -> Tree:
    """Local optimum of M2 reached from `t` by `iter_local_search`."""
    if index.lower() != "m2":
        raise ValueError(f"Local search moves are defined for m2 only, not {index!r}")
    result = t
    for step in iter_local_search(t, max_steps=max_steps):
        result = step["tree"]
    return result
