import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from zagreb.common import (
    CycleError,
    DisconnectedTreeError,
    DuplicateEdgeError,
    SelfLoopError,
    TreeTooLargeError,
    VertexRangeError,
)
from zagreb.config import MAX_VERTICES
from zagreb.tree import (
    build_tree,
    canonical_code,
    centers,
    degree_summary,
    from_networkx,
    random_permutation,
    random_tree,
    relabel,
    to_networkx,
)

from .strategies import trees

P4 = [(0, 1), (1, 2), (2, 3)]
CLAW = [(0, 1), (0, 2), (0, 3)]


def test_build_tree():
    t = build_tree(CLAW)
    assert t.vertex_count == 4
    assert t.pendant_count == 3
    assert t.pendants == (1, 2, 3)
    assert t.internal_vertices == (0,)
    np.testing.assert_array_equal(t.degrees, [3, 1, 1, 1])
    assert t.edge_list() == CLAW

    k2 = build_tree([(1, 0)])
    assert k2.edge_list() == [(0, 1)]
    assert k2.pendant_count == 2


def test_tree_is_immutable():
    t = build_tree(P4)
    with pytest.raises(ValueError):
        t.degrees[0] = 5
    with pytest.raises(AttributeError):
        t.foo = 1


@pytest.mark.parametrize(
    "edges, kwargs, error",
    [
        ([(0, 1), (1, 2), (2, 0)], {}, CycleError),
        ([(0, 1), (1, 0)], {}, DuplicateEdgeError),
        ([(0, 0)], {}, SelfLoopError),
        ([(0, 1), (2, 3)], {}, DisconnectedTreeError),
        ([(0, 5)], {"vertex_count": 3}, VertexRangeError),
        ([(-1, 0)], {}, VertexRangeError),
        ([], {"vertex_count": MAX_VERTICES + 1}, TreeTooLargeError),
    ],
)
def test_build_tree_errors(edges, kwargs, error):
    with pytest.raises(error):
        build_tree(edges, **kwargs)


def test_degree_summary(d434):
    s = degree_summary(build_tree(P4))
    assert (s.n, s.q, s.internal_degrees) == (2, 2, (2, 2))
    s = degree_summary(d434)
    assert (s.n, s.q) == (8, 3)
    assert sorted(s.internal_degrees) == [2, 5, 5]
    s = degree_summary(build_tree([(0, i) for i in range(1, 5)]))
    assert (s.n, s.q, s.internal_degrees) == (4, 1, (4,))


@given(trees(min_vertices=3))
def test_degree_identity(t):
    s = degree_summary(t)
    assert s.n + s.q == t.vertex_count
    assert 2 * (t.vertex_count - 1) == int(t.degrees.sum())
    if s.n > 2:
        assert s.n - 2 == sum(d - 2 for d in s.internal_degrees)


def test_centers():
    assert centers(build_tree(P4)) == (1, 2)
    assert centers(build_tree(CLAW)) == (0,)
    assert centers(build_tree([(0, 1)])) == (0, 1)
    assert centers(build_tree([], vertex_count=1)) == (0,)


@given(trees(), st.randoms(use_true_random=False))
def test_canonical_code_is_label_invariant(t, random):
    perm = list(range(t.vertex_count))
    random.shuffle(perm)
    assert canonical_code(relabel(t, perm)) == canonical_code(t)


def test_canonical_code_many_relabelings(random_corpus):
    rng = np.random.default_rng(7)
    for t in random_corpus[:25]:
        code = canonical_code(t)
        for _ in range(100):
            assert canonical_code(random_permutation(t, rng)) == code


@pytest.mark.slow
def test_canonical_code_many_relabelings_full_corpus(random_corpus):
    rng = np.random.default_rng(8)
    for t in random_corpus:
        code = canonical_code(t)
        for _ in range(100):
            assert canonical_code(random_permutation(t, rng)) == code


def test_canonical_code_separates():
    assert canonical_code(build_tree(P4)) != canonical_code(build_tree(CLAW))
    # same degree sequence, different trees
    c = build_tree([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (4, 7)])
    d = build_tree([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (3, 7)])
    assert sorted(c.degrees) == sorted(d.degrees)
    assert canonical_code(c) != canonical_code(d)


def test_canonical_code_matches_networkx(random_corpus):
    small = [t for t in random_corpus if t.vertex_count <= 9]
    for a, b in itertools.combinations(small, 2):
        if a.vertex_count != b.vertex_count:
            continue
        same = nx.is_isomorphic(to_networkx(a), to_networkx(b))
        assert (canonical_code(a) == canonical_code(b)) == same


def test_relabel():
    t = build_tree(P4)
    r = relabel(t, [3, 2, 1, 0])
    assert r == t
    r = relabel(t, [1, 0, 2, 3])
    assert r.edge_list() == [(0, 1), (0, 2), (2, 3)]
    with pytest.raises(ValueError):
        relabel(t, [0, 0, 1, 2])


def test_random_tree():
    rng = np.random.default_rng(7)
    for N in (1, 2, 3, 17):
        assert random_tree(N, rng).vertex_count == N
    assert random_tree(12, rng=3) == random_tree(12, rng=3)
    with pytest.raises(ValueError):
        random_tree(0)


@given(trees())
def test_networkx_round_trip(t):
    G = to_networkx(t)
    assert nx.is_tree(G)
    assert from_networkx(G) == t
    assert canonical_code(random_permutation(t, rng=1)) == canonical_code(t)
