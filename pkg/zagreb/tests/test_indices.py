import json
import math

import pytest
from hypothesis import given, strategies as st

from zagreb import indices
from zagreb.common import SchemeError
from zagreb.families import delta_tree, star
from zagreb.tree import build_tree, random_tree, relabel

from .strategies import trees

K2 = build_tree([(0, 1)])
P3 = build_tree([(0, 1), (1, 2)])


def test_m1():
    assert indices.m1(K2) == 2
    assert indices.m1(P3) == 6
    assert indices.m1(star(4)) == 20


def test_m2(d434):
    assert indices.m2(K2) == 1
    assert indices.m2(star(3)) == 9
    assert indices.m2(d434) == 60
    assert indices.m2(build_tree([], vertex_count=1)) == 0
    assert isinstance(indices.m2(d434), int)


def test_multiplicative_zagreb():
    first = indices.multiplicative_zagreb(star(3), "first")
    assert first.exact == 9
    assert first.log == pytest.approx(2 * math.log(3))
    second = indices.multiplicative_zagreb(star(5), "second")
    assert second.exact == 5**5
    assert second.log == pytest.approx(5 * math.log(5))
    assert indices.multiplicative_zagreb(K2, "second").value == 1
    with pytest.raises(ValueError):
        indices.multiplicative_zagreb(K2, "third")


def test_multiplicative_zagreb_log_space():
    t = random_tree(200, rng=11)
    value = indices.multiplicative_zagreb(t, "second")
    assert value.exact is None
    expected = sum(d * math.log(d) for d in t.degrees)
    assert value.log == pytest.approx(expected, rel=1e-12)


def test_randic():
    t = random_tree(25, rng=5)
    assert indices.randic_zeroth(t, 0) == pytest.approx(t.vertex_count)
    assert indices.randic_zeroth(t, 1) == pytest.approx(2 * (t.vertex_count - 1))
    assert indices.randic_zeroth(t, 2) == pytest.approx(indices.m1(t))
    assert indices.randic_general(t, 1) == pytest.approx(indices.m2(t))
    assert indices.randic_general(star(4), -0.5) == pytest.approx(4 / 2)


@given(trees(), st.data())
def test_indices_are_label_invariant(t, data):
    perm = data.draw(st.permutations(range(t.vertex_count)))
    r = relabel(t, perm)
    assert indices.m1(r) == indices.m1(t)
    assert indices.m2(r) == indices.m2(t)
    assert indices.multiplicative_zagreb(r, "second") == indices.multiplicative_zagreb(
        t, "second"
    )


@given(trees())
def test_abstract_cost_matches_direct(t):
    assert indices.abstract_cost(t, indices.M1) == indices.m1(t)
    assert indices.abstract_cost(t, indices.M2) == indices.m2(t)
    assert indices.abstract_cost(t, indices.M1_PLUS_M2) == indices.m1(t) + indices.m2(t)
    assert indices.abstract_cost(t, indices.PI2) == pytest.approx(
        indices.multiplicative_zagreb(t, "second").log
    )


def test_abstract_cost_sum(d434):
    assert indices.abstract_cost(d434, indices.M1_PLUS_M2) == 122
    assert isinstance(indices.abstract_cost(d434, indices.M2), int)
    assert isinstance(indices.abstract_cost(d434, indices.PI1), float)


class TestSchemes:
    @pytest.mark.parametrize("name", ["m1", "M2", " pi2 ", "m1+m2"])
    def test_fixed_names(self, name):
        assert indices.scheme_from_name(name).name == name.strip().lower()

    def test_randic_names(self):
        w = indices.scheme_from_name("randic0:2")
        assert w.c1(3) == 9.0
        assert w.vertex_only
        w = indices.scheme_from_name("randic:-0.5")
        assert w.c2(4, 1) == pytest.approx(0.5)
        with pytest.raises(SchemeError):
            indices.scheme_from_name("randic0:two")

    def test_unknown(self):
        with pytest.raises(SchemeError):
            indices.scheme_from_name("m3")
        with pytest.raises(SchemeError):
            indices.scheme_from_name("custom")

    def test_degree_range(self):
        with pytest.raises(SchemeError):
            indices.M2.c1(65)
        with pytest.raises(SchemeError):
            indices.WeightScheme("too-wide", max_degree=1000)

    def test_edge_cost_symmetric(self):
        w = indices.WeightScheme("ordered", edge_cost=lambda a, b: 10 * a + b)
        assert w.c2(5, 2) == w.c2(2, 5) == 25


class TestCustomScheme:
    @pytest.fixture
    def squares(self, tmp_path):
        fname = tmp_path / "squares.json"
        fname.write_text(json.dumps({"vertex": [d * d for d in range(7)]}))
        return fname

    def test_custom_m1(self, squares, d434):
        w = indices.scheme_from_name("custom", custom_file=squares)
        assert w.integer
        assert w.max_degree == 6
        assert indices.abstract_cost(d434, w) == indices.m1(d434)

    def test_degree_beyond_table(self, squares):
        w = indices.load_custom_scheme(squares)
        with pytest.raises(SchemeError):
            indices.abstract_cost(star(7), w)

    @pytest.mark.parametrize(
        "data",
        [
            {},
            {"edge": [[0, 1], [2, 0]]},
            {"edge": [[0, 1, 2], [1, 0]]},
            {"vertex": [0, -1, 4]},
        ],
    )
    def test_invalid_tables(self, tmp_path, data):
        fname = tmp_path / "bad.json"
        fname.write_text(json.dumps(data))
        with pytest.raises(SchemeError):
            indices.load_custom_scheme(fname)

    def test_edge_table(self, tmp_path):
        fname = tmp_path / "products.json"
        table = [[a * b for b in range(9)] for a in range(9)]
        fname.write_text(json.dumps({"edge": table}))
        w = indices.load_custom_scheme(fname)
        t = delta_tree(4, 10)
        assert indices.abstract_cost(t, w) == indices.m2(t)
