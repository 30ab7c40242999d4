import logging
import math

import numpy as np
import pandas as pd
import pytest

from zagreb import bounds, dp_solver
from zagreb.common import DegreeCapError, SchemeError
from zagreb.families import bidegree_tree, delta_tree
from zagreb.indices import M1, M2, PI2, m1, m2, multiplicative_zagreb, randic_zeroth_scheme
from zagreb.io import read_graph6
from zagreb.tree import build_tree

from .strategies import random_tree_with_pendants


def test_m2_bound(caplog):
    assert bounds.m2_bound(9) == 72
    assert bounds.m2_bound(10) == 83
    with caplog.at_level(logging.WARNING, logger="zagreb"):
        assert bounds.m2_bound(8) == 61
    assert "outside the proven range" in caplog.text


def test_m1_bound():
    assert bounds.m1_bound(2) == 2
    assert bounds.m1_bound(6) == 38
    assert bounds.m1_bound(7) == 48
    with pytest.raises(ValueError):
        bounds.m1_bound(1)


@pytest.mark.parametrize("n", range(3, 40))
def test_m1_bound_attained(n):
    assert m1(bidegree_tree(4, n)) == bounds.m1_bound(n)


def test_sum_bound():
    assert bounds.sum_bound(6) == pytest.approx(76.0)
    assert bounds.sum_bound(9) == pytest.approx(137.0)


class TestAttachedBound:
    @pytest.mark.parametrize(
        "n, p, value",
        [(1, 4, 4), (4, 5, 40), (3, 6, 32), (4, 6, 42), (5, 6, 54), (10, 3, 101), (2, 3, 13)],
    )
    def test_values(self, n, p, value):
        assert bounds.ca_lower_bound(n, p) == value

    @pytest.mark.parametrize("p", [2, 7])
    def test_degree_range(self, p):
        with pytest.raises(DegreeCapError):
            bounds.ca_lower_bound(3, p)

    def test_below_optimum(self):
        for n in range(1, 26):
            for p in range(3, 7):
                optimum = dp_solver.solve_ca(n, p).cost
                lower = bounds.ca_lower_bound(n, p)
                assert optimum >= lower, (n, p)
                if n == 1 or (n, p) in bounds.CA_EXCEPTIONS:
                    assert optimum == lower, (n, p)
                assert optimum <= bounds.attached_star_cost(n, p)

    def test_attached_star_cost(self):
        for n in range(1, 10):
            # root hung directly on a hub carrying n pendants
            t = build_tree([(0, 1)] + [(1, i) for i in range(2, n + 2)])
            assert dp_solver.attached_cost(t, 0, 3) == bounds.attached_star_cost(n, 3)


def test_ca_induction():
    report = bounds.verify_ca_induction(25)
    assert report.ok
    assert report.n_range == (2, 100)
    frame = report.to_frame()
    assert set(frame.columns) >= {"n", "p", "d", "branch", "left", "bound", "satisfied"}
    large = frame[frame.n >= bounds.LARGE_N]
    assert sorted(large.n.unique()) == [26, 50, 100]
    assert (large.left == large.closed_form).all()

    window = bounds.verify_ca_induction(12, samples=(), n_min=10)
    assert window.ok
    assert window.n_range == (10, 12)
    assert sorted(window.to_frame().n.unique()) == [10, 11, 12]
    with pytest.raises(ValueError):
        bounds.verify_ca_induction(5, n_min=8)


def test_induction_sides_by_hand():
    conv = bounds._bound_convolution(3, 10)
    # two children of 2 pendants under a degree-3 sub-root: 13 + 13
    assert conv[(2, 4)] == min(
        bounds.ca_lower_bound(a, 3) + bounds.ca_lower_bound(4 - a, 3) for a in (1, 2, 3)
    )
    gt2, deg2 = bounds.induction_sides(4, 5, 3, conv)
    assert gt2 - deg2 == 5 * 3 - 10 - 6


class TestGeneralBound:
    def test_m1(self):
        result = bounds.general_lower_bound(M1, 10)
        assert result.delta_n == 4
        assert result.bound == 74
        assert bounds.general_lower_bound(lambda d: d * d, 10) == result

    def test_pi2(self):
        for n in (5, 8, 11):
            result = bounds.general_lower_bound(PI2, n)
            assert result.delta_n == 5
            log_pi2 = multiplicative_zagreb(delta_tree(5, n), "second").log
            assert result.bound == pytest.approx(log_pi2, rel=1e-12)

    def test_linear_cost(self):
        assert bounds.general_lower_bound(lambda d: float(d), 12).delta_n == 12

    def test_small_n(self):
        assert bounds.general_lower_bound(M1, 2) == bounds.GeneralBound(2, 3)
        with pytest.raises(ValueError):
            bounds.general_lower_bound(M1, 1)

    def test_scale_invariant(self):
        for n in range(3, 20):
            a = bounds.general_lower_bound(lambda d: d**1.5, n)
            b = bounds.general_lower_bound(lambda d: 3 * d**1.5, n)
            assert a.delta_n == b.delta_n
            assert b.bound == pytest.approx(3 * a.bound)

    def test_edge_scheme_rejected(self):
        with pytest.raises(SchemeError):
            bounds.general_lower_bound(M2, 5)
        with pytest.raises(SchemeError):
            bounds.general_lower_bound(lambda d: 1 / (d - 4), 6)

    def test_random_trees(self, random_corpus):
        for t in random_corpus:
            n = t.pendant_count
            assert bounds.general_lower_bound(M1, n).bound <= m1(t)

    @pytest.mark.parametrize("n", range(5, 13))
    def test_random_trees_per_pendant_count(self, n):
        rng = np.random.default_rng(n)
        bound = bounds.general_lower_bound(M1, n).bound
        for _ in range(1000):
            t = random_tree_with_pendants(n, rng)
            assert t.pendant_count == n
            assert bound <= m1(t)

    @pytest.mark.parametrize("n", [4, 6, 8, 10])
    def test_attained(self, n):
        assert bounds.general_lower_bound(M1, n).bound == m1(delta_tree(4, n))


def test_randic_alpha_interval():
    lo3, hi3 = bounds.randic_alpha_interval(3)
    assert lo3 == pytest.approx(math.log(2) / math.log(4 / 3))
    assert hi3 == math.inf
    for d in range(4, 12):
        lo, hi = bounds.randic_alpha_interval(d)
        assert lo < hi
        assert hi == pytest.approx(bounds.randic_alpha_interval(d - 1)[0])
        # the interior of the interval picks d as the optimal degree
        alpha = (lo + hi) / 2
        result = bounds.general_lower_bound(randic_zeroth_scheme(alpha), 40)
        assert result.delta_n == d
    with pytest.raises(ValueError):
        bounds.randic_alpha_interval(2)


class TestAudit:
    def test_m2_violation_at_eight(self):
        report = bounds.audit_bound("m2", (8, 8), method="brute")
        assert not report.ok
        (violation,) = report.violations
        assert violation["value"] == 60
        assert violation["bound"] == 61
        assert not violation["in_range"]
        assert m2(violation["witness"]) == 60
        record = report.to_record()
        assert m2(read_graph6(record.violations[0]["witness"])) == 60

    def test_m2_dp(self):
        report = bounds.audit_bound("m2", (9, 40), method="dp")
        assert report.ok
        assert all(row["equality"] for row in report.points)

    def test_m1_brute(self):
        report = bounds.audit_bound("m1", (4, 7), method="brute")
        assert report.ok
        assert all(row["equality"] for row in report.points)

    def test_ca_table(self):
        dp = bounds.audit_bound("ca", (1, 12), method="dp")
        assert dp.ok
        brute = bounds.audit_bound("ca_table", (1, 5), method="brute")
        assert brute.ok
        values = {(r["n"], r["p"]): r["value"] for r in brute.points}
        assert values == {(r["n"], r["p"]): r["value"] for r in dp.points if r["n"] <= 5}

    def test_sum_is_informational(self):
        report = bounds.audit_bound("sum", (6, 7), method="brute")
        assert report.informational
        assert report.to_record().informational is True
        assert [row["n"] for row in report.points] == [6, 7]

    @pytest.mark.slow
    def test_sum_audit_through_8(self):
        report = bounds.audit_bound("sum", (6, 8), method="brute")
        assert report.informational
        assert [row["n"] for row in report.points] == [6, 7, 8]

    def test_general(self):
        report = bounds.audit_bound("general", (3, 7), method="brute", scheme="pi2")
        assert report.ok
        with pytest.raises(ValueError):
            bounds.audit_bound("general", (3, 7), method="dp")

    def test_chemical(self):
        report = bounds.audit_bound("m2", (9, 9), method="brute", max_degree=4)
        (row,) = report.points
        assert row["bound_plus_one"] == 73
        assert row["value"] >= row["bound"]
        with pytest.raises(ValueError):
            bounds.audit_bound("m2", (9, 9), method="dp", max_degree=4)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            bounds.audit_bound("m3", (9, 9))
        with pytest.raises(ValueError):
            bounds.audit_bound("m2", (10, 9))
        with pytest.raises(ValueError):
            bounds.audit_bound("m2", (9, 9), method="guess")

    def test_frame(self):
        frame = bounds.audit_bound("m2", (9, 12)).to_frame()
        assert isinstance(frame, pd.DataFrame)
        np.testing.assert_array_equal(frame.n, [9, 10, 11, 12])
        np.testing.assert_array_equal(frame.value, 11 * frame.n - 27)
