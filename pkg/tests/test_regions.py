from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import brentq

from deathbirth import PayoffMatrix, classify_point, drift_closed_form
from deathbirth.regions import (LARGE_RANGE_CAVEAT, SWEEP_COLUMNS, PreconditionError,
                                bisect_boundary, lemma_2wins_condition, pd_triangle_membership,
                                region0_inequality, region_corner_points, sweep_phase_diagram,
                                theorem1_condition, theorem1_constants, theorem2a_condition,
                                theorem2a_region_nonempty, theorem2b_condition, theorem4_curves,
                                theorem4_verdict)

F = Fraction


class TestCoexistenceThreshold:
    def test_symmetric_constants(self):
        c = theorem1_constants(PayoffMatrix(1, 1, 1, 1))
        assert c.c_minus == F(1, 2**17)
        assert c.c_plus == 25 * 2**92
        assert c.threshold == F(1, 25 * 2**106)
        assert c.threshold == c.threshold_via_c_plus

    def test_asymmetric_c_minus(self):
        assert theorem1_constants(PayoffMatrix(1, 1, 2, 1)).c_minus == F(1, 2**18)
        assert theorem1_constants(PayoffMatrix(1, 2, 1, 1)).c_minus == F(1, 2**18)

    @pytest.mark.parametrize("exponent,expected", [(107, False), (120, True)])
    def test_condition_near_threshold(self, exponent, expected):
        tiny = F(1, 2**exponent)
        assert theorem1_condition(PayoffMatrix(tiny, 1, 1, tiny)) is expected

    def test_condition_false_for_unit_matrix(self):
        assert not theorem1_condition(PayoffMatrix(1, 1, 1, 1))

    def test_threshold_identity_random_rationals(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a12 = F(int(rng.integers(1, 10**6)), int(rng.integers(1, 10**6)))
            a21 = F(int(rng.integers(1, 10**6)), int(rng.integers(1, 10**6)))
            c = theorem1_constants(PayoffMatrix(1, a12, a21, 1))
            # independent recomputation from the definitions
            cm = F(1, 2**17) * min(a12 / a21, a21 / a12)
            assert c.c_minus == cm
            assert c.c_plus == 25 * 2**7 * cm**-5
            assert c.threshold == F(1, 25 * 2**21) * cm**5 * min(a12, a21)
            assert c.threshold == c.threshold_via_c_plus

    def test_caveat_travels_with_verdict(self):
        verdict = classify_point(PayoffMatrix(1, 1, 2, 1), 2)
        assert verdict.thm1_caveat == LARGE_RANGE_CAVEAT
        assert verdict.to_dict()["thm1_caveat"] == LARGE_RANGE_CAVEAT


class TestWinningRegions:
    @pytest.mark.parametrize("N,expected", [(2, True), (8, True), (16, False)])
    def test_strategy1_quadrant_examples(self, N, expected):
        assert theorem2a_condition(PayoffMatrix(3, 1.9, 2, 1), N) is expected

    def test_quadrant_nonempty(self):
        assert theorem2a_region_nonempty(1.9, 2, 2)
        assert theorem2a_region_nonempty(1.9, 2, 16)
        assert not theorem2a_region_nonempty(1.9, 2, 24)
        assert not theorem2a_region_nonempty(1, 2, 2)

    def test_quadrant_nonempty_matches_search(self):
        # the region is a quadrant in (a11, a22); it has positive points iff a12 beats the bound
        for a12, a21, N in [(1.9, 2, 8), (1.5, 2, 2), (1.5, 2, 8), (1, 3, 2)]:
            gap = (N - 1) * (a21 - a12)
            a22 = a12 - gap - 1e-9
            found = a22 > 0 and theorem2a_condition(PayoffMatrix(a21 + gap + 1, a12, a21, a22), N)
            assert found == theorem2a_region_nonempty(a12, a21, N)

    def test_strategy2_region_examples(self):
        assert theorem2b_condition(PayoffMatrix(1, 1, 1.5, 1), 8)
        assert not theorem2b_condition(PayoffMatrix(1.6, 1, 1.5, 1), 8)

    def test_strategy2_region_never_on_ring(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            a12 = rng.uniform(0.1, 2)
            pm = PayoffMatrix(*rng.uniform(0.01, 0.2, 1), a12, a12 + 1, *rng.uniform(1, 3, 1))
            assert not theorem2b_condition(pm, 2)
            assert not theorem2b_condition(pm, 2, topology_is_1d_nn=True)
        assert theorem2b_condition(PayoffMatrix(1, 1, 1.5, 1), 2, topology_is_1d_nn=False)

    def test_preconditions(self):
        for fn in (theorem2a_condition, theorem2b_condition, region_corner_points):
            with pytest.raises(PreconditionError, match="swap"):
                fn(PayoffMatrix(1, 2, 2, 1), 8)
            with pytest.raises(PreconditionError):
                fn(PayoffMatrix(1, 2, 1, 1), 8)

    def test_overlaps_altruistic_and_selfish(self):
        N = 8
        altruistic = PayoffMatrix(1, 1, 1.5, 0.995)
        selfish = PayoffMatrix(1.505, 1, 1.5, 2)
        for pm, sign in ((altruistic, -1), (selfish, 1)):
            assert theorem2b_condition(pm, N)
            assert not theorem2a_condition(pm, N)
            assert np.sign(pm.a1) == np.sign(pm.a2) == sign

    def test_disjoint(self):
        rng = np.random.default_rng(8)
        hits_a = hits_b = 0
        for _ in range(100_000):
            N = int(rng.choice([2, 8, 24]))
            a12 = rng.uniform(0.1, 3)
            a21 = a12 + rng.uniform(1e-3, 1)
            pm = PayoffMatrix(*rng.uniform(0.01, 5, 1), a12, a21, *rng.uniform(0.01, 5, 1))
            ta, tb = theorem2a_condition(pm, N), theorem2b_condition(pm, N)
            hits_a += ta
            hits_b += tb
            assert not (ta and tb), (pm, N)
        assert hits_a > 0 and hits_b > 0


def _sample_near_region0(rng, N):
    a12 = rng.uniform(0.1, 3)
    a21 = a12 + rng.uniform(1e-3, 2)
    delta = (a21 - a12) / (N * N - N - 1)
    a11 = max(1e-6, a21 + rng.uniform(-3, 2 * delta))
    a22 = max(1e-6, a12 + rng.uniform(-2 * delta, 3))
    return PayoffMatrix(a11, a12, a21, a22)


class TestStrategyTwoRegion:
    def test_case_one_reduces_to_ordering(self):
        for N in (2, 4, 8, 24):
            assert lemma_2wins_condition(PayoffMatrix(0.5, 1, 2, 3), N)
            assert not lemma_2wins_condition(PayoffMatrix(0.5, 2, 1, 3), N)

    def test_case_two_equivalence(self):
        rng = np.random.default_rng(9)
        for _ in range(2000):
            N = int(rng.integers(2, 25))
            a12 = rng.uniform(0.1, 2)
            a21 = a12 + rng.uniform(0.01, 2)
            a11 = a12 + rng.uniform(0.01, 3)
            a22 = a21 + rng.uniform(0.01, 3)
            pm = PayoffMatrix(a11, a12, a21, a22)
            lhs = (N * N - N - 1) * (a11 - a21)
            if abs(lhs - (a21 - a12)) < 1e-9:
                continue
            assert lemma_2wins_condition(pm, N) == (lhs < a21 - a12)

    def test_neutral_false(self):
        assert not lemma_2wins_condition(PayoffMatrix(1, 1, 1, 1), 8)

    def test_inclusion(self):
        rng = np.random.default_rng(10)
        hits = 0
        for _ in range(100_000):
            N = int(rng.choice([2, 8, 24]))
            pm = _sample_near_region0(rng, N)
            if region0_inequality(pm, N):
                hits += 1
                assert lemma_2wins_condition(pm, N), (pm, N)
        assert hits > 10_000

    def test_corner_points(self):
        p_minus, p_plus = region_corner_points(PayoffMatrix(1, 1, 2, 1), 2)
        assert p_plus == (3, 2)
        assert p_minus == (1, 0)

    def test_corner_slope_is_one(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            a12 = F(int(rng.integers(1, 100)), int(rng.integers(1, 100)))
            a21 = a12 + F(int(rng.integers(1, 100)), int(rng.integers(1, 100)))
            (x0, y0), (x1, y1) = region_corner_points(PayoffMatrix(1, a12, a21, 1),
                                                      int(rng.integers(2, 30)))
            assert (y1 - y0) / (x1 - x0) == 1


class TestRingVerdict:
    def test_cooperator_example(self):
        assert theorem4_verdict(PayoffMatrix(2, 1, 2, 1)) == 1

    def test_neutral_none(self):
        assert theorem4_verdict(PayoffMatrix(1, 1, 1, 1)) is None

    def test_sharp_condition(self):
        # min(a11, a22) > max(a12, a21): the sign of D4 picks the winner
        up, down = PayoffMatrix(4, 1, 2, 3), PayoffMatrix(3, 1, 2, 3)
        assert drift_closed_form(up)[1] > 0 and theorem4_verdict(up) == 1
        assert drift_closed_form(down)[1] < 0 and theorem4_verdict(down) == 2

    def test_boundary_a22_equals_a21(self):
        # neither branch of the strict condition applies to strategy 1
        pm = PayoffMatrix(1, 3, 2, 2)
        assert theorem4_verdict(pm) in (None, 2)
        assert theorem4_verdict(pm) != 1

    def test_label_swap_antisymmetry_and_exclusivity(self):
        rng = np.random.default_rng(13)
        seen = set()
        for _ in range(5000):
            pm = PayoffMatrix(*rng.uniform(0.05, 5, 4))
            v = theorem4_verdict(pm)
            seen.add(v)
            assert theorem4_verdict(pm.swapped()) == {1: 2, 2: 1, None: None}[v]
        assert seen == {1, 2, None}

    def test_curves(self):
        curves = theorem4_curves(PayoffMatrix(2, 1, 2, 1))
        assert set(curves) == {"D3+D4", "D4", "swapped D3+D4", "swapped D4"}
        assert curves["D3+D4"] == pytest.approx(17 / 70, abs=1e-15)
        assert curves["swapped D4"] == pytest.approx(-curves["D4"], abs=1e-15)


@pytest.mark.parametrize("pm,expected", [
    (PayoffMatrix(3, 1, 4, 2), True),
    (PayoffMatrix(2, 1, 2, 1), False),
    (PayoffMatrix(1, 2, 3, 4), False),
])
def test_pd_triangle(pm, expected):
    assert pd_triangle_membership(pm) is expected


class TestSweep:
    def test_single_cell_matches_classify_point(self):
        (cell,) = sweep_phase_diagram(1, 2, [2.5], [0.5], 2)
        assert cell == classify_point(PayoffMatrix(2.5, 1, 2, 0.5), 2)
        assert tuple(cell.row()) == SWEEP_COLUMNS

    def test_layout_and_pd_cells(self):
        deltas = [0.05, 0.1, 0.2, 0.3]
        grid = sweep_phase_diagram(1, 2, [2 - d for d in deltas], [1 + d for d in deltas], 2)
        assert len(grid) == 16
        assert [c.a11 for c in grid[:4]] == [1.95] * 4
        for i, d in enumerate(deltas):
            assert grid[5 * i].pd_triangle
            assert (grid[5 * i].a11, grid[5 * i].a22) == (2 - d, 1 + d)

    def test_sweep_preconditions(self):
        with pytest.raises(ValueError):
            sweep_phase_diagram(1, 2, [], [1], 2)
        with pytest.raises(PreconditionError):
            sweep_phase_diagram(2, 1, [1], [1], 2)

    def test_ring_only_fields(self):
        v = classify_point(PayoffMatrix(2, 1, 2, 1), 8)
        assert v.thm4_winner is None
        v = classify_point(PayoffMatrix(1, 2, 1, 2), 2)
        assert v.thm4_winner == 2
        assert v.thm2a_strategy1_wins is None and v.thm2b_strategy2_wins is None

    def test_diagonal_follows_sign_of_d4(self):
        # with a12 < a21 the diagonal D4 keeps one sign, so the verdict never changes there
        for t in np.linspace(2.01, 4, 60):
            v = classify_point(PayoffMatrix(t, 1, 2, t), 2).thm4_winner
            d4 = drift_closed_form(PayoffMatrix(t, 1, 2, t))[1]
            assert d4 < 0 and v == 2

    def test_row_flips_at_root_of_d4(self):
        a22 = 3.0

        def d4(a11):
            return drift_closed_form(PayoffMatrix(a11, 1, 2, a22))[1]

        root = brentq(d4, 2.01, 4, xtol=1e-14)
        assert root == pytest.approx((-1 + 61**0.5) / 2, abs=1e-12)
        found = bisect_boundary(
            lambda a11: theorem4_verdict(PayoffMatrix(a11, 1, 2, a22)), 2.01, 4)
        assert abs(found - root) <= 1e-9
        for a11 in np.linspace(2.01, 4, 41):
            v = theorem4_verdict(PayoffMatrix(a11, 1, 2, a22))
            assert v == (1 if a11 > root else 2)

    def test_bisect_needs_a_sign_change(self):
        with pytest.raises(ValueError):
            bisect_boundary(lambda x: x > 10, 0, 1)
