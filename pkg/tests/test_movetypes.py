import math

import numpy as np
import pytest

from geocops.strategies import (
    BUDGET_CONSTANT,
    T4_MIN_GAIN_FACTOR,
    classify_move,
    normalize_theta,
    potential_audit,
)
from geocops.strategies.engine import Trace, TraceEvent

R = 1.0


class TestClassify:
    def test_short_move_is_t1(self):
        assert classify_move(0.3 * R, 1.0, R) == {"T1"}

    def test_downward_is_t2(self):
        assert classify_move(0.8 * R, 3 * math.pi / 2, R) == {"T2"}

    def test_boundary_t3_t4(self):
        assert classify_move(R, 2 * math.pi / 3, R) == {"T3", "T4"}

    def test_boundary_t2_t3(self):
        assert classify_move(0.9 * R, 7 * math.pi / 6, R) == {"T2", "T3"}

    def test_rejects_overlong(self):
        with pytest.raises(ValueError):
            classify_move(1.5 * R, 0.0, R)

    def test_zero_displacement(self):
        assert classify_move(0.0, 0.0, R) == {"T1"}

    def test_every_displacement_gets_a_type(self, rng):
        for _ in range(3000):
            d = rng.uniform(0, R)
            th = rng.uniform(-10, 10)
            types = classify_move(d, th, R)
            assert types
            if d <= R / 2:
                assert types == {"T1"}
            else:
                assert "T1" not in types

    def test_normalization_window(self, rng):
        for _ in range(200):
            th = rng.uniform(-20, 20)
            tn = normalize_theta(th)
            assert -math.pi / 6 <= tn < 11 * math.pi / 6
            assert abs(math.sin(tn) - math.sin(th)) < 1e-9
            assert abs(math.cos(tn) - math.cos(th)) < 1e-9


def _geometric_trace(moves, r=1.0):
    """Build a synthetic trace with the given robber displacement list."""
    tr = Trace(n=0, r=r, cop_policy="x", robber_policy="y", seed=0, horizon=99)
    x, y = 0.0, 0.0
    tr.events.append(TraceEvent(1, "robber", 0, [], (x, y)))
    for i, (d, th) in enumerate(moves, start=2):
        x += d * math.cos(th)
        y += d * math.sin(th)
        tr.events.append(TraceEvent(i, "robber", 0, [], (x, y)))
    return tr


class TestPotentialAudit:
    def test_diagonal_t4_gain(self):
        tr = _geometric_trace([(1.0, math.pi / 4)])
        rep = potential_audit(tr, 1.0)
        m = rep.moves[0]
        assert m.types == {"T4"}
        assert m.delta == pytest.approx(math.sqrt(2), abs=1e-12)
        assert rep.pure_t4_ok

    def test_worst_loss_at_5pi_over_4(self):
        tr = _geometric_trace([(1.0, 5 * math.pi / 4)])
        rep = potential_audit(tr, 1.0)
        m = rep.moves[0]
        assert m.delta == pytest.approx(-math.sqrt(2), abs=1e-12)
        assert rep.loss_bound_ok  # the bound is tight, not violated

    def test_budget_constant(self):
        assert BUDGET_CONSTANT == pytest.approx(138.29, abs=0.01)
        assert BUDGET_CONSTANT > 2

    def test_pure_t4_moves_all_gain_enough(self, rng):
        moves = []
        for _ in range(500):
            d = rng.uniform(0.500001, 1.0)
            th = rng.uniform(-math.pi / 6, 2 * math.pi / 3)
            moves.append((d, th))
        rep = potential_audit(_geometric_trace(moves), 1.0)
        pure = [m for m in rep.moves if m.types == {"T4"}]
        assert pure  # sampling surely hit the open sector
        assert rep.pure_t4_ok
        for m in pure:
            assert m.delta >= T4_MIN_GAIN_FACTOR - 1e-9

    def test_no_move_loses_more_than_r_sqrt2(self, rng):
        moves = [(rng.uniform(0, 1.0), rng.uniform(0, 2 * math.pi))
                 for _ in range(2000)]
        rep = potential_audit(_geometric_trace(moves), 1.0)
        assert rep.loss_bound_ok

    def test_counts(self):
        tr = _geometric_trace([(0.2, 0.0),            # T1
                               (0.9, 3 * math.pi / 2),  # T2
                               (0.9, math.pi),          # T3
                               (0.9, math.pi / 4)])     # T4
        rep = potential_audit(tr, 1.0)
        assert rep.count_t1_or_t2 == 2
        assert rep.count_t1_or_t3 == 2
