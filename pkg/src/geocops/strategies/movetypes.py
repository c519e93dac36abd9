"""Robber-displacement move types and the coordinate-sum potential audit.

A planar robber displacement of polar form (d : theta), 0 <= d <= r, is
classified into the (non-exclusive) types

    T1:  d <= r/2
    T2:  r/2 < d <= r and 7pi/6 <= theta <= 11pi/6
    T3:  r/2 < d <= r and 2pi/3 <= theta <= 4pi/3
    T4:  r/2 < d <= r and  -pi/6 <= theta <= 2pi/3

with theta normalized into [-pi/6, 11pi/6) and all sector boundaries closed.
Every legal displacement receives at least one type; d <= r/2 receives
exactly {T1}.

The audit checks the potential bookkeeping that bounds the game length at
T = 1000/r rounds: a pure-T4 move raises the robber's coordinate sum by at
least ((sqrt 3 - 1)/4) r, no move lowers it by more than r sqrt 2, and
972 (sqrt 3 - 1)/4 - 28 sqrt 2 > 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..geometry import DEFAULT_TOL

TWO_PI = 2.0 * math.pi
T4_MIN_GAIN_FACTOR = (math.sqrt(3.0) - 1.0) / 4.0
WORST_LOSS_FACTOR = math.sqrt(2.0)
BUDGET_CONSTANT = 972.0 * T4_MIN_GAIN_FACTOR - 28.0 * math.sqrt(2.0)


def normalize_theta(theta: float) -> float:
    """Map an angle into [-pi/6, 11pi/6)."""
    return (theta + math.pi / 6.0) % TWO_PI - math.pi / 6.0


def classify_move(d: float, theta: float, r: float,
                  tol: float = DEFAULT_TOL) -> frozenset[str]:
    """The set of move types matching a displacement (d : theta)."""
    if d < 0:
        raise ValueError("classify_move: negative displacement length")
    if d > r * (1.0 + 1e-9) + tol:
        raise ValueError(f"classify_move: displacement {d!r} exceeds radius {r!r}")
    if d <= r / 2.0:
        return frozenset({"T1"})
    th = normalize_theta(theta)
    types = set()
    if 7.0 * math.pi / 6.0 <= th <= 11.0 * math.pi / 6.0:
        types.add("T2")
    if 2.0 * math.pi / 3.0 <= th <= 4.0 * math.pi / 3.0:
        types.add("T3")
    if -math.pi / 6.0 <= th <= 2.0 * math.pi / 3.0:
        types.add("T4")
    return frozenset(types)


def displacement_polar(p_from, p_to) -> tuple[float, float]:
    dx = p_to[0] - p_from[0]
    dy = p_to[1] - p_from[1]
    return math.hypot(dx, dy), math.atan2(dy, dx)


@dataclass
class MoveAudit:
    round_index: int
    d: float
    theta: float
    types: frozenset[str]
    delta: float  # change of the robber's coordinate sum


@dataclass
class PotentialAuditReport:
    moves: list[MoveAudit] = field(default_factory=list)
    pure_t4_violations: list[MoveAudit] = field(default_factory=list)
    loss_bound_violations: list[MoveAudit] = field(default_factory=list)
    count_t1_or_t2: int = 0
    count_t1_or_t3: int = 0
    t4_min_gain: float = 0.0
    worst_loss: float = 0.0
    budget_constant: float = BUDGET_CONSTANT

    @property
    def pure_t4_ok(self) -> bool:
        return not self.pure_t4_violations

    @property
    def loss_bound_ok(self) -> bool:
        return not self.loss_bound_violations

    @property
    def budget_ok(self) -> bool:
        return self.budget_constant > 2.0


def potential_audit(trace, r: float, tol: float = 1e-9) -> PotentialAuditReport:
    """Classify every robber move of a geometric trace and audit the potential.

    The trace must carry robber coordinates (traces from geometric games do).
    """
    report = PotentialAuditReport(t4_min_gain=T4_MIN_GAIN_FACTOR * r,
                                  worst_loss=WORST_LOSS_FACTOR * r)
    prev_xy = None
    for e in trace.events:
        if e.mover != "robber":
            continue
        if e.robber_xy is None:
            raise ValueError("potential_audit: trace lacks robber coordinates")
        if prev_xy is None:
            prev_xy = e.robber_xy
            continue  # round-1 placement is not a move
        d, theta = displacement_polar(prev_xy, e.robber_xy)
        types = classify_move(d, theta, r, tol)
        delta = (e.robber_xy[0] - prev_xy[0]) + (e.robber_xy[1] - prev_xy[1])
        audit = MoveAudit(e.round_index, d, theta, types, delta)
        report.moves.append(audit)
        if types == frozenset({"T4"}) and delta < report.t4_min_gain - tol:
            report.pure_t4_violations.append(audit)
        if delta < -report.worst_loss - tol:
            report.loss_bound_violations.append(audit)
        if "T1" in types or "T2" in types:
            report.count_t1_or_t2 += 1
        if "T1" in types or "T3" in types:
            report.count_t1_or_t3 += 1
        prev_xy = e.robber_xy
    return report
