"""Game engine: robber-first rounds, legality checks, traces, replay.

Protocol: the cops place first, the robber's round-1 action is his placement,
then every round is (robber half-move, cops half-move).  Capture means a cop
is colocated with the robber after either half-move.  Policies that want to
capture a robber inside their reach must step onto him themselves; the engine
only detects colocation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from ..geograph import Graph, GeometricGraph


class PolicyError(RuntimeError):
    """A policy emitted an illegal move."""

    def __init__(self, policy_name: str, round_index: int, detail: str):
        super().__init__(f"policy {policy_name!r} at round {round_index}: {detail}")
        self.policy_name = policy_name
        self.round_index = round_index


@dataclass
class GameView:
    """What a policy sees when asked to move."""

    robber: int
    robber_prev: int | None
    cops: list[int]
    round_index: int


class CopPolicy:
    name = "cop"

    def place(self, g: Graph, rng: random.Random) -> list[int]:
        raise NotImplementedError

    def move(self, g: Graph, view: GameView, rng: random.Random) -> list[int]:
        raise NotImplementedError


class RobberPolicy:
    name = "robber"

    def place(self, g: Graph, cops: list[int], rng: random.Random) -> int:
        raise NotImplementedError

    def move(self, g: Graph, view: GameView, rng: random.Random) -> int:
        raise NotImplementedError


@dataclass
class TraceEvent:
    round_index: int
    mover: str  # "robber" | "cops"
    robber: int
    cops: list[int]
    robber_xy: tuple[float, float] | None = None


@dataclass
class Trace:
    n: int
    r: float | None
    cop_policy: str
    robber_policy: str
    seed: object
    horizon: int
    placement_cops: list[int] = field(default_factory=list)
    events: list[TraceEvent] = field(default_factory=list)
    outcome: str = "survived"  # "capture" | "survived"
    capture_round: int | None = None

    @property
    def rounds_played(self) -> int:
        return max((e.round_index for e in self.events), default=0)

    def robber_positions(self) -> list[tuple[int, tuple[float, float] | None]]:
        return [(e.robber, e.robber_xy) for e in self.events if e.mover == "robber"]

    def to_jsonl(self) -> str:
        head = {
            "format_version": 1, "type": "trace", "n": self.n, "r": self.r,
            "cop_policy": self.cop_policy, "robber_policy": self.robber_policy,
            "seed": self.seed, "horizon": self.horizon,
            "placement_cops": self.placement_cops,
        }
        lines = [json.dumps(head, sort_keys=True)]
        for e in self.events:
            lines.append(json.dumps({
                "round": e.round_index, "mover": e.mover, "robber": e.robber,
                "cops": e.cops, "robber_xy": e.robber_xy,
            }, sort_keys=True))
        lines.append(json.dumps({
            "outcome": self.outcome, "capture_round": self.capture_round,
        }, sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "Trace":
        lines = [json.loads(s) for s in text.strip().splitlines() if s.strip()]
        head, tail = lines[0], lines[-1]
        tr = cls(head["n"], head["r"], head["cop_policy"], head["robber_policy"],
                 head["seed"], head["horizon"], list(head["placement_cops"]))
        for rec in lines[1:-1]:
            xy = rec.get("robber_xy")
            tr.events.append(TraceEvent(rec["round"], rec["mover"], rec["robber"],
                                        list(rec["cops"]),
                                        tuple(xy) if xy else None))
        tr.outcome = tail["outcome"]
        tr.capture_round = tail.get("capture_round")
        return tr


def _xy(g, v):
    if isinstance(g, GeometricGraph):
        p = g.point(v)
        return (p.x, p.y)
    return None


def run_game(g: Graph, cop_policy: CopPolicy, robber_policy: RobberPolicy,
             max_rounds: int, seed=None) -> Trace:
    """Play one full game and return its trace.

    Raises PolicyError when a policy emits a non-adjacent move or an invalid
    vertex, naming the offending policy and round.
    """
    if max_rounds < 1:
        raise ValueError("run_game: max_rounds must be >= 1")
    rng = random.Random(seed)
    trace = Trace(g.n, getattr(g, "r", None), cop_policy.name, robber_policy.name,
                  seed, max_rounds)

    cops = [int(v) for v in cop_policy.place(g, rng)]
    for v in cops:
        if not 0 <= v < g.n:
            raise PolicyError(cop_policy.name, 0, f"placement on invalid vertex {v}")
    trace.placement_cops = list(cops)

    robber = int(robber_policy.place(g, list(cops), rng))
    if not 0 <= robber < g.n:
        raise PolicyError(robber_policy.name, 1, f"placement on invalid vertex {robber}")
    robber_prev: int | None = None
    trace.events.append(TraceEvent(1, "robber", robber, list(cops), _xy(g, robber)))
    if robber in cops:
        trace.outcome, trace.capture_round = "capture", 1
        return trace

    for rnd in range(1, max_rounds + 1):
        if rnd > 1:
            new_r = int(robber_policy.move(
                g, GameView(robber, robber_prev, list(cops), rnd), rng))
            if new_r != robber and not g.adjacent(robber, new_r):
                raise PolicyError(robber_policy.name, rnd,
                                  f"robber move {robber}->{new_r} not adjacent")
            robber_prev, robber = robber, new_r
            trace.events.append(
                TraceEvent(rnd, "robber", robber, list(cops), _xy(g, robber)))
            if robber in cops:
                trace.outcome, trace.capture_round = "capture", rnd
                return trace

        new_cops = [int(v) for v in cop_policy.move(
            g, GameView(robber, robber_prev, list(cops), rnd), rng)]
        if len(new_cops) != len(cops):
            raise PolicyError(cop_policy.name, rnd, "cop count changed")
        for old, new in zip(cops, new_cops):
            if new != old and not g.adjacent(old, new):
                raise PolicyError(cop_policy.name, rnd,
                                  f"cop move {old}->{new} not adjacent")
        cops = new_cops
        trace.events.append(TraceEvent(rnd, "cops", robber, list(cops)))
        if robber in cops:
            trace.outcome, trace.capture_round = "capture", rnd
            return trace
        if rnd == 1:
            robber_prev = robber

    trace.outcome = "survived"
    return trace


def replay_verify(g: Graph, trace: Trace) -> bool:
    """Re-check legality and capture bookkeeping of a recorded trace."""
    robber = None
    cops = list(trace.placement_cops)
    captured_at = None
    for e in trace.events:
        if e.mover == "robber":
            if robber is not None and e.robber != robber and not g.adjacent(robber, e.robber):
                return False
            robber = e.robber
            if e.cops != cops:
                return False
        else:
            for old, new in zip(cops, e.cops):
                if new != old and not g.adjacent(old, new):
                    return False
            cops = list(e.cops)
            if e.robber != robber:
                return False
        if captured_at is None and robber in cops:
            captured_at = e.round_index
    if trace.outcome == "capture":
        return captured_at == trace.capture_round
    return captured_at is None
