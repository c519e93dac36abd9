"""Ground-truth decision procedures for the pursuit game.

* pitfall detection and greedy dismantling (cop-win recognition),
* center-ordered dismantling for geometric graphs (remove vertices in
  descending distance from a center point, each removal justified by a
  dominator, until the survivors sit inside B(c, r/2) and form a clique),
* exact k-cop game solving by retrograde analysis under the
  robber-moves-first round convention, with capture = colocation after
  either side's move.

Closed neighborhoods are kept as packed bitset rows (numpy uint8) so that
domination tests are word-parallel; the greedy dismantler re-scans the
surviving vertices in a fixed heuristic order until a pass removes nothing
(the final verdict is order-independent).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

import numpy as np

from .geograph import Graph, GeometricGraph

SOLVER_STATE_BUDGET = 2 * 10 ** 8


class SolverBudgetError(RuntimeError):
    """State count exceeds the configured solver budget."""

    def __init__(self, states: int, budget: int):
        super().__init__(f"game has ~{states} states, over budget {budget}")
        self.states = states
        self.budget = budget


# ---------------------------------------------------------------------------
# bitset helpers
# ---------------------------------------------------------------------------

def _closed_masks(g: Graph) -> np.ndarray:
    """Packed closed-neighborhood rows: bit j of row i set iff j in N̄(i)."""
    n = g.n
    width = (n + 7) // 8
    masks = np.zeros((n, width), dtype=np.uint8)
    row = np.zeros(n, dtype=bool)
    for i in range(n):
        row[:] = False
        row[g.neighbors(i)] = True
        row[i] = True
        masks[i] = np.packbits(row, bitorder="little")
    return masks


def _active_mask(active: np.ndarray) -> np.ndarray:
    return np.packbits(active, bitorder="little")


def _dominator(masks, act_bits, u, candidates) -> int | None:
    """Lowest-index v among candidates with N̄(u)∩act ⊆ N̄(v)∩act."""
    if len(candidates) == 0:
        return None
    uncovered = (masks[u] & ~masks[candidates]) & act_bits
    bad = uncovered.any(axis=1)
    if bad.all():
        return None
    return int(candidates[int(np.argmin(bad))])


# ---------------------------------------------------------------------------
# pitfalls and dismantling
# ---------------------------------------------------------------------------

@dataclass
class DismantleResult:
    removal_order: list[tuple[int, int]]  # (removed vertex, its dominator)
    survivors: list[int]
    copwin: bool
    failed_vertex: int | None = None  # set by ordered dismantling on failure


def find_pitfall(g: Graph, active=None) -> tuple[int, int] | None:
    """Some u dominated by v in the active subgraph; lowest u, then lowest v.

    u is a pitfall when its closed neighborhood (within the active set) is
    contained in the dominator's.  Returns None when no pitfall exists.
    """
    act = np.zeros(g.n, dtype=bool)
    if active is None:
        act[:] = True
    else:
        act[list(active)] = True
    if act.sum() == 0:
        raise ValueError("find_pitfall: active set is empty")
    masks = _closed_masks(g)
    act_bits = _active_mask(act)
    for u in range(g.n):
        if not act[u]:
            continue
        nb = g.neighbors(u)
        cand = nb[act[nb]]
        v = _dominator(masks, act_bits, u, cand)
        if v is not None:
            return u, v
    return None


def _removal_heuristic_order(g: Graph) -> np.ndarray:
    # Geometric graphs dismantle fastest outside-in (distance from the point
    # cloud's center, descending); abstract graphs just use index order.
    if isinstance(g, GeometricGraph) and g.n:
        c = g.pointset.coords.mean(axis=0)
        d = ((g.pointset.coords - c) ** 2).sum(axis=1)
        return np.lexsort((np.arange(g.n), -d))
    return np.arange(g.n)


def dismantle(g: Graph) -> DismantleResult:
    """Greedily remove pitfalls until none remain; cop-win iff one survivor."""
    n = g.n
    if n == 0:
        return DismantleResult([], [], False)
    masks = _closed_masks(g)
    active = np.ones(n, dtype=bool)
    act_bits = _active_mask(active)
    order = _removal_heuristic_order(g)
    removal: list[tuple[int, int]] = []
    remaining = n
    changed = True
    while changed and remaining > 1:
        changed = False
        for u in order:
            if remaining <= 1:
                break
            u = int(u)
            if not active[u]:
                continue
            nb = g.neighbors(u)
            cand = nb[active[nb]]
            v = _dominator(masks, act_bits, u, cand)
            if v is None:
                continue
            removal.append((u, v))
            active[u] = False
            act_bits[u >> 3] &= np.uint8(~(1 << (u & 7)) & 0xFF)
            remaining -= 1
            changed = True
    survivors = [int(i) for i in np.flatnonzero(active)]
    return DismantleResult(removal, survivors, len(survivors) == 1)


# ---------------------------------------------------------------------------
# center-ordered machinery (geometric)
# ---------------------------------------------------------------------------

def nb_set(g: GeometricGraph, i: int, c) -> np.ndarray:
    """Neighbors of i strictly closer to the center point c than x_i is."""
    coords = g.pointset.coords
    di = math.hypot(coords[i, 0] - c[0], coords[i, 1] - c[1])
    nb = g.neighbors(i)
    if nb.size == 0:
        return nb.astype(np.int64)
    pts = coords[nb]
    d = np.hypot(pts[:, 0] - c[0], pts[:, 1] - c[1])
    return nb[d < di].astype(np.int64)


@dataclass
class CenterCheckResult:
    holds: bool
    violators: list[int]


def center_pitfall_check(g: GeometricGraph, c) -> CenterCheckResult:
    """Check the center-pitfall condition at every vertex.

    A vertex x_i with ||x_i - c|| >= r/2 passes when some inward neighbor
    j in nb(i) dominates it among the inward neighbors: nb(i) ⊆ N̄(j).
    (Then removing vertices in descending center distance only ever removes
    pitfalls.)  Vertices inside B(c, r/2) are exempt.  Reports all violators.
    """
    coords = g.pointset.coords
    dc = np.hypot(coords[:, 0] - c[0], coords[:, 1] - c[1])
    masks = _closed_masks(g)
    half = g.r / 2.0
    violators: list[int] = []
    for i in range(g.n):
        if dc[i] < half:
            continue
        nb = g.neighbors(i)
        inward = nb[dc[nb] < dc[i]]
        if inward.size == 0:
            violators.append(i)
            continue
        nbm = np.packbits(np.isin(np.arange(g.n), inward), bitorder="little")
        uncovered = nbm & ~masks[inward]
        if uncovered.any(axis=1).all():
            violators.append(i)
    return CenterCheckResult(len(violators) == 0, violators)


def center_order_dismantle(g: GeometricGraph, c) -> DismantleResult:
    """Dismantle by removing vertices in descending distance from c.

    Every removal must be justified by a dominator among the survivors;
    removal stops once the survivors lie inside B(c, r/2) (or one vertex is
    left).  On failure the first unjustifiable vertex is reported and
    copwin is False.  Distance ties are broken by vertex index.
    """
    n = g.n
    if n == 0:
        return DismantleResult([], [], False)
    coords = g.pointset.coords
    dc = np.hypot(coords[:, 0] - c[0], coords[:, 1] - c[1])
    order = np.lexsort((np.arange(n), -dc))
    masks = _closed_masks(g)
    active = np.ones(n, dtype=bool)
    act_bits = _active_mask(active)
    removal: list[tuple[int, int]] = []
    remaining = n
    half = g.r / 2.0
    for u in order:
        u = int(u)
        if dc[u] < half or remaining == 1:
            break
        nb = g.neighbors(u)
        cand = nb[active[nb]]
        v = _dominator(masks, act_bits, u, cand)
        if v is None:
            survivors = [int(i) for i in np.flatnonzero(active)]
            return DismantleResult(removal, survivors, False, failed_vertex=u)
        removal.append((u, v))
        active[u] = False
        act_bits[u >> 3] &= np.uint8(~(1 << (u & 7)) & 0xFF)
        remaining -= 1
    survivors = [int(i) for i in np.flatnonzero(active)]
    # survivors within B(c, r/2) are pairwise within r, but verify honestly
    clique = True
    for v in survivors:
        uncovered = (_active_mask(active) & ~masks[v]).any()
        if uncovered:
            clique = False
            break
    return DismantleResult(removal, survivors, clique)


# ---------------------------------------------------------------------------
# exact game solving (retrograde analysis)
# ---------------------------------------------------------------------------

ROBBER, COPS = 0, 1


def _count_states(n: int, k: int) -> int:
    return math.comb(n + k - 1, k) * n * 2


class SolveTable:
    """Win/lose labels and move recommendations for the k-cop game.

    States are (robber vertex, sorted cop multiset, side to move); the robber
    acts first in every round.  `depth` counts half-moves to capture under
    optimal play (0 at colocation).
    """

    def __init__(self, g: Graph, k: int, multisets, rank_of, labels, depth):
        self.g = g
        self.k = k
        self.n = g.n
        self.multisets = multisets
        self.rank_of = rank_of
        self.labels = labels
        self.depth = depth
        self._closed = [tuple(int(x) for x in g.closed_neighborhood(v))
                        for v in range(g.n)]
        self._succ_cache: dict[int, list[int]] = {}

    def _sid(self, rank: int, rv: int, side: int) -> int:
        return (rank * self.n + rv) * 2 + side

    def _cop_successor_ranks(self, rank: int) -> list[int]:
        got = self._succ_cache.get(rank)
        if got is not None:
            return got
        pools = [self._closed[c] for c in self.multisets[rank]]
        seen = {tuple(sorted(combo)) for combo in product(*pools)}
        out = sorted(self.rank_of[t] for t in seen)
        self._succ_cache[rank] = out
        return out

    def is_cop_win(self, robber: int, cops, side: int) -> bool:
        rank = self.rank_of[tuple(sorted(cops))]
        return bool(self.labels[self._sid(rank, robber, side)])

    def state_depth(self, robber: int, cops, side: int) -> int:
        rank = self.rank_of[tuple(sorted(cops))]
        return int(self.depth[self._sid(rank, robber, side)])

    @property
    def cops_win(self) -> bool:
        return self.initial_cops() is not None

    def initial_cops(self):
        """A winning initial multiset (min worst-case depth), or None."""
        best = None
        best_depth = None
        for rank, cops in enumerate(self.multisets):
            ids = [self._sid(rank, rv, COPS) for rv in range(self.n)]
            if all(self.labels[s] for s in ids):
                worst = max(int(self.depth[s]) for s in ids)
                if best is None or worst < best_depth:
                    best, best_depth = cops, worst
        return best

    def initial_robber(self, cops) -> int:
        """Robber's best placement against a given cop placement."""
        rank = self.rank_of[tuple(sorted(cops))]
        best, best_key = 0, None
        for rv in range(self.n):
            s = self._sid(rank, rv, COPS)
            # prefer unlabeled (cop-loss) states; otherwise maximize depth
            key = (0, 0) if not self.labels[s] else (1, -int(self.depth[s]))
            if best_key is None or key < best_key:
                best, best_key = rv, key
        return best

    def cop_move(self, robber: int, cops):
        """From a cop-win cops-to-move state: successor of minimal depth."""
        rank = self.rank_of[tuple(sorted(cops))]
        best = None
        best_depth = None
        for rank2 in self._cop_successor_ranks(rank):
            s = self._sid(rank2, robber, ROBBER)
            if self.labels[s]:
                d = int(self.depth[s])
                if best is None or d < best_depth:
                    best, best_depth = rank2, d
        if best is None:
            return tuple(sorted(cops))  # losing state: stand pat
        return self.multisets[best]

    def robber_move(self, robber: int, cops) -> int:
        """Safe move if one exists, else stall toward the deepest capture."""
        rank = self.rank_of[tuple(sorted(cops))]
        best, best_key = robber, None
        for rv in self._closed[robber]:
            s = self._sid(rank, rv, COPS)
            key = (0, rv) if not self.labels[s] else (1, -int(self.depth[s]), rv)
            if best_key is None or key < best_key:
                best, best_key = rv, key
        return best

    def to_json(self) -> dict:
        labels = {}
        for rank, cops in enumerate(self.multisets):
            for rv in range(self.n):
                for side, tag in ((ROBBER, "robber"), (COPS, "cops")):
                    key = f"{rv}|{','.join(map(str, cops))}|{tag}"
                    s = self._sid(rank, rv, side)
                    labels[key] = "cop-win" if self.labels[s] else "robber-win"
        return {"format_version": 1, "k": self.k, "n": self.n, "labels": labels}


def solve_game(g: Graph, k: int, budget: int = SOLVER_STATE_BUDGET) -> SolveTable:
    """Retrograde analysis of the k-cop pursuit game on g.

    Colocation states seed the queue; a cops-to-move state is cop-win as soon
    as one successor is, a robber-to-move state once every robber move is.
    Cop positions are canonical sorted multisets (co-occupancy allowed), and
    per-cop moves are symmetric, so multiset predecessors equal successors.
    """
    n = g.n
    if n == 0:
        raise ValueError("solve_game: empty graph")
    if k < 1:
        raise ValueError("solve_game: need at least one cop")
    est = _count_states(n, k)
    if est > budget:
        raise SolverBudgetError(est, budget)

    multisets = list(combinations_with_replacement(range(n), k))
    rank_of = {t: i for i, t in enumerate(multisets)}
    nr = len(multisets)
    labels = np.zeros(nr * n * 2, dtype=bool)
    depth = np.full(nr * n * 2, -1, dtype=np.int32)
    closed = [tuple(int(x) for x in g.closed_neighborhood(v)) for v in range(n)]
    # robber-to-move counter: number of robber moves not yet known cop-win
    counters = np.empty(nr * n, dtype=np.int32)
    for rv in range(n):
        counters[rv::n] = len(closed[rv])
    counters = counters.reshape(nr, n).copy()  # [rank, rv]

    table = SolveTable(g, k, multisets, rank_of, labels, depth)
    sid = table._sid

    queue: deque[tuple[int, int, int]] = deque()
    for rank, cops in enumerate(multisets):
        caught = set(cops)
        for rv in caught:
            for side in (ROBBER, COPS):
                s = sid(rank, rv, side)
                labels[s] = True
                depth[s] = 0
                queue.append((rank, rv, side))

    while queue:
        rank, rv, side = queue.popleft()
        d = depth[sid(rank, rv, side)]
        if side == ROBBER:
            # predecessors: cops-to-move states one cop move earlier
            for rank_prev in table._cop_successor_ranks(rank):
                s = sid(rank_prev, rv, COPS)
                if not labels[s]:
                    labels[s] = True
                    depth[s] = d + 1
                    queue.append((rank_prev, rv, COPS))
        else:
            # predecessors: robber-to-move states one robber move earlier
            for rv_prev in closed[rv]:
                s = sid(rank, rv_prev, ROBBER)
                if labels[s]:
                    continue
                counters[rank, rv_prev] -= 1
                if counters[rank, rv_prev] == 0:
                    labels[s] = True
                    depth[s] = d + 1
                    queue.append((rank, rv_prev, ROBBER))
    return table


def cop_number(g: Graph, k_max: int, budget: int = SOLVER_STATE_BUDGET):
    """Smallest k <= k_max with a cop win, else None (meaning "> k_max")."""
    for k in range(1, k_max + 1):
        if solve_game(g, k, budget=budget).cops_win:
            return k
    return None
