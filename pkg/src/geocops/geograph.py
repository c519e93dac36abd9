"""Geometric graphs over planar point sets.

Adjacency follows the closed-ball rule ||x_i - x_j|| <= r (tolerance-inflated
by 1e-9), built through a grid-bucket index with cell size r so construction
is O(n + edges) expected.  Also provides shortest paths, diameter/girth/degree
metrics, the degree-girth lower bound on the cop number, and CSV/JSON io.
"""

from __future__ import annotations

import csv
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path as _csgraph_sp

from .geometry import DEFAULT_TOL, Point2

INFINITE = math.inf


@dataclass
class PointSet:
    """Ordered planar points with stable indices; duplicates permitted."""

    coords: np.ndarray  # (n, 2) float64
    bbox: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=np.float64).reshape(-1, 2)
        if not np.all(np.isfinite(self.coords)):
            raise ValueError("PointSet: coordinates must be finite")

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __getitem__(self, i: int) -> Point2:
        return Point2(float(self.coords[i, 0]), float(self.coords[i, 1]))

    def points(self) -> list[Point2]:
        return [Point2(float(x), float(y)) for x, y in self.coords]


class PointGridIndex:
    """Bucket grid with square cells; supports ball queries on a point set."""

    def __init__(self, coords: np.ndarray, cell: float):
        if cell <= 0:
            raise ValueError("grid cell size must be positive")
        self.coords = coords
        self.cell = cell
        cells = np.floor(coords / cell).astype(np.int64)
        buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
        for i, (cx, cy) in enumerate(cells):
            buckets[(int(cx), int(cy))].append(i)
        self.buckets = {k: np.asarray(v, dtype=np.int64) for k, v in buckets.items()}

    def cell_of(self, p) -> tuple[int, int]:
        return (int(math.floor(p[0] / self.cell)), int(math.floor(p[1] / self.cell)))

    def candidates_3x3(self, p) -> np.ndarray:
        """Indices in the 3x3 cell neighborhood of p's cell."""
        cx, cy = self.cell_of(p)
        parts = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                b = self.buckets.get((cx + dx, cy + dy))
                if b is not None:
                    parts.append(b)
        if not parts:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(parts)

    def query_ball(self, p, radius: float, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Sorted indices of points within `radius` of p (closed ball)."""
        lo_x = int(math.floor((p[0] - radius) / self.cell))
        hi_x = int(math.floor((p[0] + radius) / self.cell))
        lo_y = int(math.floor((p[1] - radius) / self.cell))
        hi_y = int(math.floor((p[1] + radius) / self.cell))
        parts = []
        for cx in range(lo_x, hi_x + 1):
            for cy in range(lo_y, hi_y + 1):
                b = self.buckets.get((cx, cy))
                if b is not None:
                    parts.append(b)
        if not parts:
            return np.empty(0, dtype=np.int64)
        cand = np.concatenate(parts)
        pts = self.coords[cand]
        d2 = (pts[:, 0] - p[0]) ** 2 + (pts[:, 1] - p[1]) ** 2
        hit = cand[d2 <= (radius + tol) ** 2]
        hit.sort()
        return hit


class Graph:
    """Undirected simple graph in CSR form; vertices are 0..n-1."""

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int32)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        pairs = []
        for i, j in edges:
            if i == j:
                continue
            pairs.append((i, j))
            pairs.append((j, i))
        if pairs:
            arr = np.unique(np.asarray(pairs, dtype=np.int64), axis=0)
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError("edge endpoint out of range")
            ii, jj = arr[:, 0], arr[:, 1]
        else:
            ii = jj = np.empty(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, ii + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(n, indptr, jj.astype(np.int32))

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def closed_neighborhood(self, v: int) -> np.ndarray:
        """{v} together with its neighbors, sorted."""
        nb = self.neighbors(v)
        pos = np.searchsorted(nb, v)
        return np.insert(nb, pos, v)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def adjacent(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < nb.size and nb[k] == v)

    def num_edges(self) -> int:
        return int(self.indices.size // 2)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    out.append((u, int(v)))
        return out

    def neighbor_lists(self) -> list[np.ndarray]:
        return [self.neighbors(v) for v in range(self.n)]

    def to_scipy(self) -> csr_matrix:
        data = np.ones(self.indices.size, dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))


class GeometricGraph(Graph):
    """Graph of a point set under the radius rule, with its grid index."""

    def __init__(self, pointset: PointSet, r: float, indptr, indices,
                 grid: PointGridIndex):
        super().__init__(len(pointset), indptr, indices)
        self.pointset = pointset
        self.r = float(r)
        self.grid = grid

    def point(self, v: int) -> Point2:
        return self.pointset[v]

    def points_within(self, p, radius: float, tol: float = DEFAULT_TOL) -> np.ndarray:
        return self.grid.query_ball(p, radius, tol)

    def points_in_two_balls(self, c1, r1: float, c2, r2: float,
                            tol: float = DEFAULT_TOL) -> np.ndarray:
        """Sorted vertex indices inside B(c1, r1) ∩ B(c2, r2)."""
        if r1 <= r2:
            cand = self.grid.query_ball(c1, r1, tol)
            other, rad = c2, r2
        else:
            cand = self.grid.query_ball(c2, r2, tol)
            other, rad = c1, r1
        if cand.size == 0:
            return cand
        pts = self.pointset.coords[cand]
        d2 = (pts[:, 0] - other[0]) ** 2 + (pts[:, 1] - other[1]) ** 2
        return cand[d2 <= (rad + tol) ** 2]

    def nearest_vertex(self, p) -> int:
        d2 = ((self.pointset.coords - np.asarray(p, dtype=np.float64)) ** 2).sum(axis=1)
        return int(np.argmin(d2))


def build_graph(ps: PointSet, r: float, tol: float = DEFAULT_TOL) -> GeometricGraph:
    """Geometric graph with i ~ j iff ||x_i - x_j|| <= r (i != j)."""
    if r <= 0:
        raise ValueError("build_graph: radius must be positive")
    coords = ps.coords
    n = len(ps)
    grid = PointGridIndex(coords, r)
    thresh2 = (r + tol) ** 2
    src_parts: list[np.ndarray] = []
    dst_parts: list[np.ndarray] = []
    for (cx, cy), members in grid.buckets.items():
        parts = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                b = grid.buckets.get((cx + dx, cy + dy))
                if b is not None:
                    parts.append(b)
        cand = np.concatenate(parts)
        a = coords[members]
        c = coords[cand]
        d2 = (a[:, 0:1] - c[None, :, 0]) ** 2 + (a[:, 1:2] - c[None, :, 1]) ** 2
        ii, jj = np.nonzero(d2 <= thresh2)
        src = members[ii]
        dst = cand[jj]
        keep = src != dst
        src_parts.append(src[keep])
        dst_parts.append(dst[keep])
    if src_parts:
        src = np.concatenate(src_parts)
        dst = np.concatenate(dst_parts)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
    else:
        src = dst = np.empty(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return GeometricGraph(ps, r, indptr, dst.astype(np.int32), grid)


def shortest_path(g: Graph, u: int, v: int) -> list[int] | None:
    """BFS shortest path with lowest-index-predecessor tie-break.

    Returns the vertex sequence from u to v, or None if disconnected.
    """
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise IndexError("shortest_path: vertex out of range")
    if u == v:
        return [u]
    parent = np.full(g.n, -1, dtype=np.int64)
    parent[u] = u
    frontier = [u]
    found = False
    while frontier and not found:
        nxt = []
        for a in frontier:  # ascending order => lowest-index predecessor wins
            for b in g.neighbors(a):
                b = int(b)
                if parent[b] < 0:
                    parent[b] = a
                    if b == v:
                        found = True
                    nxt.append(b)
        nxt.sort()
        frontier = nxt
    if not found:
        return None
    path = [v]
    while path[-1] != u:
        path.append(int(parent[path[-1]]))
    path.reverse()
    return path


def bfs_distances(g: Graph, sources) -> np.ndarray:
    """Multi-source BFS; -1 marks unreachable vertices."""
    dist = np.full(g.n, -1, dtype=np.int64)
    frontier = np.unique(np.asarray(list(sources), dtype=np.int64))
    if frontier.size == 0:
        return dist
    dist[frontier] = 0
    d = 0
    while frontier.size:
        d += 1
        parts = [g.indices[g.indptr[v]:g.indptr[v + 1]] for v in frontier]
        nxt = np.unique(np.concatenate(parts)) if parts else np.empty(0, np.int64)
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = d
        frontier = nxt
    return dist


def girth(g: Graph) -> float:
    """Length of a shortest cycle; inf for forests.

    Per-vertex BFS, pruned to depth (best-1)//2 once a cycle is known.
    """
    best = INFINITE
    dist = np.empty(g.n, dtype=np.int64)
    for root in range(g.n):
        if best == 3:
            break
        limit = g.n if best is INFINITE else int((best - 1) // 2)
        dist.fill(-1)
        parent = {root: -1}
        dist[root] = 0
        frontier = [root]
        depth = 0
        while frontier and depth < limit:
            depth += 1
            nxt = []
            for a in frontier:
                for b in g.neighbors(a):
                    b = int(b)
                    if dist[b] < 0:
                        dist[b] = depth
                        parent[b] = a
                        nxt.append(b)
                    elif parent.get(a) != b:
                        cycle = int(dist[a] + dist[b] + 1)
                        if cycle < best:
                            best = cycle
            frontier = nxt
    return best


@dataclass
class GraphMetrics:
    diameter: float
    girth: float
    min_degree: int
    connected: bool


def graph_metrics(g: Graph) -> GraphMetrics:
    """Exact diameter, girth, minimum degree and connectivity."""
    if g.n == 0:
        return GraphMetrics(0.0, INFINITE, 0, True)
    ncomp, _ = connected_components(g.to_scipy(), directed=False)
    connected = ncomp == 1
    min_degree = int(g.degrees().min()) if g.n else 0
    if not connected:
        diameter = INFINITE
    elif g.n == 1:
        diameter = 0.0
    else:
        dmat = _csgraph_sp(g.to_scipy(), method="D", unweighted=True, directed=False)
        diameter = float(dmat.max())
    return GraphMetrics(diameter, girth(g), min_degree, connected)


def degree_girth_lower_bound(g: Graph) -> int:
    """Cop-number lower bound: delta(G) when min degree >= 3 and girth >= 5.

    Returns 1 (the vacuous bound) when the hypothesis fails.
    """
    if g.n == 0:
        return 1
    delta = int(g.degrees().min())
    if delta >= 3 and girth(g) >= 5:
        return delta
    return 1


# ---------------------------------------------------------------------------
# io: point CSV and graph JSON
# ---------------------------------------------------------------------------

def write_points_csv(ps: PointSet, path, header: bool = True,
                     meta: dict | None = None) -> None:
    """One "x,y" pair per line; optional # meta comment, optional header."""
    with open(path, "w", newline="") as fh:
        if meta is not None:
            fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        w = csv.writer(fh)
        if header:
            w.writerow(["x", "y"])
        for x, y in ps.coords:
            w.writerow([repr(float(x)), repr(float(y))])


def read_points_csv(path) -> PointSet:
    rows = []
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                continue  # header line
    return PointSet(np.asarray(rows, dtype=np.float64).reshape(-1, 2))


def graph_to_json(g: Graph, extra: dict | None = None) -> dict:
    """Schema {n, r, edges:[[i,j],...]}, plus points for geometric graphs."""
    doc: dict = {"format_version": 1, "n": g.n,
                 "r": getattr(g, "r", None),
                 "edges": [[int(a), int(b)] for a, b in g.edges()]}
    if isinstance(g, GeometricGraph):
        doc["points"] = [[float(x), float(y)] for x, y in g.pointset.coords]
    if extra:
        doc.update(extra)
    return doc


def graph_from_json(doc: dict) -> Graph:
    n = int(doc["n"])
    edges = [(int(a), int(b)) for a, b in doc.get("edges", [])]
    points = doc.get("points")
    r = doc.get("r")
    if points is not None and r is not None:
        ps = PointSet(np.asarray(points, dtype=np.float64))
        g = build_graph(ps, float(r))
        if g.n != n:
            raise ValueError("graph JSON: n does not match points")
        return g
    return Graph.from_edges(n, edges)


def save_graph_json(g: Graph, path, extra: dict | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(g, extra), fh, indent=2)
        fh.write("\n")


def load_graph_json(path) -> Graph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))
