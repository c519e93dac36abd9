import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from geocops import Graph, PointSet, build_graph


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def random_tree(n, rng):
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    return Graph.from_edges(n, edges)


def random_er_graph(n, p, rng):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_rgg(n, r, rng):
    ps = PointSet(rng.random((n, 2)))
    return build_graph(ps, r)


def random_connected_rgg(n, r, rng, max_tries=200):
    from geocops import graph_metrics
    from scipy.sparse.csgraph import connected_components
    for _ in range(max_tries):
        g = random_rgg(n, r, rng)
        ncomp, _ = connected_components(g.to_scipy(), directed=False)
        if ncomp == 1:
            return g
    raise RuntimeError("could not sample a connected instance; raise r")
