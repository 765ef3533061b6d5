"""Shared builders for the test suite."""
import numpy as np

from eigenloc import WeightedGraph


def graph_from_dense(A, labels=None, sublabels=None) -> WeightedGraph:
    A = np.asarray(A, dtype=np.float64)
    i, j = np.nonzero(np.triu(A, 1))
    return WeightedGraph(A.shape[0], i, j, A[i, j], labels, sublabels)


def random_connected_graph(rng, n_max=200, weighted=None) -> WeightedGraph:
    """Random spanning tree plus ER edges; optionally random positive weights."""
    n = int(rng.integers(2, n_max + 1))
    pairs = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        pairs.add((u, v))
    p = float(rng.uniform(0.02, 0.3))
    iu, ju = np.triu_indices(n, 1)
    extra = rng.random(iu.size) < p
    pairs.update((int(a), int(b)) for a, b in zip(iu[extra], ju[extra]))
    pairs = sorted(pairs)
    i = np.array([p_[0] for p_ in pairs])
    j = np.array([p_[1] for p_ in pairs])
    if weighted is None:
        weighted = bool(rng.integers(0, 2))
    w = rng.uniform(0.1, 2.0, size=i.size) if weighted else np.ones(i.size)
    return WeightedGraph(n, i, j, w)


def path_graph(n: int) -> WeightedGraph:
    i = np.arange(n - 1)
    return WeightedGraph(n, i, i + 1, np.ones(n - 1))


def complete_graph(n: int) -> WeightedGraph:
    i, j = np.triu_indices(n, 1)
    return WeightedGraph(n, i, j, np.ones(i.size))


def two_triangles_bridge() -> WeightedGraph:
    """Triangles {0,1,2} and {3,4,5} joined by the single edge (2,3)."""
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
    i = np.array([e[0] for e in edges])
    j = np.array([e[1] for e in edges])
    return WeightedGraph(6, i, j, np.ones(7))
