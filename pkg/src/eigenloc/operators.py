"""Weighted graphs and the matrix operators built from them.

A WeightedGraph stores an undirected edge set (i < j, positive weights) plus
optional per-node group labels. Operators are kept sparse (CSR); callers ask
for a dense view explicitly and only below a size guard.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .errors import (
    AsymmetricFlow,
    DuplicateEdge,
    InputError,
    IsolatedNode,
    NegativeWeight,
    NonpositivePopulation,
    SizeMismatch,
)

# construction never densifies above this node count by default
DENSE_LIMIT = 5000


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected weighted graph on nodes 0..n-1.

    rows/cols/weights are parallel arrays, one entry per edge, canonically
    sorted with rows[e] < cols[e]. labels (and sublabels) are optional
    node -> integer group maps; generators use them for bead and module
    membership.
    """

    n: int
    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray
    labels: dict[int, int] | None = None
    sublabels: dict[int, int] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("graph needs at least one node")
        i = np.asarray(self.rows, dtype=np.int64).ravel()
        j = np.asarray(self.cols, dtype=np.int64).ravel()
        w = np.asarray(self.weights, dtype=np.float64).ravel()
        if not (i.size == j.size == w.size):
            raise SizeMismatch("edge arrays have different lengths")
        if np.any(w < 0):
            e = int(np.argmax(w < 0))
            raise NegativeWeight(int(i[e]), int(j[e]))
        keep = w > 0  # zero-weight edges are simply absent
        i, j, w = i[keep], j[keep], w[keep]
        if np.any(i == j):
            e = int(np.argmax(i == j))
            raise InputError(f"self-loop on node {int(i[e])}")
        lo = np.minimum(i, j)
        hi = np.maximum(i, j)
        if lo.size and (lo.min() < 0 or hi.max() >= self.n):
            raise InputError("edge endpoint out of range")
        order = np.lexsort((hi, lo))
        lo, hi, w = lo[order], hi[order], w[order]
        if lo.size > 1:
            dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if np.any(dup):
                e = int(np.argmax(dup))
                raise DuplicateEdge(int(lo[e]), int(hi[e]))
        for name, val in (("rows", lo), ("cols", hi), ("weights", w)):
            object.__setattr__(self, name, val)
        for name in ("labels", "sublabels"):
            m = getattr(self, name)
            if m is None:
                continue
            m = {int(k): int(v) for k, v in m.items()}
            if m and (min(m) < 0 or max(m) >= self.n):
                raise InputError(f"{name} key out of range")
            object.__setattr__(self, name, m)

    @classmethod
    def from_edges(cls, n: int, edges, labels=None, sublabels=None) -> "WeightedGraph":
        """Build from an iterable of (i, j, w) triples."""
        triples = list(edges)
        if triples:
            i, j, w = (np.array(x) for x in zip(*triples))
        else:
            i = j = np.zeros(0, dtype=np.int64)
            w = np.zeros(0)
        return cls(n, i, j, w, labels, sublabels)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [
            (int(i), int(j), float(w))
            for i, j, w in zip(self.rows, self.cols, self.weights)
        ]

    @property
    def edge_count(self) -> int:
        return int(self.rows.size)

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric weighted adjacency, CSR."""
        i = np.concatenate([self.rows, self.cols])
        j = np.concatenate([self.cols, self.rows])
        w = np.concatenate([self.weights, self.weights])
        return sp.coo_matrix((w, (i, j)), shape=(self.n, self.n)).tocsr()

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.asarray(self.adjacency.sum(axis=1)).ravel()

    def subgraph(self, nodes) -> "WeightedGraph":
        """Induced subgraph on the given nodes, relabeled 0..len-1 in sorted order."""
        idx = np.unique(np.asarray(list(nodes), dtype=np.int64))
        if idx.size and (idx.min() < 0 or idx.max() >= self.n):
            raise InputError("subgraph node out of range")
        pos = {int(v): p for p, v in enumerate(idx)}
        members = np.zeros(self.n, dtype=bool)
        members[idx] = True
        keep = members[self.rows] & members[self.cols]
        remap = np.zeros(self.n, dtype=np.int64)
        remap[idx] = np.arange(idx.size)
        labels = None
        if self.labels is not None:
            labels = {pos[int(v)]: self.labels[int(v)] for v in idx if int(v) in self.labels}
        subl = None
        if self.sublabels is not None:
            subl = {pos[int(v)]: self.sublabels[int(v)] for v in idx if int(v) in self.sublabels}
        return WeightedGraph(
            idx.size, remap[self.rows[keep]], remap[self.cols[keep]],
            self.weights[keep], labels, subl,
        )


@dataclass(frozen=True, eq=False)
class MigrationInput:
    """Symmetric integer flow counts plus positive populations."""

    flows: np.ndarray
    pops: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.flows, dtype=np.int64)
        P = np.asarray(self.pops, dtype=np.float64).ravel()
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise SizeMismatch("flow matrix must be square")
        if M.shape[0] != P.size:
            raise SizeMismatch("population vector length must match flow matrix")
        if np.any(M < 0):
            raise InputError("negative flow count")
        bad = np.argwhere(M != M.T)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            raise AsymmetricFlow(i, j)
        if np.any(np.diag(M) != 0):
            raise InputError("self-flows are not allowed")
        if np.any(P <= 0):
            raise NonpositivePopulation(int(np.argmax(P <= 0)))
        object.__setattr__(self, "flows", M)
        object.__setattr__(self, "pops", P)

    @property
    def n(self) -> int:
        return int(self.pops.size)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A matrix built from a graph: kind is one of laplacian / random_walk /
    normalized_adjacency. Stored sparse; .dense() is guarded by a node limit."""

    kind: str
    matrix: sp.csr_matrix
    degrees: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def dense(self, limit: int = DENSE_LIMIT) -> np.ndarray:
        if self.n > limit:
            raise ValueError(
                f"refusing to densify a {self.n}-node operator (limit {limit})"
            )
        return self.matrix.toarray()


def laplacian(g: WeightedGraph) -> OperatorMatrix:
    """L = D - W. Isolated nodes are fine here (zero rows)."""
    d = g.degrees
    L = sp.diags(d, format="csr") - g.adjacency
    return OperatorMatrix("laplacian", L.tocsr(), d)


def _require_positive_degrees(g: WeightedGraph) -> np.ndarray:
    d = g.degrees
    if np.any(d <= 0):
        raise IsolatedNode(int(np.argmax(d <= 0)))
    return d


def random_walk(g: WeightedGraph) -> OperatorMatrix:
    """P = D^-1 W, row-stochastic."""
    d = _require_positive_degrees(g)
    P = sp.diags(1.0 / d, format="csr") @ g.adjacency
    return OperatorMatrix("random_walk", P.tocsr(), d)


def normalized_adjacency(g: WeightedGraph) -> OperatorMatrix:
    """S = D^(-1/2) W D^(-1/2); symmetric, similar to the random-walk operator."""
    d = _require_positive_degrees(g)
    half = sp.diags(1.0 / np.sqrt(d), format="csr")
    S = half @ g.adjacency @ half
    return OperatorMatrix("normalized_adjacency", S.tocsr(), d)


def migration_similarity(m: MigrationInput) -> WeightedGraph:
    """Similarity graph with w_ij = flows_ij^2 / (pops_i * pops_j).

    Zero flows produce no edge.
    """
    i, j = np.nonzero(np.triu(m.flows, 1))
    f = m.flows[i, j].astype(np.float64)
    w = f * f / (m.pops[i] * m.pops[j])
    return WeightedGraph(m.n, i, j, w)
