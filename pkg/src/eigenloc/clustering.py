"""Eigenvector-driven partitioning and the localization transition detector."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import (
    CurveTooShort,
    DisconnectedGraph,
    DisconnectedSubgraph,
    InputError,
    SizeMismatch,
    SubsetTooSmall,
)
from .eigensolver import _sign_normalize, spectrum_random_walk
from .localization import IPRCurve
from .operators import WeightedGraph


@dataclass(frozen=True, eq=False)
class Partition:
    """Two-way node split. conductance is None for cuts never evaluated
    against a graph (plain sign cuts)."""

    side: np.ndarray
    conductance: float | None = None

    @property
    def is_trivial(self) -> bool:
        return bool(self.side.all() or (~self.side).all())


@dataclass(frozen=True)
class TransitionReport:
    """First localized rank, if any.

    baseline is the median IPR over the window preceding the transition;
    factor is the trigger ratio (transition IPR over the window minimum),
    which is >= the detection threshold whenever rank is present.
    """

    rank: int | None
    baseline: float | None
    factor: float | None


def sweep_cut(v, g: WeightedGraph) -> Partition:
    """Minimum-conductance prefix along v.

    Nodes are sorted by v descending (ties by index); each of the n-1
    prefixes S is scored by phi(S) = cut(S) / min(vol(S), vol(complement));
    the smallest minimizing prefix wins.
    """
    v = np.asarray(v, dtype=np.float64).ravel()
    n = g.n
    if v.size != n:
        raise SizeMismatch(f"vector length {v.size} != node count {n}")
    if n < 2:
        raise InputError("sweep cut needs at least 2 nodes")
    ncomp, _ = connected_components(g.adjacency, directed=False)
    if ncomp > 1:
        raise DisconnectedGraph("sweep cut needs a connected graph")

    order = np.lexsort((np.arange(n), -v))
    A = g.adjacency
    d = g.degrees
    total = float(d.sum())
    in_s = np.zeros(n, dtype=bool)
    vol = 0.0
    cut = 0.0
    best_phi = np.inf
    best_t = -1
    for t in range(n - 1):
        u = order[t]
        row = slice(A.indptr[u], A.indptr[u + 1])
        to_s = float(A.data[row][in_s[A.indices[row]]].sum())
        cut += d[u] - 2.0 * to_s
        vol += d[u]
        in_s[u] = True
        phi = cut / min(vol, total - vol)
        if phi < best_phi:
            best_phi = phi
            best_t = t
    side = np.zeros(n, dtype=bool)
    side[order[: best_t + 1]] = True
    return Partition(side, float(best_phi))


def sign_cut(v) -> Partition:
    """side_i = (v_i >= 0); zero entries join the nonnegative side."""
    v = np.asarray(v, dtype=np.float64).ravel()
    return Partition(v >= 0.0, None)


def partition_agreement(a: Partition, b: Partition) -> float:
    """Fraction of nodes on matching sides, maximized over the label swap."""
    if a.side.size != b.side.size:
        raise SizeMismatch("partitions cover different node counts")
    same = float(np.mean(a.side == b.side))
    return max(same, 1.0 - same)


def restrict_and_compare(v_full, subset, g: WeightedGraph):
    """Compare a full-graph eigenvector against its subgraph-native twin.

    Returns (distance, v_restricted, v_local): v_restricted is v_full cut
    down to the subset, renormalized and sign-normalized; v_local is the top
    nontrivial eigenvector of the induced subgraph's random-walk operator;
    distance is the max-entry absolute difference after the better global
    sign flip.
    """
    v_full = np.asarray(v_full, dtype=np.float64).ravel()
    if v_full.size != g.n:
        raise SizeMismatch(f"vector length {v_full.size} != node count {g.n}")
    idx = np.unique(np.asarray(list(subset), dtype=np.int64))
    if idx.size < 2:
        raise SubsetTooSmall("restriction needs at least 2 nodes")
    sub = g.subgraph(idx)
    ncomp, _ = connected_components(sub.adjacency, directed=False)
    if ncomp > 1:
        raise DisconnectedSubgraph("subset induces a disconnected subgraph")
    v_r = v_full[idx]
    norm = np.linalg.norm(v_r)
    if norm == 0.0:
        raise InputError("vector vanishes on the subset")
    v_r = _sign_normalize((v_r / norm)[:, None])[:, 0]
    basis = spectrum_random_walk(sub, k=2)
    v_local = basis.vectors[:, 1]
    dist = min(
        float(np.max(np.abs(v_r - v_local))),
        float(np.max(np.abs(v_r + v_local))),
    )
    return dist, v_r, v_local


def detect_transition(
    curve: IPRCurve, window: int = 10, factor: float = 5.0
) -> TransitionReport:
    """First rank whose IPR jumps clear of the preceding delocalized floor.

    A rank j >= 2 fires when ipr_j >= factor * min(ipr over the up-to-window
    preceding ranks). The minimum anchors the floor at the flattest preceding
    eigenvector; on a connected graph rank 0 scores exactly 1/n, so factor
    reads "localized on <= 1/factor of the nodes". The median of the same
    window is reported as the baseline level.
    """
    if window < 1:
        raise InputError("window must be >= 1")
    if factor <= 1:
        # a jump factor at or below 1 would fire on every curve
        raise InputError("factor must be > 1")
    values = curve.values
    if values.size < window + 1:
        raise CurveTooShort(
            f"curve has {values.size} entries; need at least {window + 1}"
        )
    for j in range(2, values.size):
        ref = values[max(0, j - window) : j]
        floor = float(ref.min())
        if values[j] >= factor * floor:
            return TransitionReport(j, float(np.median(ref)), float(values[j] / floor))
    return TransitionReport(None, None, None)
