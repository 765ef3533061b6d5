"""Synthetic graph families: ER blocks, planted 2-modules, bead chains, grids.

A bead chain is a sequence of base graphs ("beads") joined by an interaction
model: path_random couples consecutive beads by Bernoulli edges, path_identity
couples same-index nodes of consecutive equal-size beads with one scalar
weight, global_random couples every bead pair.

Randomness contract: everything derives from numpy's default_rng over
SeedSequence(entropy=seed, spawn_key=...), with one substream per bead
(spawn_key (0, t)), one per consecutive-bead pair ((1, t)), and one for the
global coupling ((2, 0)). Appending beads to a chain therefore never changes
the edges of earlier beads, and generate_er(n, p, seed) draws the identical
edge set as bead 0 of any chain with the same seed.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UnequalBeadSizes
from .operators import WeightedGraph


@dataclass(frozen=True)
class ERBead:
    n: int
    p: float
    label: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("bead size must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise InputError("edge probability must lie in [0, 1]")

    @property
    def size(self) -> int:
        return self.n


@dataclass(frozen=True)
class TwoModuleBead:
    """Two ER blocks with intra-density p1 and cross-density p2."""

    n1: int
    n2: int
    p1: float
    p2: float
    label: int | None = None

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise InputError("module sizes must be >= 1")
        for p in (self.p1, self.p2):
            if not 0.0 <= p <= 1.0:
                raise InputError("edge probability must lie in [0, 1]")
        if self.p1 < self.p2:
            warnings.warn("p1 < p2: the planted split is anti-modular", stacklevel=2)

    @property
    def size(self) -> int:
        return self.n1 + self.n2


Bead = ERBead | TwoModuleBead


@dataclass(frozen=True)
class PathRandom:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise InputError("coupling probability must lie in [0, 1]")


@dataclass(frozen=True)
class PathIdentity:
    eps: float

    def __post_init__(self):
        if self.eps <= 0:
            raise InputError("identity coupling weight must be > 0")


@dataclass(frozen=True)
class GlobalRandom:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise InputError("coupling probability must lie in [0, 1]")


Interaction = PathRandom | PathIdentity | GlobalRandom


@dataclass(frozen=True)
class TwoLevelSpec:
    beads: tuple[Bead, ...]
    interaction: Interaction
    seed: int

    def __post_init__(self):
        beads = tuple(self.beads)
        object.__setattr__(self, "beads", beads)
        if len(beads) == 0:
            raise InputError("need at least one bead")
        if isinstance(self.interaction, PathIdentity):
            sizes = {b.size for b in beads}
            if len(sizes) > 1:
                raise UnequalBeadSizes(
                    f"identity coupling needs equal bead sizes, got {sorted(sizes)}"
                )

    @property
    def n(self) -> int:
        return sum(b.size for b in self.beads)


def _stream(seed: int, key: tuple[int, ...]) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def _er_pairs(rng, nodes: np.ndarray, p: float):
    """Bernoulli(p) over unordered pairs, upper-triangle index order."""
    n = nodes.size
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    return nodes[iu[mask]], nodes[ju[mask]]


def _bipartite_pairs(rng, a: np.ndarray, b: np.ndarray, p: float):
    A, B = np.meshgrid(a, b, indexing="ij")
    mask = rng.random(A.shape) < p
    return A[mask], B[mask]


def _bead_pairs(rng, bead: Bead, nodes: np.ndarray):
    if isinstance(bead, ERBead):
        return _er_pairs(rng, nodes, bead.p)
    first = nodes[: bead.n1]
    second = nodes[bead.n1 :]
    i1, j1 = _er_pairs(rng, first, bead.p1)
    i2, j2 = _er_pairs(rng, second, bead.p1)
    ic, jc = _bipartite_pairs(rng, first, second, bead.p2)
    return np.concatenate([i1, i2, ic]), np.concatenate([j1, j2, jc])


def generate_er(n: int, p: float, seed: int) -> WeightedGraph:
    """ER graph: each pair present independently with probability p, unit weight."""
    bead = ERBead(n, p)
    i, j = _bead_pairs(_stream(seed, (0, 0)), bead, np.arange(n))
    return WeightedGraph(n, i, j, np.ones(i.size))


def generate_two_module(
    n1: int, n2: int, p1: float, p2: float, seed: int
) -> WeightedGraph:
    """Planted 2-module; labels record module membership (0 or 1)."""
    bead = TwoModuleBead(n1, n2, p1, p2)
    n = bead.size
    i, j = _bead_pairs(_stream(seed, (0, 0)), bead, np.arange(n))
    labels = {v: (0 if v < n1 else 1) for v in range(n)}
    return WeightedGraph(n, i, j, np.ones(i.size), labels)


def generate_bead_chain(spec: TwoLevelSpec) -> WeightedGraph:
    """Union of bead subgraphs plus interaction edges.

    Node labels record the bead index (or the bead's explicit label);
    sublabels record module membership inside 2-module beads.
    """
    offsets = np.cumsum([0] + [b.size for b in spec.beads])
    n = int(offsets[-1])
    parts_i: list[np.ndarray] = []
    parts_j: list[np.ndarray] = []
    parts_w: list[np.ndarray] = []
    labels: dict[int, int] = {}
    sublabels: dict[int, int] = {}
    for t, bead in enumerate(spec.beads):
        nodes = np.arange(offsets[t], offsets[t + 1])
        i, j = _bead_pairs(_stream(spec.seed, (0, t)), bead, nodes)
        parts_i.append(i)
        parts_j.append(j)
        parts_w.append(np.ones(i.size))
        group = bead.label if bead.label is not None else t
        for v in nodes:
            labels[int(v)] = group
        if isinstance(bead, TwoModuleBead):
            for v in nodes[: bead.n1]:
                sublabels[int(v)] = 0
            for v in nodes[bead.n1 :]:
                sublabels[int(v)] = 1

    inter = spec.interaction
    if isinstance(inter, PathRandom):
        for t in range(len(spec.beads) - 1):
            a = np.arange(offsets[t], offsets[t + 1])
            b = np.arange(offsets[t + 1], offsets[t + 2])
            i, j = _bipartite_pairs(_stream(spec.seed, (1, t)), a, b, inter.p)
            parts_i.append(i)
            parts_j.append(j)
            parts_w.append(np.ones(i.size))
    elif isinstance(inter, PathIdentity):
        for t in range(len(spec.beads) - 1):
            a = np.arange(offsets[t], offsets[t + 1])
            b = np.arange(offsets[t + 1], offsets[t + 2])
            parts_i.append(a)
            parts_j.append(b)
            parts_w.append(np.full(a.size, inter.eps))
    else:
        rng = _stream(spec.seed, (2, 0))
        for t in range(len(spec.beads)):
            for u in range(t + 1, len(spec.beads)):
                a = np.arange(offsets[t], offsets[t + 1])
                b = np.arange(offsets[u], offsets[u + 1])
                i, j = _bipartite_pairs(rng, a, b, inter.p)
                parts_i.append(i)
                parts_j.append(j)
                parts_w.append(np.ones(i.size))

    i = np.concatenate(parts_i) if parts_i else np.zeros(0, dtype=np.int64)
    j = np.concatenate(parts_j) if parts_j else np.zeros(0, dtype=np.int64)
    w = np.concatenate(parts_w) if parts_w else np.zeros(0)
    return WeightedGraph(n, i, j, w, labels, sublabels or None)


def tensor_block(k: int, w: WeightedGraph) -> WeightedGraph:
    """k disjoint copies of w; labels record the copy index.

    If w carries labels of its own they land in sublabels, shifted per copy.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    n = w.n
    parts_i = [w.rows + c * n for c in range(k)]
    parts_j = [w.cols + c * n for c in range(k)]
    weights = np.tile(w.weights, k)
    labels = {c * n + v: c for c in range(k) for v in range(n)}
    sublabels = None
    if w.labels is not None:
        sublabels = {c * n + v: g for c in range(k) for v, g in w.labels.items()}
    return WeightedGraph(
        k * n, np.concatenate(parts_i), np.concatenate(parts_j), weights,
        labels, sublabels,
    )


def generate_grid(rows: int, cols: int) -> WeightedGraph:
    """4-neighbor lattice with unit weights."""
    if rows < 1 or cols < 1:
        raise InputError("grid dimensions must be >= 1")
    idx = np.arange(rows * cols).reshape(rows, cols)
    right = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()])
    down = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()])
    i = np.concatenate([right[0], down[0]])
    j = np.concatenate([right[1], down[1]])
    return WeightedGraph(rows * cols, i, j, np.ones(i.size))


def matched_er_density(n1: int, n2: int, p1: float, p2: float) -> float:
    """ER density whose expected edge count matches a 2-module of the same size."""
    intra = n1 * (n1 - 1) // 2 + n2 * (n2 - 1) // 2
    cross = n1 * n2
    total = intra + cross
    if total == 0:
        raise InputError("bead too small to define a density")
    return (p1 * intra + p2 * cross) / total
