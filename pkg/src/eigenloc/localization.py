"""Per-eigenvector and per-node localization scores.

ipr scores one eigenvector: 1/n when perfectly uniform, 1 when all mass sits
on a single node. csl spreads one unit of leverage across nodes. Both insist
on unit-L2 input instead of silently rescaling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySubset, InputError, NotNormalized
from .eigensolver import Eigenbasis

NORM_TOL = 1e-6  # |sum(v^2) - 1| above this is rejected


@dataclass(frozen=True, eq=False)
class IPRCurve:
    """Sequence of (rank, eigenvalue, ipr) in descending-eigenvalue order."""

    entries: tuple[tuple[int, float, float], ...]
    n: int

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> np.ndarray:
        return np.array([e[2] for e in self.entries])


@dataclass(frozen=True, eq=False)
class CSLVector:
    """Componentwise statistical leverage of one eigenvector."""

    scores: np.ndarray
    rank: int | None = None


@dataclass(frozen=True, eq=False)
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray


def _check_unit(v: np.ndarray) -> float:
    sq = float(np.sum(v * v))
    if abs(sq - 1.0) > NORM_TOL:
        raise NotNormalized(f"vector has squared norm {sq:.9g}, expected 1")
    return sq


def ipr(v) -> float:
    """Inverse participation ratio of a unit vector.

    Computed in the scale-invariant form sum(v^4)/sum(v^2)^2, which equals
    the plain sum(v^4)/sum(v^2) at unit norm and is confined to [1/n, 1]
    for any accepted input.
    """
    v = np.asarray(v, dtype=np.float64).ravel()
    sq = _check_unit(v)
    return float(np.sum(v ** 4) / (sq * sq))


def csl(v, rank: int | None = None) -> CSLVector:
    """Leverage scores v_i^2 / sum(v^2); nonnegative, summing to one."""
    v = np.asarray(v, dtype=np.float64).ravel()
    sq = _check_unit(v)
    return CSLVector(v * v / sq, rank)


def ipr_curve(basis: Eigenbasis) -> IPRCurve:
    entries = tuple(
        (j, float(basis.lambdas[j]), ipr(basis.vectors[:, j]))
        for j in range(basis.k)
    )
    return IPRCurve(entries, basis.n)


def mass_concentration(v, subset) -> tuple[float, float]:
    """(L2 fraction, L1 fraction) of the vector's mass on the subset."""
    v = np.asarray(v, dtype=np.float64).ravel()
    idx = np.unique(np.asarray(list(subset), dtype=np.int64))
    if idx.size == 0:
        raise EmptySubset("mass_concentration needs a nonempty subset")
    if idx.min() < 0 or idx.max() >= v.size:
        raise InputError("subset index out of range")
    sq = v * v
    ab = np.abs(v)
    return float(sq[idx].sum() / sq.sum()), float(ab[idx].sum() / ab.sum())


def histogram(v, nbins: int = 50) -> Histogram:
    """Uniform-width bins over [min, max]; the last bin is right-inclusive.

    A constant vector gets its range widened to 1e-12 so one bin holds all
    entries.
    """
    if nbins < 1:
        raise InputError("nbins must be >= 1")
    v = np.asarray(v, dtype=np.float64).ravel()
    lo, hi = float(v.min()), float(v.max())
    if hi - lo < 1e-12:
        hi = lo + 1e-12
    counts, edges = np.histogram(v, bins=nbins, range=(lo, hi))
    return Histogram(edges, counts)
