"""Top-level analysis workflow: spectra, localization scores, transitions,
group mass tables, and sweep partitions assembled into one report."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import Partition, TransitionReport, detect_transition, sweep_cut
from .eigensolver import Eigenbasis, normalized_square_spectrum, spectrum_random_walk
from .errors import InputError, MissingLabels
from .localization import Histogram, IPRCurve, histogram, ipr_curve
from .operators import WeightedGraph

DEFAULT_K = 100


@dataclass(frozen=True, eq=False)
class EigRecord:
    """One row of the per-eigenvector report."""

    rank: int
    eigenvalue: float
    ipr: float
    hist: Histogram
    top_group: int | None
    l2_frac: float | None
    l1_frac: float | None
    degenerate: bool


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    basis: Eigenbasis
    lambdas: np.ndarray
    sq_spectrum: np.ndarray
    curve: IPRCurve
    transition: TransitionReport
    records: tuple[EigRecord, ...]
    partitions: tuple[tuple[int, Partition], ...]
    group_table: tuple[tuple[int, int, float, float], ...] | None
    window: int
    tau: float


def group_mass_table(basis: Eigenbasis, labels) -> list[tuple[int, int, float, float]]:
    """(rank, group, l2 fraction, l1 fraction) for every rank and group.

    Labels must cover every node; each rank's l2 fractions sum to one.
    """
    n = basis.n
    if labels is None:
        raise MissingLabels("graph carries no labels")
    try:
        lab = np.array([labels[i] for i in range(n)], dtype=np.int64)
    except KeyError as exc:
        raise MissingLabels(f"node {exc.args[0]} has no label") from exc
    groups, compact = np.unique(lab, return_inverse=True)
    rows: list[tuple[int, int, float, float]] = []
    for j in range(basis.k):
        v = basis.vectors[:, j]
        sq = v * v
        ab = np.abs(v)
        l2 = np.bincount(compact, weights=sq, minlength=groups.size) / sq.sum()
        l1 = np.bincount(compact, weights=ab, minlength=groups.size) / ab.sum()
        for gi, group in enumerate(groups):
            rows.append((j, int(group), float(l2[gi]), float(l1[gi])))
    return rows


def analyze(
    g: WeightedGraph,
    k: int | None = None,
    sweep_ranks=(),
    window: int = 10,
    tau: float = 5.0,
    nbins: int = 50,
) -> AnalysisReport:
    """Full pipeline over the top-k spectrum (default k = min(n, 100)).

    Curves shorter than window+1 entries report no transition rather than
    failing: a two-eigenvector curve has nothing to detect against.
    """
    if k is None:
        k = min(g.n, DEFAULT_K)
    sweep_ranks = tuple(int(r) for r in sweep_ranks)
    for r in sweep_ranks:
        if not 0 <= r < k:
            raise InputError(f"sweep rank {r} outside computed range 0..{k - 1}")
    basis = spectrum_random_walk(g, k)
    curve = ipr_curve(basis)
    if len(curve) >= window + 1:
        transition = detect_transition(curve, window, tau)
    else:
        transition = TransitionReport(None, None, None)

    table = group_mass_table(basis, g.labels) if g.labels is not None else None
    best: dict[int, tuple[int, float, float]] = {}
    if table is not None:
        for rank, group, l2, l1 in table:
            if rank not in best or l2 > best[rank][1]:
                best[rank] = (group, l2, l1)

    records = []
    for j in range(basis.k):
        top = best.get(j)
        records.append(
            EigRecord(
                rank=j,
                eigenvalue=float(basis.lambdas[j]),
                ipr=curve.entries[j][2],
                hist=histogram(basis.vectors[:, j], nbins),
                top_group=top[0] if top else None,
                l2_frac=top[1] if top else None,
                l1_frac=top[2] if top else None,
                degenerate=bool(basis.degenerate[j]),
            )
        )

    partitions = tuple((r, sweep_cut(basis.vectors[:, r], g)) for r in sweep_ranks)
    return AnalysisReport(
        basis=basis,
        lambdas=basis.lambdas,
        sq_spectrum=normalized_square_spectrum(basis.lambdas),
        curve=curve,
        transition=transition,
        records=tuple(records),
        partitions=partitions,
        group_table=tuple(table) if table is not None else None,
        window=window,
        tau=tau,
    )
