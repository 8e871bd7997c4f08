"""Independent and comonotone couplings of ordered PMFs.

Couplings are stored sparsely as parallel ``rows``/``cols``/``masses`` arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .exceptions import EmptyList, NotComonotone
from .pmf import (
    SUPP_TOL,
    OrderedPmf,
    PmfLike,
    RawVector,
    _from_increments,
    as_pmf,
)

# breakpoints closer than this are merged in the multi-marginal refinement
MERGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Coupling:
    rows: np.ndarray
    cols: np.ndarray
    masses: np.ndarray
    row_marginal: OrderedPmf
    col_marginal: OrderedPmf
    kind: str = "general"

    @property
    def cells(self) -> list[tuple[int, int, float]]:
        return list(zip(self.rows.tolist(), self.cols.tolist(), self.masses.tolist()))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_marginal), len(self.col_marginal)

    def __len__(self) -> int:
        return self.masses.size

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        np.add.at(out, (self.rows, self.cols), self.masses)
        return out

    def is_staircase(self) -> bool:
        """No two cells (i, j), (i', j') with i < i' and j > j'."""
        order = np.lexsort((self.cols, self.rows))
        return bool(np.all(np.diff(self.cols[order]) >= 0))


@dataclass(frozen=True, eq=False)
class RefinementCoupling:
    """Common refinement of the breakpoint sets of several PMFs.

    ``labels[k]`` holds, for interval ``k``, the index taken by every marginal's
    quantile map on that interval.
    """

    lengths: np.ndarray
    labels: np.ndarray
    marginals: tuple[OrderedPmf, ...]

    @property
    def intervals(self) -> list[tuple[float, tuple[int, ...]]]:
        return [(float(l), tuple(lab)) for l, lab in zip(self.lengths, self.labels.tolist())]

    def __len__(self) -> int:
        return self.lengths.size

    @property
    def masses(self) -> np.ndarray:
        return self.lengths


def independent_coupling(p: PmfLike, q: PmfLike) -> Coupling:
    p, q = as_pmf(p), as_pmf(q)
    ri = np.flatnonzero(p.masses > SUPP_TOL)
    cj = np.flatnonzero(q.masses > SUPP_TOL)
    rows, cols = np.meshgrid(ri, cj, indexing="ij")
    masses = np.outer(p.masses[ri], q.masses[cj])
    return Coupling(rows.ravel(), cols.ravel(), masses.ravel(), p, q, kind="independent")


def comonotone_coupling(p: PmfLike, q: PmfLike) -> Coupling:
    """North-west corner coupling: cell (i, j) carries the overlap of the
    i-th interval of ``p`` and the j-th interval of ``q`` on ``[0, 1]``."""
    p, q = as_pmf(p), as_pmf(q)
    P, Q = np.cumsum(p.masses), np.cumsum(q.masses)
    n, m = len(P), len(Q)
    rows, cols, masses = [], [], []
    i = j = 0
    lo = 0.0
    while i < n and j < m:
        hi = min(P[i], Q[j])
        if hi - lo > 0:
            rows.append(i)
            cols.append(j)
            masses.append(hi - lo)
        lo = max(lo, hi)
        pi, qj = P[i], Q[j]
        if pi <= qj:
            i += 1
        if qj <= pi:
            j += 1
    return Coupling(
        np.array(rows, dtype=int),
        np.array(cols, dtype=int),
        np.array(masses, dtype=float),
        p,
        q,
        kind="comonotone",
    )


def comonotone_many(ps: Sequence[PmfLike]) -> RefinementCoupling:
    """Couple all marginals through one uniform variable via their quantile maps."""
    if len(ps) == 0:
        raise EmptyList("no marginals")
    pmfs = tuple(as_pmf(p) for p in ps)
    cums = [np.cumsum(p.masses) for p in pmfs]
    pts = np.sort(np.concatenate([[0.0, 1.0], *cums]))
    pts = pts[(pts >= 0.0) & (pts <= 1.0)]
    merged = [pts[0]]
    for x in pts[1:]:
        if x - merged[-1] > MERGE_TOL:
            merged.append(x)
    # the last breakpoint is 1 by construction
    merged[-1] = 1.0
    edges = np.array(merged)
    right = edges[1:]
    lengths = np.diff(edges)
    labels = np.column_stack(
        [np.minimum(np.searchsorted(c, right - MERGE_TOL, side="left"), len(c) - 1) for c in cums]
    )
    return RefinementCoupling(lengths, labels.astype(int), pmfs)


def sorted_mass_vector(c: Coupling | RefinementCoupling, length: int | None = None) -> OrderedPmf:
    out = _from_increments(np.asarray(c.masses, dtype=float).copy())
    return out if length is None else out.padded(length)


def aggregate_by_extremum(c: Coupling, which: Literal["max", "min"]) -> RawVector:
    """Sum comonotone cell masses by ``max(i, j)`` (the meet) or ``min(i, j)`` (beta)."""
    if not c.is_staircase():
        raise NotComonotone("coupling support is not a monotone staircase")
    if which == "max":
        idx = np.maximum(c.rows, c.cols)
    elif which == "min":
        idx = np.minimum(c.rows, c.cols)
    else:
        raise ValueError(f"which must be 'max' or 'min', got {which!r}")
    n = max(c.shape)
    return RawVector(np.bincount(idx, weights=c.masses, minlength=n)[:n])


def marginal(c: Coupling | RefinementCoupling, axis: Literal["row", "col"] | int) -> OrderedPmf:
    """Recover a marginal by summing the coupling along the other axis(es)."""
    if isinstance(c, RefinementCoupling):
        k = int(axis)
        n = len(c.marginals[k])
        return _from_increments(np.bincount(c.labels[:, k], weights=c.lengths, minlength=n))
    if axis in ("row", 0):
        idx, n = c.rows, c.shape[0]
    elif axis in ("col", 1):
        idx, n = c.cols, c.shape[1]
    else:
        raise ValueError(f"axis must be 'row' or 'col', got {axis!r}")
    return _from_increments(np.bincount(idx, weights=c.masses, minlength=n))
