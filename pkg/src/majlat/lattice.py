"""Meet, join and least-concave-majorant on the majorization lattice.

Binary operations zero-pad their inputs to the longer length and keep that
length in the output.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import EmptyList
from .pmf import (
    OrderedPmf,
    PmfLike,
    RawVector,
    _from_increments,
    as_pmf,
    pad_arrays,
)


@dataclass(frozen=True)
class LatticePair:
    meet: OrderedPmf
    join: OrderedPmf
    beta: RawVector
    lcm_applied: bool


def _envelope(ps: Sequence[PmfLike], pick) -> np.ndarray:
    """Increments of the pointwise min/max (``pick`` = argmin/argmax) of the prefix sums.

    Where two consecutive envelope points come from the same input, that
    input's own mass is used instead of a difference of cumulative sums.
    """
    rows = pad_arrays(*(as_pmf(p).masses for p in ps))
    # canonical input order keeps the result bitwise symmetric under ties
    rows.sort(key=lambda r: tuple(r.tolist()))
    masses = np.vstack(rows)
    cums = np.cumsum(masses, axis=1)
    src = pick(cums, axis=0)
    cols = np.arange(cums.shape[1])
    env = cums[src, cols]
    inc = np.diff(env, prepend=0.0)
    same = np.concatenate([[True], src[1:] == src[:-1]])
    inc[same] = masses[src[same], cols[same]]
    return np.clip(inc, 0.0, None)


def meet(p: PmfLike, q: PmfLike) -> OrderedPmf:
    """Greatest lower bound: prefix sums are the pointwise minimum."""
    return _from_increments(_envelope([p, q], np.argmin))


def beta_vector(p: PmfLike, q: PmfLike) -> RawVector:
    """Vector whose prefix sums are the pointwise maximum; may be unordered."""
    return RawVector(_envelope([p, q], np.argmax))


def upper_hull_values(cum: np.ndarray) -> np.ndarray:
    """Least concave majorant of the points ``(k, cum[k-1])`` with ``(0, 0)`` prepended,
    evaluated at ``k = 1..n``.

    Andrew's monotone chain over x-sorted points, O(n).
    """
    n = len(cum)
    ys = np.concatenate([[0.0], cum])
    hull: list[int] = []
    for k in range(n + 1):
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            # drop j if it lies on or below the chord i -> k
            if (ys[j] - ys[i]) * (k - i) <= (ys[k] - ys[i]) * (j - i):
                hull.pop()
            else:
                break
        hull.append(k)
    return np.interp(np.arange(1, n + 1), hull, ys[hull])


def concavify(v: RawVector | Sequence[float] | np.ndarray) -> OrderedPmf:
    """Least ordered PMF whose prefix sums dominate those of ``v``."""
    values = v.values if isinstance(v, RawVector) else np.asarray(v, dtype=float)
    if np.all(np.diff(values) <= 0):
        return _from_increments(values.copy())
    return _from_increments(np.diff(upper_hull_values(np.cumsum(values)), prepend=0.0))


def join(p: PmfLike, q: PmfLike) -> OrderedPmf:
    """Least upper bound: concavified pointwise maximum of the prefix sums."""
    return concavify(beta_vector(p, q))


def lattice_pair(p: PmfLike, q: PmfLike) -> LatticePair:
    beta = beta_vector(p, q)
    return LatticePair(
        meet=meet(p, q),
        join=concavify(beta),
        beta=beta,
        lcm_applied=not beta.is_ordered(),
    )


def meet_many(ps: Sequence[PmfLike]) -> OrderedPmf:
    if len(ps) == 0:
        raise EmptyList("meet of an empty family")
    return _from_increments(_envelope(ps, np.argmin))


def join_many(ps: Sequence[PmfLike]) -> OrderedPmf:
    # one hull over the pooled maximum rather than a fold of binary joins
    if len(ps) == 0:
        raise EmptyList("join of an empty family")
    return concavify(_envelope(ps, np.argmax))
