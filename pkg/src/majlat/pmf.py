"""Ordered probability mass functions, prefix sums, majorization and Lorenz curves.

Indices are 0-based throughout the Python API.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .exceptions import (
    EmptyInput,
    InvalidPartition,
    NegativeMass,
    NotNormalized,
    OutOfDomain,
)

NORM_TOL = 1e-9
CMP_TOL = 1e-12
SUPP_TOL = 1e-12
# entries in [-NEG_CLAMP, 0) are treated as rounding noise and clamped to 0
NEG_CLAMP = 1e-12


@dataclass(frozen=True, eq=False)
class OrderedPmf:
    """A finite probability vector stored in nonincreasing order.

    Use :func:`make_pmf` to build one from arbitrary (unsorted) data; the
    direct constructor expects already-sorted, normalized masses.
    """

    masses: np.ndarray

    def __post_init__(self):
        m = np.array(self.masses, dtype=float)
        if m.ndim != 1 or m.size == 0:
            raise EmptyInput("a PMF needs at least one mass")
        if np.any(m < 0):
            raise NegativeMass(f"negative mass {m.min()!r}")
        if np.any(np.diff(m) > 0):
            raise ValueError("masses must be nonincreasing; use make_pmf to sort")
        if abs(m.sum() - 1.0) > NORM_TOL:
            raise NotNormalized(f"masses sum to {m.sum()!r}")
        m.setflags(write=False)
        object.__setattr__(self, "masses", m)

    def __len__(self) -> int:
        return self.masses.size

    def __iter__(self):
        return iter(self.masses.tolist())

    def __getitem__(self, i):
        return self.masses[i]

    def __array__(self, dtype=None, copy=None):
        return self.masses if dtype is None else self.masses.astype(dtype)

    def __repr__(self) -> str:
        body = ", ".join(f"{x:.12g}" for x in self.masses)
        return f"OrderedPmf({body})"

    def tolist(self) -> list[float]:
        return self.masses.tolist()

    def padded(self, n: int) -> "OrderedPmf":
        """Return a copy zero-padded to length ``n`` (never truncates)."""
        if n <= len(self):
            return self
        return OrderedPmf(np.concatenate([self.masses, np.zeros(n - len(self))]))

    def trimmed(self) -> "OrderedPmf":
        """Drop trailing masses at or below ``SUPP_TOL`` (keeps at least one)."""
        k = max(support_size(self), 1)
        return self if k == len(self) else OrderedPmf(self.masses[:k])

    def equals(self, other: "OrderedPmf", tol: float = CMP_TOL) -> bool:
        """Elementwise comparison after zero-padding both to a common length."""
        a, b = pad_arrays(self.masses, as_pmf(other).masses)
        return bool(np.all(np.abs(a - b) <= tol))


PmfLike = Union[OrderedPmf, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class LorenzCurve:
    """Prefix-sum breakpoints ``P_1..P_n`` of an ordered PMF (``P_0 = 0`` implicit)."""

    breakpoints: np.ndarray

    def __len__(self) -> int:
        return len(self.breakpoints)

    def points(self) -> list[tuple[int, float]]:
        """All curve vertices ``(k, P_k)`` including the origin."""
        return [(0, 0.0)] + [(k + 1, float(v)) for k, v in enumerate(self.breakpoints)]


@dataclass(frozen=True)
class RawVector:
    """Nonnegative vector summing to one, not necessarily ordered."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise EmptyInput("empty vector")
        if np.any(v < -NEG_CLAMP):
            raise NegativeMass(f"negative entry {v.min()!r}")
        if abs(v.sum() - 1.0) > NORM_TOL:
            raise NotNormalized(f"entries sum to {v.sum()!r}")
        v = np.clip(v, 0.0, None)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def tolist(self) -> list[float]:
        return self.values.tolist()

    def is_ordered(self) -> bool:
        return bool(np.all(np.diff(self.values) <= 0))


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of 0-based indices covering ``range(n)``."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(sorted(b)) for b in blocks))

    def validate(self, n: int) -> None:
        seen: list[int] = []
        for b in self.blocks:
            if not b:
                raise InvalidPartition("empty block")
            seen.extend(b)
        if sorted(seen) != list(range(n)):
            raise InvalidPartition(f"blocks do not partition range({n}): {self.blocks}")


def make_pmf(values, strict: bool = True) -> OrderedPmf:
    """Build an :class:`OrderedPmf` by sorting ``values`` in nonincreasing order.

    Entries slightly below zero (down to ``-1e-12``) are clamped. In strict
    mode the values must already sum to one within ``NORM_TOL``; otherwise
    they are renormalized. Ties keep their original relative order.
    """
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise EmptyInput("a PMF needs at least one mass")
    if not np.all(np.isfinite(v)):
        raise NotNormalized("non-finite mass")
    if np.any(v < -NEG_CLAMP):
        raise NegativeMass(f"negative mass {v.min()!r}")
    v = np.clip(v, 0.0, None)
    total = v.sum()
    if strict:
        if abs(total - 1.0) > NORM_TOL:
            raise NotNormalized(f"masses sum to {total!r}, expected 1")
    else:
        if total <= 0:
            raise NotNormalized("masses sum to zero")
        v = v / total
    return OrderedPmf(v[np.argsort(-v, kind="stable")])


def as_pmf(x: PmfLike) -> OrderedPmf:
    """Coerce ``x`` to an :class:`OrderedPmf` (strict normalization)."""
    if isinstance(x, OrderedPmf):
        return x
    return make_pmf(x, strict=True)


def _from_increments(inc: np.ndarray) -> OrderedPmf:
    # increments of a (numerically) concave prefix-sum sequence; sorting only
    # repairs last-ulp inversions
    inc = np.clip(inc, 0.0, None)
    return OrderedPmf(inc[np.argsort(-inc, kind="stable")])


def uniform(n: int) -> OrderedPmf:
    return OrderedPmf(np.full(n, 1.0 / n))


def deterministic(n: int = 1) -> OrderedPmf:
    """The point mass ``(1, 0, ..., 0)`` of length ``n``."""
    m = np.zeros(n)
    m[0] = 1.0
    return OrderedPmf(m)


def pad_arrays(*arrays: np.ndarray) -> list[np.ndarray]:
    n = max(len(a) for a in arrays)
    return [np.concatenate([a, np.zeros(n - len(a))]) if len(a) < n else np.asarray(a) for a in arrays]


def prefix_sums(p: PmfLike) -> LorenzCurve:
    return LorenzCurve(np.cumsum(as_pmf(p).masses))


def is_majorized_by(p: PmfLike, q: PmfLike, tol: float = CMP_TOL) -> bool:
    """True iff ``q`` majorizes ``p``: every prefix sum of ``p`` is at most that of ``q``."""
    a, b = pad_arrays(as_pmf(p).masses, as_pmf(q).masses)
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + tol))


def lorenz_eval(p: PmfLike, t: float) -> float:
    """Evaluate the piecewise-linear Lorenz curve of ``p`` at ``t`` in ``[0, n]``."""
    p = as_pmf(p)
    n = len(p)
    if not 0.0 <= t <= n:
        raise OutOfDomain(f"t={t} outside [0, {n}]")
    xs = np.arange(n + 1, dtype=float)
    ys = np.concatenate([[0.0], np.cumsum(p.masses)])
    return float(np.interp(t, xs, ys))


def aggregate(p: PmfLike, parts: Partition | Iterable[Iterable[int]]) -> OrderedPmf:
    """Merge the masses of ``p`` block by block; the result majorizes ``p``."""
    p = as_pmf(p)
    if not isinstance(parts, Partition):
        parts = Partition.of(parts)
    parts.validate(len(p))
    sums = np.array([p.masses[list(b)].sum() for b in parts.blocks])
    return make_pmf(sums, strict=False)


def support_size(p: PmfLike) -> int:
    return int(np.count_nonzero(as_pmf(p).masses > SUPP_TOL))
