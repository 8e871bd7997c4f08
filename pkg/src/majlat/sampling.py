"""Seeded random ordered PMFs for property sweeps."""
from __future__ import annotations

import numpy as np

from .pmf import OrderedPmf, _from_increments

BOUNDARY_FRACTION = 0.1


def dirichlet_pmf(rng: np.random.Generator, n: int) -> OrderedPmf:
    """Uniform draw from the simplex (symmetric Dirichlet(1)), sorted."""
    return _from_increments(rng.dirichlet(np.ones(n)))


def boundary_pmf(rng: np.random.Generator, n: int) -> OrderedPmf:
    """A PMF near the edge of the simplex: a dominant mass, near-ties,
    a point mass, or a short support padded with zeros."""
    case = rng.integers(4)
    if case == 0 or n == 1:
        top = rng.uniform(0.9, 1.0)
        rest = rng.dirichlet(np.ones(max(n - 1, 1)))[: n - 1] * (1.0 - top)
        v = np.concatenate([[top], rest]) if n > 1 else np.array([1.0])
    elif case == 1:
        v = np.full(n, 1.0 / n) + rng.uniform(-1e-6, 1e-6, size=n) / n
        v = v / v.sum()
    elif case == 2:
        v = np.zeros(n)
        v[0] = 1.0
    else:
        k = int(rng.integers(1, n))
        v = np.concatenate([rng.dirichlet(np.ones(k)), np.zeros(n - k)])
    return _from_increments(v / v.sum())


def random_pmf(
    rng: np.random.Generator, n: int, boundary_fraction: float = BOUNDARY_FRACTION
) -> OrderedPmf:
    if rng.random() < boundary_fraction:
        return boundary_pmf(rng, n)
    return dirichlet_pmf(rng, n)
