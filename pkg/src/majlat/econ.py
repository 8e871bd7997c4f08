"""Entropy-based distance on ordered PMFs and Theil-type inequality indices."""
from __future__ import annotations

import math
import time

import numpy as np

from .entropy import AlphaLike, AlphaOrder, OrderKind, _log, renyi, shannon
from .exceptions import UnsupportedOrder
from .inequalities import EQ_TOL, Violation, VerificationReport
from .lattice import join
from .pmf import CMP_TOL, PmfLike, as_pmf, uniform
from .sampling import random_pmf


def _metric_order(alpha: AlphaLike) -> AlphaOrder:
    a = AlphaOrder.of(alpha)
    if a.kind is OrderKind.ZERO or (a.kind is OrderKind.FINITE and a.value < 1):
        raise UnsupportedOrder(f"the entropy distance is only a metric for order >= 1, got {a}")
    return a


def entropy_distance(x: PmfLike, y: PmfLike, alpha: AlphaLike = 1, base=None) -> float:
    """``H(x) + H(y) - 2 H(x join y)`` with Rényi entropy of order ``alpha >= 1``."""
    a = _metric_order(alpha)
    return renyi(x, a, base) + renyi(y, a, base) - 2.0 * renyi(join(x, y), a, base)


def theil(x: PmfLike, base=None) -> float:
    """``log n - H(x)`` where ``n`` counts zero masses too."""
    x = as_pmf(x)
    return float(_log(len(x), base)) - shannon(x, base)


def renyi_theil(x: PmfLike, alpha: AlphaLike = 1, base=None) -> float:
    """Rényi analogue of the Theil index; equals the distance from the uniform PMF."""
    a = _metric_order(alpha)
    x = as_pmf(x)
    return float(_log(len(x), base)) - renyi(x, a, base)


def check_metric_axioms(samples: int, n: int, alpha: AlphaLike = 1, seed: int = 0) -> VerificationReport:
    """Check nonnegativity, identity, symmetry and the triangle inequality on random triples."""
    a = _metric_order(alpha)
    t0 = time.perf_counter()
    rng = np.random.default_rng([seed, n])
    rep = VerificationReport(seed=seed, config={"samples": samples, "n": n, "alpha": str(a)})

    def record(s, name, pmfs, gap):
        rep.checks_run += 1
        rep.worst_gap = min(rep.worst_gap, gap)
        if gap < -EQ_TOL:
            rep.violation_count += 1
            rep.violations.append(Violation(s, name, [p.tolist() for p in pmfs], str(a), "renyi", gap))

    for s in range(samples):
        x, y, z = (random_pmf(rng, n) for _ in range(3))
        dxy, dyz, dxz = entropy_distance(x, y, a), entropy_distance(y, z, a), entropy_distance(x, z, a)
        rep.samples_run += 1
        record(s, "nonnegative", (x, y), dxy)
        record(s, "symmetry", (x, y), 0.0 if dxy == entropy_distance(y, x, a) else -math.inf)
        record(s, "triangle", (x, y, z), dxy + dyz - dxz)
        if abs(dxy) <= EQ_TOL:
            record(s, "identity", (x, y), 0.0 if x.equals(y, tol=max(CMP_TOL, 1e-6)) else -math.inf)
        record(s, "diagonal", (x,), -abs(entropy_distance(x, x, a)))
    rep.wall_time = time.perf_counter() - t0
    return rep


def distance_to_uniform(x: PmfLike, alpha: AlphaLike = 1, base=None) -> float:
    x = as_pmf(x)
    return entropy_distance(x, uniform(len(x)), alpha, base)
