"""Rényi and Tsallis entropies for every order in ``[0, inf]``.

Orders 0, 1 and infinity are evaluated through their limit forms. Natural
logarithm by default.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .couplings import independent_coupling, sorted_mass_vector
from .exceptions import ParseError, UnsupportedOrder
from .pmf import SUPP_TOL, PmfLike, as_pmf, support_size

# finite orders this close to 1 are evaluated as Shannon entropy
SHANNON_BAND = 1e-8


class OrderKind(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    INFINITY = "infinity"
    FINITE = "finite"


@dataclass(frozen=True)
class AlphaOrder:
    value: float
    kind: OrderKind

    @classmethod
    def of(cls, alpha: "AlphaLike") -> "AlphaOrder":
        if isinstance(alpha, AlphaOrder):
            return alpha
        if isinstance(alpha, str):
            return parse_alpha(alpha)
        a = float(alpha)
        if math.isnan(a) or a < 0:
            raise UnsupportedOrder(f"order must lie in [0, inf], got {alpha!r}")
        if a == 0:
            return cls(0.0, OrderKind.ZERO)
        if a == 1:
            return cls(1.0, OrderKind.ONE)
        if math.isinf(a):
            return cls(math.inf, OrderKind.INFINITY)
        return cls(a, OrderKind.FINITE)

    def __str__(self) -> str:
        return "inf" if self.kind is OrderKind.INFINITY else f"{self.value:g}"

    def __float__(self) -> float:
        return self.value

    @property
    def near_one(self) -> bool:
        return self.kind is OrderKind.ONE or (
            self.kind is OrderKind.FINITE and abs(self.value - 1.0) < SHANNON_BAND
        )


AlphaLike = Union[AlphaOrder, float, int, str]


def parse_alpha(token: str) -> AlphaOrder:
    """Parse ``"0.5"``, ``"2"``, ``"inf"`` (or ``"∞"``) into an order."""
    t = token.strip().lower()
    if t in ("inf", "infinity", "∞", "+inf"):
        return AlphaOrder(math.inf, OrderKind.INFINITY)
    try:
        value = float(t)
    except ValueError:
        raise ParseError(f"cannot parse order {token!r}") from None
    return AlphaOrder.of(value)


def _log(x, base):
    if base is None or base == "e":
        return np.log(x)
    return np.log(x) / math.log(float(base))


def _support(p: PmfLike) -> np.ndarray:
    m = as_pmf(p).masses
    return m[m > SUPP_TOL]


def power_sum(p: PmfLike, alpha: AlphaLike) -> float:
    """``sum p_i ** alpha`` over the support (``0 ** alpha = 0``)."""
    a = AlphaOrder.of(alpha)
    if a.kind is OrderKind.ZERO:
        return float(support_size(p))
    if a.kind is not OrderKind.FINITE:
        raise UnsupportedOrder(f"power sum undefined for order {a}")
    return float(np.sum(_support(p) ** a.value))


def shannon(p: PmfLike, base=None) -> float:
    s = _support(p)
    return float(-np.sum(s * _log(s, base))) + 0.0


def renyi(p: PmfLike, alpha: AlphaLike, base=None) -> float:
    a = AlphaOrder.of(alpha)
    if a.kind is OrderKind.ZERO:
        return float(_log(support_size(p), base))
    if a.near_one:
        return shannon(p, base)
    s = _support(p)
    if a.kind is OrderKind.INFINITY:
        return float(-_log(s.max(), base)) + 0.0
    return float(_log(np.sum(s ** a.value), base) / (1.0 - a.value)) + 0.0


def tsallis(p: PmfLike, alpha: AlphaLike) -> float:
    a = AlphaOrder.of(alpha)
    if a.kind is OrderKind.INFINITY:
        raise UnsupportedOrder("Tsallis entropy is defined for finite orders only")
    if a.kind is OrderKind.ZERO:
        return float(support_size(p) - 1)
    if a.near_one:
        return shannon(p)
    return (1.0 - power_sum(p, a)) / (a.value - 1.0) + 0.0


def entropy(p: PmfLike, alpha: AlphaLike, family: str = "renyi", base=None) -> float:
    """Dispatch on ``family`` (``"renyi"`` or ``"tsallis"``)."""
    if family == "renyi":
        return renyi(p, alpha, base)
    if family == "tsallis":
        return tsallis(p, alpha)
    raise ValueError(f"unknown entropy family {family!r}")


def pseudo_additivity_check(p: PmfLike, q: PmfLike, alpha: AlphaLike) -> float:
    """Residual of the Tsallis composition rule on the product of ``p`` and ``q``."""
    a = AlphaOrder.of(alpha)
    if a.kind is OrderKind.INFINITY or a.near_one:
        raise UnsupportedOrder(f"pseudo-additivity needs a finite order != 1, got {a}")
    joint = sorted_mass_vector(independent_coupling(p, q))
    tp, tq = tsallis(p, a), tsallis(q, a)
    return abs(tsallis(joint, a) - (tp + tq + (1.0 - a.value) * tp * tq))
