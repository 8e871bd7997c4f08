"""Exact-rational re-evaluation of the lattice constructions and entropy inequalities.

Used as an independent oracle for small instances. Orders 0, 2 and infinity
reduce to exact comparisons of support sizes, power sums and top masses;
order 1 is decided with ``mpmath`` interval arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .entropy import AlphaLike, AlphaOrder, OrderKind
from .exceptions import NotRational, UnsupportedOrder
from .lattice import join as float_join
from .lattice import meet as float_meet
from .pmf import CMP_TOL

Rational = tuple[Fraction, ...]

ORACLE_PREDICATES = (
    "subadd",
    "subadd_equality",
    "supermod",
    "modular",
    "corollary1",
    "corollary1_equality",
    "lemma1",
    "lemma2",
)


def to_rational(values: Iterable) -> Rational:
    """Sorted nonincreasing tuple of Fractions; floats are rejected."""
    out = []
    for v in values:
        if isinstance(v, bool) or isinstance(v, float):
            raise NotRational(f"{v!r} is not an exact rational; pass a Fraction, int or 'a/b' string")
        try:
            f = Fraction(v)
        except (TypeError, ValueError):
            raise NotRational(f"{v!r} is not an exact rational") from None
        if f < 0:
            raise NotRational(f"negative mass {v!r}")
        out.append(f)
    if not out or sum(out) != 1:
        raise NotRational(f"masses {values!r} do not sum to exactly 1")
    return tuple(sorted(out, reverse=True))


def _pad(*vs: Rational) -> list[Rational]:
    n = max(len(v) for v in vs)
    return [tuple(v) + (Fraction(0),) * (n - len(v)) for v in vs]


def _prefix(v: Sequence[Fraction]) -> list[Fraction]:
    return list(itertools.accumulate(v))


def _diff(cum: Sequence[Fraction]) -> Rational:
    return tuple(b - a for a, b in zip([Fraction(0)] + list(cum[:-1]), cum))


def majorized(p: Rational, q: Rational) -> bool:
    a, b = _pad(p, q)
    return all(x <= y for x, y in zip(_prefix(a), _prefix(b)))


def exact_meet(p: Rational, q: Rational) -> Rational:
    a, b = _pad(p, q)
    return _diff([min(x, y) for x, y in zip(_prefix(a), _prefix(b))])


def exact_beta(p: Rational, q: Rational) -> Rational:
    a, b = _pad(p, q)
    return _diff([max(x, y) for x, y in zip(_prefix(a), _prefix(b))])


def pool_adjacent_violators(v: Sequence[Fraction]) -> Rational:
    """Nonincreasing fit by merging adjacent blocks whose averages increase."""
    blocks: list[list] = []  # [sum, count]
    for x in v:
        blocks.append([Fraction(x), 1])
        while len(blocks) > 1 and blocks[-2][0] * blocks[-1][1] < blocks[-1][0] * blocks[-2][1]:
            s, c = blocks.pop()
            blocks[-1][0] += s
            blocks[-1][1] += c
    return tuple(s / c for s, c in blocks for _ in range(c))


def exact_join(p: Rational, q: Rational) -> Rational:
    return pool_adjacent_violators(exact_beta(p, q))


def exact_comonotone(p: Rational, q: Rational) -> list[tuple[int, int, Fraction]]:
    P, Q = _prefix(p), _prefix(q)
    cells = []
    for i in range(len(p)):
        for j in range(len(q)):
            lo = max(P[i - 1] if i else Fraction(0), Q[j - 1] if j else Fraction(0))
            m = min(P[i], Q[j]) - lo
            if m > 0:
                cells.append((i, j, m))
    return cells


def exact_independent(p: Rational, q: Rational) -> list[Fraction]:
    return [x * y for x in p for y in q if x * y > 0]


def _support(p: Rational) -> int:
    return sum(1 for x in p if x > 0)


def _power2(p: Rational) -> Fraction:
    return sum((x * x for x in p), Fraction(0))


# entropy comparisons ------------------------------------------------------------

Terms = Sequence[tuple[int, Rational]]


def _iv_shannon(p: Rational):
    iv = mpmath.iv
    total = iv.mpf(0)
    for x in p:
        if x > 0:
            xv = iv.mpf(x.numerator) / iv.mpf(x.denominator)
            total -= xv * iv.log(xv)
    return total


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def gap_sign(lhs: Terms, rhs: Terms, alpha: AlphaLike, family: str = "renyi") -> int:
    """Exact sign of ``sum(c * H(x) for rhs) - sum(c * H(x) for lhs)``.

    Terms are ``(integer coefficient, pmf)`` pairs.
    """
    a = AlphaOrder.of(alpha)
    if family == "tsallis":
        if a.kind is OrderKind.ZERO:
            f = lambda x: Fraction(_support(x) - 1)  # noqa: E731
        elif a.kind is OrderKind.FINITE and a.value == 2:
            f = lambda x: 1 - _power2(x)  # noqa: E731
        elif a.kind is OrderKind.ONE:
            return _interval_sign(lhs, rhs)
        else:
            raise UnsupportedOrder(f"exact Tsallis comparison not available at order {a}")
        return _sign(sum(c * f(x) for c, x in rhs) - sum(c * f(x) for c, x in lhs))
    if family != "renyi":
        raise ValueError(f"unknown entropy family {family!r}")
    if a.kind is OrderKind.ONE:
        return _interval_sign(lhs, rhs)
    # H = log g for order 0, H = -log g for orders 2 and infinity
    if a.kind is OrderKind.ZERO:
        g, sgn = (lambda x: Fraction(_support(x))), 1
    elif a.kind is OrderKind.INFINITY:
        g, sgn = (lambda x: max(x)), -1
    elif a.kind is OrderKind.FINITE and a.value == 2:
        g, sgn = _power2, -1
    else:
        raise UnsupportedOrder(f"exact Rényi comparison not available at order {a}")

    def prod(terms: Terms) -> Fraction:
        out = Fraction(1)
        for c, x in terms:
            out *= g(x) ** c
        return out

    left, right = prod(lhs), prod(rhs)
    return sgn * ((right > left) - (right < left))


def _interval_sign(lhs: Terms, rhs: Terms, dps: int = 60) -> int:
    """Sign of the Shannon gap; 0 when the interval cannot separate it from zero."""
    iv = mpmath.iv
    saved = iv.prec
    iv.dps = dps
    try:
        gap = iv.mpf(0)
        for c, x in rhs:
            gap += c * _iv_shannon(x)
        for c, x in lhs:
            gap -= c * _iv_shannon(x)
    finally:
        iv.prec = saved
    if gap.a > 0:
        return 1
    if gap.b < 0:
        return -1
    return 0


def oracle_exact_check(p_rational, q_rational, predicate: str, alpha: AlphaLike = 2, family: str = "renyi") -> bool:
    """Re-evaluate ``predicate`` on rational inputs in exact arithmetic.

    Returns True iff the claimed property holds on this pair. The ``*_equality``
    predicates check that numeric equality coincides with its structural
    condition (a point-mass input, resp. ``p == q``).
    """
    p, q = to_rational(p_rational), to_rational(q_rational)
    if predicate not in ORACLE_PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    if predicate == "lemma2":
        ind = sorted(exact_independent(p, q), reverse=True)
        com = sorted((m for _, _, m in exact_comonotone(p, q)), reverse=True)
        return majorized(tuple(ind), tuple(com))
    if predicate == "lemma1":
        n = max(len(p), len(q))
        pp, qq = _pad(p, q)
        cells = exact_comonotone(pp, qq)
        by_max = [Fraction(0)] * n
        by_min = [Fraction(0)] * n
        for i, j, m in cells:
            by_max[max(i, j)] += m
            by_min[min(i, j)] += m
        return tuple(by_max) == exact_meet(p, q) and pool_adjacent_violators(by_min) == exact_join(p, q)

    w = exact_meet(p, q)
    if predicate in ("subadd", "subadd_equality"):
        s = gap_sign([(1, w)], [(1, p), (1, q)], alpha, family)
        if predicate == "subadd":
            return s >= 0
        return (s == 0) == (_support(p) == 1 or _support(q) == 1)
    if predicate in ("corollary1", "corollary1_equality"):
        s = gap_sign([(1, p), (1, q)], [(2, w)], alpha, family)
        if predicate == "corollary1":
            return s >= 0
        pp, qq = _pad(p, q)
        return (s == 0) == (pp == qq)
    v = exact_join(p, q)
    s = gap_sign([(1, p), (1, q)], [(1, w), (1, v)], alpha, family)
    if predicate == "supermod":
        return s >= 0
    return s == 0


# lattice grid oracle -------------------------------------------------------------


def grid_pmfs(n: int, max_den: int) -> list[Rational]:
    """All ordered PMFs of length ``n`` whose masses are multiples of ``1/d`` for some ``d <= max_den``."""
    seen: set[Rational] = set()
    for d in range(1, max_den + 1):
        for parts in _partitions(d, n, d):
            r = tuple(Fraction(k, d) for k in parts) + (Fraction(0),) * (n - len(parts))
            seen.add(r)
    return sorted(seen, reverse=True)


def _partitions(total: int, max_parts: int, max_part: int):
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


@dataclass
class GridReport:
    n: int
    max_den: int
    grid_size: int = 0
    pairs: int = 0
    comparisons: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def lattice_grid_check(n: int, max_den: int, max_failures: int = 20) -> GridReport:
    """Exhaustively check the glb/lub universal properties on the rational grid.

    For every grid pair ``(p, q)``: the exact meet is a lower bound dominating
    every grid lower bound, the exact join an upper bound dominated by every
    grid upper bound, and the floating-point meet/join agree with them.
    """
    grid = grid_pmfs(n, max_den)
    rep = GridReport(n, max_den, grid_size=len(grid))
    prefix = {r: _prefix(r) for r in grid}

    def below(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def fail(msg: str) -> None:
        if len(rep.failures) < max_failures:
            rep.failures.append(msg)

    for p, q in itertools.product(grid, repeat=2):
        rep.pairs += 1
        w, v = exact_meet(p, q), exact_join(p, q)
        W, V = _prefix(w), _prefix(v)
        P, Q = prefix[p], prefix[q]
        if not (below(W, P) and below(W, Q)):
            fail(f"meet not a lower bound: {p} {q}")
        if not (below(P, V) and below(Q, V)):
            fail(f"join not an upper bound: {p} {q}")
        fw = float_meet([float(x) for x in p], [float(x) for x in q]).masses
        fv = float_join([float(x) for x in p], [float(x) for x in q]).masses
        if max(abs(float(a) - b) for a, b in zip(w, fw)) > CMP_TOL:
            fail(f"float meet deviates: {p} {q}")
        if max(abs(float(a) - b) for a, b in zip(v, fv)) > CMP_TOL:
            fail(f"float join deviates: {p} {q}")
        FW = list(itertools.accumulate(fw))
        FV = list(itertools.accumulate(fv))
        for r in grid:
            R = prefix[r]
            rep.comparisons += 1
            if below(R, P) and below(R, Q):
                if not below(R, W):
                    fail(f"lower bound {r} not below meet of {p} {q}")
                if not all(float(x) <= y + CMP_TOL for x, y in zip(R, FW)):
                    fail(f"lower bound {r} not below float meet of {p} {q}")
            if below(P, R) and below(Q, R):
                if not below(V, R):
                    fail(f"upper bound {r} not above join of {p} {q}")
                if not all(y <= float(x) + CMP_TOL for x, y in zip(R, FV)):
                    fail(f"upper bound {r} not above float join of {p} {q}")
    return rep
