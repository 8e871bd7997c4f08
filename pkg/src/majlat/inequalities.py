"""Entropy inequalities on the majorization lattice as executable checks.

Every ``check_*`` function returns a :class:`CheckResult` whose ``gap`` is the
slack ``rhs - lhs``; a negative gap beyond the tolerance is a violation.
:func:`sweep_verify` and :func:`search_counterexamples` drive the checks over
seeded random inputs.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .couplings import (
    aggregate_by_extremum,
    comonotone_coupling,
    independent_coupling,
    sorted_mass_vector,
)
from .entropy import AlphaLike, AlphaOrder, OrderKind, entropy, power_sum
from .exceptions import EmptyList, UnsupportedOrder
from .lattice import concavify, join, meet, meet_many
from .pmf import CMP_TOL, OrderedPmf, PmfLike, pad_arrays, support_size
from .sampling import random_pmf

EQ_TOL = 1e-9

# Two fixed pairs on which the Rényi supermodularity gap takes opposite signs
# for every order in (0, 1).
FIXTURE_POSITIVE = (
    OrderedPmf(np.array([0.6, 0.2, 0.2])),
    OrderedPmf(np.array([0.45, 0.4, 0.15])),
)
FIXTURE_NEGATIVE = (
    OrderedPmf(np.array([0.398886918, 0.370328848, 0.228811150, 0.001973084])),
    OrderedPmf(np.array([0.539996140, 0.229554617, 0.116684354, 0.113764889])),
)
FIXTURES = (FIXTURE_POSITIVE, FIXTURE_NEGATIVE)

PREDICATES = ("subadd", "supermod", "modular", "corollary1", "corollary2", "lemma1", "lemma2", "powersum")
# predicates that do not depend on the entropy order
ORDER_FREE = frozenset({"lemma1", "lemma2"})

BLOCK_SIZE = 256
MAX_RECORDED = 1000


@dataclass(frozen=True)
class CheckResult:
    lhs: float
    rhs: float
    gap: float
    holds: bool
    equality: bool
    context: dict = field(default_factory=dict)


def _result(lhs: float, rhs: float, tol: float = EQ_TOL, **context) -> CheckResult:
    gap = rhs - lhs
    return CheckResult(lhs, rhs, gap, gap >= -tol, abs(gap) <= tol, context)


def _validate(alpha: AlphaLike, family: str) -> AlphaOrder:
    a = AlphaOrder.of(alpha)
    if family not in ("renyi", "tsallis"):
        raise ValueError(f"unknown entropy family {family!r}")
    if family == "tsallis" and a.kind is OrderKind.INFINITY:
        raise UnsupportedOrder("Tsallis entropy has no order-infinity form")
    return a


def delta_supermod(p: PmfLike, q: PmfLike, alpha: AlphaLike, family: str = "renyi", base=None) -> float:
    """``H(p meet q) + H(p join q) - H(p) - H(q)``; nonnegative iff supermodular on the pair."""
    a = _validate(alpha, family)
    h = lambda x: entropy(x, a, family, base)  # noqa: E731
    return h(meet(p, q)) + h(join(p, q)) - h(p) - h(q) + 0.0


def check_subadditivity(p: PmfLike, q: PmfLike, alpha: AlphaLike, family: str = "renyi", base=None) -> CheckResult:
    a = _validate(alpha, family)
    lhs = entropy(meet(p, q), a, family, base)
    rhs = entropy(p, a, family, base) + entropy(q, a, family, base)
    return _result(lhs, rhs, alpha=str(a), family=family, predicate="subadd")


def check_equality_condition_subadd(p: PmfLike, q: PmfLike) -> bool:
    """Structural equality case of subadditivity: one of the inputs is a point mass."""
    return support_size(p) == 1 or support_size(q) == 1


def check_corollary1(p: PmfLike, q: PmfLike, alpha: AlphaLike, family: str = "renyi", base=None) -> CheckResult:
    """``H(p) + H(q) <= 2 H(p meet q)``."""
    a = _validate(alpha, family)
    lhs = entropy(p, a, family, base) + entropy(q, a, family, base)
    rhs = 2.0 * entropy(meet(p, q), a, family, base)
    return _result(lhs, rhs, alpha=str(a), family=family, predicate="corollary1")


def check_corollary2(
    ps: Sequence[PmfLike], alpha: AlphaLike, family: str = "renyi", base=None
) -> tuple[CheckResult, CheckResult]:
    """Both sides of ``H(meet_i p_i) <= sum_i H(p_i) <= m H(meet_i p_i)``."""
    if len(ps) == 0:
        raise EmptyList("no PMFs given")
    a = _validate(alpha, family)
    h_meet = entropy(meet_many(ps), a, family, base)
    total = sum(entropy(p, a, family, base) for p in ps)
    ctx = dict(alpha=str(a), family=family, predicate="corollary2")
    return _result(h_meet, total, **ctx), _result(total, len(ps) * h_meet, **ctx)


def check_supermodularity(p: PmfLike, q: PmfLike, alpha: AlphaLike, family: str = "renyi", base=None) -> CheckResult:
    a = _validate(alpha, family)
    h = lambda x: entropy(x, a, family, base)  # noqa: E731
    lhs = h(p) + h(q)
    rhs = h(meet(p, q)) + h(join(p, q))
    return _result(lhs, rhs, alpha=str(a), family=family, predicate="supermod")


def check_modularity(p: PmfLike, q: PmfLike, alpha: AlphaLike, family: str = "renyi", base=None) -> CheckResult:
    """Two-sided version of :func:`check_supermodularity`: the slack is ``-|delta|``."""
    r = check_supermodularity(p, q, alpha, family, base)
    gap = -abs(r.gap)
    return CheckResult(r.lhs, r.rhs, gap, gap >= -EQ_TOL, r.equality, {**r.context, "predicate": "modular"})


def check_power_sum_direction(p: PmfLike, q: PmfLike, alpha: AlphaLike) -> CheckResult:
    """Power sums of the meet and join versus the inputs: at most for order >= 1, at least for order <= 1."""
    a = AlphaOrder.of(alpha)
    if a.kind in (OrderKind.ONE, OrderKind.INFINITY):
        return _result(0.0, 0.0, alpha=str(a), predicate="powersum")
    lattice_side = power_sum(meet(p, q), a) + power_sum(join(p, q), a)
    input_side = power_sum(p, a) + power_sum(q, a)
    if a.value > 1:
        return _result(lattice_side, input_side, alpha=str(a), predicate="powersum")
    return _result(input_side, lattice_side, alpha=str(a), predicate="powersum")


def check_lemma2(p: PmfLike, q: PmfLike, tol: float = CMP_TOL) -> CheckResult:
    """The sorted comonotone coupling majorizes the sorted independent coupling.

    ``gap`` is the smallest difference of top-k partial sums over all k.
    """
    ind = sorted_mass_vector(independent_coupling(p, q)).masses
    com = sorted_mass_vector(comonotone_coupling(p, q)).masses
    a, b = pad_arrays(ind, com)
    diff = np.cumsum(b) - np.cumsum(a)
    k = int(np.argmin(diff))
    return _result(float(np.cumsum(a)[k]), float(np.cumsum(b)[k]), tol=tol, predicate="lemma2", k=k)


def check_lemma1(p: PmfLike, q: PmfLike, tol: float = CMP_TOL) -> CheckResult:
    """Meet and join recovered from the comonotone coupling; gap is minus the max deviation."""
    pc = comonotone_coupling(p, q)
    w, v = meet(p, q).masses, join(p, q).masses
    via_max = aggregate_by_extremum(pc, "max").values
    via_min = concavify(aggregate_by_extremum(pc, "min")).masses
    a, b = pad_arrays(w, via_max)
    c, d = pad_arrays(v, via_min)
    err = max(float(np.max(np.abs(a - b))), float(np.max(np.abs(c - d))))
    return _result(err, 0.0, tol=tol, predicate="lemma1")


# --------------------------------------------------------------------------- sweeps


@dataclass
class SweepConfig:
    n: int = 6
    alpha_grid: Sequence[AlphaLike] = (0, 0.5, 1, 2, math.inf)
    families: Sequence[str] = ("renyi",)
    predicates: Sequence[str] = ("subadd",)
    samples: int = 10_000
    seed: int = 0
    m: int = 2
    n_min: int | None = None
    boundary_fraction: float = 0.1
    inject_fixtures: bool = True
    workers: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.n_min is not None and not 1 <= self.n_min <= self.n:
            raise ValueError("n_min must lie in [1, n]")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        unknown = set(self.predicates) - set(PREDICATES)
        if unknown:
            raise ValueError(f"unknown predicates {sorted(unknown)}")
        for fam in self.families:
            if fam not in ("renyi", "tsallis"):
                raise ValueError(f"unknown entropy family {fam!r}")
        self.alpha_grid = tuple(AlphaOrder.of(a) for a in self.alpha_grid)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["alpha_grid"] = [str(a) for a in self.alpha_grid]
        d["families"] = list(self.families)
        d["predicates"] = list(self.predicates)
        return d


@dataclass
class Violation:
    sample: int
    predicate: str
    pmfs: list[list[float]]
    alpha: str | None
    family: str | None
    gap: float

    def to_dict(self) -> dict:
        d = asdict(self)
        if len(self.pmfs) == 2:
            d["p"], d["q"] = self.pmfs
        return d


@dataclass
class Witness:
    sample: int
    p: list[float]
    q: list[float]
    alpha: str
    family: str
    delta: float


@dataclass
class VerificationReport:
    samples_run: int = 0
    checks_run: int = 0
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    worst_gap: float = math.inf
    seed: int = 0
    wall_time: float = 0.0
    config: dict = field(default_factory=dict)
    witnesses: list[Witness] = field(default_factory=list)
    sign_counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two partial reports; order-independent."""
        counts = {k: dict(v) for k, v in self.sign_counts.items()}
        for key, c in other.sign_counts.items():
            slot = counts.setdefault(key, {"positive": 0, "negative": 0, "zero": 0})
            for s, v in c.items():
                slot[s] = slot.get(s, 0) + v
        return VerificationReport(
            samples_run=self.samples_run + other.samples_run,
            checks_run=self.checks_run + other.checks_run,
            violations=sorted(self.violations + other.violations, key=lambda v: (v.sample, v.predicate, str(v.alpha)))[
                :MAX_RECORDED
            ],
            violation_count=self.violation_count + other.violation_count,
            worst_gap=min(self.worst_gap, other.worst_gap),
            seed=self.seed,
            wall_time=self.wall_time + other.wall_time,
            config=self.config or other.config,
            witnesses=_merge_witnesses(self.witnesses + other.witnesses),
            sign_counts=counts,
        )

    def witnesses_for(self, alpha: AlphaLike, sign: int, family: str | None = None) -> list[Witness]:
        key = str(AlphaOrder.of(alpha))
        return [
            w
            for w in self.witnesses
            if w.alpha == key and (family is None or w.family == family) and (w.delta > EQ_TOL if sign > 0 else w.delta < -EQ_TOL)
        ]

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "samples_run": self.samples_run,
            "checks_run": self.checks_run,
            "violations": [v.to_dict() for v in self.violations],
            "violation_count": self.violation_count,
            "worst_gap": self.worst_gap if math.isfinite(self.worst_gap) else None,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "witnesses": [asdict(w) for w in self.witnesses],
            "sign_counts": self.sign_counts,
        }


def _merge_witnesses(ws: list[Witness]) -> list[Witness]:
    # fixtures (samples below the injected count) are kept; otherwise only the
    # most extreme witness of each sign per (alpha, family)
    fixtures = [w for w in ws if w.sample < len(FIXTURES)]
    best: dict[tuple, Witness] = {}
    for w in ws:
        if w.sample < len(FIXTURES) or abs(w.delta) <= EQ_TOL:
            continue
        key = (w.alpha, w.family, w.delta > 0)
        cur = best.get(key)
        if cur is None or abs(w.delta) > abs(cur.delta) or (abs(w.delta) == abs(cur.delta) and w.sample < cur.sample):
            best[key] = w
    seen = set()
    out = []
    for w in sorted(fixtures, key=lambda w: (w.sample, w.alpha, w.family)) + sorted(
        best.values(), key=lambda w: (w.alpha, w.family, w.delta)
    ):
        k = (w.sample, w.alpha, w.family)
        if k not in seen:
            seen.add(k)
            out.append(w)
    return out


def _sample_inputs(cfg: SweepConfig, index: int, rng: np.random.Generator, arity: int) -> list[OrderedPmf]:
    if cfg.inject_fixtures and index < len(FIXTURES):
        p, q = FIXTURES[index]
        pair = [p.padded(cfg.n), q.padded(cfg.n)]
        return [pair[i % 2] for i in range(arity)]
    lo = cfg.n if cfg.n_min is None else cfg.n_min
    dim = int(rng.integers(lo, cfg.n + 1))
    return [random_pmf(rng, dim, cfg.boundary_fraction) for _ in range(arity)]


def _checks_for(pred: str, pmfs: list[OrderedPmf], a: AlphaOrder, family: str) -> list[CheckResult]:
    if pred == "corollary2":
        return list(check_corollary2(pmfs, a, family))
    p, q = pmfs[0], pmfs[1]
    if pred == "subadd":
        return [check_subadditivity(p, q, a, family)]
    if pred == "supermod":
        return [check_supermodularity(p, q, a, family)]
    if pred == "modular":
        return [check_modularity(p, q, a, family)]
    if pred == "corollary1":
        return [check_corollary1(p, q, a, family)]
    if pred == "powersum":
        return [check_power_sum_direction(p, q, a)]
    if pred == "lemma1":
        return [check_lemma1(p, q)]
    if pred == "lemma2":
        return [check_lemma2(p, q)]
    raise ValueError(pred)


def _blocks(cfg: SweepConfig) -> list[range]:
    return [range(s, min(s + BLOCK_SIZE, cfg.samples)) for s in range(0, cfg.samples, BLOCK_SIZE)]


def _block_rng(seed: int, block_start: int) -> np.random.Generator:
    return np.random.default_rng([seed, block_start // BLOCK_SIZE])


def _verify_block(cfg: SweepConfig, idx: range) -> VerificationReport:
    rep = VerificationReport(seed=cfg.seed)
    rng = _block_rng(cfg.seed, idx.start)
    arity = max(cfg.m, 2) if "corollary2" in cfg.predicates else 2
    for s in idx:
        pmfs = _sample_inputs(cfg, s, rng, arity)
        rep.samples_run += 1
        for pred in cfg.predicates:
            inputs = pmfs[: cfg.m] if pred == "corollary2" else pmfs[:2]
            combos: Iterable[tuple[AlphaOrder | None, str | None]]
            if pred in ORDER_FREE:
                combos = [(None, None)]
            else:
                combos = [
                    (a, fam)
                    for fam in cfg.families
                    for a in cfg.alpha_grid
                    if not (fam == "tsallis" and a.kind is OrderKind.INFINITY)
                    and not (pred == "powersum" and fam == "tsallis")
                ]
            for a, fam in combos:
                for r in _checks_for(pred, inputs, a, fam):
                    rep.checks_run += 1
                    rep.worst_gap = min(rep.worst_gap, r.gap)
                    if not r.holds:
                        rep.violation_count += 1
                        if len(rep.violations) < MAX_RECORDED:
                            rep.violations.append(
                                Violation(s, pred, [x.tolist() for x in inputs], None if a is None else str(a), fam, r.gap)
                            )
    return rep


def _search_block(cfg: SweepConfig, idx: range) -> VerificationReport:
    rep = VerificationReport(seed=cfg.seed)
    rng = _block_rng(cfg.seed, idx.start)
    for s in idx:
        p, q = _sample_inputs(cfg, s, rng, 2)
        rep.samples_run += 1
        for fam in cfg.families:
            for a in cfg.alpha_grid:
                if fam == "tsallis" and a.kind is OrderKind.INFINITY:
                    continue
                d = delta_supermod(p, q, a, fam)
                rep.checks_run += 1
                key = f"{fam}:{a}"
                slot = rep.sign_counts.setdefault(key, {"positive": 0, "negative": 0, "zero": 0})
                slot["positive" if d > EQ_TOL else "negative" if d < -EQ_TOL else "zero"] += 1
                rep.witnesses.append(Witness(s, p.tolist(), q.tolist(), str(a), fam, d))
        rep.witnesses = _merge_witnesses(rep.witnesses)
    return rep


def _resolve_workers(cfg: SweepConfig, n_blocks: int) -> int:
    w = cfg.workers
    if w is None:
        env = os.environ.get("MAJLAT_THREADS")
        w = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(w, n_blocks))


def _run(cfg: SweepConfig, block_fn: Callable[[SweepConfig, range], VerificationReport]) -> VerificationReport:
    t0 = time.perf_counter()
    blocks = _blocks(cfg)
    workers = _resolve_workers(cfg, len(blocks))
    if workers == 1:
        parts = [block_fn(cfg, b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(block_fn, [cfg] * len(blocks), blocks))
    report = VerificationReport(seed=cfg.seed, config=cfg.to_dict())
    for part in parts:
        report = report.merge(part)
    report.wall_time = time.perf_counter() - t0
    return report


def sweep_verify(cfg: SweepConfig) -> VerificationReport:
    """Run every configured predicate over ``cfg.samples`` seeded inputs.

    Results depend only on the config (not on the worker count): each block of
    ``BLOCK_SIZE`` samples draws from its own generator seeded by
    ``(seed, block index)``.
    """
    return _run(cfg, _verify_block)


def search_counterexamples(cfg: SweepConfig) -> VerificationReport:
    """Look for pairs with positive and negative supermodularity gap at each order.

    The report's ``witnesses`` hold the injected fixture pairs and the most
    extreme random witness of each sign; ``sign_counts`` tallies all samples.
    """
    return _run(cfg, _search_block)
