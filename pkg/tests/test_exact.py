import itertools
import math
from fractions import Fraction

import pytest

from majlat import concavify, join, meet, oracle_exact_check
from majlat.exact import (
    exact_join,
    exact_meet,
    gap_sign,
    grid_pmfs,
    pool_adjacent_violators,
    to_rational,
)
from majlat.exceptions import NotRational

from .oracles import block_average, frac

F = Fraction


def test_to_rational():
    assert to_rational(["1/4", "3/4"]) == (F(3, 4), F(1, 4))
    with pytest.raises(NotRational):
        to_rational([0.5, 0.5])
    with pytest.raises(NotRational):
        to_rational(["1/2", "1/3"])
    with pytest.raises(NotRational):
        to_rational(["abc"])


def test_exact_meet_join_reference_pair():
    p, q = frac("3/5", "1/5", "1/5"), frac("9/20", "2/5", "3/20")
    assert exact_meet(p, q) == frac("9/20", "7/20", "1/5")
    assert exact_join(p, q) == frac("3/5", "1/4", "3/20")


def test_pav_matches_block_averaging():
    v = frac("3/5", "1/10", "3/20", "1/10", "1/20")
    assert pool_adjacent_violators(v) == frac("3/5", "1/8", "1/8", "1/10", "1/20")
    assert [float(x) for x in pool_adjacent_violators(v)] == pytest.approx(block_average([float(x) for x in v]))


def test_lemma2_example():
    assert oracle_exact_check(["1/2", "1/2"], ["3/4", "1/4"], "lemma2")


def test_corollary1_equality_on_equal_inputs():
    p = ["1/2", "1/3", "1/6"]
    for a in (1, 2):
        assert oracle_exact_check(p, p, "corollary1_equality", alpha=a)


def test_unknown_predicate():
    with pytest.raises(ValueError):
        oracle_exact_check(["1"], ["1"], "nope")


@pytest.mark.parametrize("alpha", [0, 2])
def test_exhaustive_subadditivity(alpha):
    grid = grid_pmfs(3, 6)
    for p, q in itertools.product(grid, repeat=2):
        assert oracle_exact_check(p, q, "subadd", alpha=alpha)
        assert oracle_exact_check(p, q, "subadd_equality", alpha=alpha)


def test_exhaustive_grid_all_predicates():
    grid = grid_pmfs(3, 5)
    for p, q in itertools.product(grid, repeat=2):
        assert oracle_exact_check(p, q, "lemma1")
        assert oracle_exact_check(p, q, "lemma2")
        for a in (0, 1, 2, math.inf):
            assert oracle_exact_check(p, q, "supermod", alpha=a)
            assert oracle_exact_check(p, q, "corollary1", alpha=a)
        for a in (1, 2):
            assert oracle_exact_check(p, q, "corollary1_equality", alpha=a)
        assert oracle_exact_check(p, q, "subadd", alpha=1)
        assert oracle_exact_check(p, q, "subadd_equality", alpha=1)
        for fam_alpha in ((0, "renyi"), (math.inf, "renyi"), (0, "tsallis")):
            assert oracle_exact_check(p, q, "modular", alpha=fam_alpha[0], family=fam_alpha[1])
        for a in (0, 1, 2):
            assert oracle_exact_check(p, q, "supermod", alpha=a, family="tsallis")


def test_detects_renyi_supermodularity_failure():
    # order 2 is supermodular, but a Shannon gap of a made-up comparison is negative
    p, q = frac("1/2", "1/2"), frac("1", "0")
    assert gap_sign([(1, p)], [(1, q)], 1) == -1
    assert gap_sign([(1, q)], [(1, p)], 2) == 1
    assert gap_sign([(1, p)], [(1, p)], 1) == 0


def test_float_routes_agree_with_exact_on_grid():
    for p, q in itertools.product(grid_pmfs(4, 6), repeat=2):
        fp, fq = [float(x) for x in p], [float(x) for x in q]
        assert meet(fp, fq).tolist() == pytest.approx([float(x) for x in exact_meet(p, q)], abs=1e-12)
        assert join(fp, fq).tolist() == pytest.approx([float(x) for x in exact_join(p, q)], abs=1e-12)


def test_grid_enumeration():
    g = grid_pmfs(2, 4)
    assert frac("1/2", "1/2") in g and frac("1", "0") in g and frac("3/4", "1/4") in g
    assert len(g) == len(set(g))
    assert all(sum(r) == 1 and list(r) == sorted(r, reverse=True) for r in g)


def test_concavify_exact_agreement():
    for v in itertools.product(range(4), repeat=4):
        if sum(v) == 0:
            continue
        r = tuple(F(x, sum(v)) for x in v)
        assert concavify([float(x) for x in r]).tolist() == pytest.approx(
            [float(x) for x in pool_adjacent_violators(r)], abs=1e-12
        )
