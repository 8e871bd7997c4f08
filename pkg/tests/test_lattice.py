import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majlat import (
    beta_vector,
    concavify,
    is_majorized_by,
    join,
    join_many,
    lattice_pair,
    make_pmf,
    meet,
    meet_many,
    uniform,
)
from majlat.exceptions import EmptyList
from majlat.exact import lattice_grid_check

from .conftest import EX1_P, EX1_Q, EX2_P, EX2_Q, pmfs
from .oracles import block_average, concave_majorant_bruteforce

TOL = 1e-12


def close(a, b, tol=TOL):
    return a.equals(b, tol=tol)


class TestMeet:
    def test_reference_pair(self):
        np.testing.assert_allclose(meet(EX1_P, EX1_Q).masses, [0.45, 0.35, 0.2], atol=TOL)

    def test_four_dim_pair(self):
        np.testing.assert_allclose(
            meet(EX2_P, EX2_Q).masses, [0.398886918, 0.370328848, 0.117019345, 0.113764889], atol=1e-9
        )

    @given(pmfs())
    def test_idempotent(self, p):
        assert close(meet(p, p), p)

    @given(pmfs(), pmfs())
    def test_lower_bound_and_prefix_min(self, p, q):
        w = meet(p, q)
        assert is_majorized_by(w, p) and is_majorized_by(w, q)
        n = max(len(p), len(q))
        P = np.cumsum(p.padded(n).masses)
        Q = np.cumsum(q.padded(n).masses)
        np.testing.assert_allclose(np.cumsum(w.masses), np.minimum(P, Q), atol=TOL)

    def test_keeps_padded_length(self):
        assert len(meet([1.0], [0.5, 0.3, 0.2])) == 3


class TestBeta:
    def test_reference_pair(self):
        np.testing.assert_allclose(beta_vector(EX1_P, EX1_Q).values, [0.6, 0.25, 0.15], atol=TOL)

    def test_unordered_case(self):
        b = beta_vector([0.3, 0.3, 0.25, 0.1, 0.05], [0.6, 0.1, 0.1, 0.1, 0.1])
        np.testing.assert_allclose(b.values, [0.6, 0.1, 0.15, 0.1, 0.05], atol=TOL)
        assert not b.is_ordered()

    @given(pmfs())
    def test_self(self, p):
        np.testing.assert_allclose(beta_vector(p, p).values, p.masses, atol=TOL)


class TestConcavify:
    def test_examples(self):
        np.testing.assert_allclose(concavify([0.6, 0.25, 0.15]).masses, [0.6, 0.25, 0.15])
        np.testing.assert_allclose(concavify([0.6, 0.1, 0.15, 0.1, 0.05]).masses, [0.6, 0.125, 0.125, 0.1, 0.05])
        np.testing.assert_allclose(concavify([0.5, 0.5]).masses, [0.5, 0.5])

    def test_example_matches_references(self):
        v = [0.6, 0.1, 0.15, 0.1, 0.05]
        np.testing.assert_allclose(block_average(v), [0.6, 0.125, 0.125, 0.1, 0.05], atol=1e-15)
        np.testing.assert_allclose(concave_majorant_bruteforce(v), [0.6, 0.125, 0.125, 0.1, 0.05], atol=1e-15)

    @settings(max_examples=300)
    @given(st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda v: sum(v) > 0))
    def test_hull_equals_block_averaging(self, raw):
        v = np.array(raw) / sum(raw)
        out = concavify(v).masses
        np.testing.assert_allclose(out, block_average(v.tolist()), atol=1e-12)
        np.testing.assert_allclose(out, concave_majorant_bruteforce(v.tolist()), atol=1e-12)

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda v: sum(v) > 0))
    def test_dominates_and_idempotent(self, raw):
        v = np.array(raw) / sum(raw)
        c = concavify(v)
        assert np.all(np.cumsum(c.masses) >= np.cumsum(v) - TOL)
        assert np.all(np.diff(c.masses) <= 0)
        assert close(concavify(c.masses), c)


class TestJoin:
    def test_reference_pair(self):
        np.testing.assert_allclose(join(EX1_P, EX1_Q).masses, [0.6, 0.25, 0.15], atol=TOL)

    def test_four_dim_pair(self):
        np.testing.assert_allclose(
            join(EX2_P, EX2_Q).masses, [0.539996140, 0.229554617, 0.228476159, 0.001973084], atol=1e-9
        )

    @given(pmfs())
    def test_uniform_is_bottom(self, p):
        assert close(join(p, uniform(len(p))), p)
        assert close(meet(p, uniform(len(p))), uniform(len(p)))

    @given(pmfs(), pmfs())
    def test_lattice_pair_invariants(self, p, q):
        lp = lattice_pair(p, q)
        assert is_majorized_by(p, lp.join) and is_majorized_by(q, lp.join)
        n = len(lp.join)
        P = np.cumsum(p.padded(n).masses)
        Q = np.cumsum(q.padded(n).masses)
        J = np.cumsum(lp.join.masses)
        assert np.all(J >= np.maximum(P, Q) - TOL)
        if not lp.lcm_applied:
            np.testing.assert_allclose(J, np.maximum(P, Q), atol=TOL)

    def test_lcm_flag(self):
        assert lattice_pair([0.3, 0.3, 0.25, 0.1, 0.05], [0.6, 0.1, 0.1, 0.1, 0.1]).lcm_applied
        assert not lattice_pair(EX1_P, EX1_Q).lcm_applied


class TestLatticeLaws:
    @given(pmfs(), pmfs())
    def test_commutative(self, p, q):
        assert close(meet(p, q), meet(q, p))
        assert close(join(p, q), join(q, p))

    @given(pmfs(), pmfs())
    def test_absorption(self, p, q):
        assert close(meet(p, join(p, q)), p)
        assert close(join(p, meet(p, q)), p)

    @given(pmfs())
    def test_join_idempotent(self, p):
        assert close(join(p, p), p)


class TestMany:
    def test_examples(self):
        p = make_pmf(EX1_P)
        assert close(meet_many([p]), p)
        assert close(meet_many([p, p, p]), p)
        assert close(join_many([p]), p)
        assert close(join_many([p, p, p]), p)
        np.testing.assert_allclose(meet_many([EX1_P, EX1_Q, (0.5, 0.3, 0.2)]).masses, [0.45, 0.35, 0.2], atol=TOL)
        np.testing.assert_allclose(join_many([(0.5, 0.5), (0.6, 0.4), (0.7, 0.3)]).masses, [0.7, 0.3], atol=TOL)

    def test_empty(self):
        with pytest.raises(EmptyList):
            meet_many([])
        with pytest.raises(EmptyList):
            join_many([])

    def test_agree_with_folds(self, rng):
        for _ in range(2000):
            m = int(rng.integers(1, 6))
            n = int(rng.integers(1, 9))
            ps = [make_pmf(rng.dirichlet(np.ones(n)), strict=False) for _ in range(m)]
            fm, fj = ps[0], ps[0]
            for p in ps[1:]:
                fm, fj = meet(fm, p), join(fj, p)
            assert close(meet_many(ps), fm)
            assert close(join_many(ps), fj)


@pytest.mark.parametrize("n,max_den", [(2, 12), (3, 12), (4, 8)])
def test_universal_properties_on_rational_grid(n, max_den):
    rep = lattice_grid_check(n, max_den)
    assert rep.ok, rep.failures
    assert rep.comparisons == rep.grid_size ** 3
