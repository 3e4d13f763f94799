"""
Tests for exact and approximate roots of permutations.
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import cyc, perms_of_degree
from src.perm_core import hamming, identity, power, random_permutation
from src.roots import (
    NoExactRootError,
    NotPrimeError,
    approx_root,
    approx_root_prime,
    chain_bound,
    exact_root,
    exact_root_exists,
    prime_factors,
    profile,
    root_bound,
    statement_bound,
)


class TestProfile:
    def test_identity(self):
        prof = profile(identity(6), 3)
        assert prof.n0 == 6
        assert prof.counts == {}
        assert prof.support == frozenset()

    def test_mixed_cycles(self):
        prof = profile(cyc(5, (1, 2), (3, 4, 5)), 2)
        assert prof.n0 == 3
        assert prof.counts == {1: 1}
        assert prof.residues == {1: 1}
        assert prof.support == {1}

    def test_paired_transpositions(self):
        prof = profile(cyc(4, (1, 2), (3, 4)), 2)
        assert prof.counts == {1: 2}
        assert prof.residues == {1: 0}
        assert prof.alpha(1) == 1

    def test_requires_prime(self):
        with pytest.raises(NotPrimeError):
            profile(identity(3), 4)

    @given(st.integers(1, 12).flatmap(perms_of_degree), st.sampled_from([2, 3, 5, 7]))
    def test_invariants(self, f, p):
        prof = profile(f, p)
        assert prof.n0 + sum(k * p * m for k, m in prof.counts.items()) == f.n
        assert all(0 <= r < p and (prof.counts[k] - r) % p == 0 for k, r in prof.residues.items())
        assert len(prof.support) ** 2 < 2 * f.n / p or not prof.support


class TestExactRoot:
    def test_identity_has_root(self):
        assert exact_root_exists(identity(4), 2)

    def test_transposition_has_no_square_root(self):
        assert not exact_root_exists(cyc(4, (1, 2)), 2)
        with pytest.raises(NoExactRootError):
            exact_root(cyc(4, (1, 2)), 2)

    def test_three_cycle_square_root(self):
        assert exact_root(cyc(3, (1, 2, 3)), 2) == cyc(3, (1, 3, 2))

    def test_interleaves_pairs(self):
        f = cyc(4, (1, 2), (3, 4))
        assert exact_root_exists(f, 2)
        assert exact_root(f, 2) == cyc(4, (1, 3, 2, 4))

    def test_requires_prime(self):
        with pytest.raises(NotPrimeError):
            exact_root(identity(3), 6)

    @given(st.integers(1, 12).flatmap(perms_of_degree), st.sampled_from([2, 3, 5]))
    def test_planted_power_is_recovered(self, x, p):
        f = power(x, p)
        assert exact_root_exists(f, p)
        assert power(exact_root(f, p), p) == f


class TestApproxRootPrime:
    def test_exact_case_has_no_defect(self):
        f = cyc(4, (1, 2), (3, 4))
        result = approx_root_prime(f, 2)
        assert result.f_tilde == f
        assert result.defect == 0

    def test_breaks_one_transposition(self):
        result = approx_root_prime(cyc(5, (1, 2), (3, 4, 5)), 2)
        assert result.f_tilde == cyc(5, (3, 4, 5))
        assert result.defect == Fraction(2, 5)
        assert result.g == cyc(5, (3, 5, 4))
        assert result.broken_points == (2,)

    def test_random_degree_1000_within_bound(self, rng):
        f = random_permutation(1000, rng)
        result = approx_root_prime(f, 3)
        assert result.within_bound()
        assert float(result.bound) == pytest.approx(0.10328, abs=1e-4)

    @given(st.integers(1, 12).flatmap(perms_of_degree), st.sampled_from([2, 3, 5, 7]))
    def test_exactness(self, f, p):
        result = approx_root_prime(f, p)
        assert power(result.g, p) == result.f_tilde
        assert result.defect == Fraction(2 * profile(f, p).broken_cycle_total(), f.n)
        assert exact_root_exists(result.f_tilde, p)
        assert result.within_bound()


class TestApproxRoot:
    def test_first_power_is_trivial(self):
        f = cyc(3, (1, 2))
        result = approx_root(f, 1)
        assert result.g == f
        assert result.defect == 0

    def test_coprime_cycle_is_exact_for_each_stage(self):
        result = approx_root(cyc(5, (1, 2, 3, 4, 5)), 4)
        assert result.defect == 0
        assert len(result.stages) == 2

    def test_non_positive_exponent(self):
        with pytest.raises(ValueError):
            approx_root(identity(3), 0)

    def test_composite_defect_is_measured(self, rng):
        f = random_permutation(500, rng)
        result = approx_root(f, 6)
        assert result.defect == hamming(power(result.g, 6), f)
        assert result.within_bound()
        assert [s.p for s in result.stages] == [3, 2]


class TestBounds:
    def test_prime_factors_descending(self):
        assert prime_factors(12) == [3, 2, 2]
        assert prime_factors(1) == []

    def test_root_bound_at_p2(self):
        assert sympy.simplify(root_bound(2, 10 ** 4) - sympy.Rational(1, 50)) == 0

    def test_chain_bound_accumulates(self):
        expected = root_bound(3, 100) + 3 * root_bound(2, 100)
        assert sympy.simplify(chain_bound(6, 100) - expected) == 0

    def test_statement_form_is_not_larger(self):
        for p in (2, 3, 5, 7):
            assert bool(statement_bound(p, 100) <= root_bound(p, 100))


@pytest.mark.slow
class TestRootsAtScale:
    @pytest.mark.parametrize("n", [50, 500])
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_construction_soundness(self, n, p):
        rng = np.random.default_rng(n * p)
        for _ in range(10 ** 4):
            f = power(random_permutation(n, rng), p)
            assert power(exact_root(f, p), p) == f

    @pytest.mark.parametrize("n", [10, 100, 1000, 10000])
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_defect_formula_and_bound(self, n, p):
        rng = np.random.default_rng(n + p)
        for _ in range(1000):
            f = random_permutation(n, rng)
            result = approx_root_prime(f, p)
            assert power(result.g, p) == result.f_tilde
            assert result.defect == Fraction(2 * profile(f, p).broken_cycle_total(), n)
            assert result.within_bound()

    @pytest.mark.parametrize("n", [1000, 10000])
    @pytest.mark.parametrize("p", [4, 6, 12])
    def test_composite_chain_bound(self, n, p):
        rng = np.random.default_rng(n * 31 + p)
        for _ in range(100):
            f = random_permutation(n, rng)
            result = approx_root(f, p)
            assert result.defect == hamming(power(result.g, p), f)
            assert result.within_bound()
