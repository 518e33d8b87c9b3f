"""
Unit tests for Legendre symbols, prime search, splitting and Pell equations
(arith/numthy.py).
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

import pytest

from arith.numthy import (
    PellSolution,
    SplitTag,
    density_estimate,
    find_prime_with_symbols,
    independent_basis,
    is_square_mod_P,
    legendre,
    nonsquare_frequency,
    pell_solve,
    pell_solve_rational,
    split_type,
    two_independent,
)
from errors import DomainError, ExhaustionError, PreconditionError, UnsupportedError
from tests.conftest import quad


class TestLegendre:
    def test_values(self):
        assert legendre(-2, 13) == -1
        assert legendre(-1, 13) == 1
        assert legendre(-3, 13) == 1
        assert legendre(26, 13) == 0

    def test_needs_odd_prime(self):
        with pytest.raises(DomainError):
            legendre(3, 15)
        with pytest.raises(DomainError):
            legendre(3, 2)

    def test_multiplicative(self, rng):
        for p in (3, 5, 13, 23, 101, 7919):
            for _ in range(40):
                m, n = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
                if m % p == 0 or n % p == 0:
                    continue
                assert legendre(m * n, p) == legendre(m, p) * legendre(n, p)


class TestPrimeSearch:
    def test_smallest(self):
        assert find_prime_with_symbols([(-2, -1), (11, -1)]) == 13

    def test_with_exclusion(self):
        assert find_prime_with_symbols([(-2, -1), (11, -1)], {13}) == 23

    def test_point_conditions(self):
        assert find_prime_with_symbols([(-2, -1), (-187, -1)], {2, 5, 13}) == 23

    def test_sphere_conditions(self):
        assert find_prime_with_symbols([(-2, -1), (895, -1)], {2, 7, 13}) == 23

    def test_inconsistent_targets(self):
        with pytest.raises(PreconditionError) as exc:
            find_prime_with_symbols([(2, -1), (3, -1), (6, -1)])
        assert exc.value.precondition == "consistent_targets"

    def test_square_target_cannot_be_minus_one(self):
        with pytest.raises(PreconditionError):
            find_prime_with_symbols([(4, -1)])

    def test_exhaustion(self):
        with pytest.raises(ExhaustionError) as exc:
            find_prime_with_symbols([(-2, -1), (11, -1)], {13}, search_bound=20)
        assert exc.value.bound == 20

    def test_witness_satisfies_targets(self):
        targets = [(-2, -1), (39, -1), (5, 1)]
        p = find_prime_with_symbols(targets)
        assert all(legendre(v, p) == s for v, s in targets)


class TestIndependence:
    def test_independent(self):
        assert two_independent([-2, -1, -3])

    def test_dependent(self):
        assert not two_independent([2, 3, 6])

    def test_basis_skips_dependent_members(self):
        assert independent_basis([2, 3, 6, 5]) == [0, 1, 3]

    def test_squares_are_dependent(self):
        assert independent_basis([9, 7]) == [1]


class TestSplitting:
    def test_inert(self):
        kind = split_type(5, -2)
        assert kind.tag is SplitTag.INERT
        assert kind.residue_degree == 2

    def test_split(self):
        assert split_type(3, -2).tag is SplitTag.SPLIT

    def test_ramified(self):
        assert split_type(2, -2).tag is SplitTag.RAMIFIED

    def test_two_for_one_mod_four(self):
        assert split_type(2, -7).tag is SplitTag.SPLIT
        assert split_type(2, -3).tag is SplitTag.INERT

    def test_not_prime(self):
        with pytest.raises(DomainError):
            split_type(9, -2)


class TestResidueModPrimeIdeal:
    def test_inert_non_square(self):
        assert is_square_mod_P(quad(0, 1), 13) is False

    def test_inert_square(self):
        beta = quad(1, 1) * quad(1, 1)
        assert is_square_mod_P(beta, 13) is True

    def test_split_uses_root(self):
        # 3 splits with √−2 ≡ 1 or 2
        assert is_square_mod_P(quad(0, 1), 3, root=1) is True
        assert is_square_mod_P(quad(0, 1), 3, root=2) is False

    def test_ramified(self):
        with pytest.raises(UnsupportedError):
            is_square_mod_P(quad(1, 1), 2)

    def test_not_integral(self):
        with pytest.raises(DomainError):
            is_square_mod_P(quad(Fraction(1, 2), 1), 13)

    def test_in_prime_ideal(self):
        with pytest.raises(DomainError):
            is_square_mod_P(quad(13, 26), 13)

    def test_nonsquare_frequency(self):
        assert nonsquare_frequency(quad(1, 1), 10**4) > Fraction(1, 4)


class TestPell:
    def test_sphere_example(self):
        assert pell_solve(58) == PellSolution(19603, 2574, 58)

    def test_large(self):
        assert pell_solve(61) == PellSolution(1766319049, 226153980, 61)

    def test_halfplane_examples(self):
        assert (pell_solve(11).x, pell_solve(11).y) == (10, 3)
        assert (pell_solve(39).x, pell_solve(39).y) == (25, 4)
        assert (pell_solve(99).x, pell_solve(99).y) == (10, 1)

    def test_rational(self):
        solution = pell_solve_rational(Fraction(3580, 81))
        assert (solution.x, solution.y) == (359, 54)
        assert pell_solve(3580) == PellSolution(359, 6, 3580)

    def test_rational_integer_value(self):
        solution = pell_solve_rational(Fraction(942))
        assert (solution.x, solution.y) == (106133, 3458)
        assert solution.x ** 2 - 942 * solution.y ** 2 == 1
        assert (pell_solve_rational(Fraction(2)).x, pell_solve_rational(Fraction(2)).y) == (3, 2)

    def test_square_rejected(self):
        with pytest.raises(DomainError):
            pell_solve(49)
        with pytest.raises(DomainError):
            pell_solve_rational(Fraction(9, 4))

    def test_minimal_against_brute_force(self):
        for d in range(2, 101):
            if isqrt(d) ** 2 == d:
                continue
            solution = pell_solve(d)
            assert solution.x ** 2 - d * solution.y ** 2 == 1
            for y in range(1, min(solution.y, 10**4)):
                rest = 1 + d * y * y
                assert isqrt(rest) ** 2 != rest, f"smaller solution for D={d}"


class TestDensity:
    def test_inert_half(self):
        value = density_estimate(-2, "Inert", 10**5)
        assert Fraction(48, 100) <= value <= Fraction(52, 100)

    def test_split_half(self):
        value = density_estimate(-2, SplitTag.SPLIT, 10**5)
        assert Fraction(48, 100) <= value <= Fraction(52, 100)

    def test_ramified_vanishes(self):
        assert density_estimate(-2, SplitTag.RAMIFIED, 10**5) < Fraction(1, 1000)

    def test_types_partition_the_primes(self):
        for a in (-2, -7, 5):
            total = sum(density_estimate(a, tag, 10**4) for tag in SplitTag)
            assert total == 1

    def test_small_bound(self):
        with pytest.raises(DomainError):
            density_estimate(-2, SplitTag.INERT, 50)
