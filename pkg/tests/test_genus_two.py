from fractions import Fraction

import pytest

from toricquot.exceptions import ValidationError
from toricquot.local_field import ord_of_rational
from toricquot.tate_construction import (
    POLY_RING,
    genus_two_polynomial,
    legendre_j,
    map_x_coordinate,
    verify_genus_two_example,
)

x, p = POLY_RING.gens


def test_map_identity_holds_formally():
    X = map_x_coordinate()
    assert X * (X - 1) * (X + p) == (p * (p + 1)) ** 2 * genus_two_polynomial()


def test_genus_two_polynomial_has_degree_six():
    assert genus_two_polynomial().degree(x) == 6


@pytest.mark.parametrize("prime", [3, 5, 7, 11])
def test_j_invariant_has_valuation_minus_two(prime):
    assert ord_of_rational(legendre_j(Fraction(-prime)), prime) == -2


def test_legendre_j_of_a_known_value():
    # lambda = -1 gives j = 1728
    assert legendre_j(Fraction(-1)) == 1728


@pytest.mark.parametrize("prime", [5, 7])
def test_all_checks_pass(prime):
    report = verify_genus_two_example(prime)
    assert report.prime == prime
    assert report.all_passed, [check.name for check in report.failures()]
    assert len(report.checks) == 8


@pytest.mark.parametrize("prime", [2, 9, 1])
def test_prime_must_be_odd(prime):
    with pytest.raises(ValidationError, match="odd prime"):
        verify_genus_two_example(prime)
