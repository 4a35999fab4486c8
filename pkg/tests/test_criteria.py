import pytest
from sympy import ImmutableMatrix

from toricquot.exceptions import ValidationError
from toricquot.optimal_quotient import (
    analyze_subvariety,
    gekeler_criterion,
    idempotent_endomorphism,
    lemma_index_check,
    subtorus_intersection,
)

SWAP = [[0, 1], [1, 0]]


def _algebra(P, beta=(1, 0)):
    """``Z[e0]`` for the quotient along *beta*: basis ``I, e0``."""
    E = subtorus_intersection(P, beta)
    e0, _ = idempotent_endomorphism(P, E)
    return E, [ImmutableMatrix.eye(P.g), e0]


def _sum_pairing(generators):
    """``(T, lambda_i)`` = coordinate sum of ``T lambda_i``; always equivariant."""
    return [[sum(int(T[j, i]) for j in range(T.rows)) for i in range(T.cols)] for T in generators]


@pytest.mark.parametrize("fixture, c", [("diagonal", 1), ("glued", 2), ("glued_c3", 3)])
def test_index_is_divisible_by_c(fixture, c, request):
    P = request.getfixturevalue(fixture)
    E, generators = _algebra(P)
    assert E.c == c

    check = lemma_index_check(P, E, generators)
    assert check.index == c
    assert check.divisible_by_c
    assert check.eigenvalues == (1, c)


def test_index_uses_the_other_eigenvalue(glued):
    E = subtorus_intersection(glued, (0, 1))
    _, generators = _algebra(glued, (1, 0))
    check = lemma_index_check(glued, E, generators)
    assert check.eigenvalues == (1, 0)
    assert check.index == 2


def test_index_check_rejects_non_endomorphisms(glued):
    E = subtorus_intersection(glued, (1, 0))
    with pytest.raises(ValidationError, match="fails at generator pair"):
        lemma_index_check(glued, E, [[[1, 0], [0, 0]]])


def test_index_check_requires_an_eigenvector(diagonal):
    E = subtorus_intersection(diagonal, (1, 0))
    with pytest.raises(ValidationError, match="not an eigenvector"):
        lemma_index_check(diagonal, E, [SWAP])


def test_pairing_criterion_is_inconclusive_when_c_is_two(glued):
    E, generators = _algebra(glued)
    verdict = gekeler_criterion(glued, E, generators, _sum_pairing(generators))
    assert verdict.determinant == -2
    assert not verdict.certified
    assert (verdict.denominator, verdict.r, verdict.ratio) == (2, 1, 2)
    assert verdict.ratio_divides_determinant
    assert verdict.verdict == "criterion inconclusive"


def test_perfect_pairing_certifies_surjectivity(diagonal):
    E, generators = _algebra(diagonal)
    verdict = gekeler_criterion(diagonal, E, generators, _sum_pairing(generators))
    assert abs(verdict.determinant) == 1
    assert verdict.certified
    assert verdict.verdict == "certified surjective"


def test_pairing_criterion_preconditions(glued):
    E, generators = _algebra(glued)
    with pytest.raises(ValidationError, match="not equivariant"):
        gekeler_criterion(glued, E, generators, [[1, 0], [0, 1]])
    with pytest.raises(ValidationError, match="pairing must be"):
        gekeler_criterion(glued, E, generators, [[1, 1]])
    # 2 * identity and e0 span a ring without the identity
    no_identity = [2 * ImmutableMatrix.eye(2), generators[1]]
    with pytest.raises(ValidationError, match="identity is not"):
        gekeler_criterion(glued, E, no_identity, _sum_pairing(no_identity))


def test_analysis_records_failed_preconditions(glued):
    E = subtorus_intersection(glued, (1, 0))
    analysis = analyze_subvariety(glued, E, [[[1, 0], [0, 0]]], [[1, 1]])
    assert analysis.index_check is None
    assert "fails at generator pair" in analysis.index_error
    assert analysis.gekeler is None
    assert analysis.gekeler_error is not None
    assert analysis.invariants.c == 2


def test_analysis_without_endomorphisms(glued):
    E = subtorus_intersection(glued, (1, 0))
    analysis = analyze_subvariety(glued, E)
    assert analysis.index_check is None and analysis.index_error is None
    assert analysis.gekeler is None and analysis.gekeler_error is None
