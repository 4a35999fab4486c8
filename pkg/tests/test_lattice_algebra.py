from fractions import Fraction

import pytest
from sympy import ZZ, ImmutableMatrix
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from toricquot.exceptions import ValidationError
from toricquot.lattice_algebra import (
    FinAbGroup,
    column,
    cokernel_structure,
    content,
    int_matrix,
    is_integral,
    kernel_basis,
    lattice_index,
    leading_minors,
    multiply_rows,
    normalize_sign,
    rational_inverse,
    saturate,
    smith_normal_form,
)

MATRICES = [
    [[2, 0], [0, 3]],
    [[1, 2], [3, 4]],
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[4, 6], [6, 9]],
    [[0, 0], [0, 0]],
    [[3, 1, 4], [1, 5, 9]],
    [[2], [6], [4]],
]


@pytest.mark.parametrize("rows", MATRICES)
def test_smith_normal_form_contract(rows):
    M = int_matrix(rows)
    U, D, V = smith_normal_form(M)

    assert U * M * V == D
    assert abs(U.det()) == 1
    assert abs(V.det()) == 1
    diagonal = [int(D[i, i]) for i in range(min(D.shape))]
    assert all(x >= 0 for x in diagonal)
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]) if a)


@pytest.mark.parametrize("rows", [m for m in MATRICES if len(m) == len(m[0])])
def test_smith_normal_form_agrees_with_sympy(rows):
    M = int_matrix(rows)
    _, D, _ = smith_normal_form(M)
    reference = sympy_smith_normal_form(ImmutableMatrix(rows), domain=ZZ)
    assert sorted(int(D[i, i]) for i in range(M.rows)) == sorted(abs(int(reference[i, i])) for i in range(M.rows))


def test_smith_normal_form_of_empty_matrix():
    U, D, V = smith_normal_form(ImmutableMatrix.zeros(2, 0))
    assert U.shape == (2, 2) and D.shape == (2, 0) and V.shape == (0, 0)


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[2, 0], [0, 3]], FinAbGroup((6,))),
        ([[2, 0], [0, 4]], FinAbGroup((2, 4))),
        ([[1, 2], [3, 4]], FinAbGroup((2,))),
        ([[1, 0], [0, 1]], FinAbGroup()),
        ([[0]], FinAbGroup(free_rank=1)),
        ([[2], [0]], FinAbGroup((2,), 1)),
    ],
)
def test_cokernel_structure(rows, expected):
    assert cokernel_structure(int_matrix(rows)) == expected


def test_fin_ab_group_canonical_form():
    assert FinAbGroup.from_cyclic_orders([2, 3]) == FinAbGroup.cyclic(6)
    assert FinAbGroup.from_cyclic_orders([2, 2]) == FinAbGroup((2, 2))
    assert FinAbGroup.cyclic(1).is_trivial
    assert FinAbGroup.cyclic(0) == FinAbGroup(free_rank=1)

    with pytest.raises(ValidationError, match="invariant factors"):
        FinAbGroup((4, 2))
    with pytest.raises(ValidationError):
        FinAbGroup((1, 2))


def test_fin_ab_group_queries():
    group = FinAbGroup((2, 4))
    assert group.order == 8
    assert group.exponent == 4
    assert group.torsion_count(2) == 4
    assert group.torsion_count(4) == 8
    assert str(group) == "Z/2 + Z/4"
    assert str(FinAbGroup()) == "1"
    assert str(FinAbGroup((3,), 2)) == "Z/3 + Z^2"
    assert FinAbGroup(free_rank=1).order is None


def test_saturate_returns_basis_and_index():
    basis, index = saturate(int_matrix([[2], [4]]))
    assert column(basis, 0) == (1, 2)
    assert index == 2

    basis, index = saturate(int_matrix([[-3], [0]]))
    assert column(basis, 0) == (1, 0)
    assert index == 3


def test_saturate_is_idempotent():
    basis, _ = saturate(int_matrix([[2, 0], [0, 6], [4, 3]]))
    again, index = saturate(basis)
    assert index == 1
    assert lattice_index(again, basis) == 1


def test_saturate_rejects_dependent_columns():
    with pytest.raises(ValidationError, match="rank deficiency"):
        saturate(int_matrix([[1, 2], [2, 4]]))


def test_lattice_index():
    eye = ImmutableMatrix.eye(2)
    assert lattice_index(eye, int_matrix([[2, 0], [0, 3]])) == 6
    assert lattice_index(eye, int_matrix([[1, 1], [1, -1]])) == 2
    # spanning set with redundant columns
    assert lattice_index(eye, int_matrix([[2, 0, 2], [0, 2, 2]])) == 4


def test_lattice_index_errors():
    with pytest.raises(ValidationError, match="infinite index"):
        lattice_index(ImmutableMatrix.eye(2), int_matrix([[1], [0]]))
    with pytest.raises(ValidationError, match="not in the span"):
        lattice_index(int_matrix([[2, 0], [0, 2]]), int_matrix([[1], [0]]))


def test_kernel_basis():
    kernel = kernel_basis(int_matrix([[1, 1]]))
    assert kernel.shape == (2, 1)
    assert column(kernel, 0) == (1, -1)
    assert kernel_basis(ImmutableMatrix.eye(3)).shape == (3, 0)


def test_int_matrix_rejects_non_integers():
    with pytest.raises(ValidationError):
        int_matrix([[1.5]])
    with pytest.raises(ValidationError):
        int_matrix([[True]])
    with pytest.raises(ValidationError, match="shape mismatch"):
        int_matrix([[1, 2], [3]])


def test_vector_helpers():
    assert content([4, -6, 0]) == 2
    assert content([0, 0]) == 0
    assert normalize_sign([0, -2, 3]) == (0, 2, -3)


@pytest.mark.parametrize("rows", [[[2, 1], [1, 1]], [[2, 1], [1, 2]], [[1, 2], [3, 4]], [[2, 0, 1], [0, 3, 0], [1, 0, 5]]])
def test_rational_inverse_matches_sympy(rows):
    matrix = int_matrix(rows)
    inverse = rational_inverse(matrix)
    expected = matrix.inv()
    assert [[Fraction(int(x.p), int(x.q)) for x in expected.row(i)] for i in range(matrix.rows)] == [
        list(row) for row in inverse
    ]
    identity = [[int(i == j) for j in range(matrix.rows)] for i in range(matrix.rows)]
    assert multiply_rows(inverse, rows) == identity


def test_rational_inverse_of_unimodular_is_integral():
    inverse = rational_inverse(int_matrix([[2, 1], [1, 1]]))
    assert inverse == ((1, -1), (-1, 2))
    assert is_integral(inverse)
    assert not is_integral(rational_inverse(int_matrix([[2, 1], [1, 2]])))


def test_rational_inverse_rejects_singular():
    with pytest.raises(ValidationError, match="singular"):
        rational_inverse(int_matrix([[4, 6], [6, 9]]))


@pytest.mark.parametrize("rows", [[[2, 0], [0, 3]], [[1, 2], [3, 4]], [[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [[0, 1], [1, 0]]])
def test_leading_minors(rows):
    matrix = ImmutableMatrix(rows)
    expected = []
    for k in range(1, matrix.rows + 1):
        expected.append(int(matrix[:k, :k].det()))
        if expected[-1] == 0:
            break
    assert leading_minors(rows) == expected
