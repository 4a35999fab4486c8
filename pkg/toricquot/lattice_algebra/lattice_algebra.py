"""Exact integer-matrix algorithms.

Smith normal form with transformation matrices, cokernels of integer
matrices as finitely generated abelian groups, saturation of sublattices,
lattice indices and integer kernels. Every routine works with arbitrary
precision integers; nothing here ever touches floating point.

Public API
----------
IntMatrix
    Alias of :class:`sympy.ImmutableMatrix` holding integer entries.
FinAbGroup
    Finitely generated abelian group in invariant-factor form.
smith_normal_form, cokernel_structure, saturate, lattice_index, kernel_basis
    The algorithms.
rational_inverse, multiply_rows, is_integral, leading_minors
    Exact rational helpers on plain row lists.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, prod
from typing import Any

from sympy import ImmutableMatrix
from sympy.matrices import MatrixBase

from toricquot.constants import messages as msg
from toricquot.exceptions import ValidationError

__all__ = [
    "IntMatrix",
    "Rows",
    "FinAbGroup",
    "int_matrix",
    "to_rows",
    "identity_matrix",
    "zero_matrix",
    "from_columns",
    "column",
    "content",
    "normalize_sign",
    "smith_normal_form",
    "cokernel_structure",
    "saturate",
    "lattice_index",
    "kernel_basis",
    "rational_inverse",
    "is_integral",
    "multiply_rows",
    "leading_minors",
]

logger = logging.getLogger(__name__)

IntMatrix = ImmutableMatrix
Rows = list[list[int]]


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def _as_int(value: Any) -> int:
    """Return *value* as a Python ``int`` or raise if it is not integral."""
    if isinstance(value, bool):
        raise ValidationError(msg.ERROR_MSG_NOT_INTEGER.format(value=value))
    try:
        as_int = int(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(msg.ERROR_MSG_NOT_INTEGER.format(value=value)) from exc
    if as_int != value:
        raise ValidationError(msg.ERROR_MSG_NOT_INTEGER.format(value=value))
    return as_int


def int_matrix(data: Any, rows: int | None = None, cols: int | None = None) -> IntMatrix:
    """Build an :data:`IntMatrix` from nested sequences or another matrix.

    Args:
        data: A sympy matrix or a sequence of row sequences.
        rows: Row count, needed only for matrices without rows.
        cols: Column count, needed only when *data* has no rows to infer it from.

    Returns:
        An immutable integer matrix.

    Raises:
        ValidationError: If rows have unequal lengths or an entry is not integral.
    """
    if isinstance(data, MatrixBase):
        n_rows, n_cols = data.rows, data.cols
        entries = [_as_int(data[i, j]) for i in range(n_rows) for j in range(n_cols)]
        return ImmutableMatrix(n_rows, n_cols, entries)

    row_list = [list(r) for r in data]
    n_rows = len(row_list) if rows is None else rows
    if cols is None:
        n_cols = len(row_list[0]) if row_list else 0
    else:
        n_cols = cols
    if len(row_list) != n_rows:
        raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{n_rows} rows", got=len(row_list)))
    entries: list[int] = []
    for row in row_list:
        if len(row) != n_cols:
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{n_cols} columns", got=len(row)))
        entries.extend(_as_int(x) for x in row)
    return ImmutableMatrix(n_rows, n_cols, entries)


def to_rows(matrix: MatrixBase) -> Rows:
    """Return the entries of *matrix* as a list of lists of Python ints."""
    return [[int(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def identity_matrix(n: int) -> IntMatrix:
    return ImmutableMatrix.eye(n)


def zero_matrix(rows: int, cols: int) -> IntMatrix:
    return ImmutableMatrix.zeros(rows, cols)


def from_columns(columns: Iterable[Sequence[int]], rows: int) -> IntMatrix:
    """Assemble a ``rows`` x ``len(columns)`` matrix from column vectors."""
    cols = [list(c) for c in columns]
    return int_matrix([[c[i] for c in cols] for i in range(rows)], rows=rows, cols=len(cols))


def column(matrix: MatrixBase, j: int) -> tuple[int, ...]:
    return tuple(int(matrix[i, j]) for i in range(matrix.rows))


def content(vector: Iterable[int]) -> int:
    """gcd of the absolute values of the entries (0 for the zero vector)."""
    return reduce(gcd, (abs(int(x)) for x in vector), 0)


def normalize_sign(vector: Sequence[int]) -> tuple[int, ...]:
    """Flip *vector* so that its first non-zero entry is positive."""
    for x in vector:
        if x:
            return tuple(vector) if x > 0 else tuple(-y for y in vector)
    return tuple(vector)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group ``Z/d1 + ... + Z/dk + Z^free_rank``.

    The torsion part is kept in canonical invariant-factor form: every
    factor is at least 2 and each divides the next. Two groups are
    isomorphic exactly when they compare equal.
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        factors = tuple(_as_int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        chain_ok = all(d >= 2 for d in factors) and all(b % a == 0 for a, b in zip(factors, factors[1:]))
        if not chain_ok:
            raise ValidationError(msg.ERROR_MSG_INVARIANT_CHAIN.format(factors=list(factors)))
        if self.free_rank < 0:
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected="free rank >= 0", got=self.free_rank))

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> FinAbGroup:
        """``Z/n``; ``n = 0`` gives ``Z`` and ``n = 1`` the trivial group."""
        n = abs(_as_int(n))
        if n == 0:
            return cls(free_rank=1)
        return cls((n,)) if n > 1 else cls()

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> FinAbGroup:
        """Canonical form of a direct sum of cyclic groups of the given orders."""
        orders = [_as_int(n) for n in orders]
        if not orders:
            return cls()
        diagonal = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        return cokernel_structure(int_matrix(diagonal))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, ``None`` when the group is infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def torsion_count(self, d: int) -> int:
        """Number of elements of the torsion part killed by ``d``."""
        return prod(gcd(d, di) for di in self.invariant_factors)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# Row/column operations on plain lists
# ---------------------------------------------------------------------------


def _eye(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(a: Rows, u: Rows, i: int, j: int) -> None:
    if i != j:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]


def _swap_cols(a: Rows, v: Rows, i: int, j: int) -> None:
    if i != j:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]


def _add_row(a: Rows, u: Rows, target: int, source: int, factor: int) -> None:
    """row[target] += factor * row[source] in both *a* and *u*."""
    for mat in (a, u):
        src = mat[source]
        mat[target] = [x + factor * y for x, y in zip(mat[target], src)]


def _add_col(a: Rows, v: Rows, target: int, source: int, factor: int) -> None:
    """col[target] += factor * col[source] in both *a* and *v*."""
    for mat in (a, v):
        for row in mat:
            row[target] += factor * row[source]


def _min_abs_position(a: Rows, start: int, m: int, n: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_abs = 0
    for i in range(start, m):
        for j in range(start, n):
            x = abs(a[i][j])
            if x and (best is None or x < best_abs):
                best, best_abs = (i, j), x
    return best


def _smith_rows(matrix: Rows, m: int, n: int) -> tuple[Rows, Rows, Rows]:
    """Smith form of an ``m`` x ``n`` list matrix: returns ``(U, D, V)``."""
    a = [row[:] for row in matrix]
    u = _eye(m)
    v = _eye(n)
    for t in range(min(m, n)):
        pivot = _min_abs_position(a, t, m, n)
        if pivot is None:
            break
        _swap_rows(a, u, t, pivot[0])
        _swap_cols(a, v, t, pivot[1])
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    _add_row(a, u, i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    _add_col(a, v, j, t, -q)
            cross = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            cross += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if cross:
                # a remainder smaller than the pivot becomes the new pivot
                _, i, j = min(cross)
                _swap_rows(a, u, t, i)
                _swap_cols(a, v, t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(a, u, t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def _diagonal(d: Rows, m: int, n: int) -> list[int]:
    return [d[i][i] for i in range(min(m, n))]


def _inverse_rows(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over ``Fraction``."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValidationError(msg.ERROR_MSG_SINGULAR_MATRIX.format(n=n))
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(n):
            factor = aug[r][col]
            if r != col and factor:
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _unimodular_inverse(rows: Rows) -> Rows:
    return [[int(x) for x in row] for row in _inverse_rows(rows)]


def _column_basis_rows(a: Rows, m: int, n: int) -> list[list[int]]:
    """Basis (as column vectors) of the column span of ``a``."""
    u, d, _ = _smith_rows(a, m, n)
    diag = [x for x in _diagonal(d, m, n) if x]
    if not diag:
        return []
    u_inv = _unimodular_inverse(u)
    return [[diag[k] * u_inv[i][k] for i in range(m)] for k in range(len(diag))]


@lru_cache(maxsize=1024)
def rational_inverse(matrix: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of a non-singular square integer matrix as ``Fraction`` rows.

    Raises:
        ValidationError: If *matrix* is singular.
    """
    return tuple(tuple(row) for row in _inverse_rows(to_rows(matrix)))


def multiply_rows(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Product of two row-list matrices with exact entries."""
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def is_integral(rows: Iterable[Iterable]) -> bool:
    return all(Fraction(x).denominator == 1 for row in rows for x in row)


def leading_minors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors of a square matrix, stopping after the first zero."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    minors: list[int] = []
    running = Fraction(1)
    for k in range(n):
        pivot = a[k][k]
        running *= pivot
        minors.append(int(running))
        if not pivot:
            break
        for r in range(k + 1, n):
            factor = a[r][k] / pivot
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[k])]
    return minors


# ---------------------------------------------------------------------------
# Public algorithms
# ---------------------------------------------------------------------------


def smith_normal_form(matrix: MatrixBase) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transformation matrices.

    Args:
        matrix: Any integer matrix, zero-sized dimensions included.

    Returns:
        ``(U, D, V)`` with ``U``, ``V`` unimodular and ``U * matrix * V = D``
        diagonal, non-negative, ``d1 | d2 | ...``.
    """
    m, n = matrix.rows, matrix.cols
    u, d, v = _smith_rows(to_rows(matrix), m, n)
    logger.debug("smith form of %dx%d matrix: diagonal %s", m, n, _diagonal(d, m, n))
    return int_matrix(u, m, m), int_matrix(d, m, n), int_matrix(v, n, n)


def cokernel_structure(matrix: MatrixBase) -> FinAbGroup:
    """``Z^rows / (column span of matrix)`` as invariant factors plus free rank."""
    m, n = matrix.rows, matrix.cols
    _, d, _ = _smith_rows(to_rows(matrix), m, n)
    nonzero = [x for x in _diagonal(d, m, n) if x]
    return FinAbGroup(tuple(x for x in nonzero if x > 1), m - len(nonzero))


def saturate(sublattice: MatrixBase) -> tuple[IntMatrix, int]:
    """Saturation of the lattice spanned by the columns of *sublattice*.

    Args:
        sublattice: ``g`` x ``k`` matrix with linearly independent columns.

    Returns:
        A basis of the saturation (columns, first non-zero entry positive)
        and the index of the column span inside it.

    Raises:
        ValidationError: ``rank deficiency`` when the columns are dependent.
    """
    g, k = sublattice.rows, sublattice.cols
    u, d, _ = _smith_rows(to_rows(sublattice), g, k)
    diag = _diagonal(d, g, k)
    rank = sum(1 for x in diag if x)
    if rank < k:
        raise ValidationError(msg.ERROR_MSG_RANK_DEFICIENCY.format(rank=rank, cols=k))
    if k == 0:
        return zero_matrix(g, 0), 1
    u_inv = _unimodular_inverse(u)
    basis = [normalize_sign([u_inv[i][j] for i in range(g)]) for j in range(k)]
    return from_columns(basis, g), prod(diag)


def lattice_index(lattice: MatrixBase, sublattice: MatrixBase) -> int:
    """Index of span(sublattice) in span(lattice).

    The columns of either matrix need not be independent. The index is the
    product of the Smith invariants of the sublattice's coordinates in a
    basis of the lattice.

    Raises:
        ValidationError: If a sublattice column lies outside span(lattice)
            or the index is infinite.
    """
    g = lattice.rows
    if sublattice.rows != g:
        raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{g} rows", got=sublattice.rows))
    basis = _column_basis_rows(to_rows(lattice), g, lattice.cols)
    k = len(basis)
    sub_cols = [column(sublattice, j) for j in range(sublattice.cols)]
    if k == 0:
        for j, col in enumerate(sub_cols):
            if any(col):
                raise ValidationError(msg.ERROR_MSG_NOT_SUBLATTICE.format(column=j))
        return 1

    b = [[basis[c][i] for c in range(k)] for i in range(g)]
    gram = [[sum(u * v for u, v in zip(basis[r], basis[c])) for c in range(k)] for r in range(k)]
    projector = multiply_rows(_inverse_rows(gram), basis)
    coords: Rows = [[0] * len(sub_cols) for _ in range(k)]
    for j, col in enumerate(sub_cols):
        target = [[x] for x in col]
        x = multiply_rows(projector, target)
        if not is_integral(x) or multiply_rows(b, x) != target:
            raise ValidationError(msg.ERROR_MSG_NOT_SUBLATTICE.format(column=j))
        for i in range(k):
            coords[i][j] = int(x[i][0])

    _, d, _ = _smith_rows(coords, k, len(sub_cols))
    diag = [x for x in _diagonal(d, k, len(sub_cols)) if x]
    if len(diag) < k:
        raise ValidationError(msg.ERROR_MSG_INFINITE_INDEX.format(sub_rank=len(diag), rank=k))
    return prod(diag)


def kernel_basis(matrix: MatrixBase) -> IntMatrix:
    """Saturated basis of ``{x in Z^cols : matrix * x = 0}`` as columns."""
    m, n = matrix.rows, matrix.cols
    _, d, v = _smith_rows(to_rows(matrix), m, n)
    rank = sum(1 for x in _diagonal(d, m, n) if x)
    basis = [normalize_sign([v[i][j] for i in range(n)]) for j in range(rank, n)]
    return from_columns(basis, n)
