"""Criteria for surjectivity coming from an algebra of endomorphisms.

Both checks take a list ``T_gens`` of integer matrices acting on lattice
coordinates. :func:`gekeler_criterion` treats them as a Z-basis of a ring
``TT`` paired with ``Lambda``; a perfect equivariant pairing certifies that
``pi*`` is surjective. :func:`lemma_index_check` computes the index of
``I_E Lambda`` in ``lambda_E^perp`` for an ideal cut out by eigenvalues on
``lambda_E``; that index is always a multiple of ``c``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from sympy import ImmutableMatrix, Matrix, Rational

from toricquot.constants import messages as msg
from toricquot.exceptions import ConsistencyError, ValidationError
from toricquot.lattice_algebra import IntMatrix, column, int_matrix, kernel_basis, lattice_index, to_rows
from toricquot.toric_hom import endomorphism, rosati_adjoint
from toricquot.toric_lattice import PolarizedLattice, monodromy_matrix

from .optimal_quotient import (
    EllipticSubvariety,
    QuotientInvariants,
    TheoremReport,
    check_theorem_equivalence,
    compute_invariants,
    idempotent_matrix,
)

__all__ = [
    "GekelerVerdict",
    "IndexCheck",
    "gekeler_criterion",
    "lemma_index_check",
    "SubvarietyAnalysis",
    "analyze_subvariety",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GekelerVerdict:
    """Outcome of the perfect-pairing criterion.

    ``denominator`` is the least ``s`` with ``s*e`` in ``TT``; ``ratio`` is
    ``s / r``, which divides ``determinant``.
    """

    determinant: int
    certified: bool
    denominator: int
    r: int
    ratio: int
    ratio_divides_determinant: bool

    @property
    def verdict(self) -> str:
        return "certified surjective" if self.certified else "criterion inconclusive"


@dataclass(frozen=True)
class IndexCheck:
    index: int
    divisible_by_c: bool
    eigenvalues: tuple[int, ...]


def _flatten(matrix: Sequence[Sequence]) -> list:
    return [x for row in matrix for x in row]


def _rational_coordinates(basis: list[list[int]], target: Sequence) -> list[Fraction] | None:
    """Coordinates of *target* in the Q-span of the *basis* vectors, or ``None``."""
    b = Matrix(basis).T
    t = Matrix(len(target), 1, [Rational(x.numerator, x.denominator) for x in map(Fraction, target)])
    gram = b.T * b
    if gram.det() == 0:
        raise ValidationError(msg.ERROR_MSG_RANK_DEFICIENCY.format(rank=b.rank(), cols=b.cols))
    x = gram.inv() * b.T * t
    if b * x != t:
        return None
    return [Fraction(int(entry.p), int(entry.q)) for entry in x]


def _validated_generators(P: PolarizedLattice, T_gens: Sequence) -> list[IntMatrix]:
    generators = [int_matrix(T) for T in T_gens]
    for T in generators:
        if T.shape != (P.g, P.g):
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{P.g}x{P.g}", got=T.shape))
    return generators


def gekeler_criterion(
    P: PolarizedLattice,
    E: EllipticSubvariety,
    T_gens: Sequence,
    pairing,
    invariants: QuotientInvariants | None = None,
) -> GekelerVerdict:
    """Perfect-pairing criterion for surjectivity of ``pi*``.

    Args:
        P: Principally polarized lattice.
        E: Elliptic subvariety of ``P``.
        T_gens: Z-basis of a ring of endomorphisms, each a ``g`` x ``g``
            matrix in lattice coordinates.
        pairing: ``pairing[a][i]`` is the value of the ``a``-th basis
            element against the ``i``-th lattice generator.
        invariants: Precomputed invariants of ``E``.

    Returns:
        The verdict; ``certified`` exactly when the pairing is perfect.

    Raises:
        ValidationError: If a generator is not an endomorphism, the span is
            not a ring containing the identity, the pairing is not
            equivariant, or ``e`` is not in ``TT (x) Q``.
        ConsistencyError: If a perfect pairing coexists with ``c != 1``.
    """
    generators = _validated_generators(P, T_gens)
    k, g = len(generators), P.g
    pairing = int_matrix(pairing)
    if pairing.shape != (k, g) or k != g:
        raise ValidationError(msg.ERROR_MSG_PAIRING_SHAPE.format(rows=g, cols=g, got=pairing.shape))
    values = to_rows(pairing)

    for T in generators:
        endomorphism(P, T)

    basis = [_flatten(to_rows(T)) for T in generators]
    identity = _rational_coordinates(basis, _flatten(to_rows(ImmutableMatrix.eye(g))))
    if identity is None or any(x.denominator != 1 for x in identity):
        raise ValidationError(msg.ERROR_MSG_NO_IDENTITY)

    for a, S in enumerate(generators):
        for b, T in enumerate(generators):
            coords = _rational_coordinates(basis, _flatten(to_rows(S * T)))
            if coords is None or any(x.denominator != 1 for x in coords):
                raise ValidationError(msg.ERROR_MSG_NOT_CLOSED.format(s=a, t=b))
            t_rows = to_rows(T)
            for i in range(g):
                lhs = sum(coords[c] * values[c][i] for c in range(k))
                rhs = sum(t_rows[j][i] * values[a][j] for j in range(g))
                if lhs != rhs:
                    raise ValidationError(msg.ERROR_MSG_EQUIVARIANCE.format(s=a, t=b, basis=i))

    e_coords = _rational_coordinates(basis, _flatten(idempotent_matrix(P, E)))
    if e_coords is None:
        raise ValidationError(msg.ERROR_MSG_IDEMPOTENT_NOT_IN_ALGEBRA)
    denominator = lcm(*(x.denominator for x in e_coords))

    inv = invariants or compute_invariants(P, E)
    determinant = int(pairing.det())
    certified = abs(determinant) == 1
    if certified and inv.c != 1:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(name="perfect pairing => c = 1", beta=E.cocharacter, detail=inv.c)
        )
    if denominator % inv.r:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(name="r | s", beta=E.cocharacter, detail=f"s={denominator}, r={inv.r}")
        )
    ratio = denominator // inv.r
    divides = determinant % ratio == 0
    if not divides:
        logger.warning("s/r = %d does not divide det = %d for cocharacter %s", ratio, determinant, E.cocharacter)
    return GekelerVerdict(determinant, certified, denominator, inv.r, ratio, divides)


def _eigenvalue(matrix: IntMatrix, vector: Sequence[int], index: int) -> int:
    image = column(matrix * ImmutableMatrix(len(vector), 1, list(vector)), 0)
    pivot = next(i for i, x in enumerate(vector) if x)
    if image[pivot] % vector[pivot]:
        raise ValidationError(msg.ERROR_MSG_NOT_EIGENVECTOR.format(index=index))
    value = image[pivot] // vector[pivot]
    if any(y != value * x for x, y in zip(vector, image)):
        raise ValidationError(msg.ERROR_MSG_NOT_EIGENVECTOR.format(index=index))
    return value


def lemma_index_check(P: PolarizedLattice, E: EllipticSubvariety, T_gens: Sequence) -> IndexCheck:
    """``[lambda_E^perp : I_E Lambda]`` and whether ``c`` divides it.

    ``I_E`` is generated by ``T - a(T)`` for each generator, where
    ``T lambda_E = a(T) lambda_E``.

    Raises:
        ValidationError: If a generator is not an endomorphism, the
            generators do not commute, ``lambda_E`` is not a common
            eigenvector, ``a(T†) != a(T)``, or the index is infinite
            (``e ∉ 𝕋⊗ℚ``).
        ConsistencyError: If ``I_E Lambda`` leaves ``lambda_E^perp`` or the
            index is 1 while ``c != 1``.
    """
    generators = _validated_generators(P, T_gens)
    for T in generators:
        endomorphism(P, T)
    for i, S in enumerate(generators):
        for j in range(i + 1, len(generators)):
            if S * generators[j] != generators[j] * S:
                raise ValidationError(msg.ERROR_MSG_NOT_COMMUTING.format(i=i, j=j))

    g = P.g
    eigenvalues = []
    spanning: list[tuple[int, ...]] = []
    for index, T in enumerate(generators):
        value = _eigenvalue(T, E.lambda_E, index)
        dual = _eigenvalue(rosati_adjoint(P, T), E.lambda_E, index)
        if dual != value:
            raise ValidationError(msg.ERROR_MSG_ROSATI_EIGENVALUE.format(dual=dual, value=value, index=index))
        eigenvalues.append(value)
        shifted = T - value * ImmutableMatrix.eye(g)
        spanning.extend(column(shifted, j) for j in range(g))

    paired = to_rows(monodromy_matrix(P) * ImmutableMatrix(g, 1, list(E.lambda_E)))
    row = [r[0] for r in paired]
    if any(sum(a * b for a, b in zip(row, vec)) for vec in spanning):
        raise ConsistencyError(msg.ERROR_MSG_NOT_IN_ORTHOGONAL)

    perp = kernel_basis(int_matrix([row]))
    ideal = int_matrix([[vec[i] for vec in spanning] for i in range(g)], g, len(spanning))
    try:
        index = lattice_index(perp, ideal)
    except ValidationError as exc:
        raise ValidationError(msg.ERROR_MSG_IDEMPOTENT_NOT_IN_ALGEBRA) from exc
    if index == 1 and E.c != 1:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(name="index 1 => c = 1", beta=E.cocharacter, detail=E.c)
        )
    logger.debug("index [perp : I_E] = %d for cocharacter %s (c=%d)", index, E.cocharacter, E.c)
    return IndexCheck(index, index % E.c == 0, tuple(eigenvalues))


@dataclass(frozen=True)
class SubvarietyAnalysis:
    """Everything computed for one subvariety.

    A criterion whose preconditions fail on this subvariety leaves its
    verdict ``None`` and records the reason instead.
    """

    subvariety: EllipticSubvariety
    invariants: QuotientInvariants
    theorem: TheoremReport
    index_check: IndexCheck | None = None
    index_error: str | None = None
    gekeler: GekelerVerdict | None = None
    gekeler_error: str | None = None


def analyze_subvariety(
    P: PolarizedLattice, E: EllipticSubvariety, T_gens: Sequence | None = None, pairing=None
) -> SubvarietyAnalysis:
    invariants = compute_invariants(P, E)
    theorem = check_theorem_equivalence(invariants, P, E)
    index_check = index_error = gekeler = gekeler_error = None
    if T_gens:
        try:
            index_check = lemma_index_check(P, E, T_gens)
        except ValidationError as exc:
            index_error = exc.message
        if pairing is not None:
            try:
                gekeler = gekeler_criterion(P, E, T_gens, pairing, invariants)
            except ValidationError as exc:
                gekeler_error = exc.message
    return SubvarietyAnalysis(E, invariants, theorem, index_check, index_error, gekeler, gekeler_error)
