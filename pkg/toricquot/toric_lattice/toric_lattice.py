"""Lattices in split tori and their Riemann forms.

A lattice ``Lambda`` in ``(K^x)^g`` is given by the torus coordinates of
``g`` generators; a Riemann form ``H`` sends each generator to a character
of the torus. The pairing ``[l_i, l_j]_H = H(l_j)(l_i)`` takes values in
``K^x``; its valuations form the monodromy Gram matrix ``M`` whose
cokernel is the component group of the Néron model.

Valuations stand in for ``-log|.|`` throughout: the two differ by the
positive factor ``log q``, which changes none of the integer invariants.
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import ImmutableMatrix

from toricquot.constants import PRINCIPAL_UNITS, PRINCIPAL_UNITS_DEFAULT
from toricquot.constants import messages as msg
from toricquot.exceptions import ValidationError
from toricquot.lattice_algebra import FinAbGroup, IntMatrix, cokernel_structure, int_matrix, leading_minors
from toricquot.local_field import CoarseUnit, LocalFieldModel

__all__ = [
    "MultiplicativeLattice",
    "RiemannForm",
    "PolarizedLattice",
    "eval_character",
    "trop_point",
    "pairing_h",
    "pairing_matrix",
    "pairing_value",
    "monodromy_matrix",
    "gram_rows",
    "monodromy_pairing",
    "component_group",
    "base_change",
    "random_polarized_lattice",
]

logger = logging.getLogger(__name__)


def eval_character(chi: Sequence[int], point: Sequence[CoarseUnit]) -> CoarseUnit:
    """Evaluate the character with exponent vector *chi* at a torus point."""
    if len(chi) != len(point) or not point:
        raise ValidationError(msg.ERROR_MSG_LENGTH_MISMATCH.format(chi=len(chi), point=len(point)))
    value = point[0].field.identity()
    for exponent, coordinate in zip(chi, point):
        value = value * coordinate ** int(exponent)
    return value


def trop_point(point: Sequence[CoarseUnit]) -> tuple[int, ...]:
    """Valuations of the coordinates of a torus point."""
    return tuple(u.v for u in point)


@dataclass(frozen=True)
class MultiplicativeLattice:
    """Rank-``g`` lattice; ``coords[k][j]`` is coordinate ``k`` of generator ``j``."""

    field: LocalFieldModel
    coords: tuple[tuple[CoarseUnit, ...], ...]

    def __post_init__(self) -> None:
        coords = tuple(tuple(row) for row in self.coords)
        object.__setattr__(self, "coords", coords)
        g = len(coords)
        if g == 0 or any(len(row) != g for row in coords):
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected="non-empty square coordinate array", got=g))
        for row in coords:
            for unit in row:
                if unit.field != self.field:
                    raise ValidationError(msg.ERROR_MSG_MODEL_MISMATCH.format(left=unit.field, right=self.field))
        if self.valuation_matrix.det() == 0:
            raise ValidationError(msg.ERROR_MSG_SINGULAR_VALUATIONS)

    @property
    def g(self) -> int:
        return len(self.coords)

    @property
    def valuation_matrix(self) -> IntMatrix:
        return int_matrix([[u.v for u in row] for row in self.coords])

    @property
    def torsion_matrix(self) -> IntMatrix:
        return int_matrix([[u.t for u in row] for row in self.coords])

    def generator(self, j: int) -> tuple[CoarseUnit, ...]:
        if not 0 <= j < self.g:
            raise ValidationError(msg.ERROR_MSG_INDEX_RANGE.format(index=j, g=self.g))
        return tuple(row[j] for row in self.coords)

    def point(self, x: Sequence[int]) -> tuple[CoarseUnit, ...]:
        """Torus coordinates of ``sum_j x_j * l_j``."""
        if len(x) != self.g:
            raise ValidationError(msg.ERROR_MSG_LENGTH_MISMATCH.format(chi=len(x), point=self.g))
        return tuple(eval_character(x, row) for row in self.coords)

    def embed(self, target: LocalFieldModel) -> MultiplicativeLattice:
        return MultiplicativeLattice(target, tuple(tuple(u.embed(target) for u in row) for row in self.coords))

    def change_generator(self, u: int) -> MultiplicativeLattice:
        return MultiplicativeLattice(
            self.field, tuple(tuple(x.change_generator(u) for x in row) for row in self.coords)
        )


@dataclass(frozen=True)
class RiemannForm:
    """``H: Lambda -> X(T)``; column ``j`` of ``H`` is the character ``H(l_j)``."""

    H: IntMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "H", int_matrix(self.H))

    @property
    def determinant(self) -> int:
        return int(self.H.det())

    def character(self, j: int) -> tuple[int, ...]:
        return tuple(int(self.H[k, j]) for k in range(self.H.rows))


@dataclass(frozen=True)
class PolarizedLattice:
    """A lattice with a validated Riemann form.

    Construction checks both clauses of the Riemann form condition: the
    ``K^x``-valued pairing is symmetric (torsion parts included) and its
    valuation matrix is positive definite. ``principal`` records whether
    ``|det H| = 1``. ``principal_units`` selects how subtorus membership
    treats the principal-unit parts the coarse model does not store.
    """

    lattice: MultiplicativeLattice
    form: RiemannForm
    principal_units: str = PRINCIPAL_UNITS_DEFAULT
    principal: bool = dataclasses.field(init=False)
    _pairings: tuple[tuple[CoarseUnit, ...], ...] = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        g = self.lattice.g
        if self.form.H.shape != (g, g):
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{g}x{g} Riemann form", got=self.form.H.shape))
        if self.principal_units not in PRINCIPAL_UNITS:
            raise ValidationError(
                msg.ERROR_MSG_UNIT_MODEL.format(units=self.principal_units, choices=sorted(PRINCIPAL_UNITS))
            )

        pairings = tuple(
            tuple(eval_character(self.form.character(j), self.lattice.generator(i)) for j in range(g))
            for i in range(g)
        )
        for i in range(g):
            for j in range(i + 1, g):
                if pairings[i][j] != pairings[j][i]:
                    raise ValidationError(
                        msg.ERROR_MSG_RIEMANN_SYMMETRY.format(i=i, j=j, left=pairings[i][j], right=pairings[j][i]),
                        witnesses=[(i, j)],
                    )

        minors = leading_minors([[u.v for u in row] for row in pairings])
        for k, minor in enumerate(minors, start=1):
            if minor <= 0:
                raise ValidationError(msg.ERROR_MSG_RIEMANN_POSITIVITY.format(k=k, minor=minor))

        object.__setattr__(self, "_pairings", pairings)
        object.__setattr__(self, "principal", abs(self.form.determinant) == 1)

    @property
    def g(self) -> int:
        return self.lattice.g

    @property
    def field(self) -> LocalFieldModel:
        return self.lattice.field

    def require_principal(self) -> None:
        if not self.principal:
            raise ValidationError(msg.ERROR_MSG_NOT_PRINCIPAL.format(det=abs(self.form.determinant)))

    def change_root_generator(self, u: int) -> PolarizedLattice:
        """Same lattice with torsion exponents read against ``zeta^u``."""
        return PolarizedLattice(self.lattice.change_generator(u), self.form, self.principal_units)

    def with_units(self, principal_units: str) -> PolarizedLattice:
        return PolarizedLattice(self.lattice, self.form, principal_units)


def pairing_h(P: PolarizedLattice, i: int, j: int) -> CoarseUnit:
    """``[l_i, l_j]_H = H(l_j)(l_i)``."""
    g = P.g
    for index in (i, j):
        if not 0 <= index < g:
            raise ValidationError(msg.ERROR_MSG_INDEX_RANGE.format(index=index, g=g))
    return P._pairings[i][j]


def pairing_matrix(P: PolarizedLattice) -> tuple[tuple[CoarseUnit, ...], ...]:
    return P._pairings


def gram_rows(P: PolarizedLattice) -> list[list[int]]:
    return [[u.v for u in row] for row in P._pairings]


@lru_cache(maxsize=1024)
def monodromy_matrix(P: PolarizedLattice) -> IntMatrix:
    """Gram matrix of the monodromy pairing: valuations of ``[l_i, l_j]_H``."""
    return int_matrix(gram_rows(P))


def _pairing_torsion(P: PolarizedLattice) -> list[list[int]]:
    return [[u.t for u in row] for row in P._pairings]


def monodromy_pairing(P: PolarizedLattice, x: Sequence[int], y: Sequence[int]) -> int:
    """``<x, y> = x^T M y`` for coordinate vectors on the generators."""
    gram = gram_rows(P)
    return sum(x[i] * gram[i][j] * y[j] for i in range(P.g) for j in range(P.g))


def pairing_value(P: PolarizedLattice, x: Sequence[int], y: Sequence[int]) -> CoarseUnit:
    """``[x, y]_H`` for coordinate vectors, by bilinearity."""
    g = P.g
    if len(x) != g or len(y) != g:
        raise ValidationError(msg.ERROR_MSG_LENGTH_MISMATCH.format(chi=len(x), point=len(y)))
    torsion = _pairing_torsion(P)
    t = sum(x[i] * torsion[i][j] * y[j] for i in range(g) for j in range(g))
    return P.field.unit(monodromy_pairing(P, x, y), t)


@lru_cache(maxsize=1024)
def component_group(P: PolarizedLattice) -> FinAbGroup:
    """Component group of the Néron model: the cokernel of ``M``."""
    return cokernel_structure(monodromy_matrix(P))


def base_change(P: PolarizedLattice, k: int) -> PolarizedLattice:
    """The same lattice over the unramified extension of degree *k*."""
    target = P.field.unramified_extension(k)
    return PolarizedLattice(P.lattice.embed(target), P.form, P.principal_units)


def _is_positive_definite(rows: list[list[int]]) -> bool:
    return all(minor > 0 for minor in leading_minors(rows))


def random_polarized_lattice(
    rng: np.random.Generator,
    g: int,
    field: LocalFieldModel,
    max_valuation: int = 4,
    principal_units: str = PRINCIPAL_UNITS_DEFAULT,
) -> PolarizedLattice:
    """Random valid instance: symmetric coordinates ``S`` with ``H`` the identity.

    Diagonal valuations lie in ``[1, max_valuation]``; each off-diagonal pair
    is zero with probability one half, otherwise small enough in absolute
    value to keep most draws positive definite (non-definite draws are
    rejected). Torsion exponents are uniform in ``[0, w)``.
    """
    while True:
        vals = [[0] * g for _ in range(g)]
        for i in range(g):
            vals[i][i] = int(rng.integers(1, max_valuation + 1))
        for i in range(g):
            for j in range(i + 1, g):
                if rng.integers(0, 2):
                    vals[i][j] = vals[j][i] = int(rng.integers(-max_valuation + 1, max_valuation))
        if _is_positive_definite(vals):
            break
        logger.debug("rejected non-definite draw %s", vals)

    tors = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(i, g):
            tors[i][j] = tors[j][i] = int(rng.integers(0, field.w))

    coords = tuple(tuple(field.unit(vals[k][j], tors[k][j]) for j in range(g)) for k in range(g))
    lattice = MultiplicativeLattice(field, coords)
    return PolarizedLattice(lattice, RiemannForm(ImmutableMatrix.eye(g)), principal_units)
