"""Tate curves, their c-torsion and the glued lattice.

A Tate curve ``E = K^x / q^Z`` has component group ``Z/v(q)``. Its
c-torsion (when ``c | w`` and ``c | v(q)``) is written ``zeta^a w^b`` with
``zeta`` the root of unity of exponent ``w/c`` and ``w`` a fixed c-th root
of ``q``; ``zeta`` generates the subgroup landing in the identity component.

Gluing two curves along the graph of an anti-isometry of their c-torsion
gives a principally polarized surface whose lattice is generated by
``(q1, zeta)`` and ``(zeta, q2)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd

from sympy import ImmutableMatrix

from toricquot.constants import messages as msg
from toricquot.exceptions import ValidationError
from toricquot.lattice_algebra import FinAbGroup, cokernel_structure, int_matrix
from toricquot.local_field import CoarseUnit, LocalFieldModel, cth_roots
from toricquot.toric_lattice import MultiplicativeLattice, PolarizedLattice, RiemannForm

__all__ = [
    "TateCurve",
    "TorsionPoint",
    "AntiIsometry",
    "tate_component_group",
    "weil_pairing",
    "weil_exponent",
    "canonical_generator",
    "build_anti_isometry",
    "graph_generators",
    "build_glued_lattice",
    "quotient_component_group",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TateCurve:
    q: CoarseUnit

    def __post_init__(self) -> None:
        if self.q.v <= 0:
            raise ValidationError(msg.ERROR_MSG_TATE_VALUATION.format(v=self.q.v))

    @property
    def field(self) -> LocalFieldModel:
        return self.q.field

    def power(self, c: int) -> TateCurve:
        """The curve with period ``q^c``."""
        return TateCurve(self.q**c)

    def lattice(self) -> PolarizedLattice:
        """Rank-one lattice ``q^Z`` with ``H = [1]``."""
        return PolarizedLattice(MultiplicativeLattice(self.field, ((self.q,),)), RiemannForm(ImmutableMatrix([[1]])))


def tate_component_group(E: TateCurve) -> FinAbGroup:
    return FinAbGroup.cyclic(E.q.v)


def _check_level(E: TateCurve, c: int) -> CoarseUnit:
    """Validate that ``E[c]`` is rational in the model; return the c-th root ``w``."""
    if c < 1:
        raise ValidationError(msg.ERROR_MSG_ROOT_INDEX.format(c=c))
    if E.field.w % c:
        raise ValidationError(msg.ERROR_MSG_LEVEL_TORSION.format(c=c, w=E.field.w))
    if E.q.v % c:
        raise ValidationError(msg.ERROR_MSG_LEVEL_PERIOD.format(c=c, v=E.q.v))
    roots = cth_roots(E.q, c)
    if not roots:
        raise ValidationError(msg.ERROR_MSG_NO_CTH_ROOT.format(q=E.q, c=c))
    return roots[0]


@dataclass(frozen=True)
class TorsionPoint:
    """``zeta^a * w^b`` in ``E[c]``, coordinates reduced mod ``c``."""

    curve: TateCurve
    c: int
    a: int
    b: int

    def __post_init__(self) -> None:
        _check_level(self.curve, self.c)
        object.__setattr__(self, "a", self.a % self.c)
        object.__setattr__(self, "b", self.b % self.c)

    def component(self) -> int:
        """Image in ``Phi_E = Z/v(q)``: ``b * v(q) / c``."""
        v = self.curve.q.v
        return (self.b * (v // self.c)) % v

    def unit(self) -> CoarseUnit:
        """A representative in ``K^x``."""
        root = _check_level(self.curve, self.c)
        zeta = self.curve.field.root_of_unity(self.c)
        return zeta**self.a * root**self.b


def weil_exponent(first: tuple[int, int], second: tuple[int, int], c: int) -> int:
    """Exponent of ``zeta`` in ``e_c`` for coordinate pairs ``(a, b)``."""
    (a, b), (a2, b2) = first, second
    return (a * b2 - a2 * b) % c


def weil_pairing(P: TorsionPoint, Q: TorsionPoint) -> int:
    """``e_c(P, Q) = zeta^k``; returns ``k`` mod ``c``."""
    if P.curve != Q.curve or P.c != Q.c:
        raise ValidationError(msg.ERROR_MSG_TORSION_MISMATCH)
    return weil_exponent((P.a, P.b), (Q.a, Q.b), P.c)


def canonical_generator(E: TateCurve, c: int) -> TorsionPoint:
    """``zeta``: generates the c-torsion meeting the identity component."""
    return TorsionPoint(E, c, 1, 0)


@dataclass(frozen=True)
class AntiIsometry:
    """Isomorphism ``E1[c] -> E2[c]`` in ``(zeta, w)`` coordinates reversing ``e_c``."""

    c: int
    matrix: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        if self.c < 2:
            raise ValidationError(msg.ERROR_MSG_LEVEL_TOO_SMALL.format(c=self.c))
        matrix = tuple(tuple(int(x) % self.c for x in row) for row in self.matrix)
        if len(matrix) != 2 or any(len(row) != 2 for row in matrix):
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected="2x2", got=matrix))
        object.__setattr__(self, "matrix", matrix)
        (a, b), (c2, d) = matrix
        det = a * d - b * c2
        if gcd(det, self.c) != 1:
            raise ValidationError(msg.ERROR_MSG_NOT_INVERTIBLE.format(matrix=matrix, c=self.c))
        basis = ((1, 0), (0, 1))
        for first in basis:
            for second in basis:
                forward = weil_exponent(self._image(first), self._image(second), self.c)
                if (forward + weil_exponent(first, second, self.c)) % self.c:
                    raise ValidationError(msg.ERROR_MSG_NOT_ANTI_ISOMETRY.format(matrix=matrix, c=self.c))

    def _image(self, coords: tuple[int, int]) -> tuple[int, int]:
        (a, b), (c2, d) = self.matrix
        x, y = coords
        return (a * x + b * y) % self.c, (c2 * x + d * y) % self.c

    def apply(self, P: TorsionPoint, target: TateCurve) -> TorsionPoint:
        if P.c != self.c:
            raise ValidationError(msg.ERROR_MSG_TORSION_MISMATCH)
        a, b = self._image((P.a, P.b))
        return TorsionPoint(target, self.c, a, b)


def build_anti_isometry(c: int) -> AntiIsometry:
    """``psi(zeta_1) = w_2`` and ``psi(w_1) = zeta_2``."""
    return AntiIsometry(c, ((0, 1), (1, 0)))


def graph_generators(
    psi: AntiIsometry, E1: TateCurve, E2: TateCurve
) -> list[tuple[TorsionPoint, TorsionPoint]]:
    """Generators ``(P, psi P)`` of the graph of *psi* over the basis ``zeta, w``."""
    basis = [TorsionPoint(E1, psi.c, 1, 0), TorsionPoint(E1, psi.c, 0, 1)]
    return [(P, psi.apply(P, E2)) for P in basis]


def build_glued_lattice(
    q1: CoarseUnit, q2: CoarseUnit, c: int, field: LocalFieldModel | None = None, zeta_power: int = 1
) -> PolarizedLattice:
    """Lattice generated by ``(q1, zeta^k)`` and ``(zeta^k, q2)`` with ``H`` the identity.

    Args:
        q1: First period, positive valuation.
        q2: Second period, positive valuation.
        c: Gluing level; must divide ``w``. ``c = 1`` gives the product lattice.
        field: Field model; defaults to that of ``q1``.
        zeta_power: ``k`` coprime to ``c`` choosing the primitive root ``zeta^k``.

    Raises:
        ValidationError: On a non-positive valuation, ``c`` not dividing
            ``w``, mismatched models or ``gcd(k, c) != 1``.
    """
    field = field or q1.field
    for q in (q1, q2):
        if q.v <= 0:
            raise ValidationError(msg.ERROR_MSG_TATE_VALUATION.format(v=q.v))
        if q.field != field:
            raise ValidationError(msg.ERROR_MSG_MODEL_MISMATCH.format(left=q.field, right=field))
    if c < 1:
        raise ValidationError(msg.ERROR_MSG_ROOT_INDEX.format(c=c))
    if field.w % c:
        raise ValidationError(msg.ERROR_MSG_LEVEL_TORSION.format(c=c, w=field.w))
    if gcd(zeta_power, c) != 1:
        raise ValidationError(msg.ERROR_MSG_ZETA_POWER.format(k=zeta_power, c=c))

    zeta = field.root_of_unity(c, zeta_power)
    coords = ((q1, zeta), (zeta, q2))
    logger.debug("glued lattice q1=%s q2=%s c=%d zeta=%s", q1, q2, c, zeta)
    return PolarizedLattice(MultiplicativeLattice(field, coords), RiemannForm(ImmutableMatrix.eye(2)))


def quotient_component_group(
    E1: TateCurve, E2: TateCurve, c: int, psi: AntiIsometry | None = None
) -> FinAbGroup:
    """``Phi_A / phi(G)`` for ``A = A1 x A2`` with ``A_i`` of period ``q_i^c``.

    ``G`` is the graph of *psi* (default :func:`build_anti_isometry`) and
    ``phi`` sends torsion points to their components. For ``c = 1`` the
    graph is trivial and ``Phi_A`` is returned unchanged.
    """
    A1, A2 = E1.power(c), E2.power(c)
    v1, v2 = A1.q.v, A2.q.v
    relations = [[v1, 0], [0, v2]]
    if c > 1:
        psi = psi or build_anti_isometry(c)
        for P, image in graph_generators(psi, A1, A2):
            relations[0].append(P.component())
            relations[1].append(image.component())
    return cokernel_structure(int_matrix(relations))
