"""Homomorphisms of uniformized abelian varieties and their component maps.

A homomorphism between principally polarized ``T_1/Lambda_1`` and
``T_2/Lambda_2`` is recorded as the pair ``(phi, phi_dual)`` of lattice
maps ``Lambda_1 -> Lambda_2`` and ``Lambda_2 -> Lambda_1`` (polarizations
identify each lattice with its dual) subject to

    [phi(l1), l2]_2 = [l1, phi_dual(l2)]_1      for all generators,

checked as values in the coarse model, torsion parts included. Its
valuation shadow is ``phi^T * M2 = M1 * phi_dual``.

On component groups, presented as ``Z^g / M Z^g`` (the Hom side of the
monodromy pairing), the induced map is ``psi -> psi o phi_dual``, i.e. the
matrix ``phi_dual^T``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from sympy import ImmutableMatrix

from toricquot.constants import messages as msg
from toricquot.exceptions import ConsistencyError, ValidationError
from toricquot.lattice_algebra import (
    FinAbGroup,
    IntMatrix,
    cokernel_structure,
    column,
    int_matrix,
    is_integral,
    multiply_rows,
    rational_inverse,
    to_rows,
)
from toricquot.toric_lattice import PolarizedLattice, monodromy_matrix, pairing_value

__all__ = [
    "ToricHom",
    "ComponentMap",
    "make_hom",
    "identity_hom",
    "dual_hom",
    "compose_hom",
    "rosati_adjoint",
    "endomorphism",
    "induced_component_map",
    "compose_component_maps",
    "cokernel_of_component_map",
    "is_surjective_on_components",
]

logger = logging.getLogger(__name__)


def _unit_vector(g: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(g))


@dataclass(frozen=True)
class ToricHom:
    """A validated pair ``(phi, phi_dual)`` between principal lattices."""

    source: PolarizedLattice
    target: PolarizedLattice
    phi: IntMatrix
    phi_dual: IntMatrix

    def __post_init__(self) -> None:
        self.source.require_principal()
        self.target.require_principal()
        phi = int_matrix(self.phi)
        phi_dual = int_matrix(self.phi_dual)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "phi_dual", phi_dual)

        g1, g2 = self.source.g, self.target.g
        if phi.shape != (g2, g1):
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"phi {g2}x{g1}", got=phi.shape))
        if phi_dual.shape != (g1, g2):
            raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"phiDual {g1}x{g2}", got=phi_dual.shape))

        violations = []
        for a in range(g1):
            image = column(phi, a)
            for b in range(g2):
                left = pairing_value(self.target, image, _unit_vector(g2, b))
                right = pairing_value(self.source, _unit_vector(g1, a), column(phi_dual, b))
                if left != right:
                    violations.append((a, b, str(left), str(right)))
        if violations:
            a, b, left, right = violations[0]
            raise ValidationError(
                msg.ERROR_MSG_HOM_COMPATIBILITY.format(i=a, j=b, left=left, right=right),
                witnesses=violations,
            )

        if phi.T * monodromy_matrix(self.target) != monodromy_matrix(self.source) * phi_dual:
            raise ConsistencyError(msg.ERROR_MSG_HOM_VALUATION)


def make_hom(source: PolarizedLattice, target: PolarizedLattice, phi, phi_dual) -> ToricHom:
    """Validate ``(phi, phi_dual)`` and return the homomorphism.

    Raises:
        ValidationError: On shape mismatch, a non-principal lattice, or a
            violated compatibility; ``witnesses`` lists every violated
            generator pair with both pairing values.
    """
    return ToricHom(source, target, phi, phi_dual)


def identity_hom(P: PolarizedLattice) -> ToricHom:
    eye = ImmutableMatrix.eye(P.g)
    return ToricHom(P, P, eye, eye)


def dual_hom(f: ToricHom) -> ToricHom:
    return ToricHom(f.target, f.source, f.phi_dual, f.phi)


def compose_hom(second: ToricHom, first: ToricHom) -> ToricHom:
    """``second o first``."""
    if first.target != second.source:
        raise ValidationError(msg.ERROR_MSG_NOT_COMPOSABLE)
    return ToricHom(first.source, second.target, second.phi * first.phi, first.phi_dual * second.phi_dual)


def rosati_adjoint(P: PolarizedLattice, T) -> IntMatrix:
    """``T^dagger = M^-1 T^T M``, the adjoint for the polarization pairing.

    Raises:
        ValidationError: ``T† ∉ End(Λ)`` when the adjoint is not integral.
    """
    P.require_principal()
    T = int_matrix(T)
    if T.shape != (P.g, P.g):
        raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{P.g}x{P.g}", got=T.shape))
    gram = monodromy_matrix(P)
    adjoint = multiply_rows(multiply_rows(rational_inverse(gram), to_rows(T.T)), to_rows(gram))
    if not is_integral(adjoint):
        raise ValidationError(msg.ERROR_MSG_ROSATI.format(adjoint=[[str(x) for x in row] for row in adjoint]))
    return int_matrix([[int(x) for x in row] for row in adjoint])


def endomorphism(P: PolarizedLattice, T) -> ToricHom:
    """The endomorphism ``(T, T^dagger)``; fails unless it respects torsion pairings too."""
    return ToricHom(P, P, T, rosati_adjoint(P, T))


@dataclass(frozen=True)
class ComponentMap:
    """Map ``Z^g1 / M1 Z^g1 -> Z^g2 / M2 Z^g2`` induced by ``matrix``."""

    source_relations: IntMatrix
    target_relations: IntMatrix
    matrix: IntMatrix

    def __post_init__(self) -> None:
        for name in ("source_relations", "target_relations", "matrix"):
            object.__setattr__(self, name, int_matrix(getattr(self, name)))
        lifted = multiply_rows(
            multiply_rows(rational_inverse(self.target_relations), to_rows(self.matrix)), to_rows(self.source_relations)
        )
        if not is_integral(lifted):
            raise ValidationError(msg.ERROR_MSG_NOT_DESCENDING)

    @property
    def source_group(self) -> FinAbGroup:
        return cokernel_structure(self.source_relations)

    @property
    def target_group(self) -> FinAbGroup:
        return cokernel_structure(self.target_relations)

    def apply(self, x) -> tuple[int, ...]:
        """Image of the coset of *x* (a representative, not reduced)."""
        image = self.matrix * ImmutableMatrix(len(x), 1, list(x))
        return tuple(int(v) for v in image)

    def agrees_with(self, other: ComponentMap) -> bool:
        """Equality as maps of groups: same presentations, difference lands in ``M2 Z^g2``."""
        if self.source_relations != other.source_relations or self.target_relations != other.target_relations:
            return False
        difference = multiply_rows(rational_inverse(self.target_relations), to_rows(self.matrix - other.matrix))
        return is_integral(difference)


def induced_component_map(f: ToricHom) -> ComponentMap:
    return ComponentMap(monodromy_matrix(f.source), monodromy_matrix(f.target), f.phi_dual.T)


def compose_component_maps(second: ComponentMap, first: ComponentMap) -> ComponentMap:
    """``second o first``."""
    if first.target_relations != second.source_relations:
        raise ValidationError(msg.ERROR_MSG_NOT_COMPOSABLE)
    return ComponentMap(first.source_relations, second.target_relations, second.matrix * first.matrix)


def cokernel_of_component_map(m: ComponentMap) -> FinAbGroup:
    """``Z^g2 / (matrix Z^g1 + M2 Z^g2)``."""
    return cokernel_structure(m.matrix.row_join(m.target_relations))


def is_surjective_on_components(m: ComponentMap) -> bool:
    return cokernel_of_component_map(m).is_trivial
