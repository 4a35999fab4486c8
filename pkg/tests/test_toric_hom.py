import pytest
from sympy import ImmutableMatrix

from conftest import make_lattice
from toricquot.exceptions import ValidationError
from toricquot.lattice_algebra import FinAbGroup, int_matrix
from toricquot.local_field import LocalFieldModel
from toricquot.optimal_quotient import idempotent_endomorphism, quotient_hom, subtorus_intersection
from toricquot.toric_hom import (
    ComponentMap,
    cokernel_of_component_map,
    compose_component_maps,
    compose_hom,
    dual_hom,
    endomorphism,
    identity_hom,
    induced_component_map,
    is_surjective_on_components,
    make_hom,
    rosati_adjoint,
)


def test_identity_and_dual(glued):
    ident = identity_hom(glued)
    assert dual_hom(ident) == ident
    assert induced_component_map(ident).agrees_with(induced_component_map(ident))


def test_negation_is_an_endomorphism(glued):
    minus = int_matrix([[-1, 0], [0, -1]])
    assert rosati_adjoint(glued, minus) == minus
    f = endomorphism(glued, minus)
    assert compose_hom(f, f).phi == ImmutableMatrix.eye(2)


def test_incompatible_pair_reports_every_witness(glued):
    projector = [[1, 0], [0, 0]]
    with pytest.raises(ValidationError, match="fails at generator pair") as excinfo:
        make_hom(glued, glued, projector, projector)
    assert len(excinfo.value.witnesses) == 2


def test_shape_mismatch(glued):
    with pytest.raises(ValidationError, match="shape mismatch"):
        make_hom(glued, glued, [[1, 0]], [[1, 0], [0, 1]])


def test_rosati_adjoint_must_be_integral():
    P = make_lattice(LocalFieldModel(3, 3, 2), [[1, 0], [0, 2]])
    with pytest.raises(ValidationError, match="T† ∉ End"):
        rosati_adjoint(P, [[0, 1], [0, 0]])
    assert rosati_adjoint(P, [[0, 2], [0, 0]]) == int_matrix([[0, 0], [1, 0]])


def test_quotient_hom_and_its_dual(glued):
    E = subtorus_intersection(glued, (1, 0))
    pi = quotient_hom(glued, E)
    assert pi.phi == int_matrix([[1, 0]])
    assert pi.phi_dual == int_matrix([[2], [0]])
    assert dual_hom(dual_hom(pi)) == pi
    # pi o pi_dual is multiplication by n = 2 on the curve
    assert compose_hom(pi, dual_hom(pi)).phi == int_matrix([[2]])
    with pytest.raises(ValidationError, match="not composable"):
        compose_hom(pi, pi)


def test_component_map_of_the_glued_quotient(glued):
    E = subtorus_intersection(glued, (1, 0))
    cmap = induced_component_map(quotient_hom(glued, E))
    assert cmap.source_group.is_trivial
    assert cmap.target_group == FinAbGroup.cyclic(2)
    assert cokernel_of_component_map(cmap) == FinAbGroup.cyclic(2)
    assert not is_surjective_on_components(cmap)


def test_component_maps_compose_functorially(glued):
    E = subtorus_intersection(glued, (1, 0))
    pi = quotient_hom(glued, E)
    ident = identity_hom(glued)
    composed = induced_component_map(compose_hom(pi, ident))
    expected = compose_component_maps(induced_component_map(pi), induced_component_map(ident))
    assert composed.agrees_with(expected)


def test_component_map_must_descend():
    with pytest.raises(ValidationError, match="does not descend"):
        ComponentMap(int_matrix([[2]]), int_matrix([[4]]), int_matrix([[1]]))
    cmap = ComponentMap(int_matrix([[2]]), int_matrix([[4]]), int_matrix([[2]]))
    assert cokernel_of_component_map(cmap) == FinAbGroup.cyclic(2)
    assert cmap.apply((3,)) == (6,)
    assert cmap.agrees_with(ComponentMap(int_matrix([[2]]), int_matrix([[4]]), int_matrix([[6]])))


@pytest.mark.parametrize("fixture", ["glued", "glued_c3", "sheared"])
def test_quotient_after_negation_is_functorial(fixture, request):
    P = request.getfixturevalue(fixture)
    E = subtorus_intersection(P, (1, 0))
    pi = quotient_hom(P, E)
    minus = endomorphism(P, -ImmutableMatrix.eye(P.g))
    composed = compose_hom(pi, minus)
    assert composed.phi == -pi.phi
    expected = compose_component_maps(induced_component_map(pi), induced_component_map(minus))
    assert induced_component_map(composed).agrees_with(expected)


@pytest.mark.parametrize("fixture", ["glued_c3", "sheared"])
def test_quotient_after_idempotent_is_n_times_quotient(fixture, request):
    P = request.getfixturevalue(fixture)
    E = subtorus_intersection(P, (1, 0))
    pi = quotient_hom(P, E)
    e0 = compose_hom(dual_hom(pi), pi)
    composed = compose_hom(pi, e0)
    _, n = idempotent_endomorphism(P, E)
    assert composed.phi == n * pi.phi
    cmap = induced_component_map(composed)
    assert cmap.agrees_with(compose_component_maps(induced_component_map(pi), induced_component_map(e0)))
    scaled = ComponentMap(cmap.source_relations, cmap.target_relations, n * induced_component_map(pi).matrix)
    assert cmap.agrees_with(scaled)


def test_negation_acts_non_trivially_on_components(sheared):
    E = subtorus_intersection(sheared, (1, 0))
    cmap = induced_component_map(quotient_hom(sheared, E))
    assert cmap.source_group == cmap.target_group == FinAbGroup.cyclic(3)
    assert is_surjective_on_components(cmap)
    minus = endomorphism(sheared, [[-1, 0], [0, -1]])
    negated = compose_component_maps(cmap, induced_component_map(minus))
    assert not negated.agrees_with(cmap)
    assert negated.agrees_with(ComponentMap(cmap.source_relations, cmap.target_relations, -cmap.matrix))
