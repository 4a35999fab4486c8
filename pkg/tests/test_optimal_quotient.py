from dataclasses import replace
from fractions import Fraction

import pytest

from toricquot.constants import BOUND_ENV_VAR, THEOREM_CONDITIONS
from toricquot.exceptions import ConsistencyError, ValidationError
from toricquot.lattice_algebra import FinAbGroup, int_matrix
from toricquot.local_field import LocalFieldModel
from toricquot.optimal_quotient import (
    EllipticSubvariety,
    check_theorem_equivalence,
    compute_invariants,
    congruence_number,
    default_bound,
    find_elliptic_subvarieties,
    idempotent_endomorphism,
    idempotent_matrix,
    projection_to_gamma,
    quotient_hom,
    subtorus_intersection,
)
from toricquot.optimal_quotient.optimal_quotient import _bezout
from toricquot.tate_construction import build_glued_lattice
from toricquot.toric_lattice import base_change, component_group

GRID = [
    (a, b, c, w)
    for w in (2, 4, 6, 12)
    for c in range(1, 7)
    if w % c == 0
    for a in range(1, 5)
    for b in range(1, 5)
]


def test_glued_lattice_has_two_subvarieties(glued, field4):
    subvarieties = find_elliptic_subvarieties(glued)
    assert [E.cocharacter for E in subvarieties] == [(1, 0), (0, 1)]
    first = subvarieties[0]
    assert first.gamma_coords == (2, 0)
    assert first.lambda_E == (1, 0)
    assert first.c == 2
    assert first.q_E == field4.unit(2, 0)


def test_counterexample_invariants(glued):
    """Trivial Phi_J but pi* has cokernel Z/2 on both quotients."""
    assert component_group(glued).is_trivial
    for E in find_elliptic_subvarieties(glued):
        inv = compute_invariants(glued, E)
        assert (inv.c, inv.m, inv.n, inv.r, inv.R_E, inv.ord_qE, inv.self_pairing) == (2, 1, 2, 1, 1, 2, 1)
        assert inv.cokernel == FinAbGroup.cyclic(2)
        assert not inv.surjective
        report = check_theorem_equivalence(inv, glued, E)
        assert report.consistent and not report.surjective
        assert set(report.as_dict()) == set(THEOREM_CONDITIONS)


def test_product_lattice_quotients_are_surjective(field4):
    P = build_glued_lattice(field4.unit(2, 0), field4.unit(3, 0), 1, field4)
    for E in find_elliptic_subvarieties(P, bound=1):
        inv = compute_invariants(P, E)
        assert inv.c == 1 and inv.surjective
        assert all(check_theorem_equivalence(inv, P, E).as_dict().values())


def test_discarded_units_see_more_subtori(glued):
    generic = find_elliptic_subvarieties(glued, bound=1)
    discarded = find_elliptic_subvarieties(glued, bound=1, units="discarded")
    assert len(generic) == 2
    assert [E.cocharacter for E in discarded] == [(1, 1), (1, 0), (1, -1), (0, 1)]
    diagonal = discarded[0]
    assert diagonal.c == 1
    assert diagonal.q_E == glued.field.unit(1, 2)
    inv = compute_invariants(glued.with_units("discarded"), diagonal)
    assert inv.surjective
    assert check_theorem_equivalence(inv, glued, diagonal).consistent


def test_congruence_number_can_exceed_one(hexagonal):
    E = subtorus_intersection(hexagonal, (1, 0))
    assert E.gamma_coords == (2, -1)
    assert E.c == 1 and E.ord_qE == 3
    inv = compute_invariants(hexagonal, E)
    assert (inv.m, inv.r, inv.n, inv.R_E, inv.self_pairing) == (3, 2, 2, 2, 6)
    assert congruence_number(hexagonal, E) == 2
    assert inv.surjective


def test_cocharacter_sign_follows_positive_valuation(hexagonal):
    E = subtorus_intersection(hexagonal, (0, 1))
    assert E.cocharacter == (0, -1)
    assert E.ord_qE == 3


def test_idempotent_and_projection(glued):
    E = subtorus_intersection(glued, (1, 0))
    e0, n = idempotent_endomorphism(glued, E)
    assert e0 == int_matrix([[2, 0], [0, 0]])
    assert n == 2
    assert idempotent_matrix(glued, E) == [[1, 0], [0, 0]]
    assert projection_to_gamma(glued, E, E.gamma_coords) == n
    assert projection_to_gamma(glued, E, (0, 5)) == 0


def test_bound_validation(glued):
    with pytest.raises(ValidationError, match="bound must be >= 1"):
        find_elliptic_subvarieties(glued, bound=0)
    with pytest.raises(ValidationError, match="principal-unit"):
        find_elliptic_subvarieties(glued, bound=1, units="lenient")


def test_default_bound_and_override(glued, monkeypatch):
    monkeypatch.delenv(BOUND_ENV_VAR, raising=False)
    assert default_bound(glued) == 2
    monkeypatch.setenv(BOUND_ENV_VAR, "3")
    assert default_bound(glued) == 3
    monkeypatch.setenv(BOUND_ENV_VAR, "zero")
    with pytest.raises(ValidationError, match=BOUND_ENV_VAR):
        default_bound(glued)


def test_default_bound_scales_with_rank_and_valuations(hexagonal, sheared, monkeypatch):
    monkeypatch.delenv(BOUND_ENV_VAR, raising=False)
    assert default_bound(hexagonal) == 4
    assert default_bound(sheared) == 4


def test_non_principal_lattice_is_rejected(field4):
    from conftest import make_lattice

    P = make_lattice(field4, [[1, 0], [0, 1]], H=[[2, 0], [0, 2]])
    with pytest.raises(ValidationError, match="not principal"):
        find_elliptic_subvarieties(P, bound=1)


def test_subvariety_record_validation(field4):
    q = field4.unit(2, 0)
    with pytest.raises(ValidationError, match="not primitive"):
        EllipticSubvariety((2, 0), (2, 0), q, (1, 0), 2)
    with pytest.raises(ValidationError):
        EllipticSubvariety((1, 0), (3, 0), q, (1, 0), 2)
    with pytest.raises(ValidationError, match="positive valuation"):
        EllipticSubvariety((1, 0), (2, 0), field4.unit(0, 1), (1, 0), 2)


def test_identity_failures_name_the_broken_identity(glued):
    E = subtorus_intersection(glued, (1, 0))
    inv = compute_invariants(glued, E)
    assert inv.identity_failures(glued.field.w) == []
    broken = replace(inv, m=2)
    assert broken.identity_failures() == ["c*m = ord(qE)"]
    assert "c | w" in replace(inv, c=3, n=3, cokernel=FinAbGroup.cyclic(3)).identity_failures(4)


def test_theorem_disagreement_is_a_consistency_error(glued):
    E = subtorus_intersection(glued, (1, 0))
    inv = replace(compute_invariants(glued, E), cokernel=FinAbGroup(), surjective=True)
    with pytest.raises(ConsistencyError, match="disagree"):
        check_theorem_equivalence(inv, glued, E)


@pytest.mark.parametrize("a, b, c, w", GRID)
def test_glued_family(a, b, c, w):
    field = LocalFieldModel(5, 5, w)
    P = build_glued_lattice(field.unit(a, 0), field.unit(b, 0), c, field)
    assert component_group(P) == FinAbGroup.from_cyclic_orders([a, b])

    subvarieties = find_elliptic_subvarieties(P, bound=1)
    assert len(subvarieties) == 2
    first, second = subvarieties
    assert first.q_E == field.unit(c * a, 0)
    assert second.q_E == field.unit(c * b, 0)
    assert FinAbGroup.cyclic(first.ord_qE) == FinAbGroup.cyclic(c * a)
    for E in subvarieties:
        inv = compute_invariants(P, E)
        assert inv.cokernel == FinAbGroup.cyclic(c)
        assert inv.identity_failures(w) == []
        assert check_theorem_equivalence(inv, P, E).surjective == (c == 1)


@pytest.mark.parametrize("a, b, c, w", GRID)
@pytest.mark.parametrize("k", [2, 3])
def test_unramified_extension_leaves_invariants_unchanged(a, b, c, w, k):
    field = LocalFieldModel(5, 5, w)
    P = build_glued_lattice(field.unit(a, 0), field.unit(b, 0), c, field)
    Q = base_change(P, k)
    assert component_group(Q) == component_group(P)
    before = [compute_invariants(P, E) for E in find_elliptic_subvarieties(P, bound=1)]
    after = [compute_invariants(Q, E) for E in find_elliptic_subvarieties(Q, bound=1)]
    assert before == after


@pytest.mark.parametrize("vector", [(1,), (-1,), (2, 3), (0, 1), (0, -1), (-1, 2), (4, -6, 9), (6, 10, 15)])
def test_bezout_coefficients(vector):
    coeffs = _bezout(vector)
    assert sum(a * b for a, b in zip(coeffs, vector)) == 1


def test_non_identity_riemann_form(sheared):
    assert not sheared.form.H.is_Identity
    assert sheared.principal
    assert component_group(sheared) == FinAbGroup.cyclic(3)

    E = subtorus_intersection(sheared, (1, 0))
    assert E.gamma_coords == (1, 1)
    assert E.c == 1 and E.ord_qE == 3
    inv = compute_invariants(sheared, E)
    assert (inv.m, inv.r, inv.n, inv.R_E, inv.self_pairing) == (3, 2, 2, 2, 6)
    assert inv.surjective
    assert quotient_hom(sheared, E).phi == int_matrix([[1, 1]])
    assert idempotent_matrix(sheared, E) == [[Fraction(1, 2)] * 2] * 2


def test_non_identity_riemann_form_subvarieties(sheared):
    subvarieties = find_elliptic_subvarieties(sheared, bound=1)
    assert {E.cocharacter: E.gamma_coords for E in subvarieties} == {
        (1, 1): (0, 1),
        (1, 0): (1, 1),
        (1, -1): (2, -1),
        (0, -1): (1, -2),
    }


@pytest.mark.parametrize("fixture", ["diagonal", "glued", "glued_c3", "hexagonal", "sheared"])
def test_invariants_and_conditions_agree(fixture, request):
    P = request.getfixturevalue(fixture)
    subvarieties = find_elliptic_subvarieties(P, bound=1)
    assert subvarieties
    for E in subvarieties:
        inv = compute_invariants(P, E)
        assert inv.identity_failures(P.field.w) == []
        report = check_theorem_equivalence(inv, P, E)
        assert report.consistent
        assert report.surjective == inv.surjective == (inv.c == 1)
        e0, n = idempotent_endomorphism(P, E)
        assert n == inv.n
        assert projection_to_gamma(P, E, E.gamma_coords) == inv.n
