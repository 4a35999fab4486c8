import time
from fractions import Fraction

import numpy as np
import pytest

from toricquot.constants import DEFAULT_SEED, SELFTEST_COUNT_DEFAULT
from toricquot.data_loader import parse_document
from toricquot.exceptions import ValidationError
from toricquot.lattice_algebra import FinAbGroup, int_matrix
from toricquot.optimal_quotient import find_elliptic_subvarieties, quotient_hom
from toricquot.selftest import (
    PROPERTY_NAMES,
    CosetSpace,
    brute_force_cokernel_profile,
    brute_force_profile,
    check_instance,
    generate_instances,
    group_profile,
    run_selftest,
)
from toricquot.selftest.selftest import Instance
from toricquot.toric_hom import induced_component_map


@pytest.mark.parametrize(
    "relations, group",
    [
        ([[2, 1], [1, 2]], FinAbGroup.cyclic(3)),
        ([[2, 0], [0, 4]], FinAbGroup((2, 4))),
        ([[6]], FinAbGroup.cyclic(6)),
        ([[1, 0], [0, 1]], FinAbGroup()),
    ],
)
def test_coset_enumeration_matches_the_smith_form(relations, group):
    assert brute_force_profile(int_matrix(relations)) == group_profile(group)


def test_coset_space():
    space = CosetSpace(int_matrix([[2, 0], [0, 3]]))
    assert len(space.elements()) == 6
    assert space.reduce([5, -1]) == (1, 2)
    assert space.closure([[1, 0]]) == {(0, 0), (1, 0)}


def test_cokernel_oracle_on_the_glued_lattice(glued):
    for E in find_elliptic_subvarieties(glued):
        cmap = induced_component_map(quotient_hom(glued, E))
        assert brute_force_cokernel_profile(cmap) == group_profile(FinAbGroup.cyclic(2))


def test_instances_are_determined_by_the_seed():
    first = generate_instances(np.random.default_rng(DEFAULT_SEED), 5)
    second = generate_instances(np.random.default_rng(DEFAULT_SEED), 5)
    assert first == second
    assert [inst.index for inst in first] == list(range(5))


def test_random_instances_pass(rng):
    for inst in generate_instances(rng, 4):
        failures = check_instance(inst)
        assert list(failures) == list(PROPERTY_NAMES[: len(failures)])
        assert all(detail is None for detail in failures.values()), failures


def test_mutation_breaks_the_component_group_oracle(diagonal):
    inst = Instance(0, diagonal, ((1, 0), (0, 1), (2, 1)), (Fraction(25, 3), Fraction(-1, 5)))
    assert check_instance(inst)["component_group_oracle"] is None
    failures = check_instance(inst, mutate=True)
    assert "coset enumeration" in failures["component_group_oracle"]
    assert failures["component_group_order"] is None


def test_count_must_be_positive():
    with pytest.raises(ValidationError, match="instance count"):
        run_selftest(count=0)


@pytest.mark.slow
def test_seeded_run_passes():
    result = run_selftest(count=20)
    assert result.exit_code == 0
    assert [outcome.name for outcome in result.outcomes] == list(PROPERTY_NAMES)


@pytest.mark.slow
def test_thread_pool_gives_the_same_outcomes():
    assert run_selftest(count=10, jobs=2) == run_selftest(count=10, jobs=1)


@pytest.mark.slow
def test_mutated_run_reports_a_counterexample():
    result = run_selftest(count=20, mutate=True)
    assert result.exit_code == 3
    failed = [outcome for outcome in result.outcomes if not outcome.passed]
    assert [outcome.name for outcome in failed] == ["component_group_oracle"]
    assert parse_document(failed[0].counterexample).lattice is not None


def test_instance_checks_pass_for_a_non_identity_riemann_form(sheared):
    inst = Instance(0, sheared, ((1, 0), (2, 1), (-3, 1)), (Fraction(9, 4), Fraction(-2, 15)))
    results = check_instance(inst)
    assert [name for name, detail in results.items() if detail is not None] == []
    assert len(results) == 12


@pytest.mark.slow
def test_default_run_finishes_within_a_minute():
    started = time.perf_counter()
    result = run_selftest()
    assert result.exit_code == 0
    assert result.count == SELFTEST_COUNT_DEFAULT
    assert time.perf_counter() - started < 60
