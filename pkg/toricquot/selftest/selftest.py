"""Randomized property suites over seeded instances.

Every instance is drawn from a single ``numpy`` generator seeded once, so a
seed fixes the instance stream. Instances are generated sequentially and
may then be checked on a thread pool; outcomes are always collected in
submission order.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import ZZ, ImmutableMatrix
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from toricquot.constants import (
    DEFAULT_SEED,
    GENUS_TWO_PRIME_DEFAULT,
    GLUE_GRID_TORSION_ORDERS,
    GLUE_GRID_LEVELS,
    GLUE_GRID_VALUATIONS,
    ORACLE_DET_LIMIT,
    ORACLE_ORD_LIMIT,
    PRINCIPAL_UNITS,
    SELFTEST_BOUND,
    SELFTEST_COUNT_DEFAULT,
    SELFTEST_COUNT_MIN,
    SELFTEST_MAX_RANK,
    SELFTEST_MAX_VALUATION,
    SELFTEST_TORSION_ORDERS,
    WEIL_LEVEL_MAX,
    WEIL_LEVEL_MIN,
)
from toricquot.constants import messages as msg
from toricquot.data_loader import document_from_lattice, dump_document
from toricquot.exceptions import EXIT_OK, EXIT_PROPERTY, ConsistencyError, ToricQuotError, ValidationError
from toricquot.lattice_algebra import FinAbGroup, int_matrix, saturate, smith_normal_form, to_rows
from toricquot.local_field import LocalFieldModel, cth_roots, ord_of_rational
from toricquot.optimal_quotient import (
    EllipticSubvariety,
    QuotientInvariants,
    check_theorem_equivalence,
    compute_invariants,
    find_elliptic_subvarieties,
    idempotent_endomorphism,
    projection_to_gamma,
    quotient_hom,
)
from toricquot.tate_construction import (
    POLY_RING,
    TateCurve,
    TorsionPoint,
    build_anti_isometry,
    build_glued_lattice,
    quotient_component_group,
    verify_genus_two_example,
    weil_pairing,
)
from toricquot.toric_hom import (
    ToricHom,
    compose_component_maps,
    compose_hom,
    dual_hom,
    identity_hom,
    induced_component_map,
)
from toricquot.toric_lattice import PolarizedLattice, base_change, component_group, monodromy_matrix, random_polarized_lattice

from .oracles import brute_force_cokernel_profile, brute_force_profile, group_profile

__all__ = [
    "PROPERTY_NAMES",
    "PropertyOutcome",
    "SelftestResult",
    "generate_instances",
    "check_instance",
    "run_selftest",
]

logger = logging.getLogger(__name__)

SELFTEST_PRIME = 5

# Per-instance properties, in report order
INSTANCE_PROPERTIES = (
    "smith_form_contract",
    "component_group_oracle",
    "component_group_order",
    "saturation_idempotent",
    "coarse_unit_group_law",
    "cth_roots",
    "valuation_multiplicative",
    "quotient_identities",
    "lemma_projection",
    "pi_star_oracle",
    "hom_functoriality",
    "base_change_stability",
)
# Properties checked once per run
GLOBAL_PROPERTIES = (
    "weil_pairing",
    "anti_isometry",
    "glue_round_trip",
    "glue_component_groups",
    "example_curve",
    "polynomial_ring_axioms",
)
PROPERTY_NAMES = INSTANCE_PROPERTIES + GLOBAL_PROPERTIES


@dataclass(frozen=True)
class PropertyOutcome:
    name: str
    checked: int
    failures: int
    detail: str | None = None
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class SelftestResult:
    seed: int
    count: int
    outcomes: tuple[PropertyOutcome, ...]

    @property
    def passed(self) -> bool:
        return all(outcome.passed for outcome in self.outcomes)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_PROPERTY


@dataclass(frozen=True)
class Instance:
    index: int
    lattice: PolarizedLattice
    units: tuple[tuple[int, int], ...]
    rationals: tuple[Fraction, Fraction]


def _require(condition: bool, name: str, detail: object) -> None:
    if not condition:
        raise ConsistencyError(msg.ERROR_MSG_PROPERTY.format(name=name, detail=detail))


@lru_cache(maxsize=512)
def _subvarieties(P: PolarizedLattice) -> tuple:
    return tuple(find_elliptic_subvarieties(P, SELFTEST_BOUND))


@lru_cache(maxsize=2048)
def _invariants(P: PolarizedLattice, E: EllipticSubvariety) -> QuotientInvariants:
    return compute_invariants(P, E)


@lru_cache(maxsize=2048)
def _quotient(P: PolarizedLattice, E: EllipticSubvariety) -> ToricHom:
    return quotient_hom(P, E)


@lru_cache(maxsize=512)
def _monodromy_det(P: PolarizedLattice) -> int:
    return abs(int(monodromy_matrix(P).det()))


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


def _random_rational(rng: np.random.Generator) -> Fraction:
    numerator = int(rng.integers(1, 10**6)) * (SELFTEST_PRIME ** int(rng.integers(0, 4)))
    denominator = int(rng.integers(1, 10**4))
    return Fraction(numerator * (1 if rng.integers(0, 2) else -1), denominator)


def generate_instances(rng: np.random.Generator, count: int) -> list[Instance]:
    instances = []
    for index in range(count):
        g = int(rng.integers(1, SELFTEST_MAX_RANK + 1))
        w = int(rng.choice(SELFTEST_TORSION_ORDERS))
        field = LocalFieldModel(SELFTEST_PRIME, SELFTEST_PRIME, w)
        lattice = random_polarized_lattice(rng, g, field, SELFTEST_MAX_VALUATION)
        units = tuple((int(rng.integers(-6, 7)), int(rng.integers(0, w))) for _ in range(3))
        instances.append(Instance(index, lattice, units, (_random_rational(rng), _random_rational(rng))))
    return instances


# ---------------------------------------------------------------------------
# Per-instance checks
# ---------------------------------------------------------------------------


def _smith_form_contract(inst: Instance, mutate: bool) -> None:
    M = monodromy_matrix(inst.lattice)
    U, D, V = smith_normal_form(M)
    _require(U * M * V == D, "U M V = D", D)
    _require(abs(U.det()) == 1 and abs(V.det()) == 1, "unimodular", (U.det(), V.det()))
    diagonal = [int(D[i, i]) for i in range(min(D.shape))]
    _require(all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]) if a), "divisibility chain", diagonal)
    reference = sympy_smith_normal_form(M, domain=ZZ)
    expected = sorted(abs(int(reference[i, i])) for i in range(min(M.shape)))
    _require(sorted(diagonal) == expected, "agrees with sympy", (diagonal, expected))


def _component_group_oracle(inst: Instance, mutate: bool) -> None:
    rows = to_rows(monodromy_matrix(inst.lattice))
    if mutate:
        rows[0][0] += 1
    if abs(ImmutableMatrix(rows).det()) > ORACLE_DET_LIMIT:
        return
    group = component_group(inst.lattice)
    _require(brute_force_profile(int_matrix(rows)) == group_profile(group), "coset enumeration", group)


def _component_group_order(inst: Instance, mutate: bool) -> None:
    group = component_group(inst.lattice)
    det = _monodromy_det(inst.lattice)
    _require(group.order == det, "order = |det M|", (group, det))


def _saturation_idempotent(inst: Instance, mutate: bool) -> None:
    M = monodromy_matrix(inst.lattice)
    basis, index = saturate(M)
    _require(index == _monodromy_det(inst.lattice), "index of a full-rank sublattice", index)
    _require(saturate(basis)[1] == 1, "saturation is saturated", basis)


def _coarse_unit_group_law(inst: Instance, mutate: bool) -> None:
    field = inst.lattice.field
    a, b, c = (field.unit(v, t) for v, t in inst.units)
    _require((a * b) * c == a * (b * c), "associativity", (a, b, c))
    _require(a * b == b * a, "commutativity", (a, b))
    _require(a * a.inverse() == field.identity(), "inverse", a)
    _require((a * b) ** 3 == a**3 * b**3, "power of a product", (a, b))


def _cth_roots(inst: Instance, mutate: bool) -> None:
    field = inst.lattice.field
    x = field.unit(*inst.units[0])
    for c in range(1, 7):
        roots = cth_roots(x, c)
        _require(all(y**c == x for y in roots), "root property", (x, c))
        _require(not roots or len(roots) == gcd(c, field.w), "root count", (x, c, len(roots)))
        _require(len(set(roots)) == len(roots), "distinct roots", (x, c))


def _valuation_multiplicative(inst: Instance, mutate: bool) -> None:
    a, b = inst.rationals
    p = SELFTEST_PRIME
    _require(ord_of_rational(a * b, p) == ord_of_rational(a, p) + ord_of_rational(b, p), "ord(ab)", (a, b))
    _require(ord_of_rational(1 / a, p) == -ord_of_rational(a, p), "ord(1/a)", a)


def _quotient_identities(inst: Instance, mutate: bool) -> None:
    for units in PRINCIPAL_UNITS:
        P = inst.lattice.with_units(units)
        for E in _subvarieties(P):
            inv = _invariants(P, E)
            check_theorem_equivalence(inv, P, E)
            _require(P.field.w % inv.c == 0, "c | w", inv)


def _lemma_projection(inst: Instance, mutate: bool) -> None:
    P = inst.lattice
    for E in _subvarieties(P):
        e0, n = idempotent_endomorphism(P, E)
        _require(projection_to_gamma(P, E, E.gamma_coords) == n, "pi(gamma) = n rho", E)


def _pi_star_oracle(inst: Instance, mutate: bool) -> None:
    P = inst.lattice
    if _monodromy_det(P) > ORACLE_DET_LIMIT:
        return
    for E in _subvarieties(P):
        if E.ord_qE > ORACLE_ORD_LIMIT:
            continue
        inv = _invariants(P, E)
        cmap = induced_component_map(_quotient(P, E))
        _require(brute_force_cokernel_profile(cmap) == group_profile(inv.cokernel), "image enumeration", inv)


def _hom_functoriality(inst: Instance, mutate: bool) -> None:
    P = inst.lattice
    for E in _subvarieties(P):
        pi = _quotient(P, E)
        _require(dual_hom(dual_hom(pi)) == pi, "dual involution", E)
        ident = identity_hom(P)
        composed = compose_hom(pi, ident)
        expected = compose_component_maps(induced_component_map(pi), induced_component_map(ident))
        _require(induced_component_map(composed).agrees_with(expected), "functoriality", E)
        round_trip = compose_hom(pi, dual_hom(pi))
        _require(int(round_trip.phi[0, 0]) == _invariants(P, E).n, "pi o pi_dual = n", E)


def _invariant_signature(P: PolarizedLattice) -> tuple:
    subvarieties = _subvarieties(P)
    return component_group(P), tuple(_invariants(P, E) for E in subvarieties)


def _base_change_stability(inst: Instance, mutate: bool) -> None:
    P = inst.lattice
    reference = _invariant_signature(P)
    _require(_invariant_signature(base_change(P, 2)) == reference, "unramified extension", reference)
    for u in range(2, P.field.w):
        if gcd(u, P.field.w) == 1:
            changed = _invariant_signature(P.change_root_generator(u))
            _require(changed == reference, "root of unity generator", u)
            break


_INSTANCE_CHECKS: dict[str, Callable[[Instance, bool], None]] = {
    "smith_form_contract": _smith_form_contract,
    "component_group_oracle": _component_group_oracle,
    "component_group_order": _component_group_order,
    "saturation_idempotent": _saturation_idempotent,
    "coarse_unit_group_law": _coarse_unit_group_law,
    "cth_roots": _cth_roots,
    "valuation_multiplicative": _valuation_multiplicative,
    "quotient_identities": _quotient_identities,
    "lemma_projection": _lemma_projection,
    "pi_star_oracle": _pi_star_oracle,
    "hom_functoriality": _hom_functoriality,
    "base_change_stability": _base_change_stability,
}


def check_instance(inst: Instance, mutate: bool = False) -> dict[str, str | None]:
    """Run every per-instance property; maps property name to failure detail or ``None``."""
    results: dict[str, str | None] = {}
    for name in INSTANCE_PROPERTIES:
        try:
            _INSTANCE_CHECKS[name](inst, mutate)
            results[name] = None
        except ToricQuotError as exc:
            results[name] = str(exc)
    return results


# ---------------------------------------------------------------------------
# Global checks
# ---------------------------------------------------------------------------


def _weil_pairing() -> None:
    for c in range(WEIL_LEVEL_MIN, WEIL_LEVEL_MAX + 1):
        E = TateCurve(LocalFieldModel(SELFTEST_PRIME, SELFTEST_PRIME, c).unit(c, 0))
        points = [TorsionPoint(E, c, a, b) for a in range(c) for b in range(c)]
        zeta, w = TorsionPoint(E, c, 1, 0), TorsionPoint(E, c, 0, 1)
        _require(weil_pairing(zeta, w) == 1, "e_c(zeta, q) = zeta", c)
        for P in points:
            _require(weil_pairing(P, P) == 0, "alternating", (c, P))
            if P.a or P.b:
                _require(any(weil_pairing(P, Q) for Q in (zeta, w)), "non-degenerate", (c, P))
            for Q in (zeta, w):
                for R in (zeta, w):
                    total = TorsionPoint(E, c, P.a + Q.a, P.b + Q.b)
                    expected = (weil_pairing(P, R) + weil_pairing(Q, R)) % c
                    _require(weil_pairing(total, R) == expected, "bilinear", (c, P, Q, R))


def _anti_isometry() -> None:
    for c in range(WEIL_LEVEL_MIN, WEIL_LEVEL_MAX + 1):
        field = LocalFieldModel(SELFTEST_PRIME, SELFTEST_PRIME, c)
        E1, E2 = TateCurve(field.unit(c, 0)), TateCurve(field.unit(2 * c, 0))
        psi = build_anti_isometry(c)
        points = [TorsionPoint(E1, c, a, b) for a in range(c) for b in range(c)]
        images = [psi.apply(P, E2) for P in points]
        for P, psi_P in zip(points, images):
            for Q, psi_Q in zip(points, images):
                forward = weil_pairing(psi_P, psi_Q)
                _require((forward + weil_pairing(P, Q)) % c == 0, "pairing reversed", (c, P, Q))


def _glue_grid():
    for w in GLUE_GRID_TORSION_ORDERS:
        field = LocalFieldModel(SELFTEST_PRIME, SELFTEST_PRIME, w)
        for c in GLUE_GRID_LEVELS:
            if w % c:
                continue
            for a in GLUE_GRID_VALUATIONS:
                for b in GLUE_GRID_VALUATIONS:
                    yield field, c, a, b


@lru_cache(maxsize=256)
def _glued(field: LocalFieldModel, c: int, a: int, b: int) -> PolarizedLattice:
    return build_glued_lattice(field.unit(a, 0), field.unit(b, 0), c, field)


def _glue_round_trip() -> None:
    for field, c, a, b in _glue_grid():
        q1, q2 = field.unit(a, 0), field.unit(b, 0)
        P = _glued(field, c, a, b)
        subvarieties = _subvarieties(P)
        _require(len(subvarieties) == 2, "exactly two subvarieties", (a, b, c, field.w, len(subvarieties)))
        periods = sorted((E.q_E.v, E.q_E.t) for E in subvarieties)
        expected = sorted([((q1**c).v, (q1**c).t), ((q2**c).v, (q2**c).t)])
        _require(periods == expected, "periods q_i^c", (a, b, c, periods))
        for E in subvarieties:
            inv = _invariants(P, E)
            _require(inv.c == c and inv.cokernel == FinAbGroup.cyclic(c), "coker = Z/c", (a, b, c, inv))


def _glue_component_groups() -> None:
    for field, c, a, b in _glue_grid():
        q1, q2 = field.unit(a, 0), field.unit(b, 0)
        via_lattice = component_group(_glued(field, c, a, b))
        via_graph = quotient_component_group(TateCurve(q1), TateCurve(q2), c)
        _require(via_lattice == via_graph, "Phi_A / G", (a, b, c, via_lattice, via_graph))


def _example_curve() -> None:
    report = verify_genus_two_example(GENUS_TWO_PRIME_DEFAULT)
    _require(report.all_passed, "worked example", [check.name for check in report.failures()])


def _polynomial_ring_axioms(rng: np.random.Generator, count: int) -> None:
    x, p = POLY_RING.gens

    def random_poly():
        terms = POLY_RING.zero
        for _ in range(4):
            coefficient = int(rng.integers(-50, 51))
            terms += coefficient * x ** int(rng.integers(0, 4)) * p ** int(rng.integers(0, 3))
        return terms

    for _ in range(max(1, count // 10)):
        f, g, h = random_poly(), random_poly(), random_poly()
        _require((f + g) * h == f * h + g * h, "distributive", (f, g, h))
        _require((f * g) * h == f * (g * h), "associative", (f, g, h))
        _require(f * g == g * f, "commutative", (f, g))
        _require(f - f == POLY_RING.zero, "additive inverse", f)
        point = (int(rng.integers(-5, 6)), int(rng.integers(-5, 6)))
        _require((f * g)(*point) == f(*point) * g(*point), "evaluation is a homomorphism", (f, g, point))


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


def run_selftest(
    seed: int = DEFAULT_SEED, count: int = SELFTEST_COUNT_DEFAULT, jobs: int = 1, mutate: bool = False
) -> SelftestResult:
    """Run every property suite.

    Args:
        seed: Seed of the single random generator.
        count: Number of random lattices.
        jobs: Worker threads for the per-instance checks.
        mutate: Perturb the Gram matrix before the oracle comparison; the
            run must then fail.

    Raises:
        ValidationError: If ``count`` is below the minimum.
    """
    if count < SELFTEST_COUNT_MIN:
        raise ValidationError(msg.ERROR_MSG_COUNT.format(count=count))
    rng = np.random.default_rng(seed)
    instances = generate_instances(rng, count)
    logger.info("self-test: %d instances from seed %d, %d job(s)", count, seed, jobs)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda inst: check_instance(inst, mutate), instances))
    else:
        results = [check_instance(inst, mutate) for inst in instances]

    outcomes = []
    for name in INSTANCE_PROPERTIES:
        failed = [(inst, res[name]) for inst, res in zip(instances, results) if res[name] is not None]
        if failed:
            inst, detail = failed[0]
            counterexample = dump_document(document_from_lattice(inst.lattice, source=f"instance {inst.index}"))
            outcomes.append(PropertyOutcome(name, count, len(failed), f"instance {inst.index}: {detail}", counterexample))
        else:
            outcomes.append(PropertyOutcome(name, count, 0))

    global_checks: dict[str, Callable[[], None]] = {
        "weil_pairing": _weil_pairing,
        "anti_isometry": _anti_isometry,
        "glue_round_trip": _glue_round_trip,
        "glue_component_groups": _glue_component_groups,
        "example_curve": _example_curve,
        "polynomial_ring_axioms": lambda: _polynomial_ring_axioms(rng, count),
    }
    for name in GLOBAL_PROPERTIES:
        try:
            global_checks[name]()
            outcomes.append(PropertyOutcome(name, 1, 0))
        except ToricQuotError as exc:
            outcomes.append(PropertyOutcome(name, 1, 1, str(exc)))

    result = SelftestResult(seed, count, tuple(outcomes))
    for outcome in result.outcomes:
        if not outcome.passed:
            logger.warning("property %s failed: %s", outcome.name, outcome.detail)
    return result
