"""Elliptic subvarieties, optimal quotients and their invariants.

An elliptic subvariety ``E`` of ``J = T/Lambda`` comes from a
one-dimensional subtorus ``T'_beta`` (image of the cocharacter ``beta``)
meeting the lattice in a rank-one group ``Gamma = <gamma>``. With
``gamma = c * lambda_E`` for primitive ``lambda_E`` and ``q_E`` the point
``gamma`` read on ``T' = K^x``, the optimal quotient ``pi: J -> E`` is dual
to the inclusion and the following identities hold:

    c * m = ord(q_E),   c^2 <lambda_E, lambda_E> = n ord(q_E),
    n = c * r,          R_E = r,          coker(pi*) = Z/c,    c | w.

:func:`compute_invariants` derives every quantity along its own path and
asserts the identities; :func:`check_theorem_equivalence` evaluates the
seven conditions equivalent to surjectivity of ``pi*``.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from sympy import ImmutableMatrix, primefactors
from sympy.core.intfunc import igcdex

from toricquot.constants import BOUND_ENV_VAR, BOUND_MIN, PRINCIPAL_UNITS, THEOREM_CONDITIONS
from toricquot.constants import messages as msg
from toricquot.exceptions import ConsistencyError, ValidationError
from toricquot.lattice_algebra import (
    FinAbGroup,
    IntMatrix,
    column,
    content,
    from_columns,
    identity_matrix,
    int_matrix,
    kernel_basis,
    lattice_index,
    normalize_sign,
    saturate,
    to_rows,
)
from toricquot.local_field import CoarseUnit
from toricquot.toric_hom import (
    ToricHom,
    cokernel_of_component_map,
    compose_hom,
    dual_hom,
    induced_component_map,
)
from toricquot.toric_lattice import MultiplicativeLattice, PolarizedLattice, RiemannForm, gram_rows

__all__ = [
    "EllipticSubvariety",
    "QuotientInvariants",
    "TheoremReport",
    "default_bound",
    "find_elliptic_subvarieties",
    "subtorus_intersection",
    "quotient_hom",
    "compute_invariants",
    "projection_to_gamma",
    "idempotent_endomorphism",
    "idempotent_matrix",
    "congruence_number",
    "check_theorem_equivalence",
]

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticSubvariety:
    """``T'_beta / Gamma`` inside ``J``.

    ``gamma_coords`` are the lattice coordinates of the generator of
    ``Gamma``; ``q_E`` is that generator read on ``T' = K^x``;
    ``lambda_E`` generates the saturation and ``c`` is the saturation index.
    """

    cocharacter: tuple[int, ...]
    gamma_coords: tuple[int, ...]
    q_E: CoarseUnit
    lambda_E: tuple[int, ...]
    c: int

    def __post_init__(self) -> None:
        for name in ("cocharacter", "gamma_coords", "lambda_E"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))
        if content(self.cocharacter) != 1:
            raise ValidationError(f"cocharacter {self.cocharacter} is not primitive")
        if content(self.lambda_E) != 1 or normalize_sign(self.lambda_E) != self.lambda_E:
            raise ValidationError(f"lambda_E {self.lambda_E} is not primitive and sign-normalized")
        if self.gamma_coords != tuple(self.c * x for x in self.lambda_E):
            raise ValidationError(f"gamma {self.gamma_coords} != {self.c} * {self.lambda_E}")
        if self.q_E.v <= 0:
            raise ValidationError(msg.ERROR_MSG_TATE_VALUATION.format(v=self.q_E.v))

    @property
    def ord_qE(self) -> int:
        return self.q_E.v

    def tate_lattice(self) -> PolarizedLattice:
        """Rank-one lattice ``q_E^Z`` with ``H = [1]``."""
        lattice = MultiplicativeLattice(self.q_E.field, ((self.q_E,),))
        return PolarizedLattice(lattice, RiemannForm(ImmutableMatrix([[1]])))


@dataclass(frozen=True)
class QuotientInvariants:
    c: int
    m: int
    n: int
    r: int
    R_E: int
    ord_qE: int
    self_pairing: int
    surjective: bool
    cokernel: FinAbGroup

    def identity_failures(self, w: int | None = None) -> list[str]:
        """Names of the identities this record violates (empty when consistent)."""
        checks = {
            "c = n/r": self.c * self.r == self.n,
            "c*m = ord(qE)": self.c * self.m == self.ord_qE,
            "c^2*<lE,lE> = n*ord(qE)": self.c**2 * self.self_pairing == self.n * self.ord_qE,
            "R_E = r": self.R_E == self.r,
            "coker = Z/c": self.cokernel == FinAbGroup.cyclic(self.c),
            "surjective <=> c = 1": self.surjective == (self.c == 1),
        }
        if w is not None:
            checks["c | w"] = w % self.c == 0
        return [name for name, ok in checks.items() if not ok]


@dataclass(frozen=True)
class TheoremReport:
    """Truth values of the seven equivalent conditions, in canonical order."""

    conditions: tuple[tuple[str, bool], ...]

    @property
    def consistent(self) -> bool:
        return len({value for _, value in self.conditions}) == 1

    @property
    def surjective(self) -> bool:
        return self.conditions[0][1]

    def as_dict(self) -> dict[str, bool]:
        return dict(self.conditions)


# ---------------------------------------------------------------------------
# Subtorus enumeration
# ---------------------------------------------------------------------------


def default_bound(P: PolarizedLattice) -> int:
    """``g * max|V_ij|``, or the value of the bound environment variable."""
    override = os.environ.get(BOUND_ENV_VAR)
    if override:
        try:
            bound = int(override)
        except ValueError as exc:
            raise ValidationError(msg.ERROR_MSG_BOUND_ENV.format(value=override)) from exc
        if bound < BOUND_MIN:
            raise ValidationError(msg.ERROR_MSG_BOUND_ENV.format(value=override))
        return bound
    return P.g * max(abs(int(x)) for x in P.lattice.valuation_matrix)


def _primitive_directions(g: int, bound: int) -> list[tuple[int, ...]]:
    """Primitive vectors in ``[-bound, bound]^g`` up to sign, small ones first."""
    directions = [
        beta
        for beta in product(range(-bound, bound + 1), repeat=g)
        if content(beta) == 1 and normalize_sign(beta) == beta
    ]
    return sorted(directions, key=lambda beta: (max(abs(x) for x in beta), tuple(-x for x in beta)))


def _generic_unit_rows(P: PolarizedLattice, beta: Sequence[int], n_unknowns: int) -> list[list[int]]:
    """Constraints from independent principal units on the pairing values.

    Reading the membership equation through ``H^T`` gives ``P gamma = h x``
    with ``h = H^T beta``. Each pairing value ``[l_i, l_j]`` of non-zero
    valuation contributes an independent principal unit; its coefficient
    vector in ``P gamma`` must be proportional to ``h``, which is linear in
    ``gamma`` (all 2x2 minors against ``h`` vanish).
    """
    g = P.g
    H = to_rows(P.form.H)
    h = [sum(H[k][i] * beta[k] for k in range(g)) for i in range(g)]
    gram = gram_rows(P)
    rows: list[list[int]] = []
    for i in range(g):
        for j in range(i, g):
            if gram[i][j] == 0:
                continue
            coef = [[0] * g for _ in range(g)]
            coef[i][j] += 1
            if i != j:
                coef[j][i] += 1
            for k in range(g):
                for l in range(k + 1, g):
                    row = [0] * n_unknowns
                    for x in range(g):
                        row[x] = h[l] * coef[k][x] - h[k] * coef[l][x]
                    if any(row):
                        rows.append(row)
    return rows


def _bezout(vector: Sequence[int]) -> list[int]:
    """Integers ``a`` with ``sum(a_i * v_i) = 1`` for a primitive vector."""
    coeffs = [0] * len(vector)
    acc = 0
    for i, b in enumerate(vector):
        if b == 0:
            continue
        x, y, acc_new = igcdex(acc, b)
        coeffs = [int(x) * a for a in coeffs]
        coeffs[i] = int(y)
        acc = int(acc_new)
    total = sum(a * b for a, b in zip(coeffs, vector))
    if total == -1:
        coeffs = [-a for a in coeffs]
    elif total != 1:
        raise ConsistencyError(f"no Bezout combination for {tuple(vector)}")
    return coeffs


def subtorus_intersection(
    P: PolarizedLattice, beta: Sequence[int], units: str | None = None
) -> EllipticSubvariety | None:
    """``Gamma = T'_beta(K) ∩ Lambda`` as an elliptic subvariety, or ``None``.

    Unknowns are the lattice coordinates ``gamma``, the point ``(v0, t0)``
    on ``T'`` and slack variables for the congruences mod ``w``::

        V gamma = v0 beta
        T gamma = t0 beta + w s

    plus the principal-unit constraints in the ``generic`` reading. The
    integer kernel of this system projects onto the ``gamma`` coordinates
    of ``Gamma``.
    """
    units = units or P.principal_units
    g, w = P.g, P.field.w
    V = to_rows(P.lattice.valuation_matrix)
    T = to_rows(P.lattice.torsion_matrix)
    n_unknowns = 2 * g + 2
    rows: list[list[int]] = []
    for k in range(g):
        row = [0] * n_unknowns
        row[:g] = V[k]
        row[g] = -beta[k]
        rows.append(row)
    for k in range(g):
        row = [0] * n_unknowns
        row[:g] = T[k]
        row[g + 1] = -beta[k]
        row[g + 2 + k] = -w
        rows.append(row)
    if units == "generic":
        rows.extend(_generic_unit_rows(P, beta, n_unknowns))

    solutions = kernel_basis(int_matrix(rows, len(rows), n_unknowns))
    projected = [column(solutions, j)[:g] for j in range(solutions.cols)]
    projected = [vec for vec in projected if any(vec)]
    if not projected:
        return None

    direction = normalize_sign([x // content(projected[0]) for x in projected[0]])
    pivot = next(i for i, x in enumerate(direction) if x)
    multipliers = []
    for vec in projected:
        a = vec[pivot] // direction[pivot]
        if tuple(a * x for x in direction) != tuple(vec):
            raise ConsistencyError(f"subtorus {tuple(beta)} meets the lattice in rank > 1")
        multipliers.append(a)
    step = content(multipliers)
    gamma = tuple(step * x for x in direction)

    basis, c = saturate(from_columns([gamma], g))
    lambda_E = column(basis, 0)

    image = [sum(V[k][j] * gamma[j] for j in range(g)) for k in range(g)]
    k0 = next(k for k, b in enumerate(beta) if b)
    v0 = image[k0] // beta[k0]
    if any(image[k] != v0 * beta[k] for k in range(g)):
        raise ConsistencyError(f"valuations of gamma {gamma} are not on the cocharacter {tuple(beta)}")
    beta = tuple(beta)
    if v0 < 0:
        beta, v0 = tuple(-b for b in beta), -v0

    tors = [sum(T[k][j] * gamma[j] for j in range(g)) for k in range(g)]
    t0 = sum(a * x for a, x in zip(_bezout(beta), tors)) % w
    if any((tors[k] - t0 * beta[k]) % w for k in range(g)):
        raise ConsistencyError(f"torsion of gamma {gamma} is not on the cocharacter {beta}")

    q_E = P.field.unit(v0, t0)
    point = P.lattice.point(gamma)
    if point != tuple(q_E**b for b in beta):
        raise ConsistencyError(f"lattice point {gamma} does not lie on T'_{beta}")

    return EllipticSubvariety(beta, gamma, q_E, lambda_E, c)


def find_elliptic_subvarieties(
    P: PolarizedLattice, bound: int | None = None, units: str | None = None
) -> list[EllipticSubvariety]:
    """Elliptic subvarieties whose cocharacter has entries in ``[-bound, bound]``.

    Args:
        P: Principally polarized lattice.
        bound: Enumeration bound ``B >= 1``; defaults to :func:`default_bound`.
        units: ``"generic"`` or ``"discarded"``; defaults to ``P.principal_units``.

    Returns:
        One subvariety per direction up to sign, smallest directions first.

    Raises:
        ValidationError: If ``bound`` is below 1 or ``P`` is not principal.
    """
    P.require_principal()
    if bound is None:
        bound = default_bound(P)
    if bound < BOUND_MIN:
        raise ValidationError(msg.ERROR_MSG_BOUND_ZERO.format(bound=bound))
    units = units or P.principal_units
    if units not in PRINCIPAL_UNITS:
        raise ValidationError(msg.ERROR_MSG_UNIT_MODEL.format(units=units, choices=sorted(PRINCIPAL_UNITS)))

    directions = _primitive_directions(P.g, bound)
    logger.debug("scanning %d cocharacters with bound %d (%s units)", len(directions), bound, units)
    found = []
    for beta in directions:
        subvariety = subtorus_intersection(P, beta, units)
        if subvariety is not None:
            logger.debug("cocharacter %s: q_E=%s, c=%d", subvariety.cocharacter, subvariety.q_E, subvariety.c)
            found.append(subvariety)
    return found


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------


def _pairing_column(P: PolarizedLattice, E: EllipticSubvariety) -> list[int]:
    """``M lambda_E``: the values ``<l_i, lambda_E>``."""
    gram = gram_rows(P)
    return [sum(gram[i][j] * E.lambda_E[j] for j in range(P.g)) for i in range(P.g)]


def idempotent_matrix(P: PolarizedLattice, E: EllipticSubvariety) -> list[list[Fraction]]:
    """``e(l) = (<l, lambda_E> / <lambda_E, lambda_E>) lambda_E`` as a rational matrix."""
    paired = _pairing_column(P, E)
    self_pairing = sum(a * b for a, b in zip(E.lambda_E, paired))
    return [[Fraction(E.lambda_E[i] * paired[j], self_pairing) for j in range(P.g)] for i in range(P.g)]


def congruence_number(P: PolarizedLattice, E: EllipticSubvariety) -> int:
    """``[Lambda : lambda_E^perp + Z lambda_E]``."""
    paired = _pairing_column(P, E)
    perp = kernel_basis(int_matrix([paired]))
    spanning = perp.row_join(from_columns([E.lambda_E], P.g))
    return lattice_index(identity_matrix(P.g), spanning)


def quotient_hom(P: PolarizedLattice, E: EllipticSubvariety) -> ToricHom:
    """The optimal quotient ``(pi, pi_dual)`` from ``P`` to the Tate lattice of ``q_E``.

    ``pi`` is computed as ``c <., lambda_E> / ord(q_E)`` and cross-checked
    against the character ``H^T beta`` of the subtorus.
    """
    paired = _pairing_column(P, E)
    projection = []
    for value in paired:
        numerator = E.c * value
        if numerator % E.ord_qE:
            raise ConsistencyError(msg.ERROR_MSG_PROJECTION.format(value=Fraction(numerator, E.ord_qE)))
        projection.append(numerator // E.ord_qE)

    H = to_rows(P.form.H)
    character = [sum(H[k][i] * E.cocharacter[k] for k in range(P.g)) for i in range(P.g)]
    if character != projection:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(
                name="pi = H^T beta", beta=E.cocharacter, detail=f"{projection} != {character}"
            )
        )
    return ToricHom(P, E.tate_lattice(), int_matrix([projection]), from_columns([E.gamma_coords], P.g))


def projection_to_gamma(P: PolarizedLattice, E: EllipticSubvariety, lam: Sequence[int]) -> int:
    """``k`` with ``pi(lam) = k * rho``."""
    paired = _pairing_column(P, E)
    numerator = E.c * sum(x * y for x, y in zip(lam, paired))
    if numerator % E.ord_qE:
        raise ConsistencyError(msg.ERROR_MSG_PROJECTION.format(value=Fraction(numerator, E.ord_qE)))
    return numerator // E.ord_qE


def idempotent_endomorphism(P: PolarizedLattice, E: EllipticSubvariety) -> tuple[IntMatrix, int]:
    """``e0 = pi_dual o pi`` and ``n`` with ``e0^2 = n e0`` and ``e0 = n e`` checked."""
    pi = quotient_hom(P, E)
    e0 = compose_hom(dual_hom(pi), pi).phi
    n = projection_to_gamma(P, E, E.gamma_coords)
    if e0 * e0 != n * e0:
        raise ConsistencyError(msg.ERROR_MSG_IDENTITY.format(name="e0^2 = n e0", beta=E.cocharacter, detail=e0))
    e = idempotent_matrix(P, E)
    if any(int(e0[i, j]) != n * e[i][j] for i in range(P.g) for j in range(P.g)):
        raise ConsistencyError(msg.ERROR_MSG_IDENTITY.format(name="e0 = n e", beta=E.cocharacter, detail=e0))
    return e0, n


def compute_invariants(P: PolarizedLattice, E: EllipticSubvariety) -> QuotientInvariants:
    """All numerical invariants of the optimal quotient attached to ``E``.

    Raises:
        ConsistencyError: If any identity between the invariants fails.
    """
    paired = _pairing_column(P, E)
    self_pairing = sum(a * b for a, b in zip(E.lambda_E, paired))
    m = content(paired)

    # r twice: denominator of the projector, and the gcd formula
    r_projector = lcm(*(x.denominator for row in idempotent_matrix(P, E) for x in row))
    outer_content = content(a * b for a in E.lambda_E for b in paired)
    r_gcd = self_pairing // gcd(self_pairing, outer_content)
    if r_projector != r_gcd:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(name="r", beta=E.cocharacter, detail=f"{r_projector} != {r_gcd}")
        )

    cokernel = cokernel_of_component_map(induced_component_map(quotient_hom(P, E)))
    invariants = QuotientInvariants(
        c=E.c,
        m=m,
        n=E.c * r_projector,
        r=r_projector,
        R_E=congruence_number(P, E),
        ord_qE=E.ord_qE,
        self_pairing=self_pairing,
        surjective=cokernel.is_trivial,
        cokernel=cokernel,
    )
    failures = invariants.identity_failures(P.field.w)
    if failures:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(name=", ".join(failures), beta=E.cocharacter, detail=invariants)
        )
    lemma_n = projection_to_gamma(P, E, E.gamma_coords)
    if lemma_n != invariants.n:
        raise ConsistencyError(
            msg.ERROR_MSG_IDENTITY.format(name="pi(gamma) = n rho", beta=E.cocharacter, detail=lemma_n)
        )
    return invariants


def _is_primitive_endomorphism(matrix: list[list[Fraction]], n: int) -> bool:
    entries = [x for row in matrix for x in row]
    if any(x.denominator != 1 for x in entries):
        raise ConsistencyError(f"n*e is not integral: {matrix}")
    integral = [int(x) for x in entries]
    no_prime_divides = all(any(x % p for x in integral) for p in primefactors(n))
    return content(integral) == 1 and no_prime_divides


def check_theorem_equivalence(inv: QuotientInvariants, P: PolarizedLattice, E: EllipticSubvariety) -> TheoremReport:
    """Evaluate the seven conditions equivalent to surjectivity of ``pi*``.

    Raises:
        ConsistencyError: If the conditions do not all agree.
    """
    e = idempotent_matrix(P, E)
    n_e = [[inv.n * x for x in row] for row in e]
    values = {
        "cokernel_trivial": inv.cokernel.is_trivial,
        "e0_primitive": _is_primitive_endomorphism(n_e, inv.n),
        "c_is_one": inv.c == 1,
        "n_equals_r": inv.n == inv.r,
        "self_pairing_is_n_ord": inv.self_pairing == inv.n * inv.ord_qE,
        "m_equals_ord": inv.m == inv.ord_qE,
        "n_equals_congruence": inv.n == inv.R_E,
    }
    report = TheoremReport(tuple((name, values[name]) for name in THEOREM_CONDITIONS))
    if not report.consistent:
        raise ConsistencyError(msg.ERROR_MSG_THEOREM_DISAGREEMENT.format(beta=E.cocharacter, values=values))
    return report
