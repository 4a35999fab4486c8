"""Coarse model of the multiplicative group of a local field.

An element of ``K^x`` is represented by its valuation and the exponent of
its root-of-unity part with respect to a fixed (abstract) generator of
``mu(K)``. Principal units are not represented: two units are equal when
they agree in the model.

Public API
----------
LocalFieldModel, CoarseUnit, ExactRational
unit_mul, unit_pow, cth_roots, ord_of_rational, torsion_order
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import isprime, multiplicity

from toricquot.constants import messages as msg
from toricquot.exceptions import ValidationError

__all__ = [
    "ExactRational",
    "LocalFieldModel",
    "CoarseUnit",
    "unit_mul",
    "unit_pow",
    "cth_roots",
    "ord_of_rational",
    "torsion_order",
]

logger = logging.getLogger(__name__)

ExactRational = Fraction


@dataclass(frozen=True)
class LocalFieldModel:
    """Residue characteristic ``p``, residue size ``q`` and ``w = #mu(K)``.

    ``w`` is supplied by the caller (``q - 1`` for ``Q_p`` with ``p`` odd);
    it is never derived from ``p`` and ``q``.
    """

    p: int
    q: int
    w: int

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise ValidationError(msg.ERROR_MSG_NOT_PRIME.format(p=self.p))
        if self.q < self.p or multiplicity(self.p, self.q) == 0 or self.p ** multiplicity(self.p, self.q) != self.q:
            raise ValidationError(msg.ERROR_MSG_NOT_PRIME_POWER.format(q=self.q, p=self.p))
        if self.w < 1:
            raise ValidationError(msg.ERROR_MSG_TORSION_ORDER.format(w=self.w))

    def unit(self, v: int, t: int = 0) -> CoarseUnit:
        """Unit with valuation *v* and torsion exponent *t* (reduced mod ``w``)."""
        return CoarseUnit(v, t % self.w, self)

    def strict_unit(self, v: int, t: int) -> CoarseUnit:
        """Like :meth:`unit` but rejects exponents outside ``[0, w)``."""
        return CoarseUnit(v, t, self)

    def identity(self) -> CoarseUnit:
        return CoarseUnit(0, 0, self)

    def root_of_unity(self, c: int, k: int = 1) -> CoarseUnit:
        """``zeta^k`` for the primitive ``c``-th root of unity with exponent ``w/c``."""
        if self.w % c:
            raise ValidationError(msg.ERROR_MSG_LEVEL_TORSION.format(c=c, w=self.w))
        return self.unit(0, (self.w // c) * k)

    def unramified_extension(self, k: int) -> LocalFieldModel:
        """Model of the unramified extension of degree *k*.

        The residue field grows to ``q^k`` and ``mu`` to ``w*k`` elements;
        the old generator of ``mu`` is the ``k``-th power of the new one.
        """
        if k < 1:
            raise ValidationError(msg.ERROR_MSG_NOT_EMBEDDABLE.format(source=self.w, target=self.w * k))
        return LocalFieldModel(self.p, self.q**k, self.w * k)

    def __str__(self) -> str:
        return f"(p={self.p}, q={self.q}, w={self.w})"


@dataclass(frozen=True)
class CoarseUnit:
    """``(v, t)``: valuation and root-of-unity exponent in ``[0, w)``."""

    v: int
    t: int
    field: LocalFieldModel

    def __post_init__(self) -> None:
        if not 0 <= self.t < self.field.w:
            raise ValidationError(msg.ERROR_MSG_TORSION_EXPONENT.format(t=self.t, w=self.field.w))

    def _check_model(self, other: CoarseUnit) -> None:
        if self.field != other.field:
            raise ValidationError(msg.ERROR_MSG_MODEL_MISMATCH.format(left=self.field, right=other.field))

    def __mul__(self, other: CoarseUnit) -> CoarseUnit:
        self._check_model(other)
        return CoarseUnit(self.v + other.v, (self.t + other.t) % self.field.w, self.field)

    def __pow__(self, n: int) -> CoarseUnit:
        return CoarseUnit(self.v * n, (self.t * n) % self.field.w, self.field)

    def inverse(self) -> CoarseUnit:
        return self**-1

    @property
    def is_identity(self) -> bool:
        return self.v == 0 and self.t == 0

    def embed(self, field: LocalFieldModel) -> CoarseUnit:
        """Image in a model whose ``w`` is a multiple of ours (``t -> k*t``)."""
        if field.p != self.field.p or field.w % self.field.w:
            raise ValidationError(msg.ERROR_MSG_NOT_EMBEDDABLE.format(source=self.field.w, target=field.w))
        return CoarseUnit(self.v, self.t * (field.w // self.field.w), field)

    def change_generator(self, u: int) -> CoarseUnit:
        """Apply the automorphism ``t -> u*t`` of ``mu(K)``."""
        if gcd(u, self.field.w) != 1:
            raise ValidationError(msg.ERROR_MSG_GENERATOR_CHANGE.format(u=u, w=self.field.w))
        return CoarseUnit(self.v, (self.t * u) % self.field.w, self.field)

    def __str__(self) -> str:
        return f"({self.v},{self.t})"


def unit_mul(a: CoarseUnit, b: CoarseUnit) -> CoarseUnit:
    return a * b


def unit_pow(a: CoarseUnit, n: int) -> CoarseUnit:
    return a**n


def torsion_order(x: CoarseUnit) -> int | None:
    """Order of a root of unity; ``None`` for units of non-zero valuation."""
    if x.v:
        return None
    return x.field.w // gcd(x.t, x.field.w)


def cth_roots(x: CoarseUnit, c: int) -> list[CoarseUnit]:
    """All ``y`` with ``y**c == x`` in the coarse model, sorted by exponent.

    The list is empty unless ``c | v(x)`` and ``c*t' = t(x) (mod w)`` is
    solvable; otherwise it has exactly ``gcd(c, w)`` entries.
    """
    if c < 1:
        raise ValidationError(msg.ERROR_MSG_ROOT_INDEX.format(c=c))
    w = x.field.w
    if x.v % c:
        return []
    g = gcd(c, w)
    if x.t % g:
        return []
    step = w // g
    base = (x.t // g) * pow(c // g, -1, step) % step if step > 1 else 0
    return [CoarseUnit(x.v // c, base + k * step, x.field) for k in range(g)]


def ord_of_rational(x: Fraction | int, p: int) -> int:
    """p-adic valuation of a non-zero rational number."""
    x = Fraction(x)
    if x == 0:
        raise ValidationError(msg.ERROR_MSG_VALUATION_OF_ZERO)
    return int(multiplicity(p, abs(x.numerator))) - int(multiplicity(p, x.denominator))
