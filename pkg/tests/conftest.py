"""Shared fixtures: small fields, the glued surface lattices and seeded generators."""

from __future__ import annotations

import numpy as np
import pytest
from sympy import ImmutableMatrix

from toricquot.constants import DEFAULT_SEED
from toricquot.data_loader import document_from_lattice, dump_document
from toricquot.local_field import LocalFieldModel
from toricquot.tate_construction import build_glued_lattice
from toricquot.toric_lattice import MultiplicativeLattice, PolarizedLattice, RiemannForm


def make_lattice(field, valuations, torsion=None, H=None, principal_units="generic") -> PolarizedLattice:
    """Lattice with ``coords[k][j] = (valuations[k][j], torsion[k][j])``."""
    g = len(valuations)
    torsion = torsion or [[0] * g for _ in range(g)]
    coords = tuple(tuple(field.unit(valuations[k][j], torsion[k][j]) for j in range(g)) for k in range(g))
    form = RiemannForm(ImmutableMatrix.eye(g) if H is None else ImmutableMatrix(H))
    return PolarizedLattice(MultiplicativeLattice(field, coords), form, principal_units)


@pytest.fixture
def field4() -> LocalFieldModel:
    return LocalFieldModel(5, 5, 4)


@pytest.fixture
def glued(field4) -> PolarizedLattice:
    """ord q1 = ord q2 = 1 glued along 2-torsion: trivial component group."""
    return build_glued_lattice(field4.unit(1, 0), field4.unit(1, 0), 2, field4)


@pytest.fixture
def glued_c3() -> PolarizedLattice:
    field = LocalFieldModel(7, 7, 6)
    return build_glued_lattice(field.unit(1, 0), field.unit(1, 0), 3, field)


@pytest.fixture
def diagonal() -> PolarizedLattice:
    """Product of two Tate curves with ord q = 1; every quotient has c = 1."""
    return make_lattice(LocalFieldModel(3, 3, 2), [[1, 0], [0, 1]])


@pytest.fixture
def hexagonal() -> PolarizedLattice:
    """Gram matrix ``[[2, 1], [1, 2]]``; component group Z/3."""
    return make_lattice(LocalFieldModel(3, 3, 2), [[2, 1], [1, 2]], principal_units="discarded")


@pytest.fixture
def glued_text(glued) -> str:
    return dump_document(document_from_lattice(glued))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED)


@pytest.fixture
def sheared() -> PolarizedLattice:
    """``H = [[1, 1], [0, 1]]`` with valuations ``H^-T S`` for ``S = [[2, 1], [1, 2]]``."""
    return make_lattice(LocalFieldModel(3, 3, 2), [[2, 1], [-1, 1]], H=[[1, 1], [0, 1]], principal_units="discarded")
