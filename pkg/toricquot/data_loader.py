"""Data loader - reads, validates and writes lattice documents."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cache
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

from toricquot.constants import LATTICE_DOCUMENT_FORMAT, LATTICE_DOCUMENT_SCHEMA_PATH, PRINCIPAL_UNITS_DEFAULT
from toricquot.constants import messages as msg
from toricquot.exceptions import DocumentError, ValidationError
from toricquot.lattice_algebra import IntMatrix, int_matrix, to_rows
from toricquot.local_field import LocalFieldModel
from toricquot.toric_lattice import MultiplicativeLattice, PolarizedLattice, RiemannForm

__all__ = [
    "LatticeDocument",
    "canonical_json",
    "load_schema",
    "parse_json",
    "load_document",
    "parse_document",
    "dump_document",
    "document_from_lattice",
    "write_document",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeDocument:
    """A validated lattice plus the optional endomorphism data."""

    lattice: PolarizedLattice
    endomorphisms: tuple[IntMatrix, ...] = ()
    hecke_pairing: IntMatrix | None = None
    source: str = "<document>"


def canonical_json(data: Any) -> str:
    """Sorted keys, two-space indent, UTF-8 text and a trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@cache
def load_schema(path: Path) -> dict:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(msg.ERROR_MSG_READ.format(path=path, reason=exc)) from exc


def parse_json(text: str, source: str, schema_path: Path) -> dict:
    """Decode *text* and validate it against a schema; errors carry a field path."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            msg.ERROR_MSG_JSON.format(line=exc.lineno, column=exc.colno, reason=exc.msg), path=source
        ) from exc
    validator = Draft202012Validator(load_schema(schema_path))
    errors = sorted(validator.iter_errors(data), key=lambda e: [str(x) for x in e.absolute_path])
    if errors:
        first = errors[0]
        location = "/".join(str(x) for x in first.absolute_path) or source
        raise DocumentError(msg.ERROR_MSG_SCHEMA.format(reason=first.message), path=location)
    return data


def _located(path: str, exc: ValidationError) -> ValidationError:
    return ValidationError(exc.message, path=exc.path or path, witnesses=exc.witnesses)


def _parse_field(data: dict) -> LocalFieldModel:
    try:
        return LocalFieldModel(int(data["p"]), int(data["q"]), int(data["w"]))
    except ValidationError as exc:
        raise _located("field", exc) from exc


def _parse_matrix(rows: list, path: str, g: int) -> IntMatrix:
    if len(rows) != g or any(len(row) != g for row in rows):
        raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{g}x{g}", got=[len(r) for r in rows]), path=path)
    return int_matrix([[int(x) for x in row] for row in rows])


def parse_document(text: str, source: str = "<document>") -> LatticeDocument:
    """Parse and validate a lattice document.

    Raises:
        DocumentError: Malformed JSON or a schema violation.
        ValidationError: The values do not describe a valid polarized
            lattice (``coords/k/j/1`` locates a torsion exponent outside
            ``[0, w)``).
    """
    data = parse_json(text, source, LATTICE_DOCUMENT_SCHEMA_PATH)
    if data["format"] != LATTICE_DOCUMENT_FORMAT:
        raise DocumentError(msg.ERROR_MSG_FORMAT_ID.format(got=data["format"], expected=LATTICE_DOCUMENT_FORMAT))

    field = _parse_field(data["field"])
    g = int(data["rank"])
    coords_data = data["coords"]
    if len(coords_data) != g or any(len(row) != g for row in coords_data):
        raise ValidationError(msg.ERROR_MSG_SHAPE.format(expected=f"{g}x{g} coords", got=len(coords_data)), path="coords")

    coords = []
    for k, row in enumerate(coords_data):
        units = []
        for j, (v, t) in enumerate(row):
            try:
                units.append(field.strict_unit(int(v), int(t)))
            except ValidationError as exc:
                raise _located(f"coords/{k}/{j}/1", exc) from exc
        coords.append(tuple(units))

    H = _parse_matrix(data["riemann_form"], "riemann_form", g)
    try:
        lattice = MultiplicativeLattice(field, tuple(coords))
    except ValidationError as exc:
        raise _located("coords", exc) from exc
    try:
        polarized = PolarizedLattice(lattice, RiemannForm(H), data.get("principal_units", PRINCIPAL_UNITS_DEFAULT))
    except ValidationError as exc:
        raise _located("riemann_form", exc) from exc

    endomorphisms = tuple(
        _parse_matrix(T, f"endomorphisms/{i}", g) for i, T in enumerate(data.get("endomorphisms", []))
    )
    pairing = None
    if "hecke_pairing" in data:
        pairing = _parse_matrix(data["hecke_pairing"], "hecke_pairing", g)
    logger.debug("parsed rank-%d lattice from %s over %s", g, source, field)
    return LatticeDocument(polarized, endomorphisms, pairing, source)


def load_document(path: str | Path) -> LatticeDocument:
    return parse_document(_read_text(path), str(path))


def _strings(matrix: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in to_rows(matrix)]


def document_from_lattice(
    P: PolarizedLattice, endomorphisms=(), hecke_pairing=None, source: str = "<generated>"
) -> LatticeDocument:
    return LatticeDocument(
        P,
        tuple(int_matrix(T) for T in endomorphisms),
        None if hecke_pairing is None else int_matrix(hecke_pairing),
        source,
    )


def dump_document(doc: LatticeDocument) -> str:
    """Canonical JSON text; integers written as decimal strings."""
    P = doc.lattice
    data: dict[str, Any] = {
        "format": LATTICE_DOCUMENT_FORMAT,
        "field": {"p": str(P.field.p), "q": str(P.field.q), "w": str(P.field.w)},
        "rank": str(P.g),
        "coords": [[[str(u.v), str(u.t)] for u in row] for row in P.lattice.coords],
        "riemann_form": _strings(P.form.H),
        "principal_units": P.principal_units,
    }
    if doc.endomorphisms:
        data["endomorphisms"] = [_strings(T) for T in doc.endomorphisms]
    if doc.hecke_pairing is not None:
        data["hecke_pairing"] = _strings(doc.hecke_pairing)
    return canonical_json(data)


def write_document(doc: LatticeDocument, path: str | Path) -> None:
    try:
        Path(path).write_text(dump_document(doc), encoding="utf-8")
    except OSError as exc:
        raise DocumentError(msg.ERROR_MSG_READ.format(path=path, reason=exc)) from exc
