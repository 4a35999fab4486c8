"""Analysis reports: assembly, canonical machine format and text rendering."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from toricquot.constants import ANALYSIS_REPORT_FORMAT, ANALYSIS_REPORT_SCHEMA_PATH, THEOREM_CONDITIONS
from toricquot.constants import messages as msg
from toricquot.data_loader import LatticeDocument, canonical_json, parse_json
from toricquot.exceptions import ConsistencyError, DocumentError
from toricquot.lattice_algebra import FinAbGroup
from toricquot.local_field import LocalFieldModel
from toricquot.optimal_quotient import (
    EllipticSubvariety,
    GekelerVerdict,
    IndexCheck,
    QuotientInvariants,
    SubvarietyAnalysis,
    TheoremReport,
    analyze_subvariety,
    default_bound,
    find_elliptic_subvarieties,
)
from toricquot.toric_lattice import component_group

from .tables import criteria_frame, invariants_frame, render_frame, theorem_frame

__all__ = [
    "AnalysisReport",
    "build_analysis_report",
    "check_report",
    "report_to_dict",
    "render_machine",
    "parse_machine",
    "render_text",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnalysisReport:
    field: LocalFieldModel
    rank: int
    bound: int
    principal_units: str
    component_group: FinAbGroup
    subvarieties: tuple[SubvarietyAnalysis, ...]


def build_analysis_report(doc: LatticeDocument, bound: int | None = None, units: str | None = None) -> AnalysisReport:
    """Run the full analysis of a lattice document."""
    P = doc.lattice if units is None else doc.lattice.with_units(units)
    if bound is None:
        bound = default_bound(P)
        logger.info("enumeration bound B = %d (heuristic beyond the glued family)", bound)
    subvarieties = find_elliptic_subvarieties(P, bound)
    analyses = tuple(
        analyze_subvariety(P, E, list(doc.endomorphisms), doc.hecke_pairing) for E in subvarieties
    )
    report = AnalysisReport(P.field, P.g, bound, P.principal_units, component_group(P), analyses)
    check_report(report)
    return report


def check_report(report: AnalysisReport) -> None:
    """Re-check every asserted identity on the recorded values.

    Raises:
        ConsistencyError: On any violation.
    """
    for analysis in report.subvarieties:
        inv, E = analysis.invariants, analysis.subvariety
        failures = inv.identity_failures(report.field.w)
        if failures:
            raise ConsistencyError(msg.ERROR_MSG_IDENTITY.format(name=", ".join(failures), beta=E.cocharacter, detail=inv))
        if not analysis.theorem.consistent or analysis.theorem.surjective != inv.surjective:
            raise ConsistencyError(
                msg.ERROR_MSG_THEOREM_DISAGREEMENT.format(beta=E.cocharacter, values=analysis.theorem.as_dict())
            )
        if E.c != inv.c or E.ord_qE != inv.ord_qE:
            raise ConsistencyError(msg.ERROR_MSG_IDENTITY.format(name="record", beta=E.cocharacter, detail=inv))


# ---------------------------------------------------------------------------
# Machine format
# ---------------------------------------------------------------------------


def _strs(values) -> list[str]:
    return [str(x) for x in values]


def _ints(values) -> tuple[int, ...]:
    return tuple(int(x) for x in values)


def _group_to_dict(group: FinAbGroup) -> dict[str, Any]:
    return {"invariant_factors": _strs(group.invariant_factors), "free_rank": str(group.free_rank)}


def _group_from_dict(data: dict) -> FinAbGroup:
    return FinAbGroup(_ints(data["invariant_factors"]), int(data["free_rank"]))


def _analysis_to_dict(analysis: SubvarietyAnalysis) -> dict[str, Any]:
    E, inv = analysis.subvariety, analysis.invariants
    entry: dict[str, Any] = {
        "cocharacter": _strs(E.cocharacter),
        "gamma": _strs(E.gamma_coords),
        "lambda_E": _strs(E.lambda_E),
        "q_E": [str(E.q_E.v), str(E.q_E.t)],
        "invariants": {
            "c": str(inv.c),
            "m": str(inv.m),
            "n": str(inv.n),
            "r": str(inv.r),
            "R_E": str(inv.R_E),
            "ord_qE": str(inv.ord_qE),
            "self_pairing": str(inv.self_pairing),
            "surjective": inv.surjective,
            "cokernel": _group_to_dict(inv.cokernel),
        },
        "theorem": analysis.theorem.as_dict(),
    }
    if analysis.index_check is not None:
        entry["lemma_index"] = {
            "index": str(analysis.index_check.index),
            "divisible_by_c": analysis.index_check.divisible_by_c,
            "eigenvalues": _strs(analysis.index_check.eigenvalues),
        }
    elif analysis.index_error is not None:
        entry["lemma_index"] = {"error": analysis.index_error}
    if analysis.gekeler is not None:
        verdict = analysis.gekeler
        entry["pairing_criterion"] = {
            "determinant": str(verdict.determinant),
            "certified": verdict.certified,
            "denominator": str(verdict.denominator),
            "r": str(verdict.r),
            "ratio": str(verdict.ratio),
            "ratio_divides_determinant": verdict.ratio_divides_determinant,
        }
    elif analysis.gekeler_error is not None:
        entry["pairing_criterion"] = {"error": analysis.gekeler_error}
    return entry


def _analysis_from_dict(data: dict, field: LocalFieldModel) -> SubvarietyAnalysis:
    inv_data = data["invariants"]
    E = EllipticSubvariety(
        _ints(data["cocharacter"]),
        _ints(data["gamma"]),
        field.strict_unit(*_ints(data["q_E"])),
        _ints(data["lambda_E"]),
        int(inv_data["c"]),
    )
    invariants = QuotientInvariants(
        c=int(inv_data["c"]),
        m=int(inv_data["m"]),
        n=int(inv_data["n"]),
        r=int(inv_data["r"]),
        R_E=int(inv_data["R_E"]),
        ord_qE=int(inv_data["ord_qE"]),
        self_pairing=int(inv_data["self_pairing"]),
        surjective=inv_data["surjective"],
        cokernel=_group_from_dict(inv_data["cokernel"]),
    )
    if set(data["theorem"]) != set(THEOREM_CONDITIONS):
        raise DocumentError(msg.ERROR_MSG_SCHEMA.format(reason=f"theorem keys {sorted(data['theorem'])}"))
    theorem = TheoremReport(tuple((name, data["theorem"][name]) for name in THEOREM_CONDITIONS))

    index_check = index_error = gekeler = gekeler_error = None
    lemma = data.get("lemma_index")
    if lemma is not None and "error" in lemma:
        index_error = lemma["error"]
    elif lemma is not None:
        index_check = IndexCheck(int(lemma["index"]), lemma["divisible_by_c"], _ints(lemma["eigenvalues"]))
    pairing = data.get("pairing_criterion")
    if pairing is not None and "error" in pairing:
        gekeler_error = pairing["error"]
    elif pairing is not None:
        gekeler = GekelerVerdict(
            int(pairing["determinant"]),
            pairing["certified"],
            int(pairing["denominator"]),
            int(pairing["r"]),
            int(pairing["ratio"]),
            pairing["ratio_divides_determinant"],
        )
    return SubvarietyAnalysis(E, invariants, theorem, index_check, index_error, gekeler, gekeler_error)


def report_to_dict(report: AnalysisReport) -> dict[str, Any]:
    return {
        "format": ANALYSIS_REPORT_FORMAT,
        "field": {"p": str(report.field.p), "q": str(report.field.q), "w": str(report.field.w)},
        "rank": str(report.rank),
        "bound": str(report.bound),
        "principal_units": report.principal_units,
        "component_group": _group_to_dict(report.component_group),
        "subvarieties": [_analysis_to_dict(a) for a in report.subvarieties],
    }


def render_machine(report: AnalysisReport) -> str:
    check_report(report)
    return canonical_json(report_to_dict(report))


def parse_machine(text: str, source: str = "<report>") -> AnalysisReport:
    """Inverse of :func:`render_machine`; re-rendering is byte-identical."""
    data = parse_json(text, source, ANALYSIS_REPORT_SCHEMA_PATH)
    if data["format"] != ANALYSIS_REPORT_FORMAT:
        raise DocumentError(msg.ERROR_MSG_FORMAT_ID.format(got=data["format"], expected=ANALYSIS_REPORT_FORMAT))
    field_data = data["field"]
    field = LocalFieldModel(int(field_data["p"]), int(field_data["q"]), int(field_data["w"]))
    report = AnalysisReport(
        field=field,
        rank=int(data["rank"]),
        bound=int(data["bound"]),
        principal_units=data["principal_units"],
        component_group=_group_from_dict(data["component_group"]),
        subvarieties=tuple(_analysis_from_dict(entry, field) for entry in data["subvarieties"]),
    )
    check_report(report)
    return report


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def _surjectivity_line(index: int, analysis: SubvarietyAnalysis) -> str:
    inv = analysis.invariants
    label = msg.LABEL_SURJECTIVE if inv.surjective else msg.LABEL_NOT_SURJECTIVE.format(cokernel=inv.cokernel)
    return f"{msg.LABEL_SUBVARIETY} {index}: {label}"


def render_text(report: AnalysisReport) -> str:
    analyses = list(report.subvarieties)
    lines = [
        f"Field model {report.field}, rank g = {report.rank}, principal units: {report.principal_units}",
        f"Component group Phi_J = {report.component_group}",
        f"Elliptic subvarieties: {len(analyses)} ({msg.LABEL_WITHIN_BOUND.format(bound=report.bound)})",
        "",
        "Invariants",
        render_frame(invariants_frame(analyses)),
        "",
        "Equivalent conditions for surjectivity",
        render_frame(theorem_frame(analyses)),
    ]
    if any(a.index_check or a.index_error or a.gekeler or a.gekeler_error for a in analyses):
        lines += ["", "Endomorphism criteria", render_frame(criteria_frame(analyses))]
    lines += [""] + [_surjectivity_line(i, a) for i, a in enumerate(analyses)]
    return "\n".join(lines) + "\n"
