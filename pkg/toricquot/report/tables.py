"""Tables for the human-readable report."""

from __future__ import annotations

import pandas as pd
from pandas import DataFrame

from toricquot.constants import CHECK_FAIL, CHECK_PASS, THEOREM_CONDITIONS
from toricquot.constants import messages as msg
from toricquot.optimal_quotient import SubvarietyAnalysis


def _vector(values) -> str:
    return "(" + ", ".join(str(x) for x in values) + ")"


def format_df_labels(
    df: DataFrame,
    column_label: str = "Info",
    labels_structure: dict[int, str] | list[str] | None = None,
) -> DataFrame:
    """Insert a left-most label column.

    Rows without an entry in *labels_structure* are named
    ``"Subvariety {i}"`` when the frame has several rows and ``"---"``
    otherwise.
    """
    df.insert(0, column_label, "")
    n_rows = df.shape[0]
    if isinstance(labels_structure, list):
        labels_map = dict(enumerate(labels_structure))
    else:
        labels_map = dict(labels_structure or {})

    for idx, label in labels_map.items():
        if 0 <= idx < n_rows:
            df.at[idx, column_label] = str(label)
    for i in range(n_rows):
        if df.at[i, column_label] == "":
            df.at[i, column_label] = f"{msg.LABEL_SUBVARIETY} {i}" if n_rows > 1 else "---"
    return df


def invariants_frame(analyses: list[SubvarietyAnalysis]) -> DataFrame:
    rows = []
    for analysis in analyses:
        E, inv = analysis.subvariety, analysis.invariants
        rows.append(
            {
                "beta": _vector(E.cocharacter),
                "lambda_E": _vector(E.lambda_E),
                "q_E": str(E.q_E),
                "c": inv.c,
                "m": inv.m,
                "n": inv.n,
                "r": inv.r,
                "R_E": inv.R_E,
                "ord(q_E)": inv.ord_qE,
                "<lE,lE>": inv.self_pairing,
                "coker": str(inv.cokernel),
            }
        )
    return format_df_labels(pd.DataFrame(rows), labels_structure=None)


def theorem_frame(analyses: list[SubvarietyAnalysis]) -> DataFrame:
    """One row per condition, one column per subvariety."""
    data = {
        f"{msg.LABEL_SUBVARIETY} {i}": [
            CHECK_PASS if value else CHECK_FAIL for _, value in analysis.theorem.conditions
        ]
        for i, analysis in enumerate(analyses)
    }
    df = pd.DataFrame(data)
    return format_df_labels(df, column_label="Condition", labels_structure=list(THEOREM_CONDITIONS.values()))


def criteria_frame(analyses: list[SubvarietyAnalysis]) -> DataFrame:
    rows = []
    for analysis in analyses:
        if analysis.index_check is not None:
            index = f"{analysis.index_check.index} (c divides: {analysis.index_check.divisible_by_c})"
        else:
            index = analysis.index_error or "-"
        if analysis.gekeler is not None:
            pairing = f"{analysis.gekeler.verdict}, det = {analysis.gekeler.determinant}"
        else:
            pairing = analysis.gekeler_error or "-"
        rows.append({"[perp : I_E]": index, "perfect pairing": pairing})
    return format_df_labels(pd.DataFrame(rows))


def render_frame(df: DataFrame) -> str:
    if df.empty:
        return "(none)"
    return df.to_string(index=False)
