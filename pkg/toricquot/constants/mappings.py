"""Named choices accepted by documents and the command line."""

# How the principal-unit part of pairing values is read during subtorus search
PRINCIPAL_UNITS: dict[str, str] = {
    "generic": "pairing values with non-zero valuation carry independent principal units",
    "discarded": "principal units ignored; membership decided in the coarse model alone",
}
PRINCIPAL_UNITS_DEFAULT = "generic"

OUTPUT_FORMATS: tuple[str, ...] = ("text", "machine")

# Document format identifiers
LATTICE_DOCUMENT_FORMAT = "toricquot.lattice/1"
ANALYSIS_REPORT_FORMAT = "toricquot.report/1"

# Labels of the seven equivalent conditions, in order
THEOREM_CONDITIONS: dict[str, str] = {
    "cokernel_trivial": "coker(pi*) trivial",
    "e0_primitive": "e0 = n*e primitive in End(Lambda)",
    "c_is_one": "c = 1",
    "n_equals_r": "n = r",
    "self_pairing_is_n_ord": "<lE,lE> = n*ord(qE)",
    "m_equals_ord": "m = ord(qE)",
    "n_equals_congruence": "n = R_E",
}

CHECK_PASS = "PASS"
CHECK_FAIL = "FAIL"
