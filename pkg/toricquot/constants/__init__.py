"""Constants package - re-exports all constants."""

# Limits
from .limits import (
    DEFAULT_SEED,
    SELFTEST_COUNT_DEFAULT,
    SELFTEST_COUNT_MIN,
    SELFTEST_BOUND,
    SELFTEST_MAX_RANK,
    SELFTEST_MAX_VALUATION,
    SELFTEST_TORSION_ORDERS,
    BOUND_ENV_VAR,
    BOUND_MIN,
    ORACLE_DET_LIMIT,
    ORACLE_ORD_LIMIT,
    WEIL_LEVEL_MIN,
    WEIL_LEVEL_MAX,
    GENUS_TWO_PRIME_DEFAULT,
    GLUE_GRID_VALUATIONS,
    GLUE_GRID_LEVELS,
    GLUE_GRID_TORSION_ORDERS,
)

# Mappings
from .mappings import (
    PRINCIPAL_UNITS,
    PRINCIPAL_UNITS_DEFAULT,
    OUTPUT_FORMATS,
    LATTICE_DOCUMENT_FORMAT,
    ANALYSIS_REPORT_FORMAT,
    THEOREM_CONDITIONS,
    CHECK_PASS,
    CHECK_FAIL,
)

# Paths
from .paths import (
    SCHEMA_DIR,
    LATTICE_DOCUMENT_SCHEMA_PATH,
    ANALYSIS_REPORT_SCHEMA_PATH,
)

__all__ = [
    # Limits
    "DEFAULT_SEED",
    "SELFTEST_COUNT_DEFAULT",
    "SELFTEST_COUNT_MIN",
    "SELFTEST_BOUND",
    "SELFTEST_MAX_RANK",
    "SELFTEST_MAX_VALUATION",
    "SELFTEST_TORSION_ORDERS",
    "BOUND_ENV_VAR",
    "BOUND_MIN",
    "ORACLE_DET_LIMIT",
    "ORACLE_ORD_LIMIT",
    "WEIL_LEVEL_MIN",
    "WEIL_LEVEL_MAX",
    "GENUS_TWO_PRIME_DEFAULT",
    "GLUE_GRID_VALUATIONS",
    "GLUE_GRID_LEVELS",
    "GLUE_GRID_TORSION_ORDERS",

    # Mappings
    "PRINCIPAL_UNITS",
    "PRINCIPAL_UNITS_DEFAULT",
    "OUTPUT_FORMATS",
    "LATTICE_DOCUMENT_FORMAT",
    "ANALYSIS_REPORT_FORMAT",
    "THEOREM_CONDITIONS",
    "CHECK_PASS",
    "CHECK_FAIL",

    # Paths
    "SCHEMA_DIR",
    "LATTICE_DOCUMENT_SCHEMA_PATH",
    "ANALYSIS_REPORT_SCHEMA_PATH",
]
