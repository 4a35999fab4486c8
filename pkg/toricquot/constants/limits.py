"""Numeric limits and defaults."""

# Seeding
DEFAULT_SEED = 20240613

# Self-test
SELFTEST_COUNT_DEFAULT = 200
SELFTEST_COUNT_MIN = 1
SELFTEST_BOUND = 2  # enumeration bound used on random instances
SELFTEST_MAX_RANK = 3
SELFTEST_MAX_VALUATION = 4
SELFTEST_TORSION_ORDERS = (1, 2, 4, 6, 12)

# Subtorus enumeration
BOUND_ENV_VAR = "TORICQUOT_BOUND"
BOUND_MIN = 1

# Oracles (brute-force enumeration is only attempted below these sizes)
ORACLE_DET_LIMIT = 200
ORACLE_ORD_LIMIT = 20

# Weil pairing / anti-isometry test range
WEIL_LEVEL_MIN = 2
WEIL_LEVEL_MAX = 12

# Worked genus-two example
GENUS_TWO_PRIME_DEFAULT = 5

# Glued-lattice parameter grid
GLUE_GRID_VALUATIONS = (1, 2, 3, 4)
GLUE_GRID_LEVELS = (1, 2, 3, 4, 5, 6)
GLUE_GRID_TORSION_ORDERS = (2, 4, 6, 12)
