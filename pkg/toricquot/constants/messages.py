"""Error messages, diagnostics and labels."""

from .limits import BOUND_ENV_VAR, BOUND_MIN, SELFTEST_COUNT_MIN

# lattice_algebra
ERROR_MSG_RANK_DEFICIENCY: str = "rank deficiency: {rank} independent columns out of {cols}"
ERROR_MSG_INFINITE_INDEX: str = "infinite index: sublattice has rank {sub_rank}, lattice has rank {rank}"
ERROR_MSG_NOT_SUBLATTICE: str = "column {column} of the sublattice is not in the span of the lattice"
ERROR_MSG_SHAPE: str = "shape mismatch: expected {expected}, got {got}"
ERROR_MSG_SINGULAR_MATRIX: str = "singular {n}x{n} matrix has no inverse"
ERROR_MSG_NOT_INTEGER: str = "matrix entries must be integers, got {value!r}"
ERROR_MSG_INVARIANT_CHAIN: str = "invariant factors must satisfy d1 | d2 | ... with every di >= 2, got {factors}"

# local_field
ERROR_MSG_NOT_PRIME: str = "residue characteristic must be prime, got {p}"
ERROR_MSG_NOT_PRIME_POWER: str = "residue size {q} is not a power of {p}"
ERROR_MSG_TORSION_ORDER: str = "torsion order w must be >= 1, got {w}"
ERROR_MSG_TORSION_EXPONENT: str = "torsion exponent {t} outside [0, {w})"
ERROR_MSG_MODEL_MISMATCH: str = "units belong to different field models: {left} and {right}"
ERROR_MSG_VALUATION_OF_ZERO: str = "valuation of zero"
ERROR_MSG_ROOT_INDEX: str = "root index c must be >= 1, got {c}"
ERROR_MSG_NOT_EMBEDDABLE: str = "cannot embed w={source} model into w={target} model"
ERROR_MSG_GENERATOR_CHANGE: str = "generator change u={u} is not a unit modulo w={w}"

# toric_lattice
ERROR_MSG_SINGULAR_VALUATIONS: str = (
    "valuation matrix is singular: trop is not injective on the generators (lattice condition)"
)
ERROR_MSG_RIEMANN_SYMMETRY: str = (
    "Riemann form symmetry H(lambda)(mu) = H(mu)(lambda) fails at ({i},{j}): {left} != {right}"
)
ERROR_MSG_RIEMANN_POSITIVITY: str = (
    "Riemann form positivity fails: Gram matrix not positive definite "
    "(leading principal minor of size {k} is {minor})"
)
ERROR_MSG_INDEX_RANGE: str = "generator index {index} outside [0, {g})"
ERROR_MSG_LENGTH_MISMATCH: str = "length mismatch: character has {chi} entries, point has {point}"
ERROR_MSG_UNIT_MODEL: str = "unknown principal-unit interpretation {units!r}; expected one of {choices}"
ERROR_MSG_NOT_PRINCIPAL: str = "polarization is not principal (|det H| = {det})"

# toric_hom
ERROR_MSG_HOM_COMPATIBILITY: str = (
    "[phi(l1), l2]_2 = [l1, phiDual(l2)]_1 fails at generator pair ({i},{j}): {left} != {right}"
)
ERROR_MSG_HOM_VALUATION: str = "valuation identity phi^T M2 = M1 phiDual fails"
ERROR_MSG_ROSATI: str = "T† ∉ End(Λ): adjoint {adjoint} is not integral"
ERROR_MSG_NOT_COMPOSABLE: str = "homomorphisms are not composable: target of the first is not the source of the second"
ERROR_MSG_NOT_DESCENDING: str = "map does not descend to component groups"

# optimal_quotient
ERROR_MSG_BOUND_ZERO: str = f"enumeration bound must be >= {BOUND_MIN}, got {{bound}}"
ERROR_MSG_BOUND_ENV: str = f"environment variable {BOUND_ENV_VAR} must be a positive integer, got {{value!r}}"
ERROR_MSG_IDENTITY: str = "identity {name} fails for cocharacter {beta}: {detail}"
ERROR_MSG_THEOREM_DISAGREEMENT: str = "equivalent conditions disagree for cocharacter {beta}: {values}"
ERROR_MSG_PROJECTION: str = "projection c*<lambda, lambda_E>/ord(q_E) = {value} is not an integer"
ERROR_MSG_NOT_COMMUTING: str = "endomorphisms {i} and {j} do not commute"
ERROR_MSG_NOT_EIGENVECTOR: str = "lambda_E is not an eigenvector of endomorphism {index}"
ERROR_MSG_ROSATI_EIGENVALUE: str = "a(T†) = {dual} differs from a(T) = {value} for endomorphism {index}"
ERROR_MSG_NOT_IN_ORTHOGONAL: str = "I_E Lambda is not contained in the orthogonal complement of lambda_E"
ERROR_MSG_IDEMPOTENT_NOT_IN_ALGEBRA: str = "e ∉ 𝕋⊗ℚ"
ERROR_MSG_EQUIVARIANCE: str = "pairing is not equivariant: (S*T, lambda) != (S, T lambda) for S={s}, T={t}, lambda={basis}"
ERROR_MSG_NOT_CLOSED: str = "product of generators {s} and {t} is not in the Z-span of the generators"
ERROR_MSG_NO_IDENTITY: str = "identity is not in the Z-span of the endomorphism generators"
ERROR_MSG_PAIRING_SHAPE: str = "pairing must be {rows}x{cols}, got {got}"

# tate_construction
ERROR_MSG_TATE_VALUATION: str = "Tate period must have positive valuation, got {v}"
ERROR_MSG_LEVEL_TORSION: str = "level c={c} does not divide w={w}"
ERROR_MSG_LEVEL_PERIOD: str = "level c={c} does not divide v(q)={v}"
ERROR_MSG_NO_CTH_ROOT: str = "period {q} has no c-th root for c={c} in the coarse model"
ERROR_MSG_TORSION_MISMATCH: str = "torsion points live on different curves or levels"
ERROR_MSG_LEVEL_TOO_SMALL: str = "anti-isometry needs c >= 2, got {c}"
ERROR_MSG_NOT_ANTI_ISOMETRY: str = "matrix {matrix} does not reverse the Weil pairing modulo {c}"
ERROR_MSG_NOT_INVERTIBLE: str = "matrix {matrix} is not invertible modulo {c}"
ERROR_MSG_ZETA_POWER: str = "zeta power k={k} must be coprime to c={c}"
ERROR_MSG_ODD_PRIME: str = "p must be an odd prime, got {p}"

# data_loader / report
ERROR_MSG_READ: str = "cannot read {path}: {reason}"
ERROR_MSG_JSON: str = "malformed JSON at line {line}, column {column}: {reason}"
ERROR_MSG_SCHEMA: str = "schema violation: {reason}"
ERROR_MSG_FORMAT_ID: str = "unsupported document format {got!r}; expected {expected!r}"

# selftest
ERROR_MSG_PROPERTY: str = "property {name} failed: {detail}"
ERROR_MSG_COUNT: str = f"instance count must be >= {SELFTEST_COUNT_MIN}, got {{count}}"

# Labels
LABEL_SUBVARIETY = "Subvariety"
LABEL_WITHIN_BOUND = "within bound B = {bound}"
LABEL_SURJECTIVE = "pi* surjective"
LABEL_NOT_SURJECTIVE = "pi* NOT surjective, cokernel {cokernel}"
