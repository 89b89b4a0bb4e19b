"""Settings for wedgeops.

Plain module-level constants. Library functions read their default tolerances from here;
tests and the CLI override them by passing explicit keyword arguments.
"""
import os

# Exact-arithmetic identities (coefficient sums, permutations).
EXACT_TOL = 1e-12

# Identities mediated by determinants or SVDs.
DET_TOL = 1e-10

# Sampled norms and quadrature.
QUADRATURE_TOL = 1e-8
QUADRATURE_POINTS = 4096

# Singular values below NULLSPACE_RTOL * sigma_max count as zero.
NULLSPACE_RTOL = 1e-10

MAX_GRADE = 8
MAX_TENSOR_ENTRIES = 10**6

# Largest symbol degree the dense creation and Poc matrices are built for.
MAX_SYMBOL_DEGREE = 512

# Largest d**p for which the suite builds a dense antisymmetrizer matrix.
ORACLE_MAX_ENTRIES = 1000

# K >= SAMPLE_FACTOR * (kmax - kmin + 1) for sampled L1 / Linf norms.
SAMPLE_FACTOR = 8

PLS_SAMPLES = 32
UNIT_CIRCLE_TOL = 1e-12

try:
    DEFAULT_SEED = int(os.environ.get("WEDGEOPS_SEED", "0"))
except ValueError:
    # The CLI re-reads the variable through click and exits 2 on garbage.
    DEFAULT_SEED = 0
