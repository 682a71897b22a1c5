"""Size limits and numerical tolerances shared across the library."""

import os

DEFAULT_MAX_QUBITS = 20

# Largest instance solved by dense eigendecomposition (16384 x 16384 at 14
# qubits); beyond this the matrix-free Krylov path takes over.
DENSE_CUTOFF = 14

# decide_sat double-checks its verdict against the null-space oracle below
# this size; the check needs a 2^n x 2^n working basis, so it stops well
# before DENSE_CUTOFF.
NULLSPACE_CROSSCHECK_CUTOFF = 10

NORM_TOL = 1e-10          # | ||amplitudes|| - 1 |
HERMITICITY_TOL = 1e-12   # entrywise, projector matrices
IDEMPOTENCY_TOL = 1e-10   # entrywise, M^2 - M
SINGULAR_VALUE_TOL = 1e-10  # singular values below this count as zero
SCHMIDT_TOL = 1e-12       # Schmidt weights below this are dropped
RESIDUAL_TOL = 1e-8       # ||Q v - lambda0 v||
UNSAT_FLOOR = 1e-6
SAT_TOL_UNIT = 1e-9       # scaled by max(1, term count)

DOMINANCE_TOL = 1e-9      # slack allowed when checking A - B >= 0
GADGET_SAT_TOL = 1e-9     # gadget must be satisfiable with the dummy at |0>
GADGET_PENALTY_TOL = 1e-9  # slack on the dummy-at-|1> penalty floor
REDUCTION_ENERGY_TOL = 1e-8  # |E' - E| (or the E' >= c_k slack) in verification
Z_COMMUTATION_TOL = 1e-12  # residual amplitude mass off the dominant dummy slice

# Matrix-free minimum-eigenvalue iteration (implicitly restarted Lanczos on
# the reflected operator m*I - Q, so the target becomes the top eigenvalue).
KRYLOV_TOL = 1e-10        # relative convergence tolerance
KRYLOV_NCV = 64           # Lanczos basis size (clipped to the space dimension)
KRYLOV_SEED = 0x6A09E667  # fixed start-vector seed: deterministic iterations


def max_qubits() -> int:
    """Global qubit ceiling; the QSAT_MAX_QUBITS env var overrides it."""
    value = os.environ.get("QSAT_MAX_QUBITS")
    return int(value) if value else DEFAULT_MAX_QUBITS
