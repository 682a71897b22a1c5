"""Ground energies, null-space intersection, and satisfiability verdicts.

Two independent solver routes back every claim in the library:

* a dense route — the full 2^n x 2^n operator is materialized by index
  arithmetic and passed to a Hermitian eigensolver (lowest eigenpair only);
* a matrix-free Krylov route — an implicitly restarted Lanczos iteration
  (with deflation of converged Ritz pairs) on the reflected operator
  ``m*I - Q``, whose top eigenvalue maps back to the ground energy.

A third mechanism, singular-value-based null-space intersection, decides
satisfiability without any eigensolve and is used to cross-check verdicts
on small instances.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from . import _kernels_py, config, kernels
from .errors import (
    ArgumentError,
    CapacityError,
    ConvergenceError,
    DimensionMismatchError,
)
from .instance import GeneralTerm, QsatInstance, RankOneTerm, require_valid

SATISFIABLE = "satisfiable"
UNSATISFIABLE = "unsatisfiable"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SpectralResult:
    """Ground energy, its per-term normalization, and solve diagnostics."""

    lambda0: float
    e0: float
    ground_vector: np.ndarray
    method: str  # "dense" or "krylov"
    residual: float


@dataclass(frozen=True)
class SatVerdict:
    tag: str  # SATISFIABLE | UNSATISFIABLE | INDETERMINATE
    lambda0: float
    nullspace_dim: int | None = None


def sat_tolerance(num_terms: int) -> float:
    """Energy below which an instance counts as satisfiable."""
    return config.SAT_TOL_UNIT * max(1, num_terms)


def assemble_dense(instance: QsatInstance) -> np.ndarray:
    """The full 2^n x 2^n operator, built by embedding each term's matrix.

    Embedding works by ranking every global basis index by its (non-support
    bits, support bits) pair; sorting those ranks groups the indices of each
    fiber, and one fancy-indexed addition per term scatters the term matrix
    onto all fibers at once.
    """
    require_valid(instance)
    n = instance.num_qubits
    if n > config.DENSE_CUTOFF:
        raise CapacityError(
            f"dense assembly is limited to {config.DENSE_CUTOFF} qubits, got {n}"
        )
    dim = 1 << n
    q = np.zeros((dim, dim), dtype=np.complex128)
    idx = np.arange(dim, dtype=np.int64)
    for term in instance.terms:
        k = len(term.support)
        fiber = np.zeros(dim, dtype=np.int64)
        for j, s in enumerate(term.support):
            fiber |= ((idx >> (n - 1 - s)) & 1) << (k - 1 - j)
        rest_qubits = [s for s in range(n) if s not in set(term.support)]
        rest = np.zeros(dim, dtype=np.int64)
        for j, s in enumerate(rest_qubits):
            rest |= ((idx >> (n - 1 - s)) & 1) << (len(rest_qubits) - 1 - j)
        order = np.argsort((rest << k) | fiber).reshape(-1, 1 << k)
        q[order[:, :, None], order[:, None, :]] += term.dense()
    return q


def assemble(instance: QsatInstance):
    """The instance operator: a dense array when small enough, otherwise a
    matrix-free linear operator applying the embedded terms."""
    require_valid(instance)
    n = instance.num_qubits
    if n > config.max_qubits():
        raise CapacityError(f"instance has {n} qubits; the ceiling is {config.max_qubits()}")
    if n <= config.DENSE_CUTOFF:
        return assemble_dense(instance)
    applier = kernels.InstanceApplier(instance)
    dim = 1 << n
    return scipy.sparse.linalg.LinearOperator(
        shape=(dim, dim), matvec=applier, dtype=np.complex128
    )


def _start_vector(dim: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=config.KRYLOV_SEED))
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _dense_ground_pair(instance):
    qmat = assemble_dense(instance)
    vals, vecs = scipy.linalg.eigh(qmat, subset_by_index=[0, 0])
    vec = vecs[:, 0]
    residual = float(np.linalg.norm(qmat @ vec - vals[0] * vec))
    return float(vals[0]), vec, residual


def _krylov_ground_pair(instance):
    n = instance.num_qubits
    dim = 1 << n
    m = instance.num_terms
    applier = kernels.InstanceApplier(instance)
    if dim <= 2:
        # ARPACK requires k < dim - 1, so a 2-dimensional problem cannot be
        # iterated; materialize the operator through the applier instead.
        qmat = applier(np.eye(dim, dtype=np.complex128))
        vals, vecs = scipy.linalg.eigh(qmat)
        vec = vecs[:, 0]
        residual = float(np.linalg.norm(applier(vec) - vals[0] * vec))
        return float(vals[0]), vec, residual
    shift = float(m)
    op = scipy.sparse.linalg.LinearOperator(
        shape=(dim, dim),
        matvec=lambda x: shift * x - applier(x),
        dtype=np.complex128,
    )
    ncv = min(dim, max(config.KRYLOV_NCV, 4))
    try:
        vals, vecs = scipy.sparse.linalg.eigsh(
            op,
            k=1,
            which="LA",
            ncv=ncv,
            tol=config.KRYLOV_TOL,
            v0=_start_vector(dim),
        )
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        best_lambda0 = best_vector = None
        if getattr(exc, "eigenvalues", None) is not None and len(exc.eigenvalues):
            best_lambda0 = float(shift - exc.eigenvalues[-1])
            best_vector = exc.eigenvectors[:, -1]
        raise ConvergenceError(
            f"Lanczos iteration did not converge: {exc}",
            best_lambda0=best_lambda0,
            best_vector=best_vector,
        ) from exc
    except ValueError as exc:
        raise ArgumentError(
            f"matrix-free path rejected a {dim}-dimensional problem: {exc}"
        ) from exc
    vec = vecs[:, 0]
    vec = vec / np.linalg.norm(vec)
    lam = float(shift - vals[0])
    residual = float(np.linalg.norm(applier(vec) - lam * vec))
    return lam, vec, residual


def ground_energy(instance: QsatInstance, method: str = "auto") -> SpectralResult:
    """The minimum eigenvalue of the instance operator with its eigenvector.

    ``method``: "auto" picks dense up to the dense cutoff and the Krylov
    iteration beyond; "dense"/"krylov" force a route.  Instances with no
    terms short-circuit to energy 0 on the all-zeros basis state.
    """
    require_valid(instance)
    n = instance.num_qubits
    if n > config.max_qubits():
        raise CapacityError(f"instance has {n} qubits; the ceiling is {config.max_qubits()}")
    if method not in ("auto", "dense", "krylov"):
        raise ArgumentError(f"unknown method {method!r}")
    m = instance.num_terms
    if m == 0:
        vec = np.zeros(1 << n, dtype=np.complex128)
        vec[0] = 1.0
        return SpectralResult(0.0, 0.0, vec, "dense", 0.0)
    if method == "auto":
        method = "dense" if n <= config.DENSE_CUTOFF else "krylov"
    if method == "dense":
        lam, vec, residual = _dense_ground_pair(instance)
    else:
        lam, vec, residual = _krylov_ground_pair(instance)
    if residual > config.RESIDUAL_TOL:
        raise ConvergenceError(
            f"ground-state residual {residual:.3e} exceeds {config.RESIDUAL_TOL:.1e}",
            best_lambda0=lam,
            best_vector=vec,
        )
    return SpectralResult(lam, lam / m, vec, method, residual)


def full_spectrum(instance: QsatInstance) -> np.ndarray:
    """All 2^n eigenvalues, ascending (dense sizes only)."""
    return np.linalg.eigvalsh(assemble_dense(instance))


def common_nullspace_dim(instance: QsatInstance) -> int:
    """Dimension of the intersection of the terms' null spaces.

    Starting from the full space, each term's action on the current basis is
    factored by singular values; directions with singular value above the
    zero threshold are cut, and the basis is re-orthonormalized.  No
    eigensolver is involved, which makes this an independent check on
    ground_energy.
    """
    require_valid(instance)
    n = instance.num_qubits
    if n > config.DENSE_CUTOFF:
        raise CapacityError(
            f"null-space intersection is limited to {config.DENSE_CUTOFF} qubits; "
            "use ground_energy for larger instances"
        )
    dim = 1 << n
    basis = np.eye(dim, dtype=np.complex128)
    for term in instance.terms:
        if basis.shape[1] == 0:
            break
        image = np.zeros_like(basis)
        if isinstance(term, RankOneTerm):
            _kernels_py.apply_rank_one(
                image, basis, n, term.support, np.asarray(term.amplitudes)
            )
        else:
            _kernels_py.apply_general(
                image, basis, n, term.support, np.asarray(term.matrix)
            )
        _, sing, vh = np.linalg.svd(image, full_matrices=True)
        width = basis.shape[1]
        keep = [
            i for i in range(width)
            if i >= len(sing) or sing[i] <= config.SINGULAR_VALUE_TOL
        ]
        basis = basis @ vh[keep].conj().T
        if basis.shape[1]:
            basis, _ = np.linalg.qr(basis)
    return basis.shape[1]


def decide_sat(instance: QsatInstance, method: str = "auto") -> SatVerdict:
    """Three-way verdict from the ground energy, with an explicit
    indeterminate band between the satisfiable and unsatisfiable thresholds.

    On small instances the verdict is cross-checked against the null-space
    oracle; any disagreement downgrades it to indeterminate rather than
    guessing.
    """
    require_valid(instance)
    result = ground_energy(instance, method=method)
    lam = result.lambda0
    if lam <= sat_tolerance(instance.num_terms):
        tag = SATISFIABLE
    elif lam >= config.UNSAT_FLOOR:
        tag = UNSATISFIABLE
    else:
        tag = INDETERMINATE
    nullspace_dim = None
    if instance.num_qubits <= config.NULLSPACE_CROSSCHECK_CUTOFF:
        nullspace_dim = common_nullspace_dim(instance)
        if tag == SATISFIABLE and nullspace_dim == 0:
            tag = INDETERMINATE
        elif tag == UNSATISFIABLE and nullspace_dim > 0:
            tag = INDETERMINATE
    return SatVerdict(tag, lam, nullspace_dim)


def _as_matrix(operand) -> np.ndarray:
    if isinstance(operand, np.ndarray):
        return operand
    if isinstance(operand, (RankOneTerm, GeneralTerm)):
        return operand.dense()
    if isinstance(operand, QsatInstance):
        return assemble_dense(operand)
    raise ArgumentError(
        f"cannot interpret {type(operand).__name__} as an operator"
    )


def smallest_eigenvalue(matrix: np.ndarray) -> float:
    if matrix.shape[0] <= 512:
        return float(np.linalg.eigvalsh(matrix)[0])
    return float(
        scipy.linalg.eigh(matrix, eigvals_only=True, subset_by_index=[0, 0])[0]
    )


def operator_dominates(a, b, tol: float = config.DOMINANCE_TOL) -> bool:
    """True iff A - B is positive semidefinite up to ``tol``.

    Operands may be instances (assembled densely), single terms (their fiber
    matrices), or explicit arrays; both must share a dimension.
    """
    ma = _as_matrix(a)
    mb = _as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatchError(
            f"operands have shapes {ma.shape} and {mb.shape}"
        )
    return bool(smallest_eigenvalue(ma - mb) >= -tol)


def restricted_ground_energy(instance: QsatInstance, fixed) -> float:
    """Ground energy over basis states with the given qubits pinned.

    ``fixed`` maps qubit index -> bit value; the operator is assembled
    densely and restricted to the matching principal submatrix.
    """
    require_valid(instance)
    n = instance.num_qubits
    qmat = assemble_dense(instance)
    idx = np.arange(1 << n)
    mask = np.ones(1 << n, dtype=bool)
    for qubit, bit in fixed.items():
        if not 0 <= qubit < n:
            raise ArgumentError(f"qubit {qubit} out of range for {n} qubits")
        if bit not in (0, 1):
            raise ArgumentError(f"bit value for qubit {qubit} must be 0 or 1")
        mask &= ((idx >> (n - 1 - qubit)) & 1) == bit
    sel = np.flatnonzero(mask)
    sub = qmat[np.ix_(sel, sel)]
    return smallest_eigenvalue(sub)
