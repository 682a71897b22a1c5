"""Backend selection and matrix-free application of instances to states.

Two interchangeable backends compute ``Q @ state``:

* ``compiled`` — Cython gather/scatter loops over precomputed fiber indices
  (built at install time; absent if the toolchain was unavailable);
* ``pure-python`` — numpy reshape/transpose arithmetic.

The compiled backend is selected at import when present; setting the
``QSAT_PURE_PYTHON`` environment variable (to anything non-empty) forces the
fallback.  ``InstanceApplier`` also accepts an explicit ``backend=`` so the
two can be compared in one process.
"""

import os

import numpy as np

from . import _kernels_py
from .errors import ArgumentError, DimensionMismatchError
from .instance import GeneralTerm, QsatInstance, RankOneTerm

try:
    from . import _kernels as _compiled
except ImportError:  # building the extension is optional
    _compiled = None

_FORCE_PURE = bool(os.environ.get("QSAT_PURE_PYTHON"))


def compiled_available() -> bool:
    return _compiled is not None


def backend_name() -> str:
    """The backend InstanceApplier uses by default."""
    if _compiled is not None and not _FORCE_PURE:
        return "compiled"
    return "pure-python"


def fiber_layout(num_qubits, support):
    """Index arrays driving the gather/scatter kernels.

    Returns ``(bases, offsets)``: ``bases`` holds the global index of the
    first fiber element for every configuration of the non-support qubits,
    ``offsets`` the index displacement of each of the 2^k fiber amplitudes
    (big-endian over the support order).
    """
    n = num_qubits
    k = len(support)
    amp = np.arange(1 << k, dtype=np.int64)
    offsets = np.zeros(1 << k, dtype=np.int64)
    for j, q in enumerate(support):
        offsets |= ((amp >> (k - 1 - j)) & 1) << (n - 1 - q)
    rest = [q for q in range(n) if q not in set(support)]
    cfg = np.arange(1 << len(rest), dtype=np.int64)
    bases = np.zeros(1 << len(rest), dtype=np.int64)
    for j, q in enumerate(rest):
        bases |= ((cfg >> (len(rest) - 1 - j)) & 1) << (n - 1 - q)
    return bases, offsets


class InstanceApplier:
    """Callable computing ``Q @ state`` for a fixed instance.

    Per-term index plans are computed once at construction, so repeated
    applications (Krylov iterations) pay only the arithmetic.  Batched
    states (shape ``(dim, batch)``) are handled by the pure backend.
    """

    def __init__(self, instance: QsatInstance, backend: str = "auto"):
        if backend == "auto":
            backend = backend_name()
        elif backend == "compiled" and _compiled is None:
            raise ArgumentError("compiled kernels are not available in this build")
        elif backend not in ("compiled", "pure-python"):
            raise ArgumentError(f"unknown backend {backend!r}")
        self.backend = backend
        self.num_qubits = instance.num_qubits
        self.dim = 1 << instance.num_qubits
        self._plans = []
        for term in instance.terms:
            if isinstance(term, RankOneTerm):
                payload, rank_one = np.array(term.amplitudes), True
            elif isinstance(term, GeneralTerm):
                payload, rank_one = np.array(term.matrix), False
            else:
                raise ArgumentError(f"unsupported term type {type(term).__name__}")
            if self.backend == "compiled":
                bases, offsets = fiber_layout(self.num_qubits, term.support)
                self._plans.append((rank_one, term.support, payload, bases, offsets))
            else:
                self._plans.append((rank_one, term.support, payload, None, None))

    def __call__(self, state, out=None):
        state = np.asarray(state)
        if state.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"state has leading dimension {state.shape[0]}, expected {self.dim}"
            )
        batched = state.ndim > 1
        if self.backend == "compiled" and not batched:
            # typed memoryviews need contiguous, writable complex buffers
            if (state.dtype != np.complex128 or not state.flags.c_contiguous
                    or not state.flags.writeable):
                state = np.array(state, dtype=np.complex128, order="C")
        elif state.dtype != np.complex128:
            state = state.astype(np.complex128)
        if out is None:
            out = np.zeros_like(state)
        else:
            out[...] = 0
        for rank_one, support, payload, bases, offsets in self._plans:
            if self.backend == "compiled" and not batched:
                if rank_one:
                    _compiled.apply_rank_one(out, state, bases, offsets, payload)
                else:
                    _compiled.apply_general(out, state, bases, offsets, payload)
            elif rank_one:
                _kernels_py.apply_rank_one(out, state, self.num_qubits, support, payload)
            else:
                _kernels_py.apply_general(out, state, self.num_qubits, support, payload)
        return out


def apply_instance(instance, state, out=None, backend="auto"):
    """One-shot ``Q @ state``; build an InstanceApplier for repeated use."""
    return InstanceApplier(instance, backend=backend)(state, out=out)


def expectation(instance, state, backend="auto"):
    """<state| Q |state> as a real number (state need not be normalized)."""
    state = np.asarray(state, dtype=np.complex128)
    return float(np.vdot(state, apply_instance(instance, state, backend=backend)).real)
