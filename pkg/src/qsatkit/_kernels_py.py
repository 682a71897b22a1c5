"""Pure-numpy term-application kernels (the fallback backend).

Each function adds the action of one k-local projector, extended by identity
on the remaining qubits, into ``out``.  States may carry a trailing batch
axis: shape ``(2**num_qubits,)`` or ``(2**num_qubits, batch)``.

The implementation reshapes the state into an n-axis tensor and moves the
support axes to the front, which keeps it independent of the compiled
gather/scatter kernels and of the dense assembly path.
"""

import numpy as np


def apply_rank_one(out, state, num_qubits, support, amplitudes):
    """out += (|v><v| on support (x) identity) @ state, in place."""
    k = len(support)
    tail = state.shape[1:]
    src = np.moveaxis(state.reshape((2,) * num_qubits + tail), support, range(k))
    fiber = src.reshape(1 << k, -1)
    coeffs = amplitudes.conj() @ fiber
    contrib = np.outer(amplitudes, coeffs).reshape(src.shape)
    dst = np.moveaxis(out.reshape((2,) * num_qubits + tail), support, range(k))
    dst += contrib
    return out


def apply_general(out, state, num_qubits, support, matrix):
    """out += (M on support (x) identity) @ state, in place."""
    k = len(support)
    tail = state.shape[1:]
    src = np.moveaxis(state.reshape((2,) * num_qubits + tail), support, range(k))
    fiber = src.reshape(1 << k, -1)
    contrib = (matrix @ fiber).reshape(src.shape)
    dst = np.moveaxis(out.reshape((2,) * num_qubits + tail), support, range(k))
    dst += contrib
    return out
