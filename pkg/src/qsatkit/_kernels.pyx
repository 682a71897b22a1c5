# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled gather/scatter kernels for applying k-local projector terms.

The caller precomputes, per term, the base index of every non-support
configuration (``bases``) and the index offset of every fiber amplitude
(``offsets``); the loops here walk each fiber once, so one application costs
O(2^n * 2^k / 2^k * work-per-fiber) = O(2^n) for rank-1 terms.
"""

import numpy as np


def apply_rank_one(double complex[::1] out, double complex[::1] state,
                   long long[::1] bases, long long[::1] offsets,
                   double complex[::1] amps):
    """out += (|v><v| (x) identity) @ state over the precomputed fibers."""
    cdef Py_ssize_t num_bases = bases.shape[0]
    cdef Py_ssize_t fiber_dim = offsets.shape[0]
    cdef Py_ssize_t ib, a
    cdef long long base
    cdef double complex acc
    with nogil:
        for ib in range(num_bases):
            base = bases[ib]
            acc = 0
            for a in range(fiber_dim):
                acc = acc + amps[a].conjugate() * state[base + offsets[a]]
            for a in range(fiber_dim):
                out[base + offsets[a]] = out[base + offsets[a]] + acc * amps[a]


def apply_general(double complex[::1] out, double complex[::1] state,
                  long long[::1] bases, long long[::1] offsets,
                  double complex[:, ::1] matrix):
    """out += (M (x) identity) @ state over the precomputed fibers."""
    cdef Py_ssize_t num_bases = bases.shape[0]
    cdef Py_ssize_t fiber_dim = offsets.shape[0]
    cdef Py_ssize_t ib, row, col
    cdef long long base
    cdef double complex acc
    with nogil:
        for ib in range(num_bases):
            base = bases[ib]
            for row in range(fiber_dim):
                acc = 0
                for col in range(fiber_dim):
                    acc = acc + matrix[row, col] * state[base + offsets[col]]
                out[base + offsets[row]] = out[base + offsets[row]] + acc
