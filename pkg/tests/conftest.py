"""Shared fixtures and an independent matrix-embedding oracle.

The helpers here deliberately avoid the package's own application kernels
and assembly routines: terms are embedded by explicit per-index bit
manipulation and a Kronecker product, so that agreement between the
package and these helpers is a meaningful cross-check rather than a
tautology.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

import qsatkit as qk


def embed_matrix(num_qubits: int, support, matrix: np.ndarray) -> np.ndarray:
    """Embed ``matrix`` acting on ``support`` into the full register.

    Built as ``kron(matrix, identity)`` followed by an explicit index
    relabelling computed bit by bit, independent of the package's
    gather/scatter kernels.
    """
    support = tuple(support)
    k = len(support)
    rest = [q for q in range(num_qubits) if q not in support]
    dim = 1 << num_qubits
    grouped = np.empty(dim, dtype=np.int64)
    for i in range(dim):
        g = 0
        for q in support:
            g = (g << 1) | ((i >> (num_qubits - 1 - q)) & 1)
        for q in rest:
            g = (g << 1) | ((i >> (num_qubits - 1 - q)) & 1)
        grouped[i] = g
    full = np.kron(np.asarray(matrix, dtype=np.complex128), np.eye(1 << len(rest)))
    return full[np.ix_(grouped, grouped)]


def oracle_matrix(instance: qk.QsatInstance) -> np.ndarray:
    """Assemble the full operator of ``instance`` via ``embed_matrix``."""
    dim = 1 << instance.num_qubits
    total = np.zeros((dim, dim), dtype=np.complex128)
    for term in instance.terms:
        total += embed_matrix(instance.num_qubits, term.support, _term_matrix(term))
    return total


def _term_matrix(term) -> np.ndarray:
    if isinstance(term, qk.RankOneTerm):
        return np.outer(term.amplitudes, term.amplitudes.conj())
    return np.asarray(term.matrix)


def oracle_lambda0(instance: qk.QsatInstance) -> float:
    """Smallest eigenvalue of the assembled operator, straight eigvalsh."""
    if not instance.terms:
        return 0.0
    return float(np.linalg.eigvalsh(oracle_matrix(instance))[0])


def near_identity_pair() -> qk.QsatInstance:
    """Two almost-parallel single-qubit projectors: lambda0 = 5e-7.

    The gap between the satisfiable tolerance (2e-9 for two terms) and the
    unsatisfiable floor (1e-6) brackets this value, so the verdict must be
    indeterminate.
    """
    c = 1.0 - 5e-7
    s = math.sqrt(1.0 - c * c)
    return qk.QsatInstance(
        1,
        [qk.basis_term((0,), "0"), qk.RankOneTerm((0,), [c, s])],
    )


def random_supports(rng: np.random.Generator, num_qubits: int, num_terms: int, k: int):
    """Draw ``num_terms`` supports of size ``k`` over ``num_qubits`` qubits."""
    return [
        tuple(int(q) for q in rng.choice(num_qubits, size=k, replace=False))
        for _ in range(num_terms)
    ]


def random_instance(
    rng: np.random.Generator,
    num_qubits: int,
    num_terms: int,
    k: int = 2,
    promise_gap: float = 1.0,
) -> qk.QsatInstance:
    """Random rank-one instance with Haar amplitudes and random supports."""
    terms = [
        qk.haar_random_term(support, rng)
        for support in random_supports(rng, num_qubits, num_terms, k)
    ]
    return qk.QsatInstance(num_qubits, terms, promise_gap=promise_gap)


@pytest.fixture(scope="session")
def figure_a() -> qk.QsatInstance:
    return qk.builtin_instance("figure-a")


@pytest.fixture(scope="session")
def figure_b() -> qk.QsatInstance:
    return qk.builtin_instance("figure-b")


@pytest.fixture(scope="session")
def figure_b_core(figure_b) -> qk.MinimalCore:
    return qk.extract_minimal_core(figure_b)


@pytest.fixture(scope="session")
def builtin_gadget(figure_b_core) -> qk.EnforcingGadget:
    return qk.build_enforcing_gadget(figure_b_core)
