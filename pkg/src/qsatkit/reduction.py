"""Locality-raising reduction: encoding, splitting, padding, and gadgets.

The pipeline turns an instance of low-locality projectors into one of
exactly ``target_k``-local projectors with the same ground energy below a
penalty floor:

1. ``encode_qudits`` maps d-level systems onto qubit blocks;
2. ``rank_one_decompose`` splits projectors into rank-1 parts;
3. ``pad_with_dummies`` raises each term's locality by tensoring fresh
   qubits pinned to |0>;
4. a minimal unsatisfiable instance R, split once along a Schmidt
   decomposition, becomes an enforcing gadget S whose zero-energy states
   force each dummy into |0>, at penalty c_k = lambda0(R) otherwise;
5. ``build_reduction`` assembles the padded terms plus one relabeled gadget
   copy per dummy, and ``verify_reduction`` checks the construction's
   energy, commutation, and degree claims numerically.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import (
    ArgumentError,
    CapacityError,
    IndeterminateError,
    PreconditionError,
    ValidationError,
)
from .instance import (
    GeneralTerm,
    QsatInstance,
    QuditInstance,
    RankOneTerm,
    degree_profile,
    locality,
    require_valid,
)
from .spectral import (
    INDETERMINATE,
    SATISFIABLE,
    UNSATISFIABLE,
    assemble_dense,
    decide_sat,
    ground_energy,
    operator_dominates,
    restricted_ground_energy,
)

ROLE_WORK = "work"
ROLE_DUMMY = "dummy"
ROLE_ANCILLA = "ancilla"


@dataclass(frozen=True)
class CoreCertificate:
    """Solver evidence that a core is minimal: its own ground energy (above
    the unsatisfiability floor) and the energy after each single deletion
    (all at the satisfiability threshold)."""

    core_lambda0: float
    deletion_lambda0: tuple


@dataclass(frozen=True)
class MinimalCore:
    core: QsatInstance
    certificate: CoreCertificate


@dataclass(frozen=True)
class GadgetSource:
    """Which term of which core was split, and along which qubit."""

    core: MinimalCore
    term_index: int
    pivot: int


@dataclass(frozen=True)
class EnforcingGadget:
    """Instance S whose zero-energy states pin the dummy qubit to |0>.

    States with the dummy at |1> pay at least ``penalty_constant``; the
    dummy participates in exactly the split terms, so attaching S raises
    degrees by at most one.
    """

    gadget_instance: QsatInstance
    dummy_qubit: int
    ancilla_qubits: tuple
    penalty_constant: float
    source: GadgetSource


@dataclass(frozen=True)
class RoleSummary:
    role: str
    count: int
    max_degree: int


@dataclass(frozen=True)
class ReductionAccounting:
    target_k: int
    summaries: tuple  # RoleSummary per role present, in work/dummy/ancilla order


@dataclass(frozen=True)
class ReductionOutput:
    t_instance: QsatInstance
    role_map: tuple  # role string per qubit
    adjusted_gap: float
    accounting: ReductionAccounting
    penalty_constant: float
    gadget: EnforcingGadget


@dataclass(frozen=True)
class VerificationReport:
    commutation_ok: bool
    energy_ok: bool
    degree_ok: bool
    base_energy: float
    reduced_energy: float
    penalty_constant: float
    max_degree: int
    degree_bound: int

    @property
    def ok(self) -> bool:
        return self.commutation_ok and self.energy_ok and self.degree_ok


def encode_qudits(q: QuditInstance) -> QsatInstance:
    """Map each d-level system to ceil(log2 d) qubits.

    Interaction matrices are embedded on the image of the valid levels; one
    rank-1 exclusion term per invalid level per qudit keeps the two
    satisfiability questions equivalent.
    """
    d = q.dimension
    bits = max(1, math.ceil(math.log2(d)))
    if bits > 4:
        raise ArgumentError(f"qudit dimension {d} exceeds the 4-qubits-per-qudit ceiling")
    terms = []
    for support, matrix in q.terms:
        k = len(support)
        qubit_support = tuple(
            j for s in support for j in range(s * bits, (s + 1) * bits)
        )
        levels = np.array(list(np.ndindex(*(d,) * k)), dtype=np.int64).reshape(d**k, k)
        qubit_idx = levels @ (1 << (bits * np.arange(k - 1, -1, -1, dtype=np.int64)))
        dim = 1 << (bits * k)
        big = np.zeros((dim, dim), dtype=np.complex128)
        big[np.ix_(qubit_idx, qubit_idx)] = matrix
        terms.append(GeneralTerm(qubit_support, big))
    for s in range(q.num_qudits):
        block = tuple(range(s * bits, (s + 1) * bits))
        for level in range(d, 1 << bits):
            amps = np.zeros(1 << bits, dtype=np.complex128)
            amps[level] = 1.0
            terms.append(RankOneTerm(block, amps))
    return QsatInstance(q.num_qudits * bits, terms)


def rank_one_decompose(t) -> list:
    """Split a projector into rank-1 terms via its unit eigenvectors."""
    if isinstance(t, RankOneTerm):
        return [t]
    if not isinstance(t, GeneralTerm):
        raise ArgumentError(f"cannot decompose {type(t).__name__}")
    matrix = np.asarray(t.matrix)
    if np.max(np.abs(matrix - matrix.conj().T)) > config.HERMITICITY_TOL:
        raise ValidationError("matrix is not Hermitian")
    if np.max(np.abs(matrix @ matrix - matrix)) > config.IDEMPOTENCY_TOL:
        raise ValidationError("matrix is not a projector")
    vals, vecs = np.linalg.eigh(matrix)
    parts = [
        RankOneTerm(t.support, vecs[:, i])
        for i in range(len(vals))
        if vals[i] > 0.5
    ]
    total = sum((p.dense() for p in parts), np.zeros_like(matrix))
    if np.max(np.abs(total - matrix)) > config.IDEMPOTENCY_TOL:
        raise ValidationError("rank-1 parts do not reproduce the projector")
    return parts


def schmidt_weights(t: RankOneTerm, pivot: int) -> np.ndarray:
    """Squared singular values of the pivot/rest factorization (sum to 1)."""
    _, sing, _ = _schmidt_factor(t, pivot)
    return sing**2


def _schmidt_factor(t, pivot):
    if not isinstance(t, RankOneTerm):
        raise ArgumentError("only rank-1 terms have a state to factor")
    if t.k < 2:
        raise ArgumentError("a 1-local term has no bipartition to split")
    if pivot not in t.support:
        raise ArgumentError(f"pivot {pivot} not in support {t.support}")
    pos = t.support.index(pivot)
    tensor = t.amplitudes.reshape((2,) * t.k)
    flat = np.moveaxis(tensor, pos, 0).reshape(2, -1)
    return pos, *np.linalg.svd(flat, full_matrices=False)[1:]


def schmidt_split(t: RankOneTerm, pivot: int, check: bool = True) -> list:
    """Factor |psi> across pivot/rest and project onto the rest factors.

    Returns Lambda_i = |beta_i><beta_i| on support minus pivot, one per
    nonzero Schmidt weight (so one or two terms).  Their sum, extended by
    identity on the pivot, dominates the original projector; with ``check``
    set this is verified numerically.
    """
    pos, sing, vh = _schmidt_factor(t, pivot)
    rest_support = t.support[:pos] + t.support[pos + 1:]
    parts = [
        RankOneTerm(rest_support, vh[i])
        for i in range(len(sing))
        if sing[i] ** 2 > config.SCHMIDT_TOL
    ]
    if check:
        rest_positions = tuple(j for j in range(t.k) if j != pos)
        embedded = QsatInstance(
            t.k,
            [RankOneTerm(rest_positions, p.amplitudes) for p in parts],
        )
        if not operator_dominates(embedded, t.dense()):
            raise ValidationError("split terms do not dominate the original projector")
    return parts


def pad_with_dummies(t: RankOneTerm, target_k: int, fresh) -> RankOneTerm:
    """Raise a term's locality by tensoring |0> on fresh qubits."""
    if not isinstance(t, RankOneTerm):
        raise ArgumentError("padding requires a rank-1 term")
    fresh = tuple(int(f) for f in fresh)
    if len(fresh) != target_k - t.k:
        raise ArgumentError(
            f"need {target_k - t.k} fresh qubits to reach locality {target_k}, got {len(fresh)}"
        )
    if len(set(fresh)) != len(fresh) or set(fresh) & set(t.support):
        raise ArgumentError("fresh qubits must be distinct and disjoint from the support")
    if not fresh:
        return t
    pad = len(fresh)
    amps = np.zeros(1 << target_k, dtype=np.complex128)
    amps[np.arange(1 << t.k) << pad] = t.amplitudes
    return RankOneTerm(t.support + fresh, amps)


def _without(instance, index):
    terms = instance.terms[:index] + instance.terms[index + 1:]
    return QsatInstance(instance.num_qubits, terms, instance.promise_gap)


def extract_minimal_core(u: QsatInstance) -> MinimalCore:
    """Greedy deletion passes until every remaining term is load-bearing.

    Terms are dropped in input order whenever their removal leaves the
    instance unsatisfiable; passes repeat until one removes nothing.  The
    returned certificate re-derives all the solver verdicts the result
    depends on.
    """
    require_valid(u)
    verdict = decide_sat(u)
    if verdict.tag == SATISFIABLE:
        raise PreconditionError("instance is satisfiable; it has no unsatisfiable core")
    if verdict.tag == INDETERMINATE:
        raise IndeterminateError(
            f"cannot certify unsatisfiability at lambda0 = {verdict.lambda0!r}"
        )
    current = u
    changed = True
    while changed:
        changed = False
        i = 0
        while i < current.num_terms:
            candidate = _without(current, i)
            v = decide_sat(candidate)
            if v.tag == UNSATISFIABLE:
                current = candidate
                changed = True
            elif v.tag == SATISFIABLE:
                i += 1
            else:
                raise IndeterminateError(
                    f"deletion test landed in the indeterminate band at lambda0 = {v.lambda0!r}"
                )
    core_lambda0 = ground_energy(current).lambda0
    deletions = tuple(
        ground_energy(_without(current, i)).lambda0 for i in range(current.num_terms)
    )
    return MinimalCore(current, CoreCertificate(core_lambda0, deletions))


def build_enforcing_gadget(
    r: MinimalCore,
    lambda_index: int | None = None,
    pivot: int | None = None,
    dummy: int | None = None,
) -> EnforcingGadget:
    """Replace one term of the core by its Schmidt parts tensored with
    |1><1| on a fresh dummy qubit.

    The result S is satisfiable exactly on states with the dummy at |0>;
    with the dummy at |1> every state pays at least c_k, the core's ground
    energy.  Both facts, the dummy's degree, and the degree increase are
    verified numerically on construction.
    """
    core = r.core
    if lambda_index is None:
        lambda_index = next(
            (
                i
                for i, t in enumerate(core.terms)
                if t.k >= 2 and isinstance(t, RankOneTerm)
            ),
            None,
        )
        if lambda_index is None:
            raise ArgumentError("core has no multi-qubit rank-1 term to split")
    if not 0 <= lambda_index < core.num_terms:
        raise ArgumentError(f"term index {lambda_index} out of range")
    chosen = core.terms[lambda_index]
    if not isinstance(chosen, RankOneTerm):
        raise ArgumentError("the split term must be rank-1")
    if pivot is None:
        pivot = chosen.support[0]
    if dummy is None:
        dummy = core.num_qubits
    elif dummy < core.num_qubits:
        raise ArgumentError(f"dummy {dummy} collides with the core's qubits")
    parts = schmidt_split(chosen, pivot)
    terms = [t for i, t in enumerate(core.terms) if i != lambda_index]
    for part in parts:
        amps = np.zeros(1 << (part.k + 1), dtype=np.complex128)
        amps[(np.arange(1 << part.k) << 1) | 1] = part.amplitudes
        terms.append(RankOneTerm(part.support + (dummy,), amps))
    gadget_instance = QsatInstance(dummy + 1, terms, core.promise_gap)
    penalty = r.certificate.core_lambda0
    problems = []
    if penalty <= config.UNSAT_FLOOR:
        problems.append(f"penalty constant {penalty!r} is below the unsatisfiability floor")
    zero_energy = restricted_ground_energy(gadget_instance, {dummy: 0})
    if zero_energy > config.GADGET_SAT_TOL:
        problems.append(f"dummy-at-|0> sector has energy {zero_energy!r}, expected 0")
    one_energy = restricted_ground_energy(gadget_instance, {dummy: 1})
    if one_energy < penalty - config.GADGET_PENALTY_TOL:
        problems.append(
            f"dummy-at-|1> sector has energy {one_energy!r}, below the floor {penalty!r}"
        )
    profile = degree_profile(gadget_instance)
    if profile.per_qubit[dummy] != len(parts):
        problems.append(
            f"dummy participates in {profile.per_qubit[dummy]} terms, expected {len(parts)}"
        )
    if profile.max_degree > degree_profile(core).max_degree + 1:
        problems.append("gadget raises the maximum degree by more than one")
    if problems:
        raise ValidationError("; ".join(problems))
    return EnforcingGadget(
        gadget_instance,
        dummy,
        tuple(range(core.num_qubits)),
        penalty,
        GadgetSource(r, lambda_index, pivot),
    )


def _relabel_term(term, mapping):
    new_support = tuple(mapping[q] for q in term.support)
    if isinstance(term, RankOneTerm):
        return RankOneTerm(new_support, term.amplitudes)
    return GeneralTerm(new_support, term.matrix)


def build_reduction(q: QsatInstance, target_k: int, r: MinimalCore) -> ReductionOutput:
    """Pad every term of ``q`` to ``target_k`` and pin each fresh dummy with
    its own relabeled copy of the enforcing gadget built from ``r``.

    Ground energies agree below c_k and the output never dips below c_k
    otherwise; the adjusted promise gap is min(gap, c_k).  Construction has
    no size ceiling — only verification does.
    """
    require_valid(q)
    if target_k < 1:
        raise ArgumentError("target locality must be positive")
    if any(not isinstance(t, RankOneTerm) for t in q.terms):
        raise ArgumentError("reduction requires rank-1 terms; decompose first")
    if locality(q) > target_k:
        raise ArgumentError(
            f"instance is {locality(q)}-local; cannot reduce to locality {target_k}"
        )
    gadget = build_enforcing_gadget(r)
    penalty = gadget.penalty_constant
    roles = [ROLE_WORK] * q.num_qubits
    next_free = q.num_qubits
    terms_out = []
    for term in q.terms:
        pad = target_k - term.k
        dummies = tuple(range(next_free, next_free + pad))
        next_free += pad
        roles.extend([ROLE_DUMMY] * pad)
        terms_out.append(pad_with_dummies(term, target_k, dummies))
        for dummy in dummies:
            block = range(next_free, next_free + len(gadget.ancilla_qubits))
            mapping = dict(zip(gadget.ancilla_qubits, block))
            mapping[gadget.dummy_qubit] = dummy
            next_free += len(gadget.ancilla_qubits)
            roles.extend([ROLE_ANCILLA] * len(gadget.ancilla_qubits))
            terms_out.extend(
                _relabel_term(t, mapping) for t in gadget.gadget_instance.terms
            )
    adjusted_gap = min(q.promise_gap, penalty)
    t_instance = QsatInstance(next_free, terms_out, adjusted_gap)
    profile = [0] * t_instance.num_qubits
    for term in t_instance.terms:
        for qubit in term.support:
            profile[qubit] += 1
    summaries = tuple(
        RoleSummary(
            role,
            roles.count(role),
            max((profile[i] for i in range(len(roles)) if roles[i] == role), default=0),
        )
        for role in (ROLE_WORK, ROLE_DUMMY, ROLE_ANCILLA)
        if role in roles
    )
    return ReductionOutput(
        t_instance,
        tuple(roles),
        adjusted_gap,
        ReductionAccounting(target_k, summaries),
        penalty,
        gadget,
    )


def _z_commutes(term, qubit) -> bool:
    """Whether the term commutes with the Pauli Z of one of its qubits."""
    pos = term.support.index(qubit)
    if isinstance(term, RankOneTerm):
        tensor = np.moveaxis(term.amplitudes.reshape((2,) * term.k), pos, 0)
        mass = np.linalg.norm(tensor.reshape(2, -1), axis=1)
        return bool(min(mass) <= config.Z_COMMUTATION_TOL)
    matrix = np.asarray(term.matrix)
    dim = matrix.shape[0]
    idx = np.arange(dim)
    bit = (idx >> (term.k - 1 - pos)) & 1
    off_block = matrix[np.ix_(bit == 0, bit == 1)]
    return bool(np.max(np.abs(off_block), initial=0.0) <= config.Z_COMMUTATION_TOL)


def verify_reduction(q: QsatInstance, out: ReductionOutput) -> VerificationReport:
    """Numerically confirm the reduction's claims on a finished output.

    Checks: every term leaves each dummy in a Z eigenstate; the output's
    ground energy matches the input's below the penalty and stays above it
    otherwise; the maximum degree respects the accounting bound.  The
    spectral items need both instances within the dense range.
    """
    require_valid(q)
    t = out.t_instance
    require_valid(t)
    dummies = {i for i, role in enumerate(out.role_map) if role == ROLE_DUMMY}
    commutation_ok = all(
        _z_commutes(term, qubit)
        for term in t.terms
        for qubit in set(term.support) & dummies
    )
    delta_t = degree_profile(t).max_degree
    delta_q = degree_profile(q).max_degree
    delta_r = degree_profile(out.gadget.source.core.core).max_degree
    degree_bound = max(delta_q, delta_r + 1, 3)
    degree_ok = delta_t <= degree_bound
    if max(q.num_qubits, t.num_qubits) > config.DENSE_CUTOFF:
        raise CapacityError(
            f"energy verification needs at most {config.DENSE_CUTOFF} qubits, "
            f"got {t.num_qubits}"
        )
    base = ground_energy(q).lambda0
    reduced = ground_energy(t).lambda0
    penalty = out.penalty_constant
    if base <= penalty:
        energy_ok = abs(reduced - base) <= config.REDUCTION_ENERGY_TOL
    else:
        energy_ok = reduced >= penalty - config.REDUCTION_ENERGY_TOL
    return VerificationReport(
        commutation_ok,
        energy_ok,
        degree_ok,
        base,
        reduced,
        penalty,
        delta_t,
        degree_bound,
    )
