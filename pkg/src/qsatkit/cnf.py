"""Classical formula utilities: brute-force decisions, sign-variant sweeps,
and the clause-to-projector embedding.

These exist to compare classical and quantum constraint systems sharing a
structure: a clause forbids exactly one assignment of its variables, and
the corresponding rank-1 projector forbids exactly one basis direction of
its fiber.
"""

import numpy as np

from .errors import CapacityError
from .instance import CnfFormula, QsatInstance, RankOneTerm

BRUTE_FORCE_VAR_LIMIT = 24
SIGN_VARIANT_LITERAL_LIMIT = 20


def brute_force_sat(phi: CnfFormula):
    """Exhaustive satisfiability: (verdict, witness-or-None).

    The witness is a tuple of booleans indexed by variable.
    """
    if phi.num_vars > BRUTE_FORCE_VAR_LIMIT:
        raise CapacityError(
            f"brute force is limited to {BRUTE_FORCE_VAR_LIMIT} variables, got {phi.num_vars}"
        )
    count = 1 << phi.num_vars
    assignments = np.arange(count, dtype=np.int64)
    feasible = np.ones(count, dtype=bool)
    for clause in phi.clauses:
        clause_sat = np.zeros(count, dtype=bool)
        for var, positive in clause:
            bit = (assignments >> var) & 1
            clause_sat |= bit == (1 if positive else 0)
        feasible &= clause_sat
    hits = np.flatnonzero(feasible)
    if hits.size == 0:
        return False, None
    first = int(hits[0])
    witness = tuple(bool((first >> v) & 1) for v in range(phi.num_vars))
    return True, witness


def all_sign_variants_satisfiable(structure: CnfFormula):
    """Sweep every assignment of literal polarities over a clause skeleton.

    Returns (True, None) when every variant is satisfiable, else
    (False, first unsatisfiable variant).
    """
    total_literals = sum(len(clause) for clause in structure.clauses)
    if total_literals > SIGN_VARIANT_LITERAL_LIMIT:
        raise CapacityError(
            f"sign sweep is limited to {SIGN_VARIANT_LITERAL_LIMIT} literals, "
            f"got {total_literals}"
        )
    for pattern in range(1 << total_literals):
        position = 0
        clauses = []
        for clause in structure.clauses:
            signed = []
            for var, _ in clause:
                signed.append((var, bool((pattern >> position) & 1)))
                position += 1
            clauses.append(tuple(signed))
        variant = CnfFormula(structure.num_vars, clauses)
        verdict, _ = brute_force_sat(variant)
        if not verdict:
            return False, variant
    return True, None


def cnf_to_instance(phi: CnfFormula) -> QsatInstance:
    """Each clause becomes the projector onto its unique forbidden assignment.

    A positive literal is falsified by 0, a negative one by 1, so the
    forbidden basis state reads those bits in clause order (variable order
    becomes support order).
    """
    terms = []
    for clause in phi.clauses:
        support = tuple(var for var, _ in clause)
        k = len(clause)
        index = 0
        for j, (_, positive) in enumerate(clause):
            bit = 0 if positive else 1
            index |= bit << (k - 1 - j)
        amps = np.zeros(1 << k, dtype=np.complex128)
        amps[index] = 1.0
        terms.append(RankOneTerm(support, amps))
    return QsatInstance(phi.num_vars, terms)
