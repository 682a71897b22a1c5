"""Classical formula utilities and the clause-to-projector bridge."""

from __future__ import annotations

import numpy as np
import pytest

import qsatkit as qk


def random_formula(rng, num_vars, num_clauses, k=2) -> qk.CnfFormula:
    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(num_vars, size=k, replace=False)
        clauses.append(
            tuple((int(v), bool(rng.integers(0, 2))) for v in variables)
        )
    return qk.CnfFormula(num_vars, clauses)


class TestBruteForceSat:
    def test_positive_triangle_formula(self):
        verdict, witness = qk.brute_force_sat(qk.figure_a_formula())
        assert verdict
        assert witness is not None

    def test_contradiction(self):
        phi = qk.CnfFormula(1, [((0, True),), ((0, False),)])
        verdict, witness = qk.brute_force_sat(phi)
        assert not verdict
        assert witness is None

    def test_empty_formula_is_satisfiable(self):
        verdict, witness = qk.brute_force_sat(qk.CnfFormula(2, []))
        assert verdict
        assert witness == (False, False)

    def test_witness_actually_satisfies(self):
        rng = np.random.Generator(np.random.Philox(key=55))
        for _ in range(20):
            phi = random_formula(rng, 5, int(rng.integers(1, 10)))
            verdict, witness = qk.brute_force_sat(phi)
            if not verdict:
                continue
            for clause in phi.clauses:
                assert any(witness[var] == positive for var, positive in clause)

    def test_capacity_ceiling(self):
        with pytest.raises(qk.CapacityError):
            qk.brute_force_sat(qk.CnfFormula(25, []))


class TestSignVariants:
    def test_triangle_skeleton_is_robust(self):
        ok, counterexample = qk.all_sign_variants_satisfiable(qk.figure_a_formula())
        assert ok
        assert counterexample is None

    def test_single_clause_is_robust(self):
        phi = qk.CnfFormula(1, [((0, True),)])
        assert qk.all_sign_variants_satisfiable(phi) == (True, None)

    def test_pigeonhole_on_one_variable_fails(self):
        phi = qk.CnfFormula(1, [((0, True),), ((0, True),)])
        ok, counterexample = qk.all_sign_variants_satisfiable(phi)
        assert not ok
        assert counterexample is not None
        # The reported variant is itself unsatisfiable and shares structure.
        assert not qk.brute_force_sat(counterexample)[0]
        assert qk.same_structure(counterexample, phi)

    def test_capacity_ceiling(self):
        wide = qk.CnfFormula(21, [tuple((v, True) for v in range(21))])
        with pytest.raises(qk.CapacityError):
            qk.all_sign_variants_satisfiable(wide)


class TestCnfToInstance:
    def test_clause_forbids_exactly_its_falsifying_assignment(self):
        phi = qk.CnfFormula(2, [((0, True), (1, False))])
        inst = qk.cnf_to_instance(phi)
        term = inst.terms[0]
        assert term.support == (0, 1)
        # The clause fails only at x0 = 0, x1 = 1, read in clause order.
        assert np.allclose(term.amplitudes, [0, 1, 0, 0])

    def test_structure_is_shared(self):
        phi = qk.figure_a_formula()
        assert qk.same_structure(qk.cnf_to_instance(phi), phi)

    def test_verdicts_match_brute_force(self):
        rng = np.random.Generator(np.random.Philox(key=321))
        for _ in range(25):
            num_vars = int(rng.integers(2, 7))
            phi = random_formula(rng, num_vars, int(rng.integers(1, 3 * num_vars)))
            classical, _ = qk.brute_force_sat(phi)
            quantum = qk.decide_sat(qk.cnf_to_instance(phi))
            assert quantum.tag == (qk.SATISFIABLE if classical else qk.UNSATISFIABLE)

    def test_classical_witness_has_zero_energy(self):
        phi = qk.figure_a_formula()
        verdict, witness = qk.brute_force_sat(phi)
        assert verdict
        inst = qk.cnf_to_instance(phi)
        # Witness bit for variable v selects that computational basis state.
        index = 0
        for v, bit in enumerate(witness):
            if bit:
                index |= 1 << (inst.num_qubits - 1 - v)
        state = np.zeros(1 << inst.num_qubits, dtype=np.complex128)
        state[index] = 1.0
        assert qk.expectation(inst, state) <= 1e-12
