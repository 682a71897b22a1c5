"""Assembly, ground energies, verdicts, nullspace counting, dominance."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse.linalg import LinearOperator

import qsatkit as qk

from conftest import (
    near_identity_pair,
    oracle_lambda0,
    oracle_matrix,
    random_instance,
)

# Ground-state doublet of the frustrated triangle instance, frozen from an
# independent 8x8 eigendecomposition; agrees with (5 - sqrt(17)) / 4.
TRIANGLE_LAMBDA0 = 0.21922359359558494
TRIANGLE_TOP = (5 + math.sqrt(17)) / 4


class TestAssemble:
    def test_single_projector_on_first_qubit(self):
        inst = qk.QsatInstance(2, [qk.basis_term((0,), "0")])
        assert np.allclose(qk.assemble_dense(inst), np.diag([1.0, 1.0, 0.0, 0.0]))

    def test_repeated_term_doubles_the_operator(self):
        once = qk.QsatInstance(2, [qk.basis_term((0, 1), "01")])
        twice = qk.QsatInstance(2, [qk.basis_term((0, 1), "01")] * 2)
        assert np.allclose(qk.assemble_dense(twice), 2 * qk.assemble_dense(once))

    def test_empty_instance_assembles_to_zero(self):
        assert not qk.assemble_dense(qk.QsatInstance(2, [])).any()

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_independent_embedding(self, seed):
        rng = np.random.Generator(np.random.Philox(key=seed))
        n = int(rng.integers(1, 6))
        inst = random_instance(rng, n, num_terms=int(rng.integers(1, 6)),
                               k=int(rng.integers(1, min(n, 3) + 1)))
        assert np.allclose(qk.assemble_dense(inst), oracle_matrix(inst),
                           atol=1e-12)

    def test_assembled_operator_is_hermitian_psd(self):
        rng = np.random.Generator(np.random.Philox(key=99))
        inst = random_instance(rng, 4, num_terms=6, k=2)
        q = qk.assemble_dense(inst)
        assert np.allclose(q, q.conj().T)
        assert np.linalg.eigvalsh(q)[0] >= -1e-12

    def test_large_instances_become_linear_operators(self):
        rng = np.random.Generator(np.random.Philox(key=3))
        inst = random_instance(rng, 15, num_terms=2, k=2)
        op = qk.assemble(inst)
        assert isinstance(op, LinearOperator)
        state = rng.standard_normal(1 << 15) + 0j
        assert np.allclose(op @ state, qk.apply_instance(inst, state), atol=1e-10)

    def test_capacity_ceiling_is_enforced(self, monkeypatch):
        monkeypatch.setenv("QSAT_MAX_QUBITS", "3")
        inst = qk.QsatInstance(4, [qk.basis_term((0,), "0")])
        with pytest.raises(qk.CapacityError):
            qk.assemble(inst)


class TestGroundEnergy:
    def test_complementary_projectors_cost_one(self):
        inst = qk.QsatInstance(
            1, [qk.basis_term((0,), "0"), qk.basis_term((0,), "1")]
        )
        result = qk.ground_energy(inst)
        assert abs(result.lambda0 - 1.0) <= 1e-12
        assert abs(result.e0 - 0.5) <= 1e-12

    def test_single_entangled_projector_is_satisfiable(self):
        inst = qk.QsatInstance(2, [qk.singlet_term(0, 1)])
        assert qk.ground_energy(inst).lambda0 <= 1e-12

    def test_triangle_ground_energy_matches_frozen_value(self, figure_b):
        result = qk.ground_energy(figure_b)
        assert abs(result.lambda0 - TRIANGLE_LAMBDA0) <= 1e-10
        assert abs(result.lambda0 - qk.FIGURE_B_GROUND_ENERGY) <= 1e-10
        assert result.method == "dense"

    def test_reports_unit_ground_vector_and_small_residual(self, figure_b):
        result = qk.ground_energy(figure_b)
        assert abs(np.linalg.norm(result.ground_vector) - 1.0) <= 1e-10
        applied = qk.apply_instance(figure_b, result.ground_vector)
        residual = np.linalg.norm(applied - result.lambda0 * result.ground_vector)
        assert residual <= 1e-8
        assert result.residual <= 1e-8

    def test_empty_instance_has_zero_energy(self):
        result = qk.ground_energy(qk.QsatInstance(3, []))
        assert result.lambda0 == 0.0
        assert result.e0 == 0.0

    def test_normalized_energy_divides_by_term_count(self, figure_b):
        result = qk.ground_energy(figure_b)
        assert result.e0 == result.lambda0 / figure_b.num_terms

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_independent_eigensolve(self, seed):
        rng = np.random.Generator(np.random.Philox(key=1000 + seed))
        inst = random_instance(rng, int(rng.integers(2, 6)),
                               num_terms=int(rng.integers(1, 7)))
        result = qk.ground_energy(inst)
        assert abs(result.lambda0 - oracle_lambda0(inst)) <= 1e-10

    @given(st.integers(0, 1 << 30))
    @settings(max_examples=25, deadline=None)
    def test_positivity(self, seed):
        rng = np.random.Generator(np.random.Philox(key=seed))
        inst = random_instance(rng, 4, num_terms=int(rng.integers(0, 6)))
        assert qk.ground_energy(inst).lambda0 >= -1e-9

    @given(st.integers(0, 1 << 30))
    @settings(max_examples=15, deadline=None)
    def test_monotone_under_added_terms(self, seed):
        rng = np.random.Generator(np.random.Philox(key=seed))
        inst = random_instance(rng, 4, num_terms=int(rng.integers(1, 5)))
        extra = qk.haar_random_term(
            tuple(int(q) for q in rng.choice(4, size=2, replace=False)), rng
        )
        bigger = qk.QsatInstance(4, list(inst.terms) + [extra])
        assert (qk.ground_energy(bigger).lambda0
                >= qk.ground_energy(inst).lambda0 - 1e-9)

    def test_dense_and_krylov_agree(self):
        rng = np.random.Generator(np.random.Philox(key=42))
        inst = random_instance(rng, 8, num_terms=8)
        dense = qk.ground_energy(inst, method="dense")
        krylov = qk.ground_energy(inst, method="krylov")
        assert krylov.method == "krylov"
        assert abs(dense.lambda0 - krylov.lambda0) <= 1e-7

    def test_krylov_is_deterministic(self):
        rng = np.random.Generator(np.random.Philox(key=43))
        inst = random_instance(rng, 8, num_terms=8)
        first = qk.ground_energy(inst, method="krylov")
        second = qk.ground_energy(inst, method="krylov")
        assert first.lambda0 == second.lambda0

    def test_krylov_handles_single_qubit_instances(self):
        blocked = qk.QsatInstance(
            1,
            [qk.RankOneTerm((0,), [1.0, 0.0]), qk.RankOneTerm((0,), [0.0, 1.0])],
        )
        result = qk.ground_energy(blocked, method="krylov")
        assert result.lambda0 == pytest.approx(1.0, abs=1e-12)
        assert result.residual <= 1e-8

        open_level = qk.QsatInstance(1, [qk.RankOneTerm((0,), [1.0, 0.0])])
        result = qk.ground_energy(open_level, method="krylov")
        assert result.lambda0 == pytest.approx(0.0, abs=1e-12)

    def test_unknown_method_is_rejected(self, figure_a):
        with pytest.raises(qk.ArgumentError):
            qk.ground_energy(figure_a, method="magic")

    def test_capacity_ceiling(self, monkeypatch):
        monkeypatch.setenv("QSAT_MAX_QUBITS", "3")
        inst = qk.QsatInstance(4, [qk.basis_term((0,), "0")])
        with pytest.raises(qk.CapacityError):
            qk.ground_energy(inst)

    def test_full_spectrum_of_triangle(self, figure_b):
        expected = sorted([TRIANGLE_LAMBDA0, TRIANGLE_LAMBDA0, 0.5, 0.5,
                           1.0, 1.0, TRIANGLE_TOP, TRIANGLE_TOP])
        assert np.allclose(qk.full_spectrum(figure_b), expected, atol=1e-9)


class TestNullspace:
    def test_empty_instance_has_full_nullspace(self):
        assert qk.common_nullspace_dim(qk.QsatInstance(3, [])) == 8

    def test_single_projector_on_one_qubit(self):
        inst = qk.QsatInstance(1, [qk.basis_term((0,), "0")])
        assert qk.common_nullspace_dim(inst) == 1

    def test_triangle_instances(self, figure_a, figure_b):
        # The satisfiable triangle annihilates exactly |000> and |010>.
        assert qk.common_nullspace_dim(figure_a) == 2
        assert qk.common_nullspace_dim(figure_b) == 0

    @pytest.mark.parametrize("seed", range(10))
    def test_agrees_with_ground_energy(self, seed):
        rng = np.random.Generator(np.random.Philox(key=2000 + seed))
        n = int(rng.integers(2, 6))
        inst = random_instance(rng, n, num_terms=int(rng.integers(1, 2 * n)))
        dim = qk.common_nullspace_dim(inst)
        lam = qk.ground_energy(inst).lambda0
        assert (dim >= 1) == (lam <= 1e-9)

    def test_capacity_points_to_variational_route(self):
        rng = np.random.Generator(np.random.Philox(key=8))
        inst = random_instance(rng, 15, num_terms=2)
        with pytest.raises(qk.CapacityError):
            qk.common_nullspace_dim(inst)


class TestDecideSat:
    def test_satisfiable_triangle(self, figure_a):
        verdict = qk.decide_sat(figure_a)
        assert verdict.tag == qk.SATISFIABLE
        assert verdict.nullspace_dim == 2

    def test_unsatisfiable_triangle(self, figure_b):
        verdict = qk.decide_sat(figure_b)
        assert verdict.tag == qk.UNSATISFIABLE
        assert verdict.lambda0 >= 1e-3

    def test_empty_instance_is_satisfiable(self):
        assert qk.decide_sat(qk.QsatInstance(2, [])).tag == qk.SATISFIABLE

    def test_energy_between_bands_is_indeterminate(self):
        verdict = qk.decide_sat(near_identity_pair())
        assert verdict.tag == qk.INDETERMINATE
        assert 2e-9 < verdict.lambda0 < 1e-6

    def test_tolerance_scales_with_term_count(self):
        from qsatkit.spectral import sat_tolerance

        assert sat_tolerance(400) == 400 * 1e-9
        assert sat_tolerance(0) == 1e-9
        # Many stacked copies of a satisfiable projector must stay sat.
        inst = qk.QsatInstance(2, [qk.singlet_term(0, 1)] * 400)
        assert qk.decide_sat(inst).tag == qk.SATISFIABLE


class TestDominance:
    def test_every_operator_dominates_itself(self, figure_b):
        q = qk.assemble_dense(figure_b)
        assert qk.operator_dominates(q, q)

    def test_identity_dominates_projector(self):
        proj = qk.basis_term((0,), "0")
        assert qk.operator_dominates(np.eye(2), proj)
        assert not qk.operator_dominates(proj, np.eye(2))

    def test_respects_tolerance_argument(self):
        a = np.diag([1.0, 1.0])
        b = np.diag([1.0, 1.0 + 1e-6])
        assert not qk.operator_dominates(a, b)
        assert qk.operator_dominates(a, b, tol=1e-5)

    def test_instances_are_accepted(self, figure_b):
        doubled = qk.QsatInstance(3, list(figure_b.terms) * 2)
        assert qk.operator_dominates(doubled, figure_b)
        assert not qk.operator_dominates(figure_b, doubled)

    def test_shape_mismatch_is_rejected(self):
        with pytest.raises(qk.DimensionMismatchError):
            qk.operator_dominates(np.eye(2), np.eye(4))


class TestRestrictedGroundEnergy:
    def test_pinning_selects_subspace(self):
        inst = qk.QsatInstance(2, [qk.basis_term((0,), "1")])
        assert abs(qk.restricted_ground_energy(inst, {0: 1}) - 1.0) <= 1e-12
        assert qk.restricted_ground_energy(inst, {0: 0}) <= 1e-12

    def test_pinning_everything_gives_diagonal_entry(self, figure_a):
        value = qk.restricted_ground_energy(figure_a, {0: 0, 1: 0, 2: 0})
        assert value <= 1e-12

    def test_invalid_bit_is_rejected(self, figure_a):
        with pytest.raises(qk.ArgumentError):
            qk.restricted_ground_energy(figure_a, {0: 2})

    def test_invalid_qubit_is_rejected(self, figure_a):
        with pytest.raises(qk.ArgumentError):
            qk.restricted_ground_energy(figure_a, {7: 0})
