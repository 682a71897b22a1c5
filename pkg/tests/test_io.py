"""Instance file format: serialization, parsing, and error reporting."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

import qsatkit as qk
from qsatkit import io as qio

from conftest import random_instance


def document_of(instance) -> dict:
    return json.loads(qk.serialize_instance(instance))


class TestSerialize:
    def test_document_layout(self, figure_b):
        doc = document_of(figure_b)
        assert doc["format_version"] == 1
        assert doc["num_qubits"] == 3
        assert doc["epsilon"] == figure_b.promise_gap
        assert len(doc["projectors"]) == 4
        first = doc["projectors"][0]
        assert first["qubits"] == [0, 1]
        assert len(first["amplitudes"]) == 4
        assert all(len(pair) == 2 for pair in first["amplitudes"])

    def test_general_terms_are_refused(self):
        inst = qk.QsatInstance(1, [qk.GeneralTerm((0,), np.eye(2, dtype=complex))])
        with pytest.raises(qk.ArgumentError):
            qk.serialize_instance(inst)

    def test_output_ends_with_newline(self, figure_a):
        assert qk.serialize_instance(figure_a).endswith("\n")


class TestRoundTrip:
    def test_figures_survive(self, figure_a, figure_b):
        for inst in (figure_a, figure_b):
            again = qk.parse_instance(qk.serialize_instance(inst))
            assert again == inst

    def test_awkward_floats_are_bit_exact(self):
        amps = np.array(
            [1 / 3, math.sqrt(2) / 2, -1 / 7, 1 / 3 + 1j * math.pi / 4],
            dtype=np.complex128,
        )
        amps /= np.linalg.norm(amps)
        inst = qk.QsatInstance(2, [qk.RankOneTerm((0, 1), amps)], promise_gap=0.1)
        again = qk.parse_instance(qk.serialize_instance(inst))
        assert np.array_equal(again.terms[0].amplitudes, inst.terms[0].amplitudes)
        assert again.promise_gap == inst.promise_gap

    @pytest.mark.parametrize("seed", range(10))
    def test_random_instances_survive(self, seed):
        rng = np.random.Generator(np.random.Philox(key=seed))
        num_qubits = int(rng.integers(1, 7))
        inst = random_instance(
            rng,
            num_qubits=num_qubits,
            num_terms=int(rng.integers(0, 6)),
            k=int(rng.integers(1, min(num_qubits, 3) + 1)),
            promise_gap=float(rng.uniform(0.01, 1.0)),
        )
        assert qk.parse_instance(qk.serialize_instance(inst)) == inst

    def test_file_round_trip(self, tmp_path, figure_b):
        path = tmp_path / "triangle.json"
        qk.save_instance(path, figure_b)
        assert qk.load_instance(path) == figure_b


class TestParseErrors:
    def test_invalid_json_reports_position(self):
        with pytest.raises(qk.ParseError) as exc:
            qk.parse_instance("{oops", source="broken.json")
        assert "broken.json:1:2" in str(exc.value)

    def test_top_level_must_be_object(self):
        with pytest.raises(qk.ParseError):
            qk.parse_instance("[1, 2]")

    def test_version_must_match(self, figure_a):
        doc = document_of(figure_a)
        doc["format_version"] = 2
        with pytest.raises(qk.ParseError) as exc:
            qio.document_to_instance(doc)
        assert "format_version" in str(exc.value)

    def test_missing_fields_are_named(self, figure_a):
        doc = document_of(figure_a)
        del doc["num_qubits"]
        with pytest.raises(qk.ParseError) as exc:
            qio.document_to_instance(doc)
        assert "num_qubits" in str(exc.value)

    def test_booleans_are_not_numbers(self, figure_a):
        doc = document_of(figure_a)
        doc["epsilon"] = True
        with pytest.raises(qk.ParseError):
            qio.document_to_instance(doc)

    def test_amplitude_length_must_match_support(self, figure_a):
        doc = document_of(figure_a)
        doc["projectors"][0]["amplitudes"].append([0.0, 0.0])
        with pytest.raises(qk.ParseError) as exc:
            qio.document_to_instance(doc)
        assert "projectors[0].amplitudes" in str(exc.value)

    def test_amplitude_entries_must_be_pairs(self, figure_a):
        doc = document_of(figure_a)
        doc["projectors"][1]["amplitudes"][2] = [1.0]
        with pytest.raises(qk.ParseError) as exc:
            qio.document_to_instance(doc)
        assert "projectors[1].amplitudes[2]" in str(exc.value)

    def test_qubits_must_be_integers(self, figure_a):
        doc = document_of(figure_a)
        doc["projectors"][0]["qubits"] = [0, "one"]
        with pytest.raises(qk.ParseError):
            qio.document_to_instance(doc)

    def test_unknown_top_level_keys_are_tolerated(self, figure_a):
        doc = document_of(figure_a)
        doc["comment"] = "hand-annotated"
        assert qio.document_to_instance(doc) == figure_a


class TestSaveReduction:
    def test_annotations_ride_along(self, tmp_path, figure_b_core):
        q = qk.QsatInstance(2, [qk.singlet_term(0, 1)])
        out = qk.build_reduction(q, 3, figure_b_core)
        path = tmp_path / "reduced.json"
        qio.save_reduction(path, out)
        doc = json.loads(path.read_text())
        assert doc["roles"] == list(out.role_map)
        assert doc["penalty_constant"] == out.penalty_constant
        assert doc["epsilon"] == out.adjusted_gap
        # The document is still a loadable instance.
        assert qk.load_instance(path) == out.t_instance
