"""Tests for the line-oriented text formats."""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from pyfraxis.data.formats import (
    FormatError,
    load_circuit,
    load_graph,
    load_labels,
    load_pauli_sum,
    parse_circuit,
    parse_graph,
    parse_labels,
    parse_pauli_sum,
    save_circuit,
    save_graph,
    save_pauli_sum,
    serialize_labels,
)
from pyfraxis.data.persistence import PersistenceError
from pyfraxis.models.circuit import (
    Entangler,
    FixedGate,
    FixedTag,
    ParamGate,
    circuit_b,
    energy,
    randomize,
)
from pyfraxis.models.hamiltonian import Graph, PauliSum
from pyfraxis.models.statevector import AXIS_Y, EntanglerKind


class TestPauliSumFormat:
    """Test the Pauli sum text format."""

    def test_parse_with_comments(self) -> None:
        """Test comments, blank lines and lower-case letters."""
        text = "# two-qubit model\n0.1 XX\n\n0.1 yy  # inline\n0.01 IZ\n0.02 IZ\n"
        m = parse_pauli_sum(text)
        assert m.n_qubits == 2
        assert m.coefficient("YY") == pytest.approx(0.1)
        assert m.coefficient("IZ") == pytest.approx(0.03)

    def test_mixed_lengths_rejected(self) -> None:
        """Test that all terms must have one length."""
        with pytest.raises(FormatError) as excinfo:
            parse_pauli_sum("1.0 XX\n1.0 Z\n")
        assert excinfo.value.line_number == 2

    def test_complex_rejected(self) -> None:
        """Test that complex coefficients are rejected."""
        with pytest.raises(FormatError):
            parse_pauli_sum("1+2j XX\n")

    def test_bad_letters(self) -> None:
        """Test that invalid letters report their line."""
        with pytest.raises(FormatError) as excinfo:
            parse_pauli_sum("1.0 XX\n1.0 XQ\n")
        assert "line 2" in str(excinfo.value)

    def test_empty(self) -> None:
        """Test that a file without terms is rejected."""
        with pytest.raises(FormatError):
            parse_pauli_sum("# nothing\n")

    def test_file_round_trip(self) -> None:
        """Test that saved coefficients are restored exactly."""
        m = PauliSum.from_terms(3, [(0.1, "XYZ"), (-1 / 3, "IIZ"), (2.5, "III")])
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "h.txt"
            save_pauli_sum(m, path)
            loaded = load_pauli_sum(path)
        assert loaded.coefficient("IIZ") == -1 / 3
        assert loaded.coefficient("III") == 2.5

    def test_missing_file(self) -> None:
        """Test that an unreadable path raises PersistenceError."""
        with pytest.raises(PersistenceError):
            load_pauli_sum("/nonexistent/pyfraxis/h.txt")


class TestGraphFormat:
    """Test the graph text format."""

    def test_parse(self) -> None:
        """Test vertex count and edges in either orientation."""
        g = parse_graph("4\n0 1\n2 1\n# comment\n3 0\n")
        assert g.n_vertices == 4
        assert g.edges == ((0, 1), (1, 2), (0, 3))

    @pytest.mark.parametrize(
        "text",
        ["3\n1 1\n", "3\n0 3\n", "3\n0 1\n1 0\n", "x\n", "3\n0\n", ""],
    )
    def test_invalid(self, text: str) -> None:
        """Test self-loops, missing vertices, duplicates and syntax errors."""
        with pytest.raises(FormatError):
            parse_graph(text)

    def test_file_round_trip(self) -> None:
        """Test saving and loading a ring."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "ring.txt"
            save_graph(Graph.ring(5), path)
            assert load_graph(path) == Graph.ring(5)


class TestCircuitFormat:
    """Test the circuit text format."""

    def test_parse(self) -> None:
        """Test every slot kind."""
        c = parse_circuit(
            "qubits 2\nfixed 0 h\nparam 1 0 1 0 0.5\ncx 0 1\ncz 1 0\nfixed 1 SX\n"
        )
        assert c.slots == (
            FixedGate(0, FixedTag.H),
            ParamGate(1, AXIS_Y, 0.5),
            Entangler(EntanglerKind.CX, 0, 1),
            Entangler(EntanglerKind.CZ, 1, 0),
            FixedGate(1, FixedTag.SX),
        )

    def test_non_unit_axis(self) -> None:
        """Test that axes must be unit vectors."""
        with pytest.raises(FormatError) as excinfo:
            parse_circuit("qubits 1\nparam 0 1 1 0 0.5\n")
        assert excinfo.value.line_number == 2

    def test_qubit_out_of_range(self) -> None:
        """Test that slot qubits are checked on their line."""
        with pytest.raises(FormatError) as excinfo:
            parse_circuit("qubits 2\n# gates\ncx 0 2\n")
        assert excinfo.value.line_number == 3

    def test_missing_header(self) -> None:
        """Test that the qubit count comes first."""
        with pytest.raises(FormatError):
            parse_circuit("param 0 0 1 0 0.5\n")

    def test_unknown_gate(self) -> None:
        """Test that unknown keywords are rejected."""
        with pytest.raises(FormatError):
            parse_circuit("qubits 1\nswap 0 1\n")

    def test_file_round_trip_preserves_energy(self) -> None:
        """Test that a randomized circuit survives a save and load."""
        c = randomize(circuit_b(1), "theta-fraxis", np.random.default_rng(71))
        m = PauliSum.from_terms(6, [(1.0, "ZZIIII"), (0.5, "IXIYII")])
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "c.txt"
            save_circuit(c, path)
            loaded = load_circuit(path)
        assert loaded.thetas() == c.thetas()
        assert energy(loaded, m) == pytest.approx(energy(c, m), abs=1e-12)


class TestLabelsFormat:
    """Test the labelling text format."""

    def test_parse(self) -> None:
        """Test vertex, qubit and letter columns."""
        assert parse_labels("0 1 x\n1 0 Z\n") == {0: (1, "X"), 1: (0, "Z")}

    def test_duplicate_vertex(self) -> None:
        """Test that a vertex may be labelled once."""
        with pytest.raises(FormatError):
            parse_labels("0 0 X\n0 1 Y\n")

    def test_bad_letter(self) -> None:
        """Test that identity labels are rejected."""
        with pytest.raises(FormatError):
            parse_labels("0 0 I\n")

    def test_serialize_and_load(self) -> None:
        """Test that written labels load back."""
        labels = {1: (0, "Y"), 0: (2, "X")}
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "labels.txt"
            path.write_text(serialize_labels(labels), encoding="utf-8")
            assert load_labels(path) == labels
