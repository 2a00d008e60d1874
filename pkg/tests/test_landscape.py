"""Tests for the per-slot energy landscape model."""

import numpy as np
import pytest

from pyfraxis.errors import EigensolveError
from pyfraxis.models.circuit import (
    energy_with_substitution,
    randomize,
    single_qubit_ansatz,
    two_qubit_ansatz,
)
from pyfraxis.models.hamiltonian import PauliSum
from pyfraxis.models.statevector import Axis, rotation_unitary
from pyfraxis.optimizers.evaluation import ExactEvaluator
from pyfraxis.optimizers.landscape import (
    AxisModel,
    assemble_r,
    eig3_symmetric,
    estimate_axis_model,
)


def random_pauli_sum(n_qubits: int, rng: np.random.Generator) -> PauliSum:
    letters = ["X", "Y", "Z", "I"]
    terms = []
    for _ in range(6):
        string = "".join(rng.choice(letters, n_qubits))
        terms.append((float(rng.standard_normal()), string))
    return PauliSum.from_terms(n_qubits, terms)


@pytest.fixture
def instance():
    rng = np.random.default_rng(21)
    circuit = randomize(two_qubit_ansatz(), "theta-fraxis", rng)
    return circuit, random_pauli_sum(2, rng), rng


class TestAssembleR:
    """Test the R matrix layout."""

    def test_layout(self) -> None:
        """Test diagonal 2 r_j and off-diagonal 2 r_jk - r_j - r_k."""
        R = assemble_r(np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]))
        expected = np.array(
            [
                [2.0, 8.0 - 3.0, 10.0 - 4.0],
                [5.0, 4.0, 12.0 - 5.0],
                [6.0, 7.0, 6.0],
            ]
        )
        np.testing.assert_allclose(R, expected)
        np.testing.assert_allclose(R, R.T)


class TestEig3Symmetric:
    """Test the 3x3 symmetric eigensolver wrapper."""

    def test_sorted_and_orthonormal(self) -> None:
        """Test ascending eigenvalues and orthonormal vectors."""
        rng = np.random.default_rng(0)
        a = rng.standard_normal((3, 3))
        triple = eig3_symmetric(a + a.T)
        assert np.all(np.diff(triple.values) >= 0)
        np.testing.assert_allclose(triple.vectors.T @ triple.vectors, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(
            (a + a.T) @ triple.vectors, triple.vectors * triple.values, atol=1e-12
        )

    def test_sign_convention(self) -> None:
        """Test that the first non-negligible component is positive."""
        rng = np.random.default_rng(1)
        a = rng.standard_normal((3, 3))
        triple = eig3_symmetric(a + a.T)
        for i in range(3):
            v = triple.vector(i)
            lead = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
            assert lead > 0

    def test_degenerate_matrix(self) -> None:
        """Test a multiple of the identity."""
        triple = eig3_symmetric(2.0 * np.eye(3))
        np.testing.assert_allclose(triple.values, [2.0, 2.0, 2.0])

    def test_asymmetric_rejected(self) -> None:
        """Test that an asymmetric matrix raises EigensolveError."""
        R = np.eye(3)
        R[0, 1] = 1e-3
        with pytest.raises(EigensolveError):
            eig3_symmetric(R)

    def test_wrong_shape_rejected(self) -> None:
        """Test that only 3x3 matrices are accepted."""
        with pytest.raises(EigensolveError):
            eig3_symmetric(np.eye(2))


class TestEstimateAxisModel:
    """Test the measured landscape against direct evaluation."""

    def test_quadratic_form_at_pi(self, instance) -> None:
        """Test E(R_n(pi)) = n^T R n / 2 for random axes."""
        circuit, m, rng = instance
        for slot in circuit.param_slot_indices:
            model = estimate_axis_model(circuit, m, slot)
            for _ in range(10):
                axis = Axis.from_vector(rng.standard_normal(3))
                measured = energy_with_substitution(
                    circuit, m, slot, rotation_unitary(axis, np.pi)
                )
                assert model.quadratic(axis) == pytest.approx(measured, abs=1e-10)

    def test_energy_within_eigenvalue_bounds(self, instance) -> None:
        """Test that pi-rotation energies lie within half the R spectrum."""
        circuit, m, rng = instance
        model = estimate_axis_model(circuit, m, circuit.param_slot_indices[0])
        values = eig3_symmetric(model.R).values
        for _ in range(50):
            value = model.quadratic(Axis.from_vector(rng.standard_normal(3)))
            assert values[0] / 2 - 1e-10 <= value <= values[2] / 2 + 1e-10

    def test_full_landscape(self, instance) -> None:
        """Test the landscape identity at arbitrary axis and angle."""
        circuit, m, rng = instance
        for slot in circuit.param_slot_indices:
            model = estimate_axis_model(circuit, m, slot, need_b=True)
            assert model.has_linear_term
            for _ in range(10):
                axis = Axis.from_vector(rng.standard_normal(3))
                theta = float(rng.uniform(-np.pi, np.pi))
                measured = energy_with_substitution(
                    circuit, m, slot, rotation_unitary(axis, theta)
                )
                assert model.energy(axis, theta) == pytest.approx(measured, abs=1e-10)

    def test_identity_energy_is_theta_zero(self, instance) -> None:
        """Test that e_I is the energy with the gate removed."""
        circuit, m, _ = instance
        slot = circuit.param_slot_indices[2]
        model = estimate_axis_model(circuit, m, slot, need_b=True)
        removed = energy_with_substitution(circuit, m, slot, rotation_unitary([0, 0, 1], 0.0))
        assert model.e_identity == pytest.approx(removed, abs=1e-12)

    def test_evaluation_counts(self, instance) -> None:
        """Test six evaluations for R and four more for b and e_I."""
        circuit, m, _ = instance
        evaluator = ExactEvaluator()
        estimate_axis_model(circuit, m, 0, evaluator=evaluator)
        assert evaluator.evaluations == 6
        estimate_axis_model(circuit, m, 0, need_b=True, evaluator=evaluator)
        assert evaluator.evaluations == 16

    def test_energy_requires_linear_term(self) -> None:
        """Test that the full landscape needs b and e_I."""
        model = AxisModel.from_r_elements(np.ones(6))
        with pytest.raises(EigensolveError):
            model.energy(Axis(1.0, 0.0, 0.0), 0.3)

    def test_toy_model(self) -> None:
        """Test R for X + Y + Z on |0> against its known spectrum."""
        m = PauliSum.from_terms(1, [(1.0, "X"), (1.0, "Y"), (1.0, "Z")])
        model = estimate_axis_model(single_qubit_ansatz(), m, 0)
        values = eig3_symmetric(model.R).values
        assert values[0] / 2 == pytest.approx(-np.sqrt(3))
        assert values[2] / 2 == pytest.approx(np.sqrt(3))

    def test_batched_energies(self, instance) -> None:
        """Test that row-wise energies match the single-axis landscape."""
        circuit, m, rng = instance
        model = estimate_axis_model(circuit, m, circuit.param_slot_indices[1], need_b=True)
        axes = rng.standard_normal((25, 3))
        axes /= np.linalg.norm(axes, axis=1, keepdims=True)
        for theta in (np.pi / 2, 1.3, np.pi):
            expected = [model.energy(n, theta) for n in axes]
            np.testing.assert_allclose(model.energies(axes, theta), expected, atol=1e-12)
        with pytest.raises(EigensolveError):
            AxisModel.from_r_elements(np.ones(6)).energies(axes, 0.3)
