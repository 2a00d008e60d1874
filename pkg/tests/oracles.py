"""Dense reference implementations used to cross-check the simulator."""

import numpy as np
import scipy.linalg

from pyfraxis.models.circuit import Circuit, Entangler, FixedGate, ParamGate
from pyfraxis.models.hamiltonian import PauliSum
from pyfraxis.models.statevector import PAULI_MATRICES, PAULI_X, PAULI_Y, PAULI_Z


def embed(matrix: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Full 2^n matrix of a single-qubit gate; qubit 0 is the rightmost factor."""
    out = np.eye(1, dtype=complex)
    for q in reversed(range(n_qubits)):
        out = np.kron(out, matrix if q == qubit else np.eye(2))
    return out


def controlled(kind: str, control: int, target: int, n_qubits: int) -> np.ndarray:
    p0 = np.diag([1, 0]).astype(complex)
    p1 = np.diag([0, 1]).astype(complex)
    gate = PAULI_X if kind == "CX" else PAULI_Z
    return embed(p0, control, n_qubits) + embed(p1, control, n_qubits) @ embed(
        gate, target, n_qubits
    )


def pauli_matrix(letters: str) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for letter in reversed(letters):
        out = np.kron(out, PAULI_MATRICES[letter])
    return out


def rotation_expm(axis: np.ndarray, theta: float) -> np.ndarray:
    sigma = axis[0] * PAULI_X + axis[1] * PAULI_Y + axis[2] * PAULI_Z
    return scipy.linalg.expm(-0.5j * theta * sigma)


def circuit_unitary(c: Circuit) -> np.ndarray:
    n = c.n_qubits
    total = np.eye(2**n, dtype=complex)
    for slot in c.slots:
        if isinstance(slot, ParamGate):
            gate = embed(rotation_expm(slot.axis.as_array(), slot.theta), slot.qubit, n)
        elif isinstance(slot, FixedGate):
            gate = embed(slot.unitary().matrix, slot.qubit, n)
        elif isinstance(slot, Entangler):
            gate = controlled(str(slot.kind), slot.control, slot.target, n)
        else:
            raise TypeError(slot)
        total = gate @ total
    return total


def circuit_state(c: Circuit) -> np.ndarray:
    return circuit_unitary(c) @ c.start.amplitudes


def dense_pauli_sum(m: PauliSum) -> np.ndarray:
    """Sum of Kronecker-product Pauli matrices."""
    total = np.zeros((2**m.n_qubits, 2**m.n_qubits), dtype=complex)
    for coefficient, string in m.terms:
        total += coefficient * pauli_matrix(string.letters)
    return total
