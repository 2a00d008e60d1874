"""Energy evaluation strategies shared by all single-gate updates."""

import logging
from typing import Protocol, Sequence

import numpy as np
from numpy.typing import NDArray

from ..errors import HamiltonianError
from ..models.circuit import Circuit, evaluate, substitution_states
from ..models.hamiltonian import PauliSum, expectation, expectation_amplitudes, shot_amplitudes
from ..models.statevector import ComplexArray, Unitary2

logger = logging.getLogger(__name__)


class Evaluator(Protocol):
    """Energies of a circuit with one Param slot substituted.

    ``evaluations`` counts substitution evaluations (one per unitary).
    """

    evaluations: int

    def energies(
        self,
        circuit: Circuit,
        hamiltonian: PauliSum,
        slot: int,
        unitaries: Sequence[Unitary2] | ComplexArray,
    ) -> NDArray[np.float64]: ...

    def energy(self, circuit: Circuit, hamiltonian: PauliSum) -> float: ...

    @property
    def exact(self) -> bool: ...


class ExactEvaluator:
    """Noise-free expectation values from the statevector."""

    def __init__(self) -> None:
        self.evaluations = 0

    @property
    def exact(self) -> bool:
        return True

    def energies(
        self,
        circuit: Circuit,
        hamiltonian: PauliSum,
        slot: int,
        unitaries: Sequence[Unitary2] | ComplexArray,
    ) -> NDArray[np.float64]:
        states = substitution_states(circuit, slot, unitaries)
        self.evaluations += states.shape[0]
        return np.array([expectation_amplitudes(hamiltonian, row) for row in states])

    def energy(self, circuit: Circuit, hamiltonian: PauliSum) -> float:
        """Bookkeeping energy; not counted in ``evaluations``."""
        return expectation(hamiltonian, evaluate(circuit))


class ShotEvaluator:
    """Sampled expectation values with ``shots`` measurements per Pauli term."""

    def __init__(self, shots: int, rng: np.random.Generator) -> None:
        if shots < 1:
            raise HamiltonianError(f"shots must be at least 1, got {shots}")
        self.shots = shots
        self.rng = rng
        self.evaluations = 0

    @property
    def exact(self) -> bool:
        return False

    def energies(
        self,
        circuit: Circuit,
        hamiltonian: PauliSum,
        slot: int,
        unitaries: Sequence[Unitary2] | ComplexArray,
    ) -> NDArray[np.float64]:
        states = substitution_states(circuit, slot, unitaries)
        self.evaluations += states.shape[0]
        return np.array(
            [shot_amplitudes(hamiltonian, row, self.shots, self.rng) for row in states]
        )

    def energy(self, circuit: Circuit, hamiltonian: PauliSum) -> float:
        return shot_amplitudes(
            hamiltonian, evaluate(circuit).amplitudes, self.shots, self.rng
        )
