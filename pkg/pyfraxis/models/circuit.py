"""Parametrized circuits, slot substitution and ansatz builders."""

import logging
from dataclasses import dataclass, field, replace
from enum import StrEnum
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from ..errors import QubitIndexError, SlotError
from .hamiltonian import PauliSum, expectation, expectation_amplitudes
from .statevector import (
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    HADAMARD,
    MAX_QUBITS,
    PAULI_X,
    SQRT_X,
    Axis,
    ComplexArray,
    EntanglerKind,
    StateVector,
    Unitary2,
    _apply_1q,
    _apply_2q,
    apply_1q_batch,
    rotation_unitary,
    rz_unitary,
)

logger = logging.getLogger(__name__)


class FixedTag(StrEnum):
    """Non-parametrized single-qubit gates."""

    H = "H"
    X = "X"
    SX = "SX"


FIXED_MATRICES = {FixedTag.H: HADAMARD, FixedTag.X: PAULI_X, FixedTag.SX: SQRT_X}


class AxisScheme(StrEnum):
    """How random rotation axes are drawn."""

    PARAMETER_RANDOM = "parameter-random"
    STATE_RANDOM = "state-random"


@dataclass(frozen=True)
class ParamGate:
    """R_axis(theta) on one qubit."""

    qubit: int
    axis: Axis = AXIS_Y
    theta: float = 0.0

    def unitary(self) -> Unitary2:
        return rotation_unitary(self.axis, self.theta)


@dataclass(frozen=True)
class FixedGate:
    qubit: int
    tag: FixedTag

    def unitary(self) -> Unitary2:
        return Unitary2(FIXED_MATRICES[FixedTag(self.tag)])


@dataclass(frozen=True)
class Entangler:
    kind: EntanglerKind
    control: int
    target: int


GateSlot = ParamGate | FixedGate | Entangler


@dataclass(frozen=True, eq=False)
class Circuit:
    """Ordered gate slots applied to ``initial_state`` (|0...0> by default).

    Slots are addressed by their position in ``slots``; optimizers only touch
    the positions listed by ``param_slot_indices``.
    """

    n_qubits: int
    slots: tuple[GateSlot, ...] = ()
    initial_state: StateVector | None = field(default=None)

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise QubitIndexError(
                f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}"
            )
        object.__setattr__(self, "slots", tuple(self.slots))
        for position, slot in enumerate(self.slots):
            _validate_slot(self.n_qubits, position, slot)
        if self.initial_state is None:
            object.__setattr__(self, "initial_state", StateVector.zero(self.n_qubits))
        elif self.initial_state.n_qubits != self.n_qubits:
            raise QubitIndexError(
                f"Initial state has {self.initial_state.n_qubits} qubits, "
                f"circuit has {self.n_qubits}"
            )

    @property
    def start(self) -> StateVector:
        assert self.initial_state is not None
        return self.initial_state

    @property
    def param_slot_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.slots) if isinstance(s, ParamGate)]

    @property
    def n_params(self) -> int:
        return len(self.param_slot_indices)

    @property
    def n_entanglers(self) -> int:
        return sum(1 for s in self.slots if isinstance(s, Entangler))

    def param(self, slot: int) -> ParamGate:
        """The Param gate at ``slot``, or SlotError."""
        if not 0 <= slot < len(self.slots):
            raise SlotError(f"Slot {slot} out of range ({len(self.slots)} slots)")
        gate = self.slots[slot]
        if not isinstance(gate, ParamGate):
            raise SlotError(f"Slot {slot} holds {type(gate).__name__}, not a Param gate")
        return gate

    def with_slot(self, slot: int, gate: GateSlot) -> "Circuit":
        slots = list(self.slots)
        slots[slot] = gate
        return Circuit(self.n_qubits, tuple(slots), self.initial_state)

    def with_param(
        self, slot: int, axis: Axis | None = None, theta: float | None = None
    ) -> "Circuit":
        gate = self.param(slot)
        return self.with_slot(
            slot,
            replace(
                gate,
                axis=gate.axis if axis is None else axis,
                theta=gate.theta if theta is None else float(theta),
            ),
        )

    def axes(self) -> list[Axis]:
        return [self.param(i).axis for i in self.param_slot_indices]

    def thetas(self) -> list[float]:
        return [self.param(i).theta for i in self.param_slot_indices]


def _validate_slot(n_qubits: int, position: int, slot: GateSlot) -> None:
    if isinstance(slot, Entangler):
        for qubit in (slot.control, slot.target):
            if not 0 <= qubit < n_qubits:
                raise QubitIndexError(f"Slot {position}: qubit {qubit} out of range")
        if slot.control == slot.target:
            raise QubitIndexError(f"Slot {position}: control equals target")
    elif isinstance(slot, (ParamGate, FixedGate)):
        if not 0 <= slot.qubit < n_qubits:
            raise QubitIndexError(f"Slot {position}: qubit {slot.qubit} out of range")
    else:
        raise SlotError(f"Slot {position}: unknown gate {slot!r}")


def _run(
    amplitudes: ComplexArray,
    n_qubits: int,
    slots: Iterable[GateSlot],
    batched: bool = False,
) -> ComplexArray:
    for slot in slots:
        if isinstance(slot, Entangler):
            amplitudes = _apply_2q(
                amplitudes, n_qubits, EntanglerKind(slot.kind), slot.control, slot.target
            )
        elif batched:
            amplitudes = apply_1q_batch(
                amplitudes, n_qubits, slot.qubit, slot.unitary().matrix
            )
        else:
            amplitudes = _apply_1q(amplitudes, n_qubits, slot.qubit, slot.unitary().matrix)
    return amplitudes


def evaluate(c: Circuit) -> StateVector:
    """Apply every slot in order to the initial state."""
    return StateVector(c.n_qubits, _run(c.start.amplitudes, c.n_qubits, c.slots))


def energy(c: Circuit, m: PauliSum) -> float:
    return expectation(m, evaluate(c))


def substitution_states(
    c: Circuit, slot: int, unitaries: Sequence[Unitary2] | ComplexArray
) -> ComplexArray:
    """Output amplitudes, one row per unitary placed at ``slot``.

    The prefix state before ``slot`` is computed once and shared.
    """
    gate = c.param(slot)
    if isinstance(unitaries, np.ndarray):
        matrices = unitaries.reshape(-1, 2, 2)
    else:
        matrices = np.stack([u.matrix for u in unitaries])
    prefix = _run(c.start.amplitudes, c.n_qubits, c.slots[:slot])
    batch = np.broadcast_to(prefix, (matrices.shape[0], prefix.size))
    batch = apply_1q_batch(np.ascontiguousarray(batch), c.n_qubits, gate.qubit, matrices)
    return _run(batch, c.n_qubits, c.slots[slot + 1 :], batched=True)


def energy_with_substitution(c: Circuit, m: PauliSum, slot: int, u: Unitary2) -> float:
    """Energy with the Param gate at ``slot`` replaced by ``u``; ``c`` is unchanged."""
    return expectation_amplitudes(m, substitution_states(c, slot, [u])[0])


# -- builders -----------------------------------------------------------------


def _param_column(qubits: Iterable[int], axis: Axis, theta: float) -> list[GateSlot]:
    return [ParamGate(q, axis, theta) for q in qubits]


def _cz(pairs: Iterable[tuple[int, int]]) -> list[GateSlot]:
    return [Entangler(EntanglerKind.CZ, c, t) for c, t in pairs]


def _check_layers(layers: int) -> None:
    if layers < 1:
        raise SlotError(f"layers must be at least 1, got {layers}")


def single_qubit_ansatz(axis: Axis = AXIS_Y, theta: float = 0.0) -> Circuit:
    return Circuit(1, (ParamGate(0, axis, theta),))


def two_qubit_ansatz(axis: Axis = AXIS_Y, theta: float = 0.0) -> Circuit:
    """Param on q0 and q1, CX(0 -> 1), Param on q0 and q1."""
    slots: list[GateSlot] = [
        *_param_column(range(2), axis, theta),
        Entangler(EntanglerKind.CX, 0, 1),
        *_param_column(range(2), axis, theta),
    ]
    return Circuit(2, tuple(slots))


# Two drawn entangler columns per layer.
CIRCUIT_A_ENTANGLERS = ((0, 1), (2, 3), (1, 2), (3, 4))
CIRCUIT_B_ENTANGLERS = ((0, 1), (1, 2), (3, 4), (4, 5), (0, 3))


def circuit_a(layers: int, axis: Axis = AXIS_Y, theta: float = 0.0) -> Circuit:
    """5 qubits; per layer a Param column and a CZ ladder, then a closing column."""
    _check_layers(layers)
    slots: list[GateSlot] = []
    for _ in range(layers):
        slots += _param_column(range(5), axis, theta)
        slots += _cz(CIRCUIT_A_ENTANGLERS)
    slots += _param_column(range(5), axis, theta)
    return Circuit(5, tuple(slots))


def circuit_a_ryrz(layers: int) -> Circuit:
    """Circuit A where every Param position is an R_y slot followed by an R_z slot."""
    _check_layers(layers)

    def column() -> list[GateSlot]:
        out: list[GateSlot] = []
        for q in range(5):
            out += [ParamGate(q, AXIS_Y, 0.0), ParamGate(q, AXIS_Z, 0.0)]
        return out

    slots: list[GateSlot] = []
    for _ in range(layers):
        slots += column() + _cz(CIRCUIT_A_ENTANGLERS)
    slots += column()
    return Circuit(5, tuple(slots))


def circuit_b(layers: int, axis: Axis = AXIS_Y, theta: float = 0.0) -> Circuit:
    """6 qubits with X on q0 and q3, then Param columns between CZ blocks."""
    _check_layers(layers)
    slots: list[GateSlot] = [FixedGate(0, FixedTag.X), FixedGate(3, FixedTag.X)]
    for _ in range(layers):
        slots += _param_column(range(6), axis, theta)
        slots += _cz(CIRCUIT_B_ENTANGLERS)
    slots += _param_column(range(6), axis, theta)
    return Circuit(6, tuple(slots))


def qubo_ansatz(n_qubits: int = 10, axis: Axis = AXIS_Y, theta: float = 0.0) -> Circuit:
    """H on all qubits, a cyclic CX ring, one Param per qubit."""
    slots: list[GateSlot] = [FixedGate(q, FixedTag.H) for q in range(n_qubits)]
    slots += [
        Entangler(EntanglerKind.CX, q, (q + 1) % n_qubits) for q in range(n_qubits)
    ]
    slots += _param_column(range(n_qubits), axis, theta)
    return Circuit(n_qubits, tuple(slots))


def relax_ansatz(n_qubits: int = 4, axis: Axis = AXIS_Y, theta: float = 0.0) -> Circuit:
    """Param column, cyclic CZ ring, Param column."""
    slots: list[GateSlot] = _param_column(range(n_qubits), axis, theta)
    slots += _cz((q, (q + 1) % n_qubits) for q in range(n_qubits))
    slots += _param_column(range(n_qubits), axis, theta)
    return Circuit(n_qubits, tuple(slots))


# -- native decomposition -----------------------------------------------------


@dataclass(frozen=True)
class NativeGate:
    """Hardware-native gate: ``RZ`` with an angle, or ``SX``."""

    name: str
    angle: float = 0.0

    def unitary(self) -> Unitary2:
        if self.name == "SX":
            return Unitary2(SQRT_X)
        return rz_unitary(self.angle)


def decompose_pi_fraxis(axis: Axis) -> list[NativeGate]:
    """R_axis(pi) as Rz(pi+phi) SX Rz(pi+theta') SX Rz(pi-phi), in product order."""
    transverse = float(np.hypot(axis.nx, axis.ny))
    phi = 0.0 if transverse < 1e-15 else float(np.arctan2(axis.ny, axis.nx))
    theta_prime = 2.0 * float(np.arctan2(transverse, axis.nz))
    return [
        NativeGate("RZ", np.pi + phi),
        NativeGate("SX"),
        NativeGate("RZ", np.pi + theta_prime),
        NativeGate("SX"),
        NativeGate("RZ", np.pi - phi),
    ]


def compose_native(sequence: Sequence[NativeGate]) -> Unitary2:
    """Matrix product of ``sequence`` taken left to right."""
    total = np.eye(2, dtype=complex)
    for gate in sequence:
        total = total @ gate.unitary().matrix
    return Unitary2(total)


# -- random initialisation ----------------------------------------------------


def random_axis(rng: np.random.Generator, scheme: AxisScheme | str) -> Axis:
    """Draw an axis by uniform spherical angles or a normalized Gaussian."""
    if AxisScheme(scheme) is AxisScheme.STATE_RANDOM:
        return Axis.from_vector(rng.standard_normal(3))
    polar = rng.uniform(0.0, np.pi)
    azimuth = rng.uniform(-np.pi, np.pi)
    return Axis.from_spherical(polar, azimuth)


def random_axes(
    rng: np.random.Generator, scheme: AxisScheme | str, count: int
) -> NDArray[np.float64]:
    """Vectorized ``random_axis``; shape (count, 3)."""
    if AxisScheme(scheme) is AxisScheme.STATE_RANDOM:
        v = rng.standard_normal((count, 3))
        return v / np.linalg.norm(v, axis=1, keepdims=True)
    polar = rng.uniform(0.0, np.pi, count)
    azimuth = rng.uniform(-np.pi, np.pi, count)
    return np.stack(
        [np.sin(polar) * np.cos(azimuth), np.sin(polar) * np.sin(azimuth), np.cos(polar)],
        axis=1,
    )


def uniform_angle(rng: np.random.Generator, size: int | None = None) -> NDArray[np.float64]:
    """Uniform on (-pi, pi]."""
    return -rng.uniform(-np.pi, np.pi, size)


def randomize(
    c: Circuit,
    method: str,
    rng: np.random.Generator,
    scheme: AxisScheme | str = AxisScheme.PARAMETER_RANDOM,
    theta: float | None = None,
) -> Circuit:
    """Random starting parameters suited to ``method``.

    ``rotosolve`` keeps axes and draws angles; ``rotoselect`` draws axes from
    {x, y, z} and angles; ``pi-fraxis`` draws axes with theta = pi;
    ``theta-fraxis`` draws axes with ``theta`` or, when None, random angles.
    """
    slots = list(c.slots)
    for index in c.param_slot_indices:
        gate = c.param(index)
        if method == "rotosolve":
            new = replace(gate, theta=float(uniform_angle(rng)))
        elif method == "rotoselect":
            axis = (AXIS_X, AXIS_Y, AXIS_Z)[int(rng.integers(3))]
            new = replace(gate, axis=axis, theta=float(uniform_angle(rng)))
        elif method == "pi-fraxis":
            new = replace(gate, axis=random_axis(rng, scheme), theta=float(np.pi))
        elif method == "theta-fraxis":
            angle = float(uniform_angle(rng)) if theta is None else float(theta)
            new = replace(gate, axis=random_axis(rng, scheme), theta=angle)
        else:
            raise SlotError(f"Unknown optimization method '{method}'")
        slots[index] = new
    return Circuit(c.n_qubits, tuple(slots), c.initial_state)
