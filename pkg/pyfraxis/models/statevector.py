"""Dense pure-state simulation and single-qubit rotation algebra.

Basis ordering: qubit 0 is the least-significant bit of a basis index, so
``|q_{n-1} ... q_1 q_0>`` has index ``sum(q_k << k)``. Global phases are kept;
comparisons that must ignore them use ``|tr(A^dagger B)|`` or fidelity.
"""

from dataclasses import dataclass
from enum import StrEnum
from functools import lru_cache
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import (
    DimensionError,
    InvalidAxisError,
    NotUnitaryError,
    QubitIndexError,
)

MAX_QUBITS = 16
NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

ComplexArray = NDArray[np.complex128]

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SQRT_X = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2
PAULI_MATRICES = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


class EntanglerKind(StrEnum):
    """Two-qubit entangling gates supported by the simulator."""

    CX = "CX"
    CZ = "CZ"


@dataclass(frozen=True)
class Axis:
    """Real unit vector giving the direction of a Bloch-sphere rotation."""

    nx: float
    ny: float
    nz: float

    def __post_init__(self) -> None:
        norm_sq = self.nx**2 + self.ny**2 + self.nz**2
        if not np.isfinite(norm_sq) or abs(norm_sq - 1.0) > NORM_TOL:
            raise InvalidAxisError(
                f"Axis ({self.nx}, {self.ny}, {self.nz}) is not unit-norm"
            )

    @classmethod
    def from_vector(cls, vector: ArrayLike) -> "Axis":
        """Build an axis from any non-zero 3-vector, normalizing it."""
        v = np.asarray(vector, dtype=float).reshape(3)
        norm = float(np.linalg.norm(v))
        if not np.isfinite(norm) or norm < 1e-15:
            raise InvalidAxisError(f"Cannot normalize axis vector {v.tolist()}")
        v = v / norm
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_spherical(cls, polar: float, azimuth: float) -> "Axis":
        """Axis (sin p cos a, sin p sin a, cos p)."""
        return cls.from_vector(
            [
                np.sin(polar) * np.cos(azimuth),
                np.sin(polar) * np.sin(azimuth),
                np.cos(polar),
            ]
        )

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.nx, self.ny, self.nz])

    def sigma(self) -> ComplexArray:
        """The Hermitian matrix n.sigma = nx X + ny Y + nz Z."""
        return self.nx * PAULI_X + self.ny * PAULI_Y + self.nz * PAULI_Z


AXIS_X = Axis(1.0, 0.0, 0.0)
AXIS_Y = Axis(0.0, 1.0, 0.0)
AXIS_Z = Axis(0.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class Unitary2:
    """A 2x2 unitary matrix, stored row-major and read-only."""

    matrix: ComplexArray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise NotUnitaryError(f"Expected a 2x2 matrix, got shape {m.shape}")
        residual = np.abs(m.conj().T @ m - PAULI_I).max()
        if not np.isfinite(residual) or residual > UNITARY_TOL:
            raise NotUnitaryError(f"Matrix is not unitary (residual {residual:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return Unitary2(self.matrix @ other.matrix)

    def dagger(self) -> "Unitary2":
        return Unitary2(self.matrix.conj().T)

    def overlap(self, other: "Unitary2") -> float:
        """|tr(A^dagger B)|, equal to 2 exactly when A and B differ by a phase."""
        return float(abs(np.trace(self.matrix.conj().T @ other.matrix)))

    def equals_up_to_phase(self, other: "Unitary2", tol: float = 1e-9) -> bool:
        return abs(self.overlap(other) - 2.0) <= tol


IDENTITY = Unitary2(PAULI_I)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitudes of an n-qubit pure state."""

    n_qubits: int
    amplitudes: ComplexArray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise DimensionError(
                f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}"
            )
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise DimensionError(
                f"Expected {2**self.n_qubits} amplitudes, got {amps.size}"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise DimensionError(f"State is not normalized (norm^2 = {norm_sq})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        return cls.basis(n_qubits, 0)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "StateVector":
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise DimensionError(
                f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}"
            )
        if not 0 <= index < 2**n_qubits:
            raise QubitIndexError(f"Basis index {index} out of range")
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: ArrayLike, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n_qubits = int(round(np.log2(max(amps.size, 1))))
        if 2**n_qubits != amps.size:
            raise DimensionError(f"Length {amps.size} is not a power of two")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n_qubits, amps)

    @property
    def dimension(self) -> int:
        return 2**self.n_qubits

    def probabilities(self) -> NDArray[np.float64]:
        return np.abs(self.amplitudes) ** 2


def rotation_unitary(axis: Axis | Sequence[float], theta: float) -> Unitary2:
    """R_n(theta) = cos(theta/2) I - i sin(theta/2) n.sigma."""
    if not isinstance(axis, Axis):
        axis = Axis(*(float(v) for v in axis))
    return Unitary2(
        np.cos(theta / 2) * PAULI_I - 1j * np.sin(theta / 2) * axis.sigma()
    )


def rotation_matrices(axes: NDArray[np.float64], thetas: NDArray[np.float64]) -> ComplexArray:
    """Vectorized R_n(theta) for axes of shape (B, 3) and angles of shape (B,)."""
    c = np.cos(thetas / 2)[:, None, None]
    s = np.sin(thetas / 2)[:, None, None]
    sigma = np.einsum("bk,kij->bij", axes, np.stack([PAULI_X, PAULI_Y, PAULI_Z]))
    return c * PAULI_I - 1j * s * sigma


def universal_unitary(psi: float, phi: float, lam: float) -> Unitary2:
    """The general single-qubit gate U(psi, phi, lambda)."""
    c, s = np.cos(psi / 2), np.sin(psi / 2)
    return Unitary2(
        np.array(
            [
                [c, -np.exp(1j * lam) * s],
                [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
            ]
        )
    )


def rz_unitary(angle: float) -> Unitary2:
    return Unitary2(np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)]))


def axis_angle(u: Unitary2) -> tuple[Axis, float]:
    """Axis and angle in [0, 2*pi] with u = R_n(theta) up to global phase."""
    v = u.matrix / np.sqrt(np.linalg.det(u.matrix))
    # v = a0 I - i (ax X + ay Y + az Z) with real coefficients
    a0 = v[0, 0].real
    vec = np.array([-v[1, 0].imag, v[1, 0].real, -v[0, 0].imag])
    sin_half = float(np.linalg.norm(vec))
    if sin_half < 1e-12:
        return AXIS_Z, 0.0
    theta = 2.0 * float(np.arctan2(sin_half, a0))
    return Axis.from_vector(vec), theta


def pi_pair_factors(axis: Axis, theta: float) -> tuple[Axis, Axis]:
    """Two axes whose pi-rotations compose to R_axis(theta).

    R_n1(pi) R_n2(pi) = -(n1.n2) I - i (n1 x n2).sigma, so n1 is placed in the
    plane orthogonal to ``axis`` at angle theta/2 + pi from n2.
    """
    n = axis.as_array()
    helper = np.eye(3)[int(np.argmin(np.abs(n)))]
    u = np.cross(n, helper)
    u /= np.linalg.norm(u)
    w = np.cross(n, u)
    n1 = -np.cos(theta / 2) * u - np.sin(theta / 2) * w
    return Axis.from_vector(n1), Axis.from_vector(u)


def universal_factors(psi: float, phi: float, lam: float) -> tuple[Axis, Axis]:
    """Two pi-rotation axes realizing U(psi, phi, lambda) up to global phase."""
    axis, theta = axis_angle(universal_unitary(psi, phi, lam))
    return pi_pair_factors(axis, theta)


def _check_qubit(n_qubits: int, qubit: int) -> None:
    if not 0 <= qubit < n_qubits:
        raise QubitIndexError(f"Qubit {qubit} out of range for {n_qubits} qubits")


def _apply_1q(amplitudes: ComplexArray, n_qubits: int, qubit: int, matrix: ComplexArray) -> ComplexArray:
    psi = amplitudes.reshape(2 ** (n_qubits - qubit - 1), 2, 2**qubit)
    return np.einsum("ij,hjl->hil", matrix, psi).reshape(-1)


@lru_cache(maxsize=256)
def _cx_permutation(n_qubits: int, control: int, target: int) -> NDArray[np.int64]:
    idx = np.arange(2**n_qubits)
    return idx ^ (((idx >> control) & 1) << target)


@lru_cache(maxsize=256)
def _cz_signs(n_qubits: int, control: int, target: int) -> NDArray[np.float64]:
    idx = np.arange(2**n_qubits)
    return 1.0 - 2.0 * ((idx >> control) & (idx >> target) & 1)


def _apply_2q(
    amplitudes: ComplexArray,
    n_qubits: int,
    kind: EntanglerKind,
    control: int,
    target: int,
) -> ComplexArray:
    """Controlled gate on the last axis of ``amplitudes`` (batched or not)."""
    if kind is EntanglerKind.CX:
        return amplitudes[..., _cx_permutation(n_qubits, control, target)]
    return amplitudes * _cz_signs(n_qubits, control, target)


def apply_1q(state: StateVector, qubit: int, u: Unitary2) -> StateVector:
    """Apply ``u`` to one tensor factor of ``state``."""
    _check_qubit(state.n_qubits, qubit)
    return StateVector(
        state.n_qubits, _apply_1q(state.amplitudes, state.n_qubits, qubit, u.matrix)
    )


def apply_1q_batch(
    amplitudes: ComplexArray, n_qubits: int, qubit: int, matrices: ComplexArray
) -> ComplexArray:
    """Apply per-row 2x2 matrices (shape (B, 2, 2) or (2, 2)) to a (B, 2^n) batch."""
    _check_qubit(n_qubits, qubit)
    batch = amplitudes.shape[0]
    psi = amplitudes.reshape(batch, 2 ** (n_qubits - qubit - 1), 2, 2**qubit)
    if matrices.ndim == 2:
        out = np.einsum("ij,bhjl->bhil", matrices, psi)
    else:
        out = np.einsum("bij,bhjl->bhil", matrices, psi)
    return out.reshape(batch, -1)


def apply_2q_batch(
    amplitudes: ComplexArray,
    n_qubits: int,
    kind: EntanglerKind,
    control: int,
    target: int,
) -> ComplexArray:
    _check_pair(n_qubits, control, target)
    return _apply_2q(amplitudes, n_qubits, EntanglerKind(kind), control, target)


def _check_pair(n_qubits: int, control: int, target: int) -> None:
    _check_qubit(n_qubits, control)
    _check_qubit(n_qubits, target)
    if control == target:
        raise QubitIndexError(f"Control and target are both qubit {control}")


def apply_2q(state: StateVector, kind: EntanglerKind | str, control: int, target: int) -> StateVector:
    """Apply a controlled-X or controlled-Z gate."""
    _check_pair(state.n_qubits, control, target)
    return StateVector(
        state.n_qubits,
        _apply_2q(state.amplitudes, state.n_qubits, EntanglerKind(kind), control, target),
    )


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, clipped to [0, 1]."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"Cannot compare {a.n_qubits}-qubit and {b.n_qubits}-qubit states"
        )
    return float(np.clip(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2, 0.0, 1.0))


def haar_random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-distributed pure state from a normalized complex Gaussian vector."""
    dim = 2**n_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector.from_amplitudes(amps, normalize=True)
