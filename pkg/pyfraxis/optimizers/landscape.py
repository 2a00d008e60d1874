"""Local energy landscape of one Param gate.

Replacing a gate by R_n(theta) gives

    E(n, theta) = cos^2(theta/2) e_I + sin(theta/2) cos(theta/2) b.n
                  + sin^2(theta/2) n^T R n / 2

where R is a symmetric 3x3 matrix measured from six Pauli-like substitutions
and b_j = i tr(M [rho, sigma_j]) is stored as a real vector.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from ..errors import EigensolveError
from ..models.circuit import Circuit
from ..models.hamiltonian import PauliSum
from ..models.statevector import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, Axis
from .evaluation import Evaluator, ExactEvaluator

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9

_SQRT_HALF = np.sqrt(0.5)

# x, y, z, (x+y)/sqrt2, (x+z)/sqrt2, (y+z)/sqrt2 as n.sigma
SUBSTITUTIONS = np.stack(
    [
        PAULI_X,
        PAULI_Y,
        PAULI_Z,
        _SQRT_HALF * (PAULI_X + PAULI_Y),
        _SQRT_HALF * (PAULI_X + PAULI_Z),
        _SQRT_HALF * (PAULI_Y + PAULI_Z),
    ]
)

# identity, then R_j(pi/2) = (I - i sigma_j)/sqrt2 for j = x, y, z
LINEAR_SUBSTITUTIONS = np.stack(
    [PAULI_I] + [_SQRT_HALF * (PAULI_I - 1j * s) for s in (PAULI_X, PAULI_Y, PAULI_Z)]
)


@dataclass(frozen=True, eq=False)
class AxisModel:
    """R, b and e_I for one slot; b and e_I are None when not measured."""

    r_elements: NDArray[np.float64]
    R: NDArray[np.float64]
    b: NDArray[np.float64] | None = None
    e_identity: float | None = None

    @classmethod
    def from_r_elements(
        cls,
        r_elements: NDArray[np.float64],
        b: NDArray[np.float64] | None = None,
        e_identity: float | None = None,
    ) -> "AxisModel":
        r = np.asarray(r_elements, dtype=float)
        return cls(r, assemble_r(r), b, e_identity)

    @property
    def has_linear_term(self) -> bool:
        return self.b is not None and self.e_identity is not None

    def quadratic(self, axis: Axis | NDArray[np.float64]) -> float:
        """n^T R n / 2, the energy at theta = pi."""
        n = axis.as_array() if isinstance(axis, Axis) else np.asarray(axis)
        return 0.5 * float(n @ self.R @ n)

    def energy(self, axis: Axis | NDArray[np.float64], theta: float) -> float:
        if not self.has_linear_term:
            raise EigensolveError("Axis model was estimated without b and e_I")
        assert self.b is not None and self.e_identity is not None
        n = axis.as_array() if isinstance(axis, Axis) else np.asarray(axis)
        c, s = np.cos(theta / 2), np.sin(theta / 2)
        return float(
            c * c * self.e_identity + s * c * (self.b @ n) + s * s * self.quadratic(n)
        )

    def energies(self, axes: NDArray[np.float64], theta: float) -> NDArray[np.float64]:
        """Energy for every row of ``axes`` (shape (k, 3)) at one angle."""
        if not self.has_linear_term:
            raise EigensolveError("Axis model was estimated without b and e_I")
        assert self.b is not None and self.e_identity is not None
        n = np.asarray(axes, dtype=float)
        c, s = np.cos(theta / 2), np.sin(theta / 2)
        quadratic = 0.5 * np.einsum("ki,ij,kj->k", n, self.R, n)
        return c * c * self.e_identity + s * c * (n @ self.b) + s * s * quadratic


@dataclass(frozen=True, eq=False)
class EigenTriple:
    """Ascending eigenvalues; eigenvectors are the columns of ``vectors``."""

    values: NDArray[np.float64]
    vectors: NDArray[np.float64]

    def vector(self, i: int) -> NDArray[np.float64]:
        return self.vectors[:, i]


def assemble_r(r: NDArray[np.float64]) -> NDArray[np.float64]:
    """Symmetric R from (r_x, r_y, r_z, r_xy, r_xz, r_yz)."""
    rx, ry, rz, rxy, rxz, ryz = (float(v) for v in r)
    off_xy = 2.0 * rxy - rx - ry
    off_xz = 2.0 * rxz - rx - rz
    off_yz = 2.0 * ryz - ry - rz
    return np.array(
        [
            [2.0 * rx, off_xy, off_xz],
            [off_xy, 2.0 * ry, off_yz],
            [off_xz, off_yz, 2.0 * rz],
        ]
    )


def eig3_symmetric(R: NDArray[np.float64]) -> EigenTriple:
    """Sorted eigenpairs with the first non-negligible component of each vector positive."""
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise EigensolveError(f"Expected a 3x3 matrix, got shape {R.shape}")
    asymmetry = float(np.abs(R - R.T).max())
    scale = max(1.0, float(np.abs(R).max()))
    if not np.isfinite(asymmetry) or asymmetry > SYMMETRY_TOL * scale:
        raise EigensolveError(f"Matrix is not symmetric (asymmetry {asymmetry:.3e})")
    try:
        values, vectors = scipy.linalg.eigh(0.5 * (R + R.T))
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigensolveError(f"Eigendecomposition failed: {e}") from e
    for i in range(3):
        column = vectors[:, i]
        lead = np.flatnonzero(np.abs(column) > 1e-12)
        if lead.size and column[lead[0]] < 0:
            vectors[:, i] = -column
    return EigenTriple(values, vectors)


def estimate_axis_model(
    c: Circuit,
    m: PauliSum,
    slot: int,
    need_b: bool = False,
    evaluator: Evaluator | None = None,
) -> AxisModel:
    """Six substitutions for R; four more for e_I and b when ``need_b``."""
    evaluator = evaluator if evaluator is not None else ExactEvaluator()
    r = evaluator.energies(c, m, slot, SUBSTITUTIONS)
    if not need_b:
        return AxisModel.from_r_elements(r)
    linear = evaluator.energies(c, m, slot, LINEAR_SUBSTITUTIONS)
    e_identity = float(linear[0])
    b = 2.0 * linear[1:] - e_identity - r[:3]
    logger.debug("Slot %d: r=%s b=%s e_I=%.6g", slot, r, b, e_identity)
    return AxisModel.from_r_elements(r, b, e_identity)
