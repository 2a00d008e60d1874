"""Single-gate coordinate updates: Rotosolve, Rotoselect, pi-Fraxis, theta-Fraxis."""

import logging
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import scipy.optimize
from numpy.typing import NDArray

from ..errors import InvalidAngleError, SecularSolveError
from ..models.circuit import Circuit
from ..models.hamiltonian import PauliSum
from ..models.statevector import AXIS_X, AXIS_Y, AXIS_Z, Axis, rotation_matrices
from .evaluation import Evaluator, ExactEvaluator
from .landscape import AxisModel, eig3_symmetric, estimate_axis_model

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-9
FLAT_TOL = 1e-12
TIE_TOL = 1e-12


class Method(StrEnum):
    ROTOSOLVE = "rotosolve"
    ROTOSELECT = "rotoselect"
    PI_FRAXIS = "pi-fraxis"
    THETA_FRAXIS = "theta-fraxis"


EVALUATIONS_PER_UPDATE = {
    Method.PI_FRAXIS: 6,
    Method.ROTOSELECT: 7,
    Method.ROTOSOLVE: 3,
    Method.THETA_FRAXIS: 10,
}


@dataclass(frozen=True, eq=False)
class UpdateResult:
    """Circuit after one slot update and the energy the update predicts."""

    circuit: Circuit
    slot: int
    energy: float
    axis: Axis
    theta: float
    evaluations: int


def wrap_angle(x: float) -> float:
    """Map an angle into (-pi, pi]."""
    return float(-((-x + np.pi) % (2 * np.pi)) + np.pi)


def _fit_sinusoid(e0: float, e_plus: float, e_minus: float) -> tuple[float, float, float]:
    """(a, k, delta) with E(theta) = a + k cos(theta - delta)."""
    a = 0.5 * (e_plus + e_minus)
    c = 0.5 * (e_plus - e_minus)
    b = e0 - a
    return a, float(np.hypot(b, c)), float(np.arctan2(c, b))


def _sinusoid_minimum(
    e0: float, e_plus: float, e_minus: float, fallback_theta: float
) -> tuple[float, float]:
    a, k, delta = _fit_sinusoid(e0, e_plus, e_minus)
    if k < FLAT_TOL:
        logger.debug("Flat landscape (k=%.3e); angle kept", k)
        return fallback_theta, a
    return wrap_angle(delta + np.pi), a - k


def rotosolve_update(
    c: Circuit, m: PauliSum, slot: int, evaluator: Evaluator | None = None
) -> UpdateResult:
    """Fit the sinusoid in theta at 0 and +-pi/2 and jump to its minimum."""
    evaluator = evaluator if evaluator is not None else ExactEvaluator()
    gate = c.param(slot)
    axes = np.tile(gate.axis.as_array(), (3, 1))
    energies = evaluator.energies(
        c, m, slot, rotation_matrices(axes, np.array([0.0, np.pi / 2, -np.pi / 2]))
    )
    theta, value = _sinusoid_minimum(*energies, fallback_theta=gate.theta)
    return UpdateResult(c.with_param(slot, theta=theta), slot, value, gate.axis, theta, 3)


def rotoselect_update(
    c: Circuit, m: PauliSum, slot: int, evaluator: Evaluator | None = None
) -> UpdateResult:
    """Rotosolve over x, y and z sharing E(0); lowest minimum wins, ties to x."""
    evaluator = evaluator if evaluator is not None else ExactEvaluator()
    gate = c.param(slot)
    candidates = (AXIS_X, AXIS_Y, AXIS_Z)
    axes = np.array([AXIS_X.as_array()] + [a.as_array() for a in candidates for _ in (0, 1)])
    thetas = np.array([0.0] + [np.pi / 2, -np.pi / 2] * 3)
    energies = evaluator.energies(c, m, slot, rotation_matrices(axes, thetas))
    best: tuple[float, Axis, float] | None = None
    for i, axis in enumerate(candidates):
        fallback = gate.theta if axis == gate.axis else 0.0
        theta, value = _sinusoid_minimum(
            energies[0], energies[1 + 2 * i], energies[2 + 2 * i], fallback
        )
        if best is None or value < best[0] - TIE_TOL:
            best = (value, axis, theta)
    assert best is not None
    value, axis, theta = best
    return UpdateResult(
        c.with_param(slot, axis=axis, theta=theta), slot, value, axis, theta, 7
    )


def _select_min_eigenvector(model: AxisModel, incumbent: Axis) -> tuple[NDArray[np.float64], float]:
    triple = eig3_symmetric(model.R)
    values = triple.values
    lowest = triple.vector(0)
    if values[1] - values[0] < DEGENERACY_TOL:
        # keep as close to the incumbent axis as the eigenspace allows
        span = triple.vectors[:, values - values[0] < DEGENERACY_TOL]
        projected = span @ (span.T @ incumbent.as_array())
        norm = float(np.linalg.norm(projected))
        if norm > 1e-12:
            logger.debug("Degenerate minimum eigenvalue; projecting incumbent axis")
            lowest = projected / norm
    return lowest, 0.5 * float(values[0])


def pi_fraxis_update(
    c: Circuit,
    m: PauliSum,
    slot: int,
    evaluator: Evaluator | None = None,
    select: str = "eigen",
) -> UpdateResult:
    """Axis to the minimum eigenvector of R, theta to pi.

    ``select="evaluate"`` instead scores the three eigenvectors on the circuit
    (three more evaluations).
    """
    if select not in ("eigen", "evaluate"):
        raise ValueError(f"select must be 'eigen' or 'evaluate', got {select!r}")
    evaluator = evaluator if evaluator is not None else ExactEvaluator()
    gate = c.param(slot)
    model = estimate_axis_model(c, m, slot, need_b=False, evaluator=evaluator)
    vector, value = _select_min_eigenvector(model, gate.axis)
    evaluations = 6
    if select == "evaluate":
        triple = eig3_symmetric(model.R)
        energies = evaluator.energies(
            c, m, slot, rotation_matrices(triple.vectors.T, np.full(3, np.pi))
        )
        evaluations += 3
        best = int(np.argmin(energies))
        if energies[best] < value - TIE_TOL:
            vector, value = triple.vector(best), float(energies[best])
    axis = Axis.from_vector(vector)
    logger.debug("pi-Fraxis slot %d -> axis %s energy %.10g", slot, vector, value)
    return UpdateResult(
        c.with_param(slot, axis=axis, theta=np.pi), slot, value, axis, float(np.pi), evaluations
    )


def _secular_candidates(
    A: NDArray[np.float64], beta: NDArray[np.float64]
) -> list[NDArray[np.float64]]:
    """Stationary points of n^T A n / 2 + beta.n on the unit sphere.

    Solves (A - t I) n = -beta with |n| = 1 for every real root t, plus the
    hard-case points where t sits on an eigenvalue that beta does not see.
    """
    mu, V = np.linalg.eigh(A)
    gamma = V.T @ beta
    scale = max(1.0, float(np.abs(mu).max()), float(np.linalg.norm(beta)))
    weight_floor = (1e-12 * scale) ** 2
    weights = gamma**2
    candidates: list[NDArray[np.float64]] = []

    # group (near-)degenerate eigenvalues so each pole carries its total weight
    poles: list[tuple[float, float]] = []
    inactive: list[int] = []
    for i in range(3):
        if poles and abs(mu[i] - poles[-1][0]) < 1e-12 * scale and weights[i] > weight_floor:
            p, w = poles[-1]
            poles[-1] = (p, w + weights[i])
        elif weights[i] > weight_floor:
            poles.append((float(mu[i]), float(weights[i])))
        else:
            inactive.append(i)

    active = weights > weight_floor

    def h(t: float) -> float:
        return float(np.sum(weights[active] / (mu[active] - t) ** 2) - 1.0)

    def point(t: float) -> NDArray[np.float64]:
        coeffs = np.zeros(3)
        coeffs[active] = -gamma[active] / (mu[active] - t)
        return V @ coeffs

    roots: list[float] = []
    if poles:
        total = float(sum(w for _, w in poles))
        first, w_first = poles[0]
        last, w_last = poles[-1]
        brackets = [
            (first - np.sqrt(total) - 1e-12 * scale, first - 0.5 * np.sqrt(w_first)),
            (last + 0.5 * np.sqrt(w_last), last + np.sqrt(total) + 1e-12 * scale),
        ]
        for (pa, wa), (pb, wb) in zip(poles, poles[1:]):
            lo, hi = pa + 0.5 * np.sqrt(wa), pb - 0.5 * np.sqrt(wb)
            if lo >= hi:
                continue
            inner = scipy.optimize.minimize_scalar(h, bounds=(lo, hi), method="bounded")
            t_min = float(inner.x)
            if h(t_min) < 0:
                brackets += [(lo, t_min), (t_min, hi)]
            elif abs(h(t_min)) < 1e-12:
                roots.append(t_min)
        for lo, hi in brackets:
            try:
                roots.append(float(scipy.optimize.brentq(h, lo, hi, xtol=1e-15, maxiter=500)))
            except (ValueError, RuntimeError) as e:
                raise SecularSolveError(f"Root bracketing failed on [{lo}, {hi}]: {e}") from e
        candidates += [point(t) for t in roots]

    for k in inactive:
        if np.any(active & (np.abs(mu - mu[k]) <= 1e-12 * scale)):
            continue
        coeffs = np.zeros(3)
        coeffs[active] = -gamma[active] / (mu[active] - mu[k])
        residual = 1.0 - float(coeffs @ coeffs)
        if residual < -1e-9:
            continue
        tau = np.sqrt(max(residual, 0.0))
        for sign in (1.0, -1.0):
            hard = coeffs.copy()
            hard[k] += sign * tau
            candidates.append(V @ hard)
    return candidates


def solve_theta_axis(
    model: AxisModel, theta: float, incumbent: Axis | None = None
) -> tuple[NDArray[np.float64], float]:
    """Minimum-energy unit axis at fixed ``theta`` and its landscape energy."""
    s, c = np.sin(theta / 2), np.cos(theta / 2)
    if abs(s * c) < FLAT_TOL:
        raise InvalidAngleError(
            f"theta={theta} is a multiple of pi; use the pi-Fraxis update instead"
        )
    assert model.b is not None and model.e_identity is not None
    A = s * s * model.R
    beta = s * c * model.b
    if np.linalg.norm(beta) < FLAT_TOL:
        logger.debug("Linear term vanishes; falling back to eigenvectors")
    candidates = _secular_candidates(A, beta)
    if incumbent is not None:
        candidates.append(incumbent.as_array())
    best_vector: NDArray[np.float64] | None = None
    best_value = np.inf
    for vector in candidates:
        norm = float(np.linalg.norm(vector))
        if not np.isfinite(norm) or norm < 1e-12:
            continue
        n = vector / norm
        value = 0.5 * float(n @ A @ n) + float(beta @ n)
        if value < best_value - TIE_TOL:
            best_vector, best_value = n, value
    if best_vector is None:
        raise SecularSolveError("No feasible stationary axis found")
    return best_vector, float(c * c * model.e_identity + best_value)


def theta_fraxis_update(
    c: Circuit,
    m: PauliSum,
    slot: int,
    theta: float | None = None,
    evaluator: Evaluator | None = None,
) -> UpdateResult:
    """Optimal axis at a fixed angle; ``theta=None`` uses the slot's own angle."""
    evaluator = evaluator if evaluator is not None else ExactEvaluator()
    gate = c.param(slot)
    angle = gate.theta if theta is None else float(theta)
    s, co = np.sin(angle / 2), np.cos(angle / 2)
    if abs(s * co) < FLAT_TOL:
        raise InvalidAngleError(
            f"theta={angle} is a multiple of pi; use the pi-Fraxis update instead"
        )
    model = estimate_axis_model(c, m, slot, need_b=True, evaluator=evaluator)
    incumbent = gate.axis if np.isclose(angle, gate.theta) else None
    vector, value = solve_theta_axis(model, angle, incumbent)
    axis = Axis.from_vector(vector)
    logger.debug("theta-Fraxis slot %d -> axis %s energy %.10g", slot, vector, value)
    return UpdateResult(
        c.with_param(slot, axis=axis, theta=angle), slot, value, axis, angle, 10
    )
