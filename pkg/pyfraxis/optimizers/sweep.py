"""Sweep scheduler: repeated passes of single-gate updates over a circuit."""

import logging
from dataclasses import dataclass, field
from enum import StrEnum

from ..errors import EigensolveError, SecularSolveError
from ..models.circuit import Circuit
from ..models.hamiltonian import PauliSum
from .evaluation import Evaluator, ExactEvaluator
from .updates import (
    Method,
    UpdateResult,
    pi_fraxis_update,
    rotoselect_update,
    rotosolve_update,
    theta_fraxis_update,
)

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = ("sweep", "slot", "method", "energy", "nx", "ny", "nz", "theta", "evals")
MONOTONE_TOL = 1e-9


class SweepStatus(StrEnum):
    MAX_SWEEPS = "max_sweeps"
    CONVERGED = "converged"
    ERROR = "error"


@dataclass(frozen=True)
class UpdateRecord:
    sweep: int
    slot: int
    method: Method
    energy: float
    axis: tuple[float, float, float]
    theta: float
    evaluations: int


@dataclass
class Trajectory:
    """Per-update history of one optimization run."""

    method: Method
    initial_energy: float
    records: list[UpdateRecord] = field(default_factory=list)
    status: SweepStatus = SweepStatus.MAX_SWEEPS
    circuit: Circuit | None = None
    error: str | None = None

    @property
    def energies(self) -> list[float]:
        return [r.energy for r in self.records]

    @property
    def final_energy(self) -> float:
        return self.records[-1].energy if self.records else self.initial_energy

    @property
    def evaluations(self) -> int:
        return sum(r.evaluations for r in self.records)

    @property
    def n_sweeps(self) -> int:
        return self.records[-1].sweep + 1 if self.records else 0

    def energy_by_sweep(self) -> list[float]:
        """Initial energy, then the energy at the end of each sweep."""
        ends: dict[int, float] = {}
        for r in self.records:
            ends[r.sweep] = r.energy
        return [self.initial_energy] + [ends[s] for s in sorted(ends)]

    def is_monotone(self, tol: float = MONOTONE_TOL) -> bool:
        values = [self.initial_energy] + self.energies
        return all(b <= a + tol for a, b in zip(values, values[1:]))

    def to_rows(self) -> list[list[str]]:
        """CSV rows matching ``TRAJECTORY_HEADER``."""
        return [
            [
                str(r.sweep),
                str(r.slot),
                str(r.method),
                format(r.energy, ".15g"),
                *(format(v, ".15g") for v in r.axis),
                format(r.theta, ".15g"),
                str(r.evaluations),
            ]
            for r in self.records
        ]


def run_update(
    c: Circuit,
    m: PauliSum,
    slot: int,
    method: Method | str,
    evaluator: Evaluator,
    theta: float | None = None,
) -> UpdateResult:
    """Dispatch one slot update by method name."""
    match Method(method):
        case Method.ROTOSOLVE:
            return rotosolve_update(c, m, slot, evaluator)
        case Method.ROTOSELECT:
            return rotoselect_update(c, m, slot, evaluator)
        case Method.PI_FRAXIS:
            return pi_fraxis_update(c, m, slot, evaluator)
        case Method.THETA_FRAXIS:
            return theta_fraxis_update(c, m, slot, theta, evaluator)


def sweep(
    c: Circuit,
    m: PauliSum,
    method: Method | str,
    max_sweeps: int = 100,
    tol: float = 1e-8,
    theta: float | None = None,
    evaluator: Evaluator | None = None,
) -> Trajectory:
    """Update Param slots in slot order, sweep after sweep.

    Stops after ``max_sweeps`` or once a full sweep improves the energy by
    less than ``tol``; ``tol <= 0`` disables early stopping. The final circuit
    is stored on the returned trajectory.
    """
    method = Method(method)
    evaluator = evaluator if evaluator is not None else ExactEvaluator()
    trajectory = Trajectory(method, evaluator.energy(c, m), circuit=c)
    if not evaluator.exact:
        logger.warning("Shot-based evaluation: energies may increase between updates")
    current = c
    previous = trajectory.initial_energy
    slots = c.param_slot_indices
    for sweep_index in range(max_sweeps):
        for slot in slots:
            try:
                result = run_update(current, m, slot, method, evaluator, theta)
            except (EigensolveError, SecularSolveError) as e:
                logger.warning("Update of slot %d failed: %s", slot, e)
                trajectory.status = SweepStatus.ERROR
                trajectory.error = str(e)
                trajectory.circuit = current
                return trajectory
            current = result.circuit
            axis = result.axis
            trajectory.records.append(
                UpdateRecord(
                    sweep_index,
                    slot,
                    method,
                    result.energy,
                    (axis.nx, axis.ny, axis.nz),
                    result.theta,
                    result.evaluations,
                )
            )
            logger.debug(
                "sweep %d slot %d %s energy %.12g", sweep_index, slot, method, result.energy
            )
        energy_now = trajectory.final_energy
        improvement = previous - energy_now
        previous = energy_now
        if tol > 0 and slots and improvement < tol:
            trajectory.status = SweepStatus.CONVERGED
            break
    trajectory.circuit = current
    logger.info(
        "%s finished after %d sweeps (%s), energy %.10g",
        method,
        trajectory.n_sweeps,
        trajectory.status,
        trajectory.final_energy,
    )
    return trajectory
