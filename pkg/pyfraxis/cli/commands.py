"""Command implementations: each returns a RunRecord and optionally stores it."""

import logging
from dataclasses import dataclass

import numpy as np

from ..analysis.expressibility import expressibility
from ..analysis.maxcut import brute_force_maxcut, qubo_rounding, sign_round
from ..data.persistence import RunStorage
from ..errors import ConfigError
from ..models.circuit import Circuit, evaluate, qubo_ansatz, randomize, relax_ansatz
from ..models.hamiltonian import (
    MAX_DENSE_QUBITS,
    PauliSum,
    cut_value,
    ground_energy,
    maxcut_qubo,
    maxcut_relax,
    validate_labels,
)
from ..models.run import RunRecord
from ..optimizers.evaluation import Evaluator, ExactEvaluator, ShotEvaluator
from ..optimizers.sweep import TRAJECTORY_HEADER, Trajectory, sweep
from ..optimizers.updates import EVALUATIONS_PER_UPDATE, Method
from ..utils.concurrency import map_ordered
from ..utils.rng import Stream, stream_rng
from .config import (
    ExpressibilityConfig,
    MaxCutConfig,
    OptimizeConfig,
    config_dict,
    resolve_ansatz,
    resolve_graph,
    resolve_hamiltonian,
    resolve_labels,
)

logger = logging.getLogger(__name__)

FINALS_HEADER = ("trial", "initial_energy", "final_energy", "sweeps", "status", "evals")
CUTS_HEADER = ("trial", "sweep", "expected_cut")


def _fmt(value: float) -> str:
    return format(value, ".15g")


def _statistics(values: list[float]) -> dict[str, float]:
    if not values:
        return {}
    data = np.asarray(values)
    q25, q50, q75 = np.quantile(data, [0.25, 0.5, 0.75])
    return {
        "mean": float(data.mean()),
        "std": float(data.std()),
        "min": float(data.min()),
        "q25": float(q25),
        "median": float(q50),
        "q75": float(q75),
        "max": float(data.max()),
    }


def _mean_by_sweep(series: list[list[float]]) -> list[float]:
    """Mean over trials; a trial that stopped early holds its last value."""
    depth = max(len(s) for s in series)
    padded = np.array([s + [s[-1]] * (depth - len(s)) for s in series])
    return [float(v) for v in padded.mean(axis=0)]


def _store(record: RunRecord, storage: RunStorage | None) -> RunRecord:
    if storage is not None:
        path = storage.save_run(record)
        logger.info("Stored run '%s' in %s", record.name, path)
    return record


@dataclass(frozen=True)
class _TrialSetup:
    hamiltonian: PauliSum
    ansatz: Circuit
    method: Method
    sweeps: int
    tol: float
    theta: float | None
    shots: int | None
    seed: int
    scheme: str


def _run_trial(setup: _TrialSetup, trial: int) -> Trajectory:
    """One seeded trial; depends only on (setup, trial)."""
    init_rng = stream_rng(setup.seed, trial, Stream.INIT)
    circuit = randomize(setup.ansatz, setup.method, init_rng, setup.scheme, setup.theta)
    evaluator: Evaluator = (
        ShotEvaluator(setup.shots, stream_rng(setup.seed, trial, Stream.SHOTS))
        if setup.shots is not None
        else ExactEvaluator()
    )
    trajectory = sweep(
        circuit,
        setup.hamiltonian,
        setup.method,
        max_sweeps=setup.sweeps,
        tol=setup.tol,
        theta=setup.theta,
        evaluator=evaluator,
    )
    logger.info("trial %d: final energy %.10g", trial, trajectory.final_energy)
    return trajectory


def _check_sizes(hamiltonian: PauliSum, ansatz: Circuit) -> None:
    if hamiltonian.n_qubits != ansatz.n_qubits:
        raise ConfigError(
            f"Hamiltonian acts on {hamiltonian.n_qubits} qubits, "
            f"ansatz has {ansatz.n_qubits}"
        )


def cmd_optimize(
    config: OptimizeConfig, storage: RunStorage | None = None, threads: int | None = None
) -> RunRecord:
    """Run seeded trials of one optimizer and summarize their final energies."""
    hamiltonian = resolve_hamiltonian(config.hamiltonian)
    ansatz = resolve_ansatz(config.ansatz)
    _check_sizes(hamiltonian, ansatz)
    method = Method(config.method)
    setup = _TrialSetup(
        hamiltonian,
        ansatz,
        method,
        config.sweeps,
        config.tol,
        config.theta,
        config.shots,
        config.seed,
        config.scheme,
    )
    trajectories = map_ordered(lambda t: _run_trial(setup, t), range(config.trials), threads)

    record = RunRecord(
        name=config.output or f"optimize-{method}-seed{config.seed}",
        command="optimize",
        config=config_dict(config),
    )
    finals = []
    for trial, trajectory in enumerate(trajectories):
        record.add_table(f"trajectory_{trial:03d}", TRAJECTORY_HEADER, trajectory.to_rows())
        finals.append(
            [
                str(trial),
                _fmt(trajectory.initial_energy),
                _fmt(trajectory.final_energy),
                str(trajectory.n_sweeps),
                str(trajectory.status),
                str(trajectory.evaluations),
            ]
        )
    record.add_table("finals", FINALS_HEADER, finals)

    final_energies = [t.final_energy for t in trajectories]
    expected = sum(
        t.n_sweeps * ansatz.n_params * EVALUATIONS_PER_UPDATE[method] for t in trajectories
    )
    record.summary = {
        "command": "optimize",
        "hamiltonian": config.hamiltonian,
        "ansatz": config.ansatz,
        "method": str(method),
        "trials": config.trials,
        "n_qubits": ansatz.n_qubits,
        "n_params": ansatz.n_params,
        "final_energies": final_energies,
        "final_energy": _statistics(final_energies),
        "evaluations": sum(t.evaluations for t in trajectories),
        "expected_evaluations": expected,
        "statuses": [str(t.status) for t in trajectories],
    }
    if trajectories:
        record.summary["mean_energy_by_sweep"] = _mean_by_sweep(
            [t.energy_by_sweep() for t in trajectories]
        )
    if hamiltonian.n_qubits <= MAX_DENSE_QUBITS:
        record.summary["ground_energy"] = ground_energy(hamiltonian)[0]
    return _store(record, storage)


def cmd_expressibility(
    config: ExpressibilityConfig, storage: RunStorage | None = None, threads: int | None = None
) -> RunRecord:
    ansatz = resolve_ansatz(config.ansatz)
    report, histogram = expressibility(
        ansatz,
        config.sampler,
        samples=config.samples,
        seed=config.seed,
        bin_width=config.bin_width,
        ansatz_name=config.ansatz,
        threads=threads,
    )
    record = RunRecord(
        name=config.output or f"expressibility-{config.sampler}-seed{config.seed}",
        command="expressibility",
        config=config_dict(config),
        summary={"command": "expressibility", **report.to_dict()},
    )
    record.add_table("histogram", ("bin_lower", "count"), histogram.to_rows())
    return _store(record, storage)


def cmd_maxcut(
    config: MaxCutConfig, storage: RunStorage | None = None, threads: int | None = None
) -> RunRecord:
    """Maximize a MaxCut Hamiltonian by minimizing its negation; report cuts per sweep."""
    graph = resolve_graph(config.graph)
    labels: dict[int, tuple[int, str]] | None = None
    if config.form == "qubo":
        objective = maxcut_qubo(graph)
        ansatz = qubo_ansatz(graph.n_vertices)
        rounding = "most probable basis state"
    else:
        labels = resolve_labels(config)
        n_qubits = validate_labels(graph, labels)
        if n_qubits < 2:
            raise ConfigError("The relax ansatz needs labels spanning at least 2 qubits")
        objective = maxcut_relax(graph, labels, n_qubits)
        ansatz = relax_ansatz(n_qubits)
        rounding = "sign rounding (surrogate for magic-state rounding)"
    negated = -objective
    method = Method(config.method)
    setup = _TrialSetup(
        negated, ansatz, method, config.sweeps, 0.0, None, None, config.seed, config.scheme
    )
    trajectories = map_ordered(lambda t: _run_trial(setup, t), range(config.trials), threads)

    record = RunRecord(
        name=config.output or f"maxcut-{config.form}-seed{config.seed}",
        command="maxcut",
        config=config_dict(config),
    )
    rows: list[list[str]] = []
    per_sweep: list[list[float]] = []
    rounded: list[int] = []
    for trial, trajectory in enumerate(trajectories):
        series = [-e for e in trajectory.energy_by_sweep()]
        per_sweep.append(series)
        rows += [[str(trial), str(s), _fmt(v)] for s, v in enumerate(series)]
        assert trajectory.circuit is not None
        state = evaluate(trajectory.circuit)
        if labels is not None:
            assignment = sign_round(state, graph, labels)
        else:
            assignment = qubo_rounding(state)
        rounded.append(cut_value(graph, assignment))
    record.add_table("cuts", CUTS_HEADER, rows)

    record.summary = {
        "command": "maxcut",
        "graph": config.graph,
        "form": config.form,
        "method": str(method),
        "trials": config.trials,
        "n_qubits": ansatz.n_qubits,
        "rounding": rounding,
        "rounded_cuts": rounded,
        "final_expected_cuts": [s[-1] for s in per_sweep],
    }
    if per_sweep:
        record.summary["mean_expected_cut_by_sweep"] = _mean_by_sweep(per_sweep)
    if graph.n_vertices <= 20:
        record.summary["optimal_cut"] = brute_force_maxcut(graph)[0]
    return _store(record, storage)
