"""Self-check suites run by ``pyfraxis verify``."""

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import FraxisError
from ..models.circuit import (
    Circuit,
    compose_native,
    decompose_pi_fraxis,
    energy,
    energy_with_substitution,
    randomize,
    single_qubit_ansatz,
    two_qubit_ansatz,
)
from ..models.hamiltonian import PauliSum, ground_energy
from ..models.statevector import (
    Axis,
    rotation_unitary,
    universal_factors,
    universal_unitary,
)
from ..optimizers.evaluation import ExactEvaluator
from ..optimizers.landscape import eig3_symmetric, estimate_axis_model
from ..optimizers.updates import (
    EVALUATIONS_PER_UPDATE,
    Method,
    pi_fraxis_update,
    rotoselect_update,
    rotosolve_update,
    theta_fraxis_update,
)
from .config import VerifyConfig, toy_model, two_qubit_model

logger = logging.getLogger(__name__)

TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def random_pauli_sum(n_qubits: int, rng: np.random.Generator) -> PauliSum:
    """Gaussian coefficients on every Pauli string of ``n_qubits``."""
    strings = ["".join(p) for p in itertools.product("IXYZ", repeat=n_qubits)]
    return PauliSum.from_terms(n_qubits, zip(rng.standard_normal(len(strings)), strings))


def random_unit(rng: np.random.Generator) -> Axis:
    return Axis.from_vector(rng.standard_normal(3))


def _random_instance(rng: np.random.Generator) -> tuple[Circuit, PauliSum, int]:
    if rng.random() < 0.5:
        circuit = randomize(single_qubit_ansatz(), "theta-fraxis", rng)
        hamiltonian = random_pauli_sum(1, rng)
    else:
        circuit = randomize(two_qubit_ansatz(), "theta-fraxis", rng)
        hamiltonian = random_pauli_sum(2, rng)
    slot = int(rng.choice(circuit.param_slot_indices))
    return circuit, hamiltonian, slot


def check_r_symmetry(config: VerifyConfig, rng: np.random.Generator) -> str:
    for _ in range(config.instances):
        circuit, hamiltonian, slot = _random_instance(rng)
        R = estimate_axis_model(circuit, hamiltonian, slot).R.copy()
        R[0, 1] += config.perturb_r
        asymmetry = float(np.abs(R - R.T).max())
        if asymmetry > TOL:
            raise AssertionError(f"R asymmetry {asymmetry:.3e}")
        triple = eig3_symmetric(R)
        residual = np.abs(R @ triple.vectors - triple.vectors * triple.values).max()
        if residual > TOL:
            raise AssertionError(f"eigen residual {residual:.3e}")
    return f"{config.instances} axis models symmetric"


def check_quadratic_form(config: VerifyConfig, rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(config.instances):
        circuit, hamiltonian, slot = _random_instance(rng)
        model = estimate_axis_model(circuit, hamiltonian, slot)
        values = eig3_symmetric(model.R).values
        for _ in range(20):
            axis = random_unit(rng)
            measured = energy_with_substitution(
                circuit, hamiltonian, slot, rotation_unitary(axis, np.pi)
            )
            worst = max(worst, abs(measured - model.quadratic(axis)))
            if not values[0] / 2 - TOL <= measured <= values[2] / 2 + TOL:
                raise AssertionError(f"energy {measured} outside eigenvalue bounds")
    if worst > TOL:
        raise AssertionError(f"quadratic form mismatch {worst:.3e}")
    return f"max deviation {worst:.2e}"


def check_two_pi_composition(config: VerifyConfig, rng: np.random.Generator) -> str:
    for _ in range(50 * config.instances):
        n1, n2 = random_unit(rng), random_unit(rng)
        a1, a2 = n1.as_array(), n2.as_array()
        dot = float(a1 @ a2)
        if abs(dot) > 1 - 1e-6:
            continue
        product = rotation_unitary(n1, np.pi) @ rotation_unitary(n2, np.pi)
        expected = rotation_unitary(Axis.from_vector(np.cross(a1, a2)), 2 * np.arccos(-dot))
        if not product.equals_up_to_phase(expected, TOL):
            raise AssertionError(f"composition fails for {a1}, {a2}")
    for _ in range(10 * config.instances):
        psi, phi, lam = rng.uniform(-np.pi, np.pi, 3)
        n1, n2 = universal_factors(psi, phi, lam)
        product = rotation_unitary(n1, np.pi) @ rotation_unitary(n2, np.pi)
        if not product.equals_up_to_phase(universal_unitary(psi, phi, lam), TOL):
            raise AssertionError(f"universality fails for {(psi, phi, lam)}")
    return "pi-rotation pairs compose as expected"


def check_native_decomposition(config: VerifyConfig, rng: np.random.Generator) -> str:
    axes = [random_unit(rng) for _ in range(50 * config.instances)]
    axes += [Axis(0.0, 0.0, 1.0), Axis(0.0, 0.0, -1.0), Axis(1.0, 0.0, 0.0)]
    for axis in axes:
        if not compose_native(decompose_pi_fraxis(axis)).equals_up_to_phase(
            rotation_unitary(axis, np.pi), TOL
        ):
            raise AssertionError(f"native sequence differs for {axis}")
    return f"{len(axes)} axes decomposed"


def check_landscape_identity(config: VerifyConfig, rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(config.instances):
        circuit, hamiltonian, slot = _random_instance(rng)
        model = estimate_axis_model(circuit, hamiltonian, slot, need_b=True)
        for _ in range(10):
            axis, theta = random_unit(rng), float(rng.uniform(-np.pi, np.pi))
            measured = energy_with_substitution(
                circuit, hamiltonian, slot, rotation_unitary(axis, theta)
            )
            worst = max(worst, abs(measured - model.energy(axis, theta)))
    if worst > TOL:
        raise AssertionError(f"landscape mismatch {worst:.3e}")
    return f"max deviation {worst:.2e}"


def check_theta_fraxis_oracle(config: VerifyConfig, rng: np.random.Generator) -> str:
    for _ in range(config.instances):
        circuit, hamiltonian, slot = _random_instance(rng)
        result = theta_fraxis_update(circuit, hamiltonian, slot, theta=np.pi / 2)
        model = estimate_axis_model(circuit, hamiltonian, slot, need_b=True)
        samples = rng.standard_normal((config.oracle_samples, 3))
        samples /= np.linalg.norm(samples, axis=1, keepdims=True)
        best = float(model.energies(samples, np.pi / 2).min())
        if result.energy > best + 1e-6:
            raise AssertionError(f"solver {result.energy} above sampled {best}")
        actual = energy(result.circuit, hamiltonian)
        if abs(actual - result.energy) > TOL:
            raise AssertionError(f"predicted {result.energy} but circuit gives {actual}")
    return (
        f"{config.instances} instances at least as good as the best of "
        f"{config.oracle_samples} random axes"
    )


def check_toy_model(config: VerifyConfig, rng: np.random.Generator) -> str:
    result = pi_fraxis_update(single_qubit_ansatz(), toy_model(), 0)
    if abs(result.energy + np.sqrt(3)) > TOL:
        raise AssertionError(f"toy energy {result.energy}")
    exact, _ = ground_energy(two_qubit_model())
    if abs(exact + 0.3) > 1e-12:
        raise AssertionError(f"two-qubit ground energy {exact}")
    return "toy model reaches -sqrt(3); two-qubit ground energy -0.3"


def check_evaluation_counts(config: VerifyConfig, rng: np.random.Generator) -> str:
    circuit, hamiltonian, slot = _random_instance(rng)
    updates = {
        Method.PI_FRAXIS: lambda e: pi_fraxis_update(circuit, hamiltonian, slot, e),
        Method.ROTOSELECT: lambda e: rotoselect_update(circuit, hamiltonian, slot, e),
        Method.ROTOSOLVE: lambda e: rotosolve_update(circuit, hamiltonian, slot, e),
        Method.THETA_FRAXIS: lambda e: theta_fraxis_update(circuit, hamiltonian, slot, 1.0, e),
    }
    for method, update in updates.items():
        evaluator = ExactEvaluator()
        update(evaluator)
        if evaluator.evaluations != EVALUATIONS_PER_UPDATE[method]:
            raise AssertionError(f"{method} used {evaluator.evaluations} evaluations")
    return "6 / 7 / 3 / 10 evaluations"


CHECKS: dict[str, Callable[[VerifyConfig, np.random.Generator], str]] = {
    "r_symmetry": check_r_symmetry,
    "quadratic_form": check_quadratic_form,
    "two_pi_composition": check_two_pi_composition,
    "native_decomposition": check_native_decomposition,
    "landscape_identity": check_landscape_identity,
    "theta_fraxis_oracle": check_theta_fraxis_oracle,
    "toy_model": check_toy_model,
    "evaluation_counts": check_evaluation_counts,
}


def run_checks(config: VerifyConfig) -> list[CheckResult]:
    """Run every check with its own generator seeded from ``config.seed``."""
    results = []
    for index, (name, check) in enumerate(CHECKS.items()):
        rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(index,)))
        start = time.perf_counter()
        try:
            detail = check(config, rng)
            passed = True
        except (AssertionError, FraxisError) as e:
            detail, passed = str(e), False
        elapsed = time.perf_counter() - start
        level = logging.INFO if passed else logging.ERROR
        logger.log(level, "%s: %s (%s)", name, "ok" if passed else "FAILED", detail)
        results.append(CheckResult(name, passed, detail, elapsed))
    return results
