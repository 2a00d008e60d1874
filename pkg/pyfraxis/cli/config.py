"""Experiment configs, YAML loading and builtin Hamiltonian/ansatz specifiers."""

import logging
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, TypeVar

import yaml

from ..analysis.expressibility import DEFAULT_BIN_WIDTH, DEFAULT_SAMPLES, Sampler
from ..analysis.maxcut import petersen_graph, petersen_relax_labels
from ..data.formats import load_circuit, load_graph, load_labels, load_pauli_sum
from ..errors import ConfigError, FraxisError
from ..models.circuit import (
    AxisScheme,
    Circuit,
    circuit_a,
    circuit_a_ryrz,
    circuit_b,
    qubo_ansatz,
    relax_ansatz,
    single_qubit_ansatz,
    two_qubit_ansatz,
)
from ..models.hamiltonian import Graph, PauliSum, heisenberg_1d
from ..optimizers.updates import Method

logger = logging.getLogger(__name__)


@dataclass
class OptimizeConfig:
    hamiltonian: str = "two-qubit-model"
    ansatz: str = "two-qubit"
    method: str = "pi-fraxis"
    trials: int = 1
    sweeps: int = 100
    tol: float = 1e-8
    theta: float | None = None
    shots: int | None = None
    seed: int = 0
    scheme: str = "parameter-random"
    output: str | None = None

    def validate(self) -> None:
        _check_choice("method", self.method, [m.value for m in Method])
        _check_choice("scheme", self.scheme, [s.value for s in AxisScheme])
        _check_non_negative("trials", self.trials)
        _check_non_negative("sweeps", self.sweeps)
        if self.shots is not None and self.shots < 1:
            raise ConfigError(f"shots must be at least 1, got {self.shots}")


@dataclass
class ExpressibilityConfig:
    ansatz: str = "single"
    sampler: str = "rotosolve"
    samples: int = DEFAULT_SAMPLES
    bin_width: float = DEFAULT_BIN_WIDTH
    seed: int = 0
    output: str | None = None

    def validate(self) -> None:
        _check_choice("sampler", self.sampler, [s.value for s in Sampler])
        if self.samples < 1:
            raise ConfigError(f"samples must be at least 1, got {self.samples}")
        if not 0 < self.bin_width <= 1:
            raise ConfigError(f"bin_width must be in (0, 1], got {self.bin_width}")


@dataclass
class MaxCutConfig:
    graph: str = "petersen"
    form: str = "qubo"
    labels: str | None = None
    method: str = "pi-fraxis"
    trials: int = 20
    sweeps: int = 3
    seed: int = 0
    scheme: str = "parameter-random"
    output: str | None = None

    def validate(self) -> None:
        _check_choice("form", self.form, ["qubo", "relax"])
        _check_choice("method", self.method, [m.value for m in Method if m != Method.THETA_FRAXIS])
        _check_choice("scheme", self.scheme, [s.value for s in AxisScheme])
        _check_non_negative("trials", self.trials)
        _check_non_negative("sweeps", self.sweeps)


@dataclass
class VerifyConfig:
    seed: int = 0
    instances: int = 100
    perturb_r: float = 0.0
    oracle_samples: int = 100_000

    def validate(self) -> None:
        if self.instances < 1:
            raise ConfigError(f"instances must be at least 1, got {self.instances}")
        if self.oracle_samples < 1:
            raise ConfigError(f"oracle_samples must be at least 1, got {self.oracle_samples}")


Config = TypeVar("Config", OptimizeConfig, ExpressibilityConfig, MaxCutConfig, VerifyConfig)


def _check_choice(name: str, value: str, choices: list[str]) -> None:
    if value not in choices:
        raise ConfigError(f"{name} must be one of {choices}, got '{value}'")


def _check_non_negative(name: str, value: int) -> None:
    if value < 0:
        raise ConfigError(f"{name} must be non-negative, got {value}")


def load_config_file(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to read config '{path}': {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config '{path}' must be a mapping")
    return data


def build_config(
    cls: type[Config], file_values: dict[str, Any], overrides: dict[str, Any]
) -> Config:
    """File values first, then non-None CLI overrides; unknown keys are errors."""
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(file_values) - known)
    if unknown:
        raise ConfigError(f"Unknown config keys for {cls.__name__}: {unknown}")
    values = dict(file_values)
    values.update({k: v for k, v in overrides.items() if k in known and v is not None})
    try:
        config = cls(**values)
    except TypeError as e:
        raise ConfigError(str(e)) from e
    config.validate()
    return config


def config_dict(config: Any) -> dict[str, Any]:
    return asdict(config)


def _parse_options(spec: str) -> tuple[str, dict[str, str]]:
    """``name:k=v,flag`` -> (name, {k: v, flag: 'true'})."""
    name, _, rest = spec.partition(":")
    options: dict[str, str] = {}
    if rest:
        for part in rest.split(","):
            key, eq, value = part.partition("=")
            options[key.strip()] = value.strip() if eq else "true"
    return name.strip().lower(), options


def _option(options: dict[str, str], key: str, default: Any, kind: type) -> Any:
    if key not in options:
        return default
    raw = options.pop(key)
    try:
        if kind is bool:
            return raw.lower() in ("true", "1", "yes")
        return kind(raw)
    except ValueError:
        raise ConfigError(f"Option {key}={raw!r} is not a valid {kind.__name__}") from None


def _no_leftovers(spec: str, options: dict[str, str]) -> None:
    if options:
        raise ConfigError(f"Unknown options {sorted(options)} in '{spec}'")


def two_qubit_model() -> PauliSum:
    """0.1 (XX + YY + ZZ) + 0.01 (IZ + ZI)."""
    return PauliSum.from_terms(
        2, [(0.1, "XX"), (0.1, "YY"), (0.1, "ZZ"), (0.01, "IZ"), (0.01, "ZI")]
    )


def toy_model() -> PauliSum:
    """X + Y + Z on one qubit."""
    return PauliSum.from_terms(1, [(1.0, "X"), (1.0, "Y"), (1.0, "Z")])


def resolve_hamiltonian(spec: str) -> PauliSum:
    if spec.startswith("file:"):
        return load_pauli_sum(spec[5:])
    name, options = _parse_options(spec)
    try:
        if name == "two-qubit-model":
            result = two_qubit_model()
        elif name == "toy":
            result = toy_model()
        elif name == "heisenberg":
            n = _option(options, "n", 5, int)
            J = _option(options, "J", 1.0, float)
            h = _option(options, "h", 1.0, float)
            periodic = _option(options, "periodic", False, bool)
            result = heisenberg_1d(n, J, h, periodic)
        else:
            raise ConfigError(f"Unknown Hamiltonian '{spec}'")
    except ConfigError:
        raise
    except FraxisError as e:
        raise ConfigError(f"Cannot build Hamiltonian '{spec}': {e}") from e
    _no_leftovers(spec, options)
    return result


def resolve_ansatz(spec: str) -> Circuit:
    if spec.startswith("file:"):
        return load_circuit(spec[5:])
    name, options = _parse_options(spec)
    builders = {
        "two-qubit": lambda: two_qubit_ansatz(),
        "single": lambda: single_qubit_ansatz(),
        "circuit-a": lambda: circuit_a(_option(options, "L", 1, int)),
        "circuit-b": lambda: circuit_b(_option(options, "L", 1, int)),
        "circuit-a-ryrz": lambda: circuit_a_ryrz(_option(options, "L", 1, int)),
        "qubo": lambda: qubo_ansatz(_option(options, "n", 10, int)),
        "relax": lambda: relax_ansatz(_option(options, "n", 4, int)),
    }
    if name not in builders:
        raise ConfigError(f"Unknown ansatz '{spec}'")
    try:
        result = builders[name]()
    except FraxisError as e:
        raise ConfigError(f"Cannot build ansatz '{spec}': {e}") from e
    _no_leftovers(spec, options)
    return result


def resolve_graph(spec: str) -> Graph:
    if spec == "petersen":
        return petersen_graph()
    if spec.startswith("file:"):
        return load_graph(spec[5:])
    raise ConfigError(f"Unknown graph '{spec}' (use 'petersen' or 'file:<path>')")


def resolve_labels(config: MaxCutConfig) -> dict[int, tuple[int, str]]:
    if config.labels is not None:
        return load_labels(config.labels.removeprefix("file:"))
    if config.graph == "petersen":
        return petersen_relax_labels()
    raise ConfigError("The relax form needs --labels for graphs other than petersen")
