"""Fidelity sampling and KL-divergence expressibility against Haar states."""

import logging
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray

from ..errors import ExpressibilityError
from ..models.circuit import (
    AxisScheme,
    Circuit,
    Entangler,
    FixedGate,
    ParamGate,
    random_axes,
    uniform_angle,
)
from ..models.statevector import (
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    ComplexArray,
    EntanglerKind,
    _apply_2q,
    apply_1q_batch,
    rotation_matrices,
)
from ..utils.concurrency import map_ordered
from ..utils.rng import as_generator

logger = logging.getLogger(__name__)

DEFAULT_BIN_WIDTH = 0.001
DEFAULT_SAMPLES = 100_000
CHUNK_SIZE = 5_000


class Sampler(StrEnum):
    """How random parameters are drawn for each Param slot."""

    ROTOSOLVE = "rotosolve"
    ROTOSELECT = "rotoselect"
    FRAXIS_PARAMETER = "fraxis-parameter"
    FRAXIS_STATE = "fraxis-state"
    HAAR = "haar"


@dataclass
class FidelityHistogram:
    """Counts of fidelities in equal bins over [0, 1]."""

    bin_width: float
    counts: NDArray[np.int64]
    total_samples: int = 0

    @classmethod
    def empty(cls, bin_width: float = DEFAULT_BIN_WIDTH) -> "FidelityHistogram":
        if not 0 < bin_width <= 1:
            raise ExpressibilityError(f"bin_width must be in (0, 1], got {bin_width}")
        n_bins = int(round(1.0 / bin_width))
        return cls(1.0 / n_bins, np.zeros(n_bins, dtype=np.int64), 0)

    @property
    def n_bins(self) -> int:
        return self.counts.size

    @property
    def edges(self) -> NDArray[np.float64]:
        return np.linspace(0.0, 1.0, self.n_bins + 1)

    def add(self, fidelities: NDArray[np.float64]) -> None:
        f = np.clip(np.asarray(fidelities, dtype=float), 0.0, 1.0)
        index = np.minimum((f * self.n_bins).astype(np.int64), self.n_bins - 1)
        self.counts += np.bincount(index, minlength=self.n_bins)
        self.total_samples += f.size

    def merge(self, other: "FidelityHistogram") -> "FidelityHistogram":
        if other.n_bins != self.n_bins:
            raise ExpressibilityError("Cannot merge histograms with different bins")
        return FidelityHistogram(
            self.bin_width, self.counts + other.counts, self.total_samples + other.total_samples
        )

    def probabilities(self) -> NDArray[np.float64]:
        if self.total_samples < 1:
            raise ExpressibilityError("Histogram holds no samples")
        return self.counts / self.total_samples

    def to_rows(self) -> list[list[str]]:
        """Rows for the ``bin_lower,count`` dump."""
        return [
            [format(lo, ".6g"), str(int(n))] for lo, n in zip(self.edges[:-1], self.counts)
        ]


@dataclass(frozen=True)
class ExpressibilityReport:
    kl_divergence: float
    ansatz: str
    sampler: str
    n_qubits: int
    samples: int
    bin_width: float

    def to_dict(self) -> dict[str, float | int | str]:
        return {
            "kl_divergence": self.kl_divergence,
            "ansatz": self.ansatz,
            "sampler": self.sampler,
            "n_qubits": self.n_qubits,
            "samples": self.samples,
            "bin_width": self.bin_width,
        }


def haar_pdf(F: float | NDArray[np.float64], N: int) -> float | NDArray[np.float64]:
    """(N - 1)(1 - F)^(N - 2), the fidelity density of Haar-random pairs."""
    if N < 2:
        raise ExpressibilityError(f"Dimension must be at least 2, got {N}")
    return (N - 1) * (1.0 - np.asarray(F, dtype=float)) ** (N - 2)


def ry_pdf(F: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
    """Fidelity density of a single R_y gate with uniform angles."""
    f = np.asarray(F, dtype=float)
    return 1.0 / (np.pi * np.sqrt(f * (1.0 - f)))


def haar_log_bin_mass(
    lower: NDArray[np.float64], upper: NDArray[np.float64], N: int
) -> NDArray[np.float64]:
    """log of (1 - lo)^(N-1) - (1 - hi)^(N-1), stable for large N."""
    if N < 2:
        raise ExpressibilityError(f"Dimension must be at least 2, got {N}")
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    ratio = (1.0 - upper) / (1.0 - lower)
    return (N - 1) * np.log1p(-lower) + np.log1p(-(ratio ** (N - 1)))


def haar_bin_mass(
    lower: NDArray[np.float64], upper: NDArray[np.float64], N: int
) -> NDArray[np.float64]:
    return np.exp(haar_log_bin_mass(lower, upper, N))


def kl_divergence(h: FidelityHistogram, N: int) -> float:
    """sum p ln(p / q) over occupied bins, q the exact Haar mass per bin."""
    p = h.probabilities()
    edges = h.edges
    occupied = p > 0
    log_q = haar_log_bin_mass(edges[:-1][occupied], edges[1:][occupied], N)
    value = float(np.sum(p[occupied] * (np.log(p[occupied]) - log_q)))
    return max(value, 0.0)


def _sample_matrices(
    ansatz: Circuit, sampler: Sampler, rng: np.random.Generator, count: int
) -> ComplexArray:
    """Random gate matrices with shape (count, n_params, 2, 2)."""
    params = [ansatz.param(i) for i in ansatz.param_slot_indices]
    n_params = len(params)
    total = count * n_params
    if sampler is Sampler.ROTOSOLVE:
        axes = np.tile([g.axis.as_array() for g in params], (count, 1)).reshape(total, 3)
        thetas = uniform_angle(rng, total)
    elif sampler is Sampler.ROTOSELECT:
        choices = np.array(
            [AXIS_X.as_array(), AXIS_Y.as_array()]
            + ([AXIS_Z.as_array()] if ansatz.n_qubits > 1 else [])
        )
        axes = choices[rng.integers(len(choices), size=total)]
        thetas = uniform_angle(rng, total)
    else:
        scheme = (
            AxisScheme.STATE_RANDOM
            if sampler is Sampler.FRAXIS_STATE
            else AxisScheme.PARAMETER_RANDOM
        )
        axes = random_axes(rng, scheme, total)
        thetas = np.full(total, np.pi)
    return rotation_matrices(axes, thetas).reshape(count, n_params, 2, 2)


def batch_states(ansatz: Circuit, matrices: ComplexArray) -> ComplexArray:
    """Run the ansatz once per row of ``matrices`` (shape (B, n_params, 2, 2))."""
    n = ansatz.n_qubits
    count = matrices.shape[0]
    states = np.tile(ansatz.start.amplitudes, (count, 1))
    param_index = 0
    for slot in ansatz.slots:
        if isinstance(slot, ParamGate):
            states = apply_1q_batch(states, n, slot.qubit, matrices[:, param_index])
            param_index += 1
        elif isinstance(slot, FixedGate):
            states = apply_1q_batch(states, n, slot.qubit, slot.unitary().matrix)
        elif isinstance(slot, Entangler):
            states = _apply_2q(states, n, EntanglerKind(slot.kind), slot.control, slot.target)
    return states


def _random_states(
    ansatz: Circuit, sampler: Sampler, rng: np.random.Generator, count: int
) -> ComplexArray:
    if sampler is Sampler.HAAR:
        dim = 2**ansatz.n_qubits
        v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
        return v / np.linalg.norm(v, axis=1, keepdims=True)
    return batch_states(ansatz, _sample_matrices(ansatz, sampler, rng, count))


def sample_fidelity_values(
    ansatz: Circuit, sampler: Sampler | str, count: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    """Fidelities of ``count`` independent state pairs."""
    sampler = Sampler(sampler)
    a = _random_states(ansatz, sampler, rng, count)
    b = _random_states(ansatz, sampler, rng, count)
    return np.abs(np.einsum("bi,bi->b", a.conj(), b)) ** 2


def sample_fidelities(
    ansatz: Circuit,
    sampler: Sampler | str,
    count: int,
    seed: int | np.random.Generator | None = None,
    bin_width: float = DEFAULT_BIN_WIDTH,
    threads: int | None = 1,
) -> FidelityHistogram:
    """Histogram of fidelities between independently sampled ansatz states.

    Pairs are drawn in chunks with independent child generators, so the
    result depends only on ``seed``, never on ``threads``.
    """
    if count < 1:
        raise ExpressibilityError(f"count must be at least 1, got {count}")
    sampler = Sampler(sampler)
    if sampler is not Sampler.HAAR and ansatz.n_params == 0:
        raise ExpressibilityError("Ansatz has no Param slots to sample")
    sizes = [CHUNK_SIZE] * (count // CHUNK_SIZE)
    if count % CHUNK_SIZE:
        sizes.append(count % CHUNK_SIZE)
    children = as_generator(seed).spawn(len(sizes))

    def chunk(job: tuple[int, np.random.Generator]) -> FidelityHistogram:
        size, rng = job
        partial = FidelityHistogram.empty(bin_width)
        partial.add(sample_fidelity_values(ansatz, sampler, size, rng))
        return partial

    histogram = FidelityHistogram.empty(bin_width)
    for partial in map_ordered(chunk, zip(sizes, children), threads):
        histogram = histogram.merge(partial)
    return histogram


def expressibility(
    ansatz: Circuit,
    sampler: Sampler | str,
    samples: int = DEFAULT_SAMPLES,
    seed: int | np.random.Generator | None = None,
    bin_width: float = DEFAULT_BIN_WIDTH,
    ansatz_name: str = "custom",
    threads: int | None = 1,
) -> tuple[ExpressibilityReport, FidelityHistogram]:
    """KL divergence of the sampled fidelity distribution from Haar."""
    histogram = sample_fidelities(ansatz, sampler, samples, seed, bin_width, threads)
    kl = kl_divergence(histogram, 2**ansatz.n_qubits)
    logger.info("%s / %s: KL = %.6f over %d samples", ansatz_name, sampler, kl, samples)
    report = ExpressibilityReport(
        kl, ansatz_name, str(Sampler(sampler)), ansatz.n_qubits, samples, histogram.bin_width
    )
    return report, histogram
