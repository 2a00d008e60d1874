"""Pauli-sum Hamiltonians, MaxCut encodings and expectation values."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse
from numpy.typing import NDArray

from ..errors import DimensionError, GraphError, HamiltonianError, LabelingError
from .statevector import HADAMARD, MAX_QUBITS, StateVector, _apply_1q

logger = logging.getLogger(__name__)

PAULI_LETTERS = "IXYZ"
MAX_DENSE_QUBITS = 10

# letter_a * letter_b = phase * letter_c
_PAULI_PRODUCT: dict[tuple[str, str], tuple[complex, str]] = {
    ("I", "I"): (1, "I"),
    ("I", "X"): (1, "X"),
    ("I", "Y"): (1, "Y"),
    ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"),
    ("Y", "I"): (1, "Y"),
    ("Z", "I"): (1, "Z"),
    ("X", "X"): (1, "I"),
    ("Y", "Y"): (1, "I"),
    ("Z", "Z"): (1, "I"),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}

# Rotates the eigenbasis of a Pauli letter onto the computational basis.
_MEASUREMENT_BASIS = {
    "X": HADAMARD,
    "Y": HADAMARD @ np.diag([1, -1j]),
}


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis; ``letters[k]`` acts on qubit k."""

    letters: str

    def __post_init__(self) -> None:
        if not self.letters:
            raise HamiltonianError("Pauli string must act on at least one qubit")
        bad = set(self.letters) - set(PAULI_LETTERS)
        if bad:
            raise HamiltonianError(
                f"Invalid Pauli letters {sorted(bad)} in '{self.letters}'"
            )
        if len(self.letters) > MAX_QUBITS:
            raise HamiltonianError(f"Pauli string longer than {MAX_QUBITS} qubits")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls("I" * n_qubits)

    @classmethod
    def from_sparse(cls, n_qubits: int, letters: Mapping[int, str]) -> "PauliString":
        """Build a string from ``{qubit: letter}``, identity elsewhere."""
        chars = ["I"] * n_qubits
        for qubit, letter in letters.items():
            if not 0 <= qubit < n_qubits:
                raise HamiltonianError(f"Qubit {qubit} out of range")
            chars[qubit] = letter
        return cls("".join(chars))

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    @property
    def x_mask(self) -> int:
        return sum(1 << q for q, p in enumerate(self.letters) if p in "XY")

    @property
    def z_mask(self) -> int:
        return sum(1 << q for q, p in enumerate(self.letters) if p in "YZ")

    @property
    def support(self) -> list[int]:
        return [q for q, p in enumerate(self.letters) if p != "I"]

    def multiply(self, other: "PauliString") -> tuple[complex, "PauliString"]:
        """Operator product ``self * other`` as (phase, string)."""
        if other.n_qubits != self.n_qubits:
            raise DimensionError("Cannot multiply Pauli strings of different length")
        phase: complex = 1
        chars = []
        for a, b in zip(self.letters, other.letters):
            p, c = _PAULI_PRODUCT[(a, b)]
            phase *= p
            chars.append(c)
        return phase, PauliString("".join(chars))

    def action(self) -> tuple[NDArray[np.int64], NDArray[np.complex128]]:
        """Permutation and phases with ``(P s)[j] = phases[j] * s[perm[j]]``."""
        idx = np.arange(2**self.n_qubits)
        x, z = self.x_mask, self.z_mask
        n_y = self.letters.count("Y")
        perm = idx ^ x
        signs = 1.0 - 2.0 * (np.bitwise_count(perm & z) & 1)
        return perm, (1j**n_y) * signs

    def to_sparse(self) -> scipy.sparse.csr_array:
        perm, phases = self.action()
        dim = 2**self.n_qubits
        return scipy.sparse.csr_array((phases, (np.arange(dim), perm)), shape=(dim, dim))


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted sum of Pauli strings; identity terms hold constants."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise HamiltonianError(
                f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}"
            )
        seen: set[str] = set()
        for coefficient, string in self.terms:
            if not np.isfinite(coefficient):
                raise HamiltonianError(f"Non-finite coefficient for '{string.letters}'")
            if string.n_qubits != self.n_qubits:
                raise HamiltonianError(
                    f"Term '{string.letters}' does not act on {self.n_qubits} qubits"
                )
            if string.letters in seen:
                raise HamiltonianError(f"Duplicate term '{string.letters}'")
            seen.add(string.letters)

    @classmethod
    def from_terms(
        cls, n_qubits: int, terms: Iterable[tuple[float, PauliString | str]]
    ) -> "PauliSum":
        """Normalize terms: duplicates are merged by adding coefficients."""
        merged: dict[str, float] = {}
        for coefficient, string in terms:
            letters = string.letters if isinstance(string, PauliString) else string
            if isinstance(coefficient, complex) or np.iscomplexobj(coefficient):
                raise HamiltonianError(f"Complex coefficient for '{letters}'")
            merged[letters] = merged.get(letters, 0.0) + float(coefficient)
        return cls(
            n_qubits,
            tuple((c, PauliString(letters)) for letters, c in merged.items()),
        )

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise DimensionError("Cannot add Pauli sums on different qubit counts")
        return PauliSum.from_terms(self.n_qubits, self.terms + other.terms)

    def __mul__(self, scalar: float) -> "PauliSum":
        return PauliSum(
            self.n_qubits, tuple((scalar * c, s) for c, s in self.terms)
        )

    __rmul__ = __mul__

    def __neg__(self) -> "PauliSum":
        return self * -1.0

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, letters: str) -> float:
        """Coefficient of a string, 0.0 when absent."""
        for c, s in self.terms:
            if s.letters == letters:
                return c
        return 0.0

    @cached_property
    def sparse(self) -> scipy.sparse.csr_array:
        dim = 2**self.n_qubits
        total = scipy.sparse.csr_array((dim, dim), dtype=complex)
        for coefficient, string in self.terms:
            total = total + coefficient * string.to_sparse()
        return total

    def to_matrix(self) -> NDArray[np.complex128]:
        if self.n_qubits > MAX_DENSE_QUBITS:
            raise HamiltonianError(
                f"Dense matrices are limited to {MAX_DENSE_QUBITS} qubits"
            )
        return self.sparse.toarray()


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with edges stored as (i, j), i < j."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise GraphError("A graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        for i, j in self.edges:
            if i == j:
                raise GraphError(f"Self-loop on vertex {i}")
            if not i < j:
                raise GraphError(f"Edge ({i}, {j}) must be stored with i < j")
            if j >= self.n_vertices or i < 0:
                raise GraphError(f"Edge ({i}, {j}) references a missing vertex")
            if (i, j) in seen:
                raise GraphError(f"Duplicate edge ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Accept edges in either orientation."""
        normalized = []
        for edge in edges:
            i, j = (int(v) for v in edge)
            normalized.append((min(i, j), max(i, j)) if i != j else (i, j))
        return cls(n_vertices, tuple(normalized))

    @classmethod
    def ring(cls, n_vertices: int) -> "Graph":
        # n = 2 would otherwise list (0, 1) twice
        pairs = ((i, (i + 1) % n_vertices) for i in range(n_vertices))
        edges = {(min(i, j), max(i, j)) for i, j in pairs if i != j}
        return cls(n_vertices, tuple(sorted(edges)))

    @classmethod
    def path(cls, n_vertices: int) -> "Graph":
        return cls(n_vertices, tuple((i, i + 1) for i in range(n_vertices - 1)))


def _check_dimensions(m: PauliSum, s: StateVector) -> None:
    if m.n_qubits != s.n_qubits:
        raise DimensionError(
            f"Hamiltonian acts on {m.n_qubits} qubits, state has {s.n_qubits}"
        )


def expectation_amplitudes(m: PauliSum, amplitudes: NDArray[np.complex128]) -> float:
    """<s|M|s> on raw amplitudes."""
    if amplitudes.size != 2**m.n_qubits:
        raise DimensionError(
            f"Hamiltonian acts on {m.n_qubits} qubits, state has {amplitudes.size} amplitudes"
        )
    value = np.vdot(amplitudes, m.sparse @ amplitudes)
    scale = max(1.0, sum(abs(c) for c, _ in m.terms))
    if abs(value.imag) > 1e-9 * scale:
        raise HamiltonianError(f"Expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def expectation(m: PauliSum, s: StateVector) -> float:
    """Exact expectation value sum_k c_k <s|P_k|s>."""
    _check_dimensions(m, s)
    return expectation_amplitudes(m, s.amplitudes)


def _rotate_to_z_basis(
    amplitudes: NDArray[np.complex128], string: PauliString
) -> NDArray[np.complex128]:
    rotated = amplitudes
    for qubit, letter in enumerate(string.letters):
        if letter in _MEASUREMENT_BASIS:
            rotated = _apply_1q(rotated, string.n_qubits, qubit, _MEASUREMENT_BASIS[letter])
    return rotated


def shot_amplitudes(
    m: PauliSum,
    amplitudes: NDArray[np.complex128],
    shots: int,
    rng: np.random.Generator,
) -> float:
    """Sampled estimate of <M> on raw amplitudes, ``shots`` per term."""
    total = 0.0
    for coefficient, string in m.terms:
        if string.is_identity:
            total += coefficient
            continue
        probabilities = np.abs(_rotate_to_z_basis(amplitudes, string)) ** 2
        probabilities /= probabilities.sum()
        outcomes = rng.multinomial(shots, probabilities)
        parity = np.bitwise_count(np.arange(probabilities.size) & sum(
            1 << q for q in string.support
        )) & 1
        eigenvalues = 1.0 - 2.0 * parity
        total += coefficient * float(outcomes @ eigenvalues) / shots
    return total


def shot_expectation(
    m: PauliSum,
    s: StateVector,
    shots: int,
    seed: int | np.random.Generator | None = None,
) -> float:
    """Estimate <M> by measuring each term in its eigenbasis ``shots`` times."""
    _check_dimensions(m, s)
    if shots < 1:
        raise HamiltonianError(f"shots must be at least 1, got {shots}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return shot_amplitudes(m, s.amplitudes, shots, rng)


def ground_energy(m: PauliSum) -> tuple[float, StateVector]:
    """Minimum eigenvalue and eigenvector of the dense matrix."""
    if m.n_qubits > MAX_DENSE_QUBITS:
        raise HamiltonianError(
            f"Brute-force ground energy is limited to {MAX_DENSE_QUBITS} qubits"
        )
    values, vectors = scipy.linalg.eigh(m.to_matrix(), subset_by_index=[0, 0])
    return float(values[0]), StateVector.from_amplitudes(vectors[:, 0], normalize=True)


def eigenvalue_bounds(m: PauliSum) -> tuple[float, float]:
    """Smallest and largest eigenvalue of the dense matrix."""
    values = scipy.linalg.eigvalsh(m.to_matrix())
    return float(values[0]), float(values[-1])


def heisenberg_1d(n: int, J: float, h: float, periodic: bool) -> PauliSum:
    """J sum_<ij> (XX + YY + ZZ) + h sum_i Z_i on a ring or a path."""
    if n < 2:
        raise HamiltonianError(f"Heisenberg chain needs at least 2 sites, got {n}")
    graph = Graph.ring(n) if periodic else Graph.path(n)
    terms: list[tuple[float, PauliString]] = []
    if J != 0:
        for i, j in graph.edges:
            for letter in "XYZ":
                terms.append((J, PauliString.from_sparse(n, {i: letter, j: letter})))
    if h != 0:
        for i in range(n):
            terms.append((h, PauliString.from_sparse(n, {i: "Z"})))
    return PauliSum.from_terms(n, terms)


def maxcut_qubo(g: Graph) -> PauliSum:
    """sum_(ij) (1 - Z_i Z_j) / 2; maximized by the best cut."""
    n = g.n_vertices
    terms: list[tuple[float, PauliString]] = [
        (0.5 * len(g.edges), PauliString.identity(n))
    ]
    for i, j in g.edges:
        terms.append((-0.5, PauliString.from_sparse(n, {i: "Z", j: "Z"})))
    return PauliSum.from_terms(n, terms)


def validate_labels(
    g: Graph, labels: Mapping[int, tuple[int, str]]
) -> int:
    """Check a relaxation labelling and return the number of qubits it uses."""
    missing = set(range(g.n_vertices)) - set(labels)
    if missing:
        raise LabelingError(f"Vertices {sorted(missing)} have no Pauli label")
    used: dict[tuple[int, str], int] = {}
    for vertex, (qubit, letter) in labels.items():
        if not 0 <= vertex < g.n_vertices:
            raise LabelingError(f"Label for unknown vertex {vertex}")
        if letter not in "XYZ" or len(letter) != 1:
            raise LabelingError(f"Vertex {vertex} has invalid Pauli '{letter}'")
        if qubit < 0:
            raise LabelingError(f"Vertex {vertex} has negative qubit {qubit}")
        if (qubit, letter) in used:
            raise LabelingError(
                f"Vertices {used[(qubit, letter)]} and {vertex} share {letter}{qubit}"
            )
        used[(qubit, letter)] = vertex
    return max(qubit for qubit, _ in labels.values()) + 1


def maxcut_relax(
    g: Graph,
    labels: Mapping[int, tuple[int, str]],
    n_qubits: int | None = None,
) -> PauliSum:
    """sum_(ij) (1 - 3 W_i W_j) / 2 for single-qubit Pauli labels W."""
    needed = validate_labels(g, labels)
    n = n_qubits if n_qubits is not None else needed
    if n < needed:
        raise LabelingError(f"Labels need {needed} qubits, only {n} given")
    terms: list[tuple[float, PauliString]] = [
        (0.5 * len(g.edges), PauliString.identity(n))
    ]
    for i, j in g.edges:
        qi, pi = labels[i]
        qj, pj = labels[j]
        wi = PauliString.from_sparse(n, {qi: pi})
        wj = PauliString.from_sparse(n, {qj: pj})
        phase, product = wi.multiply(wj)
        if abs(complex(phase).imag) > 0:
            raise LabelingError(
                f"Edge ({i}, {j}): {pi}{qi}*{pj}{qj} is not Hermitian"
            )
        terms.append((-1.5 * complex(phase).real, product))
    return PauliSum.from_terms(n, terms)


def cut_value(g: Graph, m: Sequence[int]) -> int:
    """Number of edges whose endpoints carry different signs."""
    if len(m) != g.n_vertices:
        raise GraphError(f"Assignment has {len(m)} entries for {g.n_vertices} vertices")
    if any(v not in (-1, 1) for v in m):
        raise GraphError("Assignments must be +1 or -1")
    return sum(1 for i, j in g.edges if m[i] != m[j])
