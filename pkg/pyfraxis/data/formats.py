"""Line-oriented text formats for Hamiltonians, graphs, circuits and labellings.

Pauli sum: ``<coefficient> <letters>`` per line, leftmost letter on qubit 0.
Graph: ``<n_vertices>`` then one ``i j`` edge per line.
Circuit: ``qubits <n>`` then ``param q nx ny nz theta``, ``fixed q H|X|SX``,
``cx c t`` or ``cz c t`` per line.
Labelling: ``<vertex> <qubit> <X|Y|Z>`` per line.

In every format ``#`` starts a comment and blank lines are ignored.
"""

from pathlib import Path
from typing import Iterator

import numpy as np

from ..errors import FraxisError
from ..models.circuit import Circuit, Entangler, FixedGate, FixedTag, GateSlot, ParamGate
from ..models.hamiltonian import Graph, PauliString, PauliSum
from ..models.statevector import Axis, EntanglerKind
from .persistence import PersistenceError


class FormatError(PersistenceError):
    """A text file could not be parsed; ``line_number`` is 1-based or None."""

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


def _int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} '{token}' is not an integer", number) from None


def _float(token: str, number: int, what: str) -> float:
    if "j" in token.lower():
        raise FormatError(f"complex {what} '{token}' is not supported", number)
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"{what} '{token}' is not a number", number) from None
    if not np.isfinite(value):
        raise FormatError(f"{what} '{token}' is not finite", number)
    return value


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise PersistenceError(f"Failed to read '{path}': {e}") from e


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise PersistenceError(f"Failed to write '{path}': {e}") from e


# -- Pauli sums ---------------------------------------------------------------


def parse_pauli_sum(text: str) -> PauliSum:
    """Parse terms; duplicate strings are merged by adding coefficients."""
    terms: list[tuple[float, str]] = []
    n_qubits: int | None = None
    for number, tokens in _lines(text):
        if len(tokens) != 2:
            raise FormatError("expected '<coefficient> <pauli letters>'", number)
        coefficient = _float(tokens[0], number, "coefficient")
        letters = tokens[1].upper()
        try:
            PauliString(letters)
        except FraxisError as e:
            raise FormatError(str(e), number) from e
        if n_qubits is None:
            n_qubits = len(letters)
        elif len(letters) != n_qubits:
            raise FormatError(
                f"term '{letters}' has {len(letters)} qubits, expected {n_qubits}", number
            )
        terms.append((coefficient, letters))
    if n_qubits is None:
        raise FormatError("no terms found")
    return PauliSum.from_terms(n_qubits, terms)


def serialize_pauli_sum(m: PauliSum) -> str:
    return "".join(f"{c!r} {s.letters}\n" for c, s in m.terms)


def load_pauli_sum(path: str | Path) -> PauliSum:
    return parse_pauli_sum(_read(path))


def save_pauli_sum(m: PauliSum, path: str | Path) -> None:
    _write(path, serialize_pauli_sum(m))


# -- graphs -------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    n_vertices: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for number, tokens in _lines(text):
        if n_vertices is None:
            if len(tokens) != 1:
                raise FormatError("first line must be the vertex count", number)
            n_vertices = _int(tokens[0], number, "vertex count")
            if n_vertices < 1:
                raise FormatError("vertex count must be positive", number)
            continue
        if len(tokens) != 2:
            raise FormatError("expected 'i j'", number)
        i, j = (_int(t, number, "vertex") for t in tokens)
        if i == j:
            raise FormatError(f"self-loop on vertex {i}", number)
        if not (0 <= i < n_vertices and 0 <= j < n_vertices):
            raise FormatError(f"edge ({i}, {j}) references a missing vertex", number)
        edge = (min(i, j), max(i, j))
        if edge in seen:
            raise FormatError(f"duplicate edge {edge}", number)
        seen.add(edge)
        edges.append(edge)
    if n_vertices is None:
        raise FormatError("empty graph file")
    return Graph(n_vertices, tuple(edges))


def serialize_graph(g: Graph) -> str:
    return f"{g.n_vertices}\n" + "".join(f"{i} {j}\n" for i, j in g.edges)


def load_graph(path: str | Path) -> Graph:
    return parse_graph(_read(path))


def save_graph(g: Graph, path: str | Path) -> None:
    _write(path, serialize_graph(g))


# -- circuits -----------------------------------------------------------------


def _parse_axis(tokens: list[str], number: int) -> Axis:
    values = [_float(t, number, "axis component") for t in tokens]
    norm = float(np.linalg.norm(values))
    if abs(norm - 1.0) > 1e-6:
        raise FormatError(f"axis {values} is not unit-norm", number)
    try:
        return Axis(*values)
    except FraxisError:
        return Axis.from_vector(values)


def parse_circuit(text: str) -> Circuit:
    n_qubits: int | None = None
    slots: list[GateSlot] = []
    for number, tokens in _lines(text):
        keyword = tokens[0].lower()
        if n_qubits is None:
            if keyword != "qubits" or len(tokens) != 2:
                raise FormatError("first line must be 'qubits <n>'", number)
            n_qubits = _int(tokens[1], number, "qubit count")
            continue
        if keyword == "param" and len(tokens) == 6:
            qubit = _int(tokens[1], number, "qubit")
            slot: GateSlot = ParamGate(
                qubit, _parse_axis(tokens[2:5], number), _float(tokens[5], number, "angle")
            )
        elif keyword == "fixed" and len(tokens) == 3:
            tag = tokens[2].upper()
            if tag not in FixedTag.__members__:
                raise FormatError(f"unknown fixed gate '{tokens[2]}'", number)
            slot = FixedGate(_int(tokens[1], number, "qubit"), FixedTag(tag))
        elif keyword in ("cx", "cz") and len(tokens) == 3:
            slot = Entangler(
                EntanglerKind(keyword.upper()),
                _int(tokens[1], number, "control"),
                _int(tokens[2], number, "target"),
            )
        else:
            raise FormatError(f"cannot parse '{' '.join(tokens)}'", number)
        slots.append(slot)
        try:
            Circuit(n_qubits, (slot,))
        except FraxisError as e:
            raise FormatError(str(e), number) from e
    if n_qubits is None:
        raise FormatError("empty circuit file")
    try:
        return Circuit(n_qubits, tuple(slots))
    except FraxisError as e:
        raise FormatError(str(e)) from e


def serialize_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n_qubits}"]
    for slot in c.slots:
        if isinstance(slot, ParamGate):
            a = slot.axis
            lines.append(f"param {slot.qubit} {a.nx!r} {a.ny!r} {a.nz!r} {slot.theta!r}")
        elif isinstance(slot, FixedGate):
            lines.append(f"fixed {slot.qubit} {slot.tag}")
        else:
            lines.append(f"{str(slot.kind).lower()} {slot.control} {slot.target}")
    return "\n".join(lines) + "\n"


def load_circuit(path: str | Path) -> Circuit:
    return parse_circuit(_read(path))


def save_circuit(c: Circuit, path: str | Path) -> None:
    _write(path, serialize_circuit(c))


# -- labellings ---------------------------------------------------------------


def parse_labels(text: str) -> dict[int, tuple[int, str]]:
    labels: dict[int, tuple[int, str]] = {}
    for number, tokens in _lines(text):
        if len(tokens) != 3:
            raise FormatError("expected '<vertex> <qubit> <letter>'", number)
        vertex = _int(tokens[0], number, "vertex")
        qubit = _int(tokens[1], number, "qubit")
        letter = tokens[2].upper()
        if letter not in ("X", "Y", "Z"):
            raise FormatError(f"label '{tokens[2]}' must be X, Y or Z", number)
        if vertex in labels:
            raise FormatError(f"vertex {vertex} labelled twice", number)
        labels[vertex] = (qubit, letter)
    return labels


def serialize_labels(labels: dict[int, tuple[int, str]]) -> str:
    return "".join(f"{v} {q} {p}\n" for v, (q, p) in sorted(labels.items()))


def load_labels(path: str | Path) -> dict[int, tuple[int, str]]:
    return parse_labels(_read(path))
