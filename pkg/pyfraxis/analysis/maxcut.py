"""MaxCut helpers: the Petersen benchmark, exhaustive optimum and rounding."""

import logging
from typing import Mapping

import numpy as np

from ..errors import GraphError
from ..models.hamiltonian import Graph, PauliString, PauliSum, expectation
from ..models.statevector import StateVector

logger = logging.getLogger(__name__)

MAX_BRUTE_FORCE_VERTICES = 20


def petersen_graph() -> Graph:
    """Inner pentagram 0..4, outer cycle 5..9, spokes i - (i + 5)."""
    spokes = [(i, i + 5) for i in range(5)]
    outer = [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
    inner = [(i, (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, spokes + outer + inner)


def petersen_relax_labels() -> dict[int, tuple[int, str]]:
    """Vertex -> (qubit, Pauli) packing the Petersen graph onto 4 qubits."""
    return {
        0: (2, "Y"),
        1: (0, "Y"),
        2: (0, "Z"),
        3: (3, "Y"),
        4: (3, "X"),
        5: (0, "X"),
        6: (2, "Z"),
        7: (3, "Z"),
        8: (1, "X"),
        9: (2, "X"),
    }


def brute_force_maxcut(g: Graph) -> tuple[int, list[int]]:
    """Best cut over all 2^|V| assignments and the first assignment reaching it."""
    n = g.n_vertices
    if n > MAX_BRUTE_FORCE_VERTICES:
        raise GraphError(f"Exhaustive MaxCut is limited to {MAX_BRUTE_FORCE_VERTICES} vertices")
    if not g.edges:
        return 0, [1] * n
    index = np.arange(2**n)
    edges = np.array(g.edges)
    differs = ((index[:, None] >> edges[:, 0]) ^ (index[:, None] >> edges[:, 1])) & 1
    cuts = differs.sum(axis=1)
    best = int(np.argmax(cuts))
    assignment = [1 - 2 * ((best >> v) & 1) for v in range(n)]
    return int(cuts[best]), assignment


def sign_round(
    state: StateVector, g: Graph, labels: Mapping[int, tuple[int, str]]
) -> list[int]:
    """m_i = sign(<W_i>) with zero mapped to +1.

    A sign-rounding surrogate for magic-state rounding of a relaxed state.
    """
    assignment = []
    for vertex in range(g.n_vertices):
        qubit, letter = labels[vertex]
        w = PauliString.from_sparse(state.n_qubits, {qubit: letter})
        value = expectation(PauliSum(state.n_qubits, ((1.0, w),)), state)
        assignment.append(-1 if value < -1e-12 else 1)
    return assignment


def qubo_rounding(state: StateVector) -> list[int]:
    """Assignment read from the most probable basis state; bit 1 means -1."""
    best = int(np.argmax(state.probabilities()))
    return [1 - 2 * ((best >> q) & 1) for q in range(state.n_qubits)]

