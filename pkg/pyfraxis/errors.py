"""Exception hierarchy for pyfraxis."""


class FraxisError(Exception):
    """Base exception for all pyfraxis errors."""

    pass


class InvalidAxisError(FraxisError, ValueError):
    """A rotation axis is not a real unit vector."""

    pass


class NotUnitaryError(FraxisError, ValueError):
    """A 2x2 matrix failed the unitarity check."""

    pass


class QubitIndexError(FraxisError, IndexError):
    """A qubit index is out of range or control equals target."""

    pass


class DimensionError(FraxisError, ValueError):
    """Operands act on different numbers of qubits."""

    pass


class HamiltonianError(FraxisError, ValueError):
    """A Pauli sum is malformed or too large for the requested operation."""

    pass


class GraphError(FraxisError, ValueError):
    """A graph has self-loops, duplicate edges or out-of-range vertices."""

    pass


class LabelingError(FraxisError, ValueError):
    """A vertex-to-Pauli labelling cannot build a relaxation Hamiltonian."""

    pass


class SlotError(FraxisError, ValueError):
    """A gate slot index does not refer to a parametrized gate."""

    pass


class InvalidAngleError(FraxisError, ValueError):
    """A rotation angle is not admissible for the requested update."""

    pass


class EigensolveError(FraxisError, RuntimeError):
    """The 3x3 eigen-decomposition of an axis model failed."""

    pass


class SecularSolveError(FraxisError, RuntimeError):
    """Root finding for the Lagrange multiplier did not converge."""

    pass


class ExpressibilityError(FraxisError, ValueError):
    """Invalid arguments for fidelity sampling or KL scoring."""

    pass


class ConfigError(FraxisError, ValueError):
    """An experiment configuration is invalid."""

    pass
