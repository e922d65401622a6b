"""Exception classes raised by the resonant_blocks package."""


class ResonantBlocksError(Exception):
    """Base class for all domain errors raised by this package."""


class BadMassError(ResonantBlocksError, ValueError):
    """A vertex has a mass outside {0, -2}."""

    def __init__(self, vertex):
        self.vertex = tuple(vertex)
        super().__init__(f"Vertex {list(self.vertex)} has mass {sum(self.vertex)}, expected 0 or -2.")


class DisconnectedGraphError(ResonantBlocksError, ValueError):
    """A vertex set does not induce a connected graph."""


class OddExponentError(ResonantBlocksError, ValueError):
    """A polynomial term still carries an odd power of some y_i = sqrt(xi_i)."""

    def __init__(self, term: str):
        self.term = term
        super().__init__(f"Odd exponent of a square root variable in term {term}")


class NonPositiveXiError(ResonantBlocksError, ValueError):
    """A numeric evaluation was requested at a point with some xi_i <= 0."""


class NotDegenerateError(ResonantBlocksError, ValueError):
    """An operation that needs a degenerate graph was given a non-degenerate one."""


class DimensionMismatchError(ResonantBlocksError, ValueError):
    """Vector lengths or variable counts do not agree."""


class VariableUniverseError(ResonantBlocksError, ValueError):
    """Two polynomials were combined over different variable sets."""


class PolynomialParseError(ResonantBlocksError, ValueError):
    """Polynomial text could not be parsed."""


class GraphFileError(ResonantBlocksError, ValueError):
    """A graph or sites file is malformed. Carries the location of the problem."""

    def __init__(self, file_name: str, line: int, column: int, problem: str):
        self.file_name = file_name
        self.line = line
        self.column = column
        self.problem = problem
        super().__init__(f"{file_name}:{line}:{column}: {problem}")
