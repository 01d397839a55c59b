"""Exception hierarchy for graph reconstruction."""

from typing import Optional


class ReconstructionError(Exception):
    """Base class for every error raised by graph_recon.

    ``exit_code`` is the process exit status the CLI uses for the error.
    """

    exit_code: int = 2


class ArgumentError(ReconstructionError, ValueError):
    """An operation was called with arguments outside its contract."""


class GraphValidationError(ReconstructionError):
    """A graph is not simple, not undirected or not connected."""


class GraphFormatError(GraphValidationError):
    """A graph text file could not be parsed."""


class GeneratorError(ReconstructionError):
    """A generator spec cannot be realised (e.g. degree cap too small)."""


class StructuralError(ReconstructionError):
    """The oracle answers contradict the structure an algorithm assumes."""


class CenterSelectionError(ReconstructionError):
    """Modified-Center exceeded its while-loop cap; rerun with another seed."""


class EnumerationLimitError(ReconstructionError):
    """Shortest-path enumeration refused because a cap would be exceeded."""


class InsufficientDataError(ReconstructionError):
    """Not enough benchmark data to fit a scaling exponent."""


class IncorrectReconstructionError(ReconstructionError):
    """An exact algorithm returned an edge set different from the truth."""

    exit_code = 3

    def __init__(self, message: str, seed: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.seed = seed

    def __reduce__(self):
        # crosses the bench process pool; args alone would drop the seed
        return type(self), (self.message, self.seed)
