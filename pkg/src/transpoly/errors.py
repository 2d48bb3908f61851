class ParameterError(ValueError):
    """Family parameters (n, i, j) outside the admissible range."""


class ShapeError(ValueError):
    """Matrix / vector dimensions do not fit the operation."""


class PresentationParseError(ValueError):
    """A presentation file could not be parsed."""


class DomainError(ValueError):
    """An operation was called outside its hypotheses."""


class InconclusiveBound(RuntimeError):
    """A brute-force search hit its degree cap before saturating."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class ConsistencyError(AssertionError):
    """Two routes that must agree did not."""
