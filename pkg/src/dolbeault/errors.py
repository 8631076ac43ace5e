"""Exception types raised across the package."""


class HodgeError(Exception):
    """Base class for every domain error raised by this package."""


class AmbientMismatchError(HodgeError, ValueError):
    pass


class MalformedComplexError(HodgeError, ValueError):
    """A block's shape disagrees with the bigraded support."""


class ValidationError(HodgeError):
    """A double complex violates one of its axioms.

    ``violations`` is the list of :class:`~dolbeault.double_complex.Violation`
    records produced by ``validate``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid double complex: {lines}")


class InvalidPairingError(HodgeError, ValueError):
    pass


class MalformedMorphismError(HodgeError, ValueError):
    pass


class NotE1IsomorphismError(HodgeError, ValueError):
    pass


class NotExactError(HodgeError, ValueError):
    def __init__(self, bidegree, message):
        self.bidegree = bidegree
        super().__init__(f"not short exact at {bidegree}: {message}")


class InternalInconsistencyError(HodgeError, AssertionError):
    """A computed object failed a check that the mathematics guarantees."""


class InvalidRankError(HodgeError, ValueError):
    pass


class InvalidCodimensionError(HodgeError, ValueError):
    pass


class CenterDimensionError(HodgeError, ValueError):
    pass


class InvalidInputError(HodgeError, ValueError):
    pass


class NotFoundError(HodgeError, KeyError):
    def __init__(self, name, available):
        self.name = name
        self.available = sorted(available)
        super().__init__(f"unknown name {name!r}; available: {', '.join(self.available)}")

    def __str__(self):
        return self.args[0]


class FormatError(HodgeError, ValueError):
    """Malformed JSON or scalar text; ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ExprSyntaxError(HodgeError, ValueError):
    """Construction-expression syntax error at byte ``offset``."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        exp = f"; expected one of: {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{exp}")


class EvaluationError(HodgeError):
    """Wraps an error raised while evaluating a construction expression."""

    def __init__(self, path, cause):
        self.path = path
        self.cause = cause
        super().__init__(f"at {path}: {cause}")
