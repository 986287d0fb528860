"""Exception hierarchy shared by the engine and the CLI."""

from __future__ import annotations


class PolarError(Exception):
    """Base class for every error raised by polardeg."""

    exit_code = 2
    kind = "error"


class InputError(PolarError):
    kind = "input-error"


class ParseError(InputError):
    kind = "parse-error"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(InputError):
    kind = "unknown-variable"


class NotReduced(InputError):
    kind = "not-reduced"


class CommonComponent(InputError):
    kind = "common-component"


class PositiveDimensional(PolarError):
    """Two polynomials share a factor, so their common zero set is a curve."""

    kind = "positive-dimensional"


class InfiniteMultiplicity(PolarError):
    kind = "infinite-multiplicity"


class NonIsolatedSingularity(InputError):
    kind = "non-isolated-singularity"


class Unsupported(InputError):
    kind = "unsupported"


class Undecided(PolarError):
    """A configurable resource cap was hit; no answer is given."""

    exit_code = 3
    kind = "undecided"


class GenericityError(PolarError):
    """Seeded random choices kept failing their genericity certificate."""

    exit_code = 4
    kind = "genericity-not-achieved"


class CrossCheckFailure(PolarError):
    """Two independent routes disagree; always an implementation bug."""

    exit_code = 4
    kind = "cross-check-failure"
