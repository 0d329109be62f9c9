"""Exception taxonomy shared across the package.

The CLI maps these onto its exit-code contract: bad input data is
distinguishable from negative mathematical answers and from internal
invariant violations (which always indicate a bug).
"""
from __future__ import annotations


class InputError(ValueError):
    """Malformed or out-of-domain input (labels, files, preconditions)."""


class AdjacentEdgesError(InputError):
    """A crossing query was made for two edges sharing an endpoint."""


class RealizabilityError(InputError):
    """A rotation system (or one of its subsystems) is not realizable.

    Carries the offending vertex tuple when known.
    """

    def __init__(self, message: str, subset: tuple[int, ...] | None = None):
        super().__init__(message)
        self.subset = subset


class NotRealizableError(RealizabilityError):
    """A constrained drawing search exhausted all branches."""


class SeparatorNotFoundError(Exception):
    """No separator edge is available for a (sub-)instance.

    Signals that the input lies outside the guaranteed class; it is a
    well-formed negative answer, not a usage error.
    """

    def __init__(self, message: str, vertices: tuple[int, ...] = ()):
        super().__init__(message)
        self.vertices = vertices


class WitnessError(InputError):
    """A required witness set is missing or fails validation."""


class SimplicityError(InputError):
    """A completion produced a non-simple drawing, violating the caller's
    promise about the input (e.g. that it was crossing-minimizing)."""

    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


class InternalInvariantError(AssertionError):
    """An internal invariant failed.  Always a bug, never a data problem."""
