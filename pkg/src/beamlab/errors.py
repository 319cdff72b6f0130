"""Exception hierarchy for beamlab.

Every error raised deliberately by this package derives from BeamLabError so
callers can catch the whole family at an API boundary (the CLI does exactly
that and maps them onto exit status 2).
"""


class BeamLabError(Exception):
    """Base class for all errors raised by beamlab."""


class CutoffError(BeamLabError):
    """A Fock level, dimension, or pair of operands does not fit the cutoff."""


class TruncationError(BeamLabError):
    """Probability mass above the cutoff exceeds the allowed tail bound."""


class DegenerateInputError(BeamLabError):
    """The input state or ensemble carries no usable weight."""


class UndefinedStateError(BeamLabError):
    """A derived state has zero normalization (e.g. photon subtraction from vacuum)."""


class SupportError(BeamLabError):
    """Relative entropy requested outside the support of the reference state."""


class DomainError(BeamLabError):
    """Parameter or operand outside the mathematical domain of an operation."""


class FiniteDimensionError(BeamLabError):
    """Operation is only defined for states with finite Fock support."""


class GridError(BeamLabError):
    """Transmission grid does not satisfy the requirements of a check."""


class StateSpecError(BeamLabError):
    """A state-spec string could not be parsed.

    Carries the byte offset of the failure and the token classes that would
    have been accepted there, so the CLI can print actionable messages.
    """

    def __init__(self, message, offset=None, expected=None):
        super().__init__(message)
        self.offset = offset
        self.expected = tuple(expected) if expected else ()
