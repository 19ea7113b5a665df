"""Exception taxonomy shared by all modules.

The CLI maps these onto its exit codes: invalid input is 2, a violated
verified property is 1, honest indecision is 3.
"""


class GenusOneError(Exception):
    """Base class for all library errors."""


class InvalidInputError(GenusOneError, ValueError):
    """Malformed or out-of-contract input (bad rational, overlap, schema)."""


class DomainError(GenusOneError):
    """A point fell outside a partial map's domain."""


class CompositionError(GenusOneError):
    """Two maps could not be composed (empty common domain)."""


class PlanError(GenusOneError):
    """A tube plan could not be built or no assignment verifies."""


class InvalidTubeError(GenusOneError):
    """An interval is not a remaining interval of any construction stage."""


class DepthError(GenusOneError):
    """A verification depth is too small for the requested check."""


class NoWitnessError(GenusOneError):
    """No neighborhood witness exists (interlacing number is zero)."""


class InvalidSequenceError(GenusOneError):
    """A defining sequence is unusable for the requested operation."""


class TraceRefusedError(GenusOneError):
    """Divergence traces require every order to be at least 2."""


class PropertyViolation(GenusOneError):
    """A property the library asserts unconditionally failed to hold."""
