"""Exception hierarchy and warning categories.

Exit-code mapping used by the CLI: configuration problems exit 1,
physics/validation problems exit 2, numerical failures exit 3.
"""


class QhboundError(Exception):
    """Base class for all package errors."""


# -- configuration (exit code 1) --------------------------------------------

class ConfigError(QhboundError):
    pass


class ParseError(ConfigError):
    pass


class ValidationError(ConfigError):
    pass


# -- physics / domain (exit code 2) ------------------------------------------

class PhysicsError(QhboundError):
    pass


class OpenChannel(PhysicsError):
    pass


class WindowOpenChannel(PhysicsError):
    pass


class ChannelMismatch(PhysicsError):
    pass


class GridMismatch(PhysicsError):
    pass


class DegenerateEnergies(PhysicsError):
    pass


class AtPole(PhysicsError):
    pass


class TooManyStates(PhysicsError):
    pass


class ZeroNorm(PhysicsError):
    pass


class AmplitudeAtCutoff(PhysicsError):
    pass


class NonUniformGrid(PhysicsError):
    pass


class EmptyMatrix(PhysicsError):
    pass


# -- numerics (exit code 3) ---------------------------------------------------

class NumericalError(QhboundError):
    pass


class Overflow(NumericalError):
    pass


class NumericalBlowup(NumericalError):
    pass


class BoundaryMismatch(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class DegenerateNullSpace(NumericalError):
    pass


class InconsistentAmplitude(NumericalError):
    pass


# -- warnings ------------------------------------------------------------------

class QhboundWarning(UserWarning):
    pass


class IllConditionedBasis(QhboundWarning):
    """Off-diagonal metric entry with magnitude >= 1."""


class DegenerateSeed(QhboundWarning):
    """Both seed values of an integration were zero."""


class SkippedRoot(QhboundWarning):
    """A root was dropped (degenerate pair or defective null space)."""


def exit_code_for(exc: BaseException) -> int:
    """CLI exit code for an exception (0 is reserved for success)."""
    if isinstance(exc, ConfigError):
        return 1
    if isinstance(exc, PhysicsError):
        return 2
    if isinstance(exc, NumericalError):
        return 3
    return 3
