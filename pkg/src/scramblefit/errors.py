"""Exception types shared across the package.

Numeric edge cases inside inference (zero-activation aggregates, inputs
outside a universe) are deliberately *not* errors: inference clamps and
flags instead of raising, so batch scoring never aborts mid-dataset.
Errors here are reserved for malformed inputs and broken configuration.
"""


class ScramblefitError(Exception):
    """Base class for all package errors."""


class InputError(ScramblefitError, ValueError):
    """A caller-supplied value is malformed (bad lengths, characters, ranges)."""


class ConfigError(ScramblefitError, ValueError):
    """A model configuration is structurally invalid or violates an invariant."""


class DegenerateOutputError(ScramblefitError, ValueError):
    """Defuzzification requested for an aggregate with zero total membership."""


class NoValidScrambleError(ScramblefitError, ValueError):
    """A word cannot be scrambled (all letters identical)."""


class UndefinedCorrelationError(ScramblefitError, ValueError):
    """Pearson correlation requested for a constant-valued sequence."""


class SessionStateError(ScramblefitError, RuntimeError):
    """A game-session action was applied in a state that does not allow it."""
