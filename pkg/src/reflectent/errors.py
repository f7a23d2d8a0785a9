class ReflectentError(Exception):
    """Base class for library errors."""


class LabelError(ReflectentError, KeyError):
    """A subsystem label is unknown, duplicated, or misplaced."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ArgumentError(ReflectentError, ValueError):
    """An argument lies outside the domain of an operation."""


class NotHermitianError(ReflectentError, ValueError):
    """Matrix asymmetry exceeds the configured tolerance."""


class NotPSDError(ReflectentError, ValueError):
    """A matrix has an eigenvalue below the negative clamping threshold."""


class ConvergenceError(ReflectentError, RuntimeError):
    """The eigensolver hit its sweep cap before converging."""


class InvariantError(ReflectentError, ArithmeticError):
    """A computed quantity broke an inequality it must satisfy."""
