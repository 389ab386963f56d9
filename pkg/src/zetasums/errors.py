"""Exception types raised by the numerical layers.

Every exception carries a short machine-readable ``code`` so the CLI can
emit structured error payloads.  ``ValueError`` is reserved for precondition
and configuration violations; subclasses of :class:`NumericalError` signal
failures of the numerics themselves.
"""

from __future__ import annotations


class NumericalError(Exception):
    """Base class for runtime numerical failures (CLI exit code 2)."""

    code = "numerical-error"

    def __init__(self, message: str, *, where: complex | float | None = None):
        super().__init__(message)
        self.where = where


class EvaluationOverflowError(NumericalError):
    """Magnitudes exceed the representable range (far left of the strip)."""

    code = "overflow"


class AtZeroError(NumericalError):
    """log|F| requested at a point indistinguishable from a zero."""

    code = "at-zero"


class ZeroOnPathError(NumericalError):
    """A path sample sits on (or unresolvably close to) a zero."""

    code = "zero-on-path"


class BoundaryZeroError(NumericalError):
    """A rectangle edge passes through a zero; shift the edge and retry."""

    code = "boundary-zero"

    def __init__(self, message: str, *, edge: str = "", where=None):
        super().__init__(message, where=where)
        self.edge = edge


class NonIntegralWindingError(NumericalError):
    """Accumulated boundary argument is not close enough to 2*pi*integer."""

    code = "non-integral-winding"


class NoConvergenceError(NumericalError):
    """Newton refinement failed to reach the residual target."""

    code = "no-convergence"


class NonconvergentPanelError(NumericalError):
    """An adaptive quadrature panel at minimum width failed its estimate."""

    code = "nonconvergent-panel"
