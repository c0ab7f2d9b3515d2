"""Exception types shared across the package."""


class PoleError(ValueError):
    """Evaluation requested exactly at a pole."""


class CutAmbiguityError(ValueError):
    """Argument lies on a branch cut and no side was supplied."""


class MembershipError(ValueError):
    """Function is not transformable at this q (integrand not absolutely integrable)."""


class BoundaryRegimeError(ValueError):
    """Closed form degenerates at the regime boundary; use quadrature instead."""


class InversionDomainError(ValueError):
    """Function has no classical Fourier transform; inversion pipeline does not apply."""


class AliasingError(ValueError):
    """Sample grid too coarse for the requested reconstruction extent."""


class ConvergenceError(RuntimeError):
    """Iteration or subdivision budget exhausted before reaching tolerance.

    Carries the best available estimate so callers can degrade gracefully.
    """

    def __init__(self, message, value=None, err=None):
        super().__init__(message)
        self.value = value
        self.err = err


class TruncationError(RuntimeError):
    """Contour truncated too early: integrand tail at +-T is not negligible."""

    def __init__(self, message, suggested_T=None, tail=None):
        super().__init__(message)
        self.suggested_T = suggested_T
        self.tail = tail


class LimitFailureError(RuntimeError):
    """Values along the epsilon schedule do not contract toward a limit."""
