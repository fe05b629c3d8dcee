"""Exception types shared across the package."""


class SolidCylError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SolidCylError, ValueError):
    """An argument violates a documented precondition."""


class DivergentError(DomainError):
    """The requested quantity is infinite at this argument (e.g. K(1))."""


class OnAxisError(DomainError):
    """Lateral-surface parametrization requested for an on-axis source.

    The d = 0 case has no phi_o / gamma_o geometry; callers should use the
    closed-form on-axis disc expression in omega_circ instead.
    """


class OracleFailure(SolidCylError, RuntimeError):
    """An independent verification path failed to converge to tolerance.

    Raised instead of silently returning a low-quality estimate.
    """
