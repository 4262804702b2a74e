"""Exception and warning types shared across the package."""


class DiracMatelError(Exception):
    """Base class for all package errors."""


class DomainError(DiracMatelError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class PoleError(DomainError):
    """A function was evaluated at one of its poles."""


class BranchCutError(DomainError):
    """A multivalued function was evaluated on its branch cut."""


class PreconditionError(DomainError):
    """A closed-form rule was applied outside its region of validity."""


class SubcriticalError(DomainError):
    """Z*alpha is too large for the requested kappa (gamma would be imaginary)."""


class UnsupportedM(DomainError):
    """Legendre triple integral outside the polynomial (Gaunt) family."""


class NoConvergence(DiracMatelError, ArithmeticError):
    """A series or quadrature did not reach the requested tolerance."""


class DegenerateTransformError(DiracMatelError, ArithmeticError):
    """A hypergeometric connection formula hit a removable singularity."""


class PoleMisconfigured(DiracMatelError, ValueError):
    """A principal-value grid would evaluate the integrand at the pole."""


class WindowTooWide(DiracMatelError, ValueError):
    """A principal-value window extends below k = 0."""


class CancellationWarning(RuntimeWarning):
    """Large terms cancelled; the result carries fewer significant digits."""


class TruncationWarning(RuntimeWarning):
    """The last retained shell of a truncated sum is larger than the budget."""
