"""Exception taxonomy shared by all modules."""


class SadikFracError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(SadikFracError):
    """Transform or special-function parameters outside the admissible range."""


class PoleAtEvaluationPoint(SadikFracError):
    """A denominator factor vanishes (within the pole guard) at the requested point."""


class Overflow(SadikFracError):
    """The true value exceeds the double-precision range."""


class NonConvergent(SadikFracError):
    """No evaluation regime reached its tolerance."""


class InvalidOrder(SadikFracError):
    """Fractional order outside the operator's admissible range."""


class InvalidGrid(SadikFracError):
    """Quadrature or sampling grid too small or malformed."""


class QuadratureFailure(SadikFracError):
    """Numerical integration failed its self-consistency check."""


class LengthMismatch(SadikFracError):
    """Initial-value sequence length does not match the derivative order."""


class NegativeDelay(SadikFracError):
    """Time delays must be nonnegative."""


class UnsupportedFunction(SadikFracError):
    """Requested function kind is outside the closed-form image table."""


class UnsupportedProduct(SadikFracError):
    """Image product not representable in the closed sum-of-terms form.

    Delays compose additively in this representation, so the current term
    algebra never actually raises this; the class is part of the public
    error taxonomy for callers that catch broadly.
    """


class DivergentTransform(SadikFracError):
    """The forward integral diverges: v**alpha does not exceed the growth rate."""


class NotConvergent(SadikFracError):
    """Limit-estimation sequence failed its agreement test."""


class PoleOnPositiveAxis(SadikFracError):
    """The image has a pole with Re(v**alpha) >= 0 away from the origin."""


class ContourFailure(SadikFracError):
    """Inversion contour refinement changed the result beyond tolerance."""


class StepOverflow(SadikFracError):
    """Time stepping produced values beyond the blow-up guard."""
