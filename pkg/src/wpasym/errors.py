"""Exception hierarchy shared by all modules."""


class WpasymError(Exception):
    """Base class for all library errors."""


# -- linear algebra / filtrations ------------------------------------------

class DimensionMismatch(WpasymError):
    pass


class DegenerateFiltration(WpasymError):
    """Filtration pieces are not nested."""


class NotNilpotent(WpasymError):
    pass


class IndexExceedsWeight(WpasymError):
    """No centered weight filtration exists (nilpotency index > weight)."""


class NonCommuting(WpasymError):
    pass


class GradeOutOfRange(WpasymError):
    pass


class WeightOverflow(WpasymError):
    """Combined block weight exceeds the configured bound."""


# -- limiting data ----------------------------------------------------------

class ZeroVector(WpasymError):
    pass


class WrongWeight(WpasymError):
    pass


class DomainError(WpasymError):
    """Evaluation point outside the validity region (e.g. |t| >= 1)."""


# -- potentials -------------------------------------------------------------

class NonRealCoefficient(WpasymError):
    """A pairing that must be exactly real came out complex; signals a
    sign-convention violation in the input datum."""


class NonPositive(WpasymError):
    """Potential value <= 0 at the queried point."""


class FitFailure(WpasymError):
    pass


# -- classifier -------------------------------------------------------------

class ZeroPolynomial(WpasymError):
    pass


class UnrecognizedSupport(WpasymError):
    """Monomial pattern matches no table row and no rejected shape."""


class NoRealPositiveFactor(WpasymError):
    pass


class NotPositive(WpasymError):
    """Polynomial not positive at a grid point where positivity is required."""


class NotPositiveOnK(WpasymError):
    pass


# -- metric / distance ------------------------------------------------------

class NonPositivePotential(WpasymError):
    pass


class QuadratureBlowup(WpasymError):
    """Integrand non-finite (or negative form) at a quadrature node."""


class InsufficientSpan(WpasymError):
    pass


# -- cli --------------------------------------------------------------------

class UnknownFixture(WpasymError):
    pass


class ParseError(WpasymError):
    pass


class SchemaError(WpasymError):
    pass
