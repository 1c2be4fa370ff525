"""Exception types shared across the package.

Every domain error derives from WeylkitError so callers (and the service
layer) can map the whole family to one exit/status class while still
catching specific conditions.
"""


class WeylkitError(Exception):
    """Base class for all toolkit errors."""


# --- algebra construction / validation -------------------------------------

class NotNilpotent(WeylkitError):
    """Operation requires a nilpotent algebra."""


class NotADerivation(WeylkitError):
    """A supplied matrix fails the Leibniz rule; carries a witness pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonCommutingImages(WeylkitError):
    """Semidirect data maps the abelian factor to non-commuting matrices."""


# --- metric geometry --------------------------------------------------------

class NotPositiveDefinite(WeylkitError):
    """Gram matrix is not symmetric positive definite."""


class InexactSqrt(WeylkitError):
    """Exact orthonormalization hit a norm that is not a rational square."""


class DegeneratePlane(WeylkitError):
    """Sectional curvature requested for a linearly dependent pair."""


# --- Weyl / SNP analysis ----------------------------------------------------

class ZeroField(WeylkitError):
    """A nonzero field vector is required."""


class CentralField(WeylkitError):
    """Structure verification requires a non-central field."""


class NotInSnpSpace(WeylkitError):
    """The field fails the skewness / derived-orthogonality conditions."""


# --- constructors -----------------------------------------------------------

class OddDimension(WeylkitError):
    """Heisenberg construction needs an even-dimensional form."""


class DegenerateForm(WeylkitError):
    """Alternating form is degenerate where nondegeneracy is required."""


class NotSurjective(WeylkitError):
    """Pair of forms does not span the two-dimensional target."""


class NotUnimodular(WeylkitError):
    """Extension base algebra must be unimodular."""


class NotSkewDerivation(WeylkitError):
    """Matrix is not a derivation that is skew for the given metric."""


class InadmissibleParams(WeylkitError):
    """Catalog parameters violate the family's admissibility constraints."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = tuple(violations or ())


# --- text formats -----------------------------------------------------------

class ParseError(WeylkitError):
    """Lexical problem in tensor text (non-digit, wrong group length)."""


class RangeError(WeylkitError):
    """Tensor term index out of range (or a repeated row index)."""


class DuplicateTerm(WeylkitError):
    """Tensor term repeats an (unordered pair, target) combination."""


class DocumentError(WeylkitError):
    """Algebra document is malformed or inconsistent."""
