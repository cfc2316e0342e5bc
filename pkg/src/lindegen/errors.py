"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the command line
front end reports as ``{"error": code, "detail": message}``.
"""


class LindegenError(ValueError):
    code = "Error"

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail


class NonRealizable(LindegenError):
    """A rank tuple yields a negative multiplicity."""

    code = "NonRealizable"


class InvalidParams(LindegenError):
    """Parameters of a named representation are out of range."""

    code = "InvalidParams"


class LengthMismatch(LindegenError):
    """Vectors of different lengths were combined."""

    code = "LengthMismatch"


class DimMismatch(LindegenError):
    """Dimension vectors do not match."""

    code = "DimMismatch"


class EmptyStratum(LindegenError):
    """The requested subrepresentation type does not occur."""

    code = "EmptyStratum"


class WrongDims(LindegenError):
    """The operation needs every vertex dimension equal to n+1."""

    code = "WrongDims"


class NoWitness(LindegenError):
    """A flat irreducible point has no witness."""

    code = "NoWitness"


class InvalidScheme(LindegenError):
    """Not a broken rhyme scheme."""

    code = "InvalidScheme"


class NotRegular(LindegenError):
    """Rhyme scheme repeats a nonzero value."""

    code = "NotRegular"


class ShapeMismatch(LindegenError):
    """Matrix shapes are incompatible."""

    code = "ShapeMismatch"


class NegativeMultiplicity(LindegenError):
    """Arc data gives a negative multiplicity."""

    code = "NegativeMultiplicity"


class GenericityFailure(LindegenError):
    """Random samples disagreed on a generic value."""

    code = "GenericityFailure"


class BudgetExceeded(LindegenError):
    """The enumeration budget was exhausted."""

    code = "BudgetExceeded"


class NotReduced(LindegenError):
    """The word is not reduced."""

    code = "NotReduced"


class NotDominant(LindegenError):
    """The weight is not dominant."""

    code = "NotDominant"


class NegativeCoefficient(LindegenError):
    """A weight coefficient is negative."""

    code = "NegativeCoefficient"
