"""Exception types shared across the package."""


class RSMorseError(Exception):
    """Base class for all errors raised by this package."""


class ParamDomainError(RSMorseError, ValueError):
    """A parameter lies outside its admissible domain.

    The message always names the offending parameter.
    """


class TruncationCapError(RSMorseError, ArithmeticError):
    """An infinite q-product would need more factors than the hard cap."""


class DegeneracyError(RSMorseError, ArithmeticError):
    """Parameters hit an exact degeneracy (eigenvalue collision or a
    vanishing factor that the construction must divide by)."""


class PoleError(RSMorseError, ZeroDivisionError):
    """An evaluation point sits exactly on a pole of a coefficient."""


class SingularMatrixError(RSMorseError, ArithmeticError):
    """Exact linear system has no unique solution."""


class StructureError(RSMorseError):
    """A computed object violates a structural guarantee (e.g. a
    difference operator acting non-triangularly on the monomial basis)."""


class IrregularPointError(RSMorseError, ValueError):
    """A spectral point fails the regularity needed for sorting."""
