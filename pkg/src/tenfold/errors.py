"""Exception hierarchy.

``InputError`` subclasses flag bad user data (CLI exit code 2),
``NumericalError`` subclasses flag numerical breakdowns (exit code 3).
"""


class TenfoldError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(TenfoldError, ValueError):
    pass


class NumericalError(TenfoldError, ArithmeticError):
    pass


# core linear algebra
class NotHermitian(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InvalidSigma(InputError):
    pass


class NotInvolutive(InputError):
    pass


class NoConvergence(NumericalError):
    pass


class RankAmbiguous(NumericalError):
    pass


# classifier
class GroupTooLarge(InputError):
    pass


class NonUnitaryGenerator(InputError):
    pass


class NotNormalizing(InputError):
    pass


class InvalidSignature(InputError):
    pass


class DegenerateGenericElement(NumericalError):
    pass


class NonScalarSquare(NumericalError):
    pass


class DimensionCountMismatch(NumericalError):
    """The invariant Hermitian space matches neither the AI nor the AII count."""


class OuterAutomorphism(NumericalError):
    """No group element realizes the automorphism induced by an anti-unitary."""


# ensembles / structures
class SpecInvalid(InputError):
    pass


class StructureViolation(InputError):
    pass


class NotInM(InputError):
    pass


class DimensionNotDivisible(InputError):
    pass


class AlgebraViolation(NumericalError):
    pass


class NotSuNc(InputError):
    pass


class ToleranceAmbiguous(NumericalError):
    pass


class IndexTheoremViolation(NumericalError):
    pass


# spectra
class TooFewLevels(NumericalError):
    pass


class TooFewSpacings(NumericalError):
    pass


class InvalidDegree(InputError):
    pass


class InvalidBeta(InputError):
    pass
