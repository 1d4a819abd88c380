"""Exception hierarchy shared by all modules.

Every error that a CLI user can trigger carries an ``exit_code`` so the
command front end can map failures to stable process exit codes:

    1  malformed input (parse / schema errors)
    2  verification failure, or an operation refused a non-invertible matrix
    3  matrix polynomial is not Hermitian
    4  inverse is not convergent at infinity (minor-degree condition fails)
    5  spectrum is not exact-rational and real
"""


class MpkError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class InputFormatError(MpkError):
    """Input document does not parse or violates the schema."""

    exit_code = 1


class NotInvertibleError(MpkError):
    """det L(z) is identically zero; the operation needs an invertible L."""

    exit_code = 2


class VerificationError(MpkError):
    """An exact verification check failed."""

    exit_code = 2


class NotHermitianError(MpkError):
    """Coefficient matrices are not all Hermitian."""

    exit_code = 3


class ConvergenceAtInfinityError(MpkError):
    """Some minor degree exceeds deg det L, so -L(z)^-1 diverges at infinity.

    Such a matrix polynomial has a spectral point at infinity and admits only
    relation-based representations, which are out of scope.
    """

    exit_code = 4


class SpectrumError(MpkError):
    """Eigenvalues are not all exact Gaussian rationals on the real axis."""

    exit_code = 5


class GammaSolveError(MpkError):
    """The residue-matching solve for the state-to-input map failed.

    Signals inconsistent sign data or a pole structure for which the
    anti-triangular descent has no solution; each raiser reports which
    step failed.
    """

    exit_code = 2
