"""Exception hierarchy shared by the whole package.

Everything raised on bad mathematical input derives from
:class:`KernelFormsError`; the CLI maps these to exit code 2 unless a
command documents otherwise.
"""


class KernelFormsError(Exception):
    """Base class for all errors raised by kernelforms."""


class DivisionByZero(KernelFormsError):
    pass


class NotDivisible(KernelFormsError):
    """Synthetic division by z - w* left a nonzero remainder."""


class ZeroMatrix(KernelFormsError):
    pass


class NotSquare(KernelFormsError):
    pass


class NotFullRank(KernelFormsError):
    """A matrix polynomial loses rank at some point of the plane."""


class RankDeficient(KernelFormsError):
    """Generic (function-field) rank is below the row count."""


class NotHermitian(KernelFormsError):
    pass


class Singular(KernelFormsError):
    pass


class DependentBasis(KernelFormsError):
    pass


class SingularGram(KernelFormsError):
    pass


class NotSymmetric(KernelFormsError):
    """The multiplication operator fails [Sf,g] = [f,Sg] on its domain."""


class QTooSmall(KernelFormsError):
    pass


class DegenerateKernel(KernelFormsError):
    pass


class RangeConditionFails(KernelFormsError):
    """ran(S - a) = space ∩ ker E_a holds for no point a."""


class NotNevanlinna(KernelFormsError):
    pass


class InternalVerificationFailed(KernelFormsError):
    """A pipeline re-checked its own output and the check failed."""


class NotANevanlinnaPair(KernelFormsError):
    pass


class NotJUnitary(KernelFormsError):
    pass


class PreconditionViolated(KernelFormsError):
    pass


class BadMu(KernelFormsError):
    pass


class NotDefectBasis(KernelFormsError):
    pass


class EmptyResolvent(KernelFormsError):
    pass


class PolynomialityFailed(KernelFormsError):
    pass


class ParseError(KernelFormsError):
    """Input could not be read as exact JSON data; carries line/position."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(KernelFormsError):
    """Structurally valid JSON that violates a payload schema."""

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer

    def __str__(self):
        base = super().__str__()
        return f"{base} (at {self.pointer or '/'})"
