"""
Error types raised by the verification engine.

Every error derives from VerificationError so callers can catch the whole
family; the command line maps them onto exit codes.
"""

from typing import Optional


class VerificationError(Exception):
    """Base class for all engine errors"""


class DegenerateQuartic(VerificationError):
    """Leading coefficient zero or repeated roots"""


class NotFound(VerificationError):
    """No admissible quartic within the search bound"""


class DivisionByZero(VerificationError):
    """Inverse of the zero element requested"""


class SingularMultiplication(VerificationError):
    """Multiplication matrix singular for a nonzero element (L is not a field)"""


class NotReal(VerificationError):
    """Element is not fixed by complex conjugation"""


class PrecisionExhausted(VerificationError):
    """Sign still undecided at the refinement cap"""


class NoConsistentLabeling(VerificationError):
    """No cube labeling reproduces the conjugation sign pattern"""


class NotInF(VerificationError):
    """Element is moved by the stabilizer of vertex 1"""


class IncompatibleSeed(VerificationError):
    """Seed coefficient violates the base-sequence stabilizer constraint"""


class RankMismatch(VerificationError):
    """Declared rank differs from the degree-0 part of a Chern character"""


class NotPure02(VerificationError):
    """Form has components outside bidegree (0,2)"""


class SingularTransform(VerificationError):
    """Inverse coordinate change does not exist (det alpha on the excluded locus)"""


class DegenerateH3(VerificationError):
    """x1*x3 + x2*x4 vanishes"""


class UnknownClaim(VerificationError):
    """Claim id outside the catalogue"""


class ContextMissing(VerificationError):
    """Claim needs a verification context that was not built"""


class UsageError(VerificationError):
    """Invalid command-line or config-file input"""

    def __init__(self, message: str, flag: Optional[str] = None):
        self.flag = flag
        if flag:
            message = f"{flag}: {message}"
        super().__init__(message)


class ReportIoError(VerificationError):
    """Report could not be written"""
