"""Exception types shared across the package."""

from __future__ import annotations


class MahlerkitError(Exception):
    """Base class for all package-specific errors."""


class ParseError(MahlerkitError):
    """Syntax error in a polynomial / rational-function expression.

    Carries the byte offset of the offending token in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class InconsistentSeeds(MahlerkitError):
    """The prescribed leading coefficients contradict the equation."""


class Underdetermined(MahlerkitError):
    """The initial block has free unknowns the seeds do not fix."""

    def __init__(self, missing: int):
        super().__init__(f"initial block underdetermined: {missing} more seed(s) needed")
        self.missing = missing


class DegenerateLeading(MahlerkitError):
    """Leading coefficient vanished after normalization (cannot happen)."""


class MixedBase(MahlerkitError):
    """Systems with different Mahler bases q cannot be combined."""


class PointOutOfRange(MahlerkitError):
    """Evaluation point must satisfy 0 < |alpha| < 1."""


class NotRegular(MahlerkitError):
    """A regularity precondition failed at iteration ``k``."""

    def __init__(self, k: int, point):
        super().__init__(f"system singular at iterate k={k} (point {point})")
        self.k = k
        self.point = point


class TailDiverges(MahlerkitError):
    """rho*|alpha| >= 1: the geometric tail bound does not converge."""


class DeclaredBoundViolated(MahlerkitError):
    """A declared coefficient bound fails at index ``index``."""

    def __init__(self, index: int):
        super().__init__(f"declared coefficient bound violated at n={index}")
        self.index = index


class InsufficientTruncation(MahlerkitError):
    """Input series are too short for the requested construction."""


class ClearingFailure(MahlerkitError):
    """a(z) does not clear the denominators of the system matrix."""


class BetaNotContracting(MahlerkitError):
    """|beta| < 1 could not be certified from the enclosure."""


class PrecisionExhausted(MahlerkitError):
    """An interval stayed ambiguous at the precision ceiling."""


class ZeroForm(MahlerkitError):
    """The zero form is not admissible here."""


class ArityMismatch(MahlerkitError):
    """Form arities do not line up for substitution."""
