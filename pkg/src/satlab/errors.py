"""Shared exception types.

Everything raised on a violated precondition or an exhausted search derives
from SatlabError so the CLI can map the whole family to a single exit code.
"""


class SatlabError(Exception):
    """Base class for contract violations and failed searches."""


class ZeroInput(SatlabError):
    """Operation undefined at zero (e.g. factoring 0)."""


class ZeroVector(SatlabError):
    """All coordinates vanish where a nonzero vector is required."""


class IncompleteFactorization(SatlabError):
    """An exact multiplicative function was requested but a cofactor
    survived the factoring budget."""


class NonCoprimeResidue(SatlabError):
    """Residue class shares a factor with the modulus."""


class ArityMismatch(SatlabError):
    """Evaluation point length does not match the number of variables."""


class ZeroPolynomial(SatlabError):
    """Operation undefined for the zero polynomial."""


class BudgetExceeded(SatlabError):
    """An enumeration bound was hit before the computation finished."""


class SearchExhausted(SatlabError):
    """A residue scan that must succeed found nothing (internal bug guard)."""


class HypothesisViolated(SatlabError):
    """Input fails a stated hypothesis of the requested check."""


class RepeatedFactor(SatlabError):
    """Polynomial has a repeated factor where a squarefree one is required."""


class ShapeMismatch(SatlabError):
    """Cubic is supported on monomials outside the two-skew-lines shape."""


class DegenerateModel(SatlabError):
    """A coefficient form that must be nonzero vanishes identically."""


class NonCoprimeFiber(SatlabError):
    """Fiber parameters (s, t) are not coprime."""


class ZeroParameter(SatlabError):
    """Parameter pair (u, v) is (0, 0)."""


class ConditionViolated(SatlabError):
    """A fiber admissibility condition fails; the message names it."""


class ParityMismatch(SatlabError):
    """Integer coordinates requested but the halved sums are not integers."""


class NonIntegralF(SatlabError):
    """The product of fiber forms is not divisible by its fixed divisor."""


class EmptyBox(SatlabError):
    """Search box contains no lattice points."""


class DomainEmpty(SatlabError):
    """Minimization domain is empty or degenerate."""


class LocalObstruction(SatlabError):
    """Some prime divides the form product at every residue pair."""

    def __init__(self, prime, message=None):
        self.prime = prime
        super().__init__(message or f"local obstruction at p={prime}")


class NotFound(SatlabError):
    """Approximation schedule exhausted; carries the best near miss."""

    def __init__(self, message, best=None, distance=None):
        self.best = best
        self.distance = distance
        super().__init__(message)


class NoAdmissibleTriples(SatlabError):
    """Prime-triple enumeration budget ran out before finding one."""
