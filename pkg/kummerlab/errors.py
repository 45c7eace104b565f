class KummerlabError(ValueError):
    """Base class for every error raised by kummerlab"""

    exit_code = 3


class InputError(KummerlabError):
    """Malformed problem document, rational string or parameter"""

    exit_code = 2


class DomainError(KummerlabError):
    """A mathematical precondition of a library operation is violated"""


class NotInvertible(DomainError):
    """No strictly dominant monomial on the interval"""


class ZeroDegree(DomainError):
    """The dominant degree is 0 where a finite morphism was expected"""


class InvalidPoint(DomainError):
    """A trunk point with radius not below its center magnitude"""


class MidpointOfInfinite(DomainError):
    """Midpoint requested for an interval with an infinite endpoint"""


class ResidueOfZero(DomainError):
    """Leading residue requested for the zero scalar"""


class NonIntegralRadius(DomainError):
    """Residue requested at a non-integral log-radius"""


class DenominatorVanishes(DomainError):
    """A quotient representative has a zero denominator"""


class DenominatorResidueZero(DomainError):
    """A quotient representative has a zero denominator residue"""


class ModulusMismatch(DomainError):
    """Two objects built over different moduli or primes were combined"""


class UnknownEdge(DomainError):
    """An edge name that the semi-graph does not carry"""


class NotHarmonic(DomainError):
    """A cochain violates a vertex-sum condition"""


class NormOnlyRepresentative(DomainError):
    """Coefficient-level data is required but only Newton data is present"""


class OffAnnulus(DomainError):
    """A point lies outside the annulus or on its boundary"""


class BridgeEdge(DomainError):
    """The edge is a bridge, so no harmonic cochain is nonzero on it"""


class MissingEdgeClass(DomainError):
    """A vicinal edge has no supplied torsor class"""


class NonMonotoneProfile(DomainError):
    """A threshold profile passes at some N after failing at a smaller one"""


class InconsistentVerdict(DomainError):
    """Two independent computations of the same quantity disagree"""


class InternalError(KummerlabError):
    """An arithmetic or consistency failure inside the numeric core"""
