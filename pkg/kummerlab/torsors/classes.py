"""μ_n torsor classes on annuli, given by a Kummer representative."""

from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from kummerlab.annuli import Annulus
from kummerlab.cochains import Cochain, SemiGraph, theta_assemble
from kummerlab.errors import (
    InputError,
    MissingEdgeClass,
    NormOnlyRepresentative,
    NotInvertible,
)
from kummerlab.newton import NewtonData, degree_class, is_invertible
from kummerlab.residues import LaurentExt, to_newton


@dataclass(frozen=True)
class TorsorClass:
    """Class of an invertible function g in O(C)^× / (O(C)^×)^n

    The Newton data is always present; the exact Laurent representative is
    optional and only needed when residues must be computed.
    """

    n: int
    newton: NewtonData
    annulus: Annulus
    laurent: Optional[LaurentExt] = None

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise InputError(f"Torsor modulus must be an integer ≥ 2, got {self.n!r}")
        if not is_invertible(self.newton, self.annulus.interval):
            raise NotInvertible(
                f"Representative {self.newton.terms} is not invertible on "
                f"{self.annulus.interval}"
            )

    @classmethod
    def from_laurent(
        cls, n: int, laurent: LaurentExt, annulus: Annulus
    ) -> "TorsorClass":
        if laurent.is_zero():
            raise NotInvertible("The zero function has no torsor class")
        return cls(n, to_newton(laurent), annulus, laurent)

    @property
    def p(self) -> int:
        return self.n

    def require_laurent(self) -> LaurentExt:
        if self.laurent is None:
            raise NormOnlyRepresentative(
                "This computation needs the coefficients of the representative"
            )
        return self.laurent


def cochain_value(tc: TorsorClass) -> int:
    """Dominant degree mod n, signed by the orientation of the annulus

    Raises:
        NotInvertible: If no monomial strictly dominates
    """
    return (degree_class(tc.newton, tc.annulus.interval) * tc.annulus.orientation) % tc.n


def theta_from_classes(
    graph: SemiGraph, classes: Mapping[str, TorsorClass], n: int
) -> Tuple[Cochain, bool]:
    """θ of a torsor given by its classes on the edge annuli

    Returns:
        Tuple of (cochain, harmonic)

    Raises:
        MissingEdgeClass: If some edge has no class
    """
    missing = [name for name in graph.edge_names() if name not in classes]
    if missing:
        raise MissingEdgeClass(f"No torsor class supplied for edges {missing}")
    degrees = {name: cochain_value(classes[name]) for name in graph.edge_names()}
    return theta_assemble(graph, degrees, n)
