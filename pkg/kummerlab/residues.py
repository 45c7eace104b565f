"""Exact coefficient arithmetic: sums of q·p^s, Laurent expressions over
them, and residues at integral skeleton points.

Exponents s are rational so that roots of magnitudes (p^(s/p)) stay
representable. Residues live in Laurent polynomials over the field with p
elements, in the variable t = class of T·p^λ.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple

from sympy import multiplicity

from kummerlab.errors import (
    DenominatorResidueZero,
    DenominatorVanishes,
    InputError,
    ModulusMismatch,
    NonIntegralRadius,
    ResidueOfZero,
)
from kummerlab.newton import NewtonData
from kummerlab.valnum import NEG_INF, POS_INF, LogMag, as_fraction, require_prime

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _int_valuation(p: int, n: int) -> int:
    return int(multiplicity(p, n))


def p_valuation(p: int, q: Fraction) -> int:
    """v_p of a nonzero rational"""
    return _int_valuation(p, abs(q.numerator)) - _int_valuation(p, q.denominator)


def _canonical(p: int, pairs: Iterable[Tuple[Fraction, Fraction]]):
    pending = [(Fraction(q), Fraction(s)) for q, s in pairs]
    while True:
        collected: Dict[Fraction, Fraction] = {}
        for q, s in pending:
            if q == 0:
                continue
            v = p_valuation(p, q)
            collected[s + v] = collected.get(s + v, Fraction(0)) + q / Fraction(p) ** v
        pending = [(q, s) for s, q in collected.items() if q != 0]
        if all(p_valuation(p, q) == 0 for q, _ in pending):
            return tuple(sorted(pending, key=lambda term: term[1]))


@dataclass(frozen=True)
class ExtScalar:
    """Finite sum Σ q_i·p^{s_i} with v_p(q_i) = 0 and s_i increasing"""

    p: int
    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def of(cls, p: int, q=1, s=0) -> "ExtScalar":
        return cls.from_terms(p, [(as_fraction(q), as_fraction(s))])

    @classmethod
    def zero(cls, p: int) -> "ExtScalar":
        return cls(p, ())

    @classmethod
    def from_terms(cls, p: int, pairs) -> "ExtScalar":
        require_prime(p)
        return cls(p, _canonical(p, pairs))

    def _check(self, other: "ExtScalar") -> None:
        if not isinstance(other, ExtScalar):
            raise InputError(f"Expected a scalar, got {other!r}")
        if other.p != self.p:
            raise ModulusMismatch(f"Scalars over p={self.p} and p={other.p}")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExtScalar") -> "ExtScalar":
        self._check(other)
        return ExtScalar.from_terms(self.p, self.terms + other.terms)

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(self.p, tuple((-q, s) for q, s in self.terms))

    def __sub__(self, other: "ExtScalar") -> "ExtScalar":
        return self + (-other)

    def __mul__(self, other: "ExtScalar") -> "ExtScalar":
        self._check(other)
        return ExtScalar.from_terms(
            self.p, [(q1 * q2, s1 + s2) for q1, s1 in self.terms for q2, s2 in other.terms]
        )

    def scale(self, factor) -> "ExtScalar":
        """Multiply by a rational number"""
        factor = as_fraction(factor)
        return ExtScalar.from_terms(self.p, [(q * factor, s) for q, s in self.terms])

    def __pow__(self, exponent: int) -> "ExtScalar":
        if exponent < 0:
            if len(self.terms) != 1:
                raise InputError("Only single-term scalars can be inverted")
            (q, s), = self.terms
            return ExtScalar.of(self.p, 1 / q, -s) ** (-exponent)
        result = ExtScalar.of(self.p, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def valuation(self) -> LogMag:
        return self.terms[0][1] if self.terms else POS_INF

    def magnitude(self) -> LogMag:
        """log_p of the absolute value, NEG_INF for zero"""
        return -self.terms[0][1] if self.terms else NEG_INF

    def leading_residue(self) -> int:
        if not self.terms:
            raise ResidueOfZero("The zero scalar has no leading residue")
        q = self.terms[0][0]
        return q.numerator * pow(q.denominator, -1, self.p) % self.p


@dataclass(frozen=True)
class LaurentExt:
    """Finite Laurent polynomial Σ a_k T^k with exact scalar coefficients"""

    p: int
    coefficients: Tuple[Tuple[int, ExtScalar], ...] = ()

    def __post_init__(self):
        cleaned = tuple(
            sorted(
                ((int(k), a) for k, a in self.coefficients if not a.is_zero()),
                key=lambda item: item[0],
            )
        )
        for _, a in cleaned:
            if a.p != self.p:
                raise ModulusMismatch(f"Coefficient over p={a.p} in a p={self.p} series")
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def from_rationals(cls, p: int, coefficients: Mapping[int, object]) -> "LaurentExt":
        return cls(p, tuple((k, ExtScalar.of(p, q)) for k, q in coefficients.items()))

    @classmethod
    def constant(cls, scalar: ExtScalar) -> "LaurentExt":
        return cls(scalar.p, ((0, scalar),))

    @classmethod
    def monomial(cls, scalar: ExtScalar, degree: int) -> "LaurentExt":
        return cls(scalar.p, ((degree, scalar),))

    def as_dict(self) -> Dict[int, ExtScalar]:
        return dict(self.coefficients)

    def coefficient(self, degree: int) -> ExtScalar:
        return self.as_dict().get(degree, ExtScalar.zero(self.p))

    def degrees(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def _combine(self, other: "LaurentExt", sign: int) -> "LaurentExt":
        if other.p != self.p:
            raise ModulusMismatch(f"Series over p={self.p} and p={other.p}")
        total = self.as_dict()
        for k, a in other.coefficients:
            a = a if sign > 0 else -a
            total[k] = total[k] + a if k in total else a
        return LaurentExt(self.p, tuple(total.items()))

    def __add__(self, other: "LaurentExt") -> "LaurentExt":
        return self._combine(other, 1)

    def __sub__(self, other: "LaurentExt") -> "LaurentExt":
        return self._combine(other, -1)

    def __neg__(self) -> "LaurentExt":
        return LaurentExt(self.p, tuple((k, -a) for k, a in self.coefficients))

    def __mul__(self, other: "LaurentExt") -> "LaurentExt":
        if other.p != self.p:
            raise ModulusMismatch(f"Series over p={self.p} and p={other.p}")
        total: Dict[int, ExtScalar] = {}
        for k1, a1 in self.coefficients:
            for k2, a2 in other.coefficients:
                product = a1 * a2
                k = k1 + k2
                total[k] = total[k] + product if k in total else product
        return LaurentExt(self.p, tuple(total.items()))

    def __pow__(self, exponent: int) -> "LaurentExt":
        if exponent < 0:
            raise InputError("Laurent expressions are only raised to powers ≥ 0")
        result = LaurentExt.constant(ExtScalar.of(self.p, 1))
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, degree: int) -> "LaurentExt":
        """Multiply by T^degree"""
        return LaurentExt(self.p, tuple((k + degree, a) for k, a in self.coefficients))

    def eval_mag(self, lam) -> LogMag:
        """log_p|L(η_{0,p^λ})|, NEG_INF for the zero expression"""
        lam = as_fraction(lam)
        if self.is_zero():
            return NEG_INF
        return max(a.magnitude() + k * lam for k, a in self.coefficients)


@dataclass(frozen=True)
class FpLaurent:
    """Laurent polynomial over the field with p elements"""

    p: int
    coefficients: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        cleaned = tuple(
            sorted((int(k), c % self.p) for k, c in self.coefficients if c % self.p)
        )
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def from_mapping(cls, p: int, coefficients: Mapping[int, int]) -> "FpLaurent":
        return cls(p, tuple(coefficients.items()))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coefficients)

    def support(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monomial(self) -> bool:
        return len(self.coefficients) == 1

    def __mul__(self, other: "FpLaurent") -> "FpLaurent":
        if other.p != self.p:
            raise ModulusMismatch(f"Residues over p={self.p} and p={other.p}")
        total: Dict[int, int] = {}
        for k1, c1 in self.coefficients:
            for k2, c2 in other.coefficients:
                total[k1 + k2] = (total.get(k1 + k2, 0) + c1 * c2) % self.p
        return FpLaurent(self.p, tuple(total.items()))

    def __pow__(self, exponent: int) -> "FpLaurent":
        result = FpLaurent(self.p, ((0, 1),))
        for _ in range(exponent):
            result = result * self
        return result

    def divide_by_monomial(self, monomial: "FpLaurent") -> "FpLaurent":
        if not monomial.is_monomial():
            raise InputError("Residue division is only defined by monomials")
        (degree, c), = monomial.coefficients
        inverse = pow(c, -1, self.p)
        return FpLaurent(
            self.p, tuple((k - degree, a * inverse) for k, a in self.coefficients)
        )

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for k, c in self.coefficients:
            power = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not power:
                parts.append(str(c))
            else:
                parts.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(parts)


@dataclass(frozen=True)
class ResidueFraction:
    """Quotient of residues in the rational function field over F_p"""

    numerator: FpLaurent
    denominator: FpLaurent

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueFraction):
            return NotImplemented
        return (self.numerator * other.denominator) == (other.numerator * self.denominator)

    def __hash__(self) -> int:
        return hash((self.numerator.p, "ResidueFraction"))

    def certificate(self) -> FpLaurent:
        """num·den^(p-1): a p-th power exactly when the quotient is"""
        p = self.numerator.p
        return self.numerator * self.denominator ** (p - 1)

    def pth_root(self) -> Optional[FpLaurent]:
        """p-th root as a Laurent polynomial, or None

        The denominator of a refinement quotient is always a monomial.
        """
        root = is_pth_power(self.certificate(), self.numerator.p)
        if root is None:
            return None
        return root.divide_by_monomial(self.denominator)


@dataclass(frozen=True)
class FuncRep:
    """Exact quotient numerator / denominator, queried pointwise"""

    numerator: LaurentExt
    denominator: LaurentExt

    def __post_init__(self):
        if self.denominator.is_zero():
            raise DenominatorVanishes("A quotient needs a nonzero denominator")
        if self.numerator.p != self.denominator.p:
            raise ModulusMismatch("Numerator and denominator over different primes")


def to_newton(laurent: LaurentExt) -> NewtonData:
    """Newton data: degree -> -valuation of the coefficient"""
    return NewtonData(tuple((k, a.magnitude()) for k, a in laurent.coefficients))


def _require_integral(lam) -> Fraction:
    lam = as_fraction(lam)
    if lam.denominator != 1:
        raise NonIntegralRadius(f"Residues are only computed at integral λ, got {lam}")
    return lam


def residue_at(laurent: LaurentExt, lam) -> FpLaurent:
    """Reduction of L normalized at η_{0,p^λ}, in t = class of T·p^λ

    Raises:
        NonIntegralRadius: If λ is not an integer
    """
    lam = _require_integral(lam)
    if laurent.is_zero():
        raise ResidueOfZero("The zero expression has no residue")
    top = laurent.eval_mag(lam)
    return FpLaurent(
        laurent.p,
        tuple(
            (k, a.leading_residue())
            for k, a in laurent.coefficients
            if a.magnitude() + k * lam == top
        ),
    )


def is_pth_power(f: FpLaurent, p: int) -> Optional[FpLaurent]:
    """p-th root of a residue polynomial, or None

    Over a perfect field f is a p-th power iff its support lies in pZ; the
    coefficients in F_p are fixed by Frobenius.
    """
    if f.is_zero():
        raise ResidueOfZero("Zero is excluded from the p-th power test")
    if any(k % p for k in f.support()):
        return None
    return FpLaurent(p, tuple((k // p, c) for k, c in f.coefficients))


def func_eval_mag(rep: FuncRep, lam) -> LogMag:
    """Magnitude of numerator / denominator at η_{0,p^λ}"""
    return rep.numerator.eval_mag(lam) - rep.denominator.eval_mag(lam)


def func_residue(rep: FuncRep, lam) -> ResidueFraction:
    """Quotient of residues at an integral skeleton point

    Raises:
        NonIntegralRadius: If λ is not an integer
        DenominatorResidueZero: If the denominator residue vanishes
    """
    denominator = residue_at(rep.denominator, lam)
    if denominator.is_zero():
        raise DenominatorResidueZero(f"Denominator residue vanishes at λ={lam}")
    return ResidueFraction(residue_at(rep.numerator, lam), denominator)
