"""Exact log_p-scale magnitudes, thresholds and log-radius intervals.

A magnitude |x| is stored as L = log_p|x|, so |x| = p^L. Every value is an
exact ``Fraction``; the magnitude of zero is the sentinel ``NEG_INF``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime

from kummerlab.errors import InputError, MidpointOfInfinite


class Infinity:
    """Signed infinity that orders against ``Fraction`` and ``int``"""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        object.__setattr__(self, "sign", 1 if sign > 0 else -1)

    def __setattr__(self, name, value):
        raise AttributeError("Infinity is immutable")

    def __repr__(self) -> str:
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"

    def __hash__(self) -> int:
        return hash(("Infinity", self.sign))

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinity) and other.sign == self.sign

    def __lt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __neg__(self) -> "Infinity":
        return POS_INF if self.sign < 0 else NEG_INF

    def __add__(self, other) -> "Infinity":
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ArithmeticError("undefined sum of opposite infinities")
        return self

    __radd__ = __add__

    def __sub__(self, other) -> "Infinity":
        return self + (-other)

    def __rsub__(self, other) -> "Infinity":
        return (-self) + other

    def __mul__(self, other) -> "Infinity":
        if isinstance(other, Infinity):
            return POS_INF if other.sign == self.sign else NEG_INF
        if other == 0:
            raise ArithmeticError("undefined product of infinity and zero")
        return self if other > 0 else -self

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Infinity":
        if isinstance(other, Infinity) or other == 0:
            raise ArithmeticError("undefined quotient of infinity")
        return self if other > 0 else -self


NEG_INF = Infinity(-1)
POS_INF = Infinity(1)

LogMag = Union[Fraction, Infinity]


def is_finite(value: LogMag) -> bool:
    return not isinstance(value, Infinity)


def as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, a Fraction or an "a/b" string to a Fraction

    Raises:
        InputError: If the value is not an exact rational
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"Expected an exact rational, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"Invalid rational {value!r}: {str(e)}")


def logmag_mul(a: LogMag, b: LogMag) -> LogMag:
    """Magnitude of a product: the logs add and zero absorbs"""
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def logmag_umax(a: LogMag, b: LogMag) -> LogMag:
    """Ultrametric bound of a sum; zero is neutral"""
    return a if a >= b else b


@dataclass(frozen=True)
class Thresholds:
    """The three constants attached to a prime p

    tau = -p/(p-1) is the wild splitting threshold, tau1 = -1/(p-1) the
    distance between distinct p-th roots of unity and c = p/(p-1).
    """

    p: int
    tau: Fraction
    tau1: Fraction
    c: Fraction

    @staticmethod
    @lru_cache(maxsize=None)
    def for_prime(p: int) -> "Thresholds":
        """Build the thresholds of p

        Raises:
            InputError: If p is not a prime
        """
        require_prime(p)
        tau1 = Fraction(-1, p - 1)
        return Thresholds(p=p, tau=tau1 - 1, tau1=tau1, c=Fraction(p, p - 1))


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise InputError(f"Expected a prime, got {p!r}")
    return p


def root_separation(p: int) -> Fraction:
    """Log distance |ξ - ξ'| between two distinct p-th roots of unity"""
    return Thresholds.for_prime(p).tau1


@dataclass(frozen=True)
class LogInterval:
    """Log-radius interval with open/closed flags

    Infinite endpoints are always open. ``lo == hi`` with both flags closed
    is a point interval; any other flag combination at ``lo == hi`` is the
    empty interval.
    """

    lo: LogMag
    hi: LogMag
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        for name in ("lo", "hi"):
            value = getattr(self, name)
            if not isinstance(value, (Fraction, Infinity)):
                object.__setattr__(self, name, as_fraction(value))
        if self.lo > self.hi:
            raise InputError(f"Interval endpoints out of order: {self.lo} > {self.hi}")
        if (self.lo_closed and not is_finite(self.lo)) or (
            self.hi_closed and not is_finite(self.hi)
        ):
            raise InputError("Infinite interval endpoints must be open")
        if self.lo == POS_INF or self.hi == NEG_INF:
            raise InputError("Interval endpoints must not both sit at one infinity")

    @classmethod
    def open(cls, lo, hi) -> "LogInterval":
        return cls.make(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "LogInterval":
        return cls.make(lo, hi, True, True)

    @classmethod
    def point(cls, value) -> "LogInterval":
        return cls(value, value, True, True)

    @classmethod
    def whole(cls) -> "LogInterval":
        return cls(NEG_INF, POS_INF)

    @classmethod
    def empty(cls) -> "LogInterval":
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def make(cls, lo, hi, lo_closed: bool, hi_closed: bool) -> "LogInterval":
        """Build an interval, collapsing degenerate endpoint data to empty"""
        lo_closed = lo_closed and is_finite(lo)
        hi_closed = hi_closed and is_finite(hi)
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return cls.empty()
        return cls(lo, hi, lo_closed, hi_closed)

    def is_empty(self) -> bool:
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def is_point(self) -> bool:
        return self.lo == self.hi and self.lo_closed and self.hi_closed

    def is_bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    def contains(self, value) -> bool:
        if self.is_empty():
            return False
        above = value >= self.lo if self.lo_closed else value > self.lo
        below = value <= self.hi if self.hi_closed else value < self.hi
        return above and below

    def contains_interior(self, value) -> bool:
        return self.lo < value < self.hi

    def interior(self) -> "LogInterval":
        return LogInterval.make(self.lo, self.hi, False, False)

    def length(self) -> LogMag:
        if self.is_empty():
            return Fraction(0)
        if not self.is_bounded():
            return POS_INF
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        if not self.is_bounded():
            raise MidpointOfInfinite(f"Interval {self} has an infinite endpoint")
        return (self.lo + self.hi) / 2

    def translate(self, shift) -> "LogInterval":
        shift = as_fraction(shift)
        return LogInterval(
            self.lo + shift, self.hi + shift, self.lo_closed, self.hi_closed
        )

    def reflect(self) -> "LogInterval":
        return LogInterval(-self.hi, -self.lo, self.hi_closed, self.lo_closed)

    def scale(self, factor) -> "LogInterval":
        """Image under λ ↦ factor·λ; a negative factor reflects"""
        factor = as_fraction(factor)
        if factor == 0:
            raise InputError("Cannot scale an interval by 0")
        if factor < 0:
            return self.reflect().scale(-factor)
        return LogInterval(
            self.lo * factor, self.hi * factor, self.lo_closed, self.hi_closed
        )

    def intersect(self, other: "LogInterval") -> "LogInterval":
        if self.is_empty() or other.is_empty():
            return LogInterval.empty()
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return LogInterval.make(lo, hi, lo_closed, hi_closed)

    def includes(self, other: "LogInterval") -> bool:
        return other.is_empty() or self.intersect(other) == other

    def integers(self):
        """Integers inside the interval, ascending (bounded intervals only)"""
        if self.is_empty():
            return []
        if not self.is_bounded():
            raise MidpointOfInfinite(f"Interval {self} has an infinite endpoint")
        return [k for k in range(math.floor(self.lo), math.ceil(self.hi) + 1)
                if self.contains(k)]

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"
