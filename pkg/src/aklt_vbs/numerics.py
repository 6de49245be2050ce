"""Exact scalars: half-integers, factorials, and signed square roots of rationals.

Rationals are plain :class:`fractions.Fraction` objects throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "HalfInt",
    "SignedSqrtRational",
    "factorial",
    "binomial",
    "ssr_mul",
    "rational_sqrt",
    "half",
    "twice",
]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-integer, stored as ``twice`` its value."""

    twice: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        """Coerce ints, Fractions, floats like 1.5, or strings like ``"3/2"``."""
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, float):
            if not (2 * x).is_integer():
                raise ValueError(f"{x!r} is not a half-integer")
            return cls(int(2 * x))
        q = Fraction(x)
        if (2 * q).denominator != 1:
            raise ValueError(f"{x!r} is not a half-integer")
        return cls(int(2 * q))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __float__(self):
        return self.twice / 2

    def __int__(self):
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def twice(x) -> int:
    """Twice-value of a spin-like quantity given as HalfInt, int, Fraction or str."""
    return HalfInt.of(x).twice


def half(t: int) -> HalfInt:
    return HalfInt(t)


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class SignedSqrtRational:
    """The real number ``sign * sqrt(radicand)`` with a rational radicand."""

    sign: int
    radicand: Fraction

    def __post_init__(self):
        r = Fraction(self.radicand)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if (self.sign == 0) != (r == 0):
            raise ValueError("sign is zero iff radicand is zero")
        object.__setattr__(self, "radicand", r)

    @classmethod
    def zero(cls) -> "SignedSqrtRational":
        return cls(0, Fraction(0))

    @classmethod
    def from_rational(cls, q) -> "SignedSqrtRational":
        q = Fraction(q)
        return cls((q > 0) - (q < 0), q * q)

    @classmethod
    def make(cls, sign: int, radicand) -> "SignedSqrtRational":
        """Like the constructor, but zero radicand forces zero sign."""
        radicand = Fraction(radicand)
        return cls(sign if radicand else 0, radicand)

    def __bool__(self):
        return self.sign != 0

    def __mul__(self, other):
        if isinstance(other, SignedSqrtRational):
            return ssr_mul(self, other)
        if isinstance(other, (int, Rational)):
            return ssr_mul(self, SignedSqrtRational.from_rational(other))
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return SignedSqrtRational(-self.sign, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, SignedSqrtRational):
            if not other:
                raise ZeroDivisionError("division by zero SignedSqrtRational")
            return SignedSqrtRational(self.sign * other.sign, self.radicand / other.radicand)
        return self * (1 / Fraction(other))

    def square(self) -> Fraction:
        return self.radicand

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction when the radicand is a perfect square."""
        root = rational_sqrt(self.radicand)
        return None if root is None else self.sign * root

    def __float__(self):
        return self.sign * math.sqrt(self.radicand)

    def __repr__(self):
        s = {1: "+", -1: "-", 0: ""}[self.sign]
        return f"{s}sqrt({self.radicand})" if self.sign else "0"


def ssr_mul(a: SignedSqrtRational, b: SignedSqrtRational) -> SignedSqrtRational:
    return SignedSqrtRational(a.sign * b.sign, a.radicand * b.radicand)
