"""Exact Clebsch-Gordan coefficients and Wigner 3j symbols (Condon-Shortley phases).

All arguments accept :class:`HalfInt` or anything :meth:`HalfInt.of` understands.
Results are :class:`SignedSqrtRational`, so squares are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .numerics import HalfInt, SignedSqrtRational, factorial

__all__ = ["clebsch_gordan", "wigner3j", "wigner3j_zero"]


def _check_pair(tj: int, tm: int) -> None:
    if tj < 0:
        raise ValueError(f"negative angular momentum {tj}/2")
    if (tj - tm) % 2:
        raise ValueError(f"m={tm}/2 is not compatible with j={tj}/2")
    if abs(tm) > tj:
        raise ValueError(f"|m|={abs(tm)}/2 exceeds j={tj}/2")


def clebsch_gordan(j1, m1, j2, m2, J, M) -> SignedSqrtRational:
    """<j1 m1; j2 m2 | J M>, evaluated with Racah's single-sum formula."""
    args = tuple(HalfInt.of(x).twice for x in (j1, m1, j2, m2, J, M))
    return _cg_twice(*args)


@lru_cache(maxsize=None)
def _cg_twice(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> SignedSqrtRational:
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tJ, tM)):
        _check_pair(tj, tm)
    if tM != tm1 + tm2:
        return SignedSqrtRational.zero()
    if tJ < abs(tj1 - tj2) or tJ > tj1 + tj2 or (tj1 + tj2 + tJ) % 2:
        return SignedSqrtRational.zero()

    # integer arguments of the factorials
    a = (tj1 + tj2 - tJ) // 2
    b = (tj1 - tm1) // 2
    c = (tj2 + tm2) // 2
    d = (tJ - tj2 + tm1) // 2
    e = (tJ - tj1 - tm2) // 2
    kmin = max(0, -d, -e)
    kmax = min(a, b, c)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k)
               * factorial(d + k) * factorial(e + k))
        total += Fraction((-1) ** k, den)
    if total == 0:
        return SignedSqrtRational.zero()

    pref = Fraction(
        (tJ + 1)
        * factorial((tJ + tj1 - tj2) // 2)
        * factorial((tJ - tj1 + tj2) // 2)
        * factorial((tj1 + tj2 - tJ) // 2),
        factorial((tj1 + tj2 + tJ) // 2 + 1),
    )
    pref *= (factorial((tJ + tM) // 2) * factorial((tJ - tM) // 2)
             * factorial((tj1 - tm1) // 2) * factorial((tj1 + tm1) // 2)
             * factorial((tj2 - tm2) // 2) * factorial((tj2 + tm2) // 2))
    return SignedSqrtRational(1 if total > 0 else -1, pref * total * total)


def wigner3j(j1, j2, j3, m1, m2, m3) -> SignedSqrtRational:
    """Wigner 3j symbol (j1 j2 j3; m1 m2 m3).

    Uses (j1 j2 j3; m1 m2 m3) = (-1)^(j1-j2-m3) / sqrt(2 j3 + 1) <j1 m1; j2 m2 | j3 -m3>.
    """
    t = [HalfInt.of(x).twice for x in (j1, j2, j3, m1, m2, m3)]
    tj1, tj2, tj3, tm1, tm2, tm3 = t
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        _check_pair(tj, tm)
    if tm1 + tm2 + tm3 != 0:
        return SignedSqrtRational.zero()
    cg = _cg_twice(tj1, tm1, tj2, tm2, tj3, -tm3)
    if not cg:
        return cg
    phase = (tj1 - tj2 - tm3) // 2
    sign = cg.sign * (-1) ** (phase % 2)
    return SignedSqrtRational(sign, cg.radicand / (tj3 + 1))


@lru_cache(maxsize=None)
def wigner3j_zero(l: int, la: int, lb: int) -> SignedSqrtRational:
    """(l la lb; 0 0 0) from its closed form in g = (l + la + lb) / 2."""
    if min(l, la, lb) < 0:
        raise ValueError("orders must be nonnegative")
    s = l + la + lb
    if s % 2:
        return SignedSqrtRational.zero()
    g = s // 2
    if g < l or g < la or g < lb:
        return SignedSqrtRational.zero()
    radicand = Fraction(
        factorial(2 * g - 2 * l) * factorial(2 * g - 2 * la) * factorial(2 * g - 2 * lb),
        factorial(2 * g + 1),
    )
    ratio = Fraction(factorial(g), factorial(g - l) * factorial(g - la) * factorial(g - lb))
    return SignedSqrtRational((-1) ** g, radicand * ratio * ratio)
