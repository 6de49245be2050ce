"""Closed-form eigenvalues of the block density matrix and their large-block limit."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .angular_momentum import wigner3j_zero
from .chain import BlockSpec
from .density import BlockSpectrum
from .numerics import HalfInt, factorial

__all__ = [
    "NormalizationFailure",
    "UnsupportedBlock",
    "lambda_coeff",
    "eigenvalue_closed_form",
    "closed_form_spectrum",
    "limit_eigenvalue",
    "saturated_entropy",
]


class NormalizationFailure(ArithmeticError):
    pass


class UnsupportedBlock(ValueError):
    """The closed form needs at least one bond inside the block."""


@lru_cache(maxsize=None)
def lambda_coeff(l: int, M: int) -> Fraction:
    """(-1)^l M! (M+1)! / ((M-l)! (M+l+1)!); zero for l > M."""
    if l < 0 or M < 0:
        raise ValueError("l and M must be nonnegative")
    if l > M:
        return Fraction(0)
    return Fraction((-1) ** l * factorial(M) * factorial(M + 1),
                    factorial(M - l) * factorial(M + l + 1))


def _bond_product(l: int, bonds: tuple[int, ...]) -> Fraction:
    if len(set(bonds)) == 1:
        return lambda_coeff(l, bonds[0]) ** len(bonds)
    out = Fraction(1)
    for m in bonds:
        out *= lambda_coeff(l, m)
    return out


def eigenvalue_closed_form(blk: BlockSpec, J) -> Fraction:
    """Lambda(J) as a triple sum over spherical-harmonic orders (l, l_alpha, l_beta).

    The l-sum starts at 0; the l = 0 term carries the large-block limit.
    """
    if blk.length < 2:
        raise UnsupportedBlock("closed form is undefined for a single-site block")
    tJ = HalfInt.of(J).twice
    if tJ not in blk.j_values_twice():
        raise ValueError(f"J={HalfInt(tJ)} outside {[str(j) for j in blk.j_values()]}")
    jm, jp = blk.j_minus_twice, blk.j_plus_twice
    a = (jp - tJ) // 2   # J_+ - J
    b = (jm + tJ) // 2   # J_- + J
    c = (tJ - jm) // 2   # -J_- + J
    two_j = tJ  # 2J

    pref = Fraction(
        factorial(two_j + 1) * factorial(blk.m_left) * factorial(blk.m_right),
        factorial((jp + tJ) // 2 + 1) * factorial(b + 1) * factorial(a + 1) * factorial(c + 1),
    )
    m_min = min(blk.interior_bonds)
    j_min = min(b, c)
    total = Fraction(0)
    for l in range(m_min + 1):
        bond = _bond_product(l, blk.interior_bonds)
        if not bond:
            continue
        for la in range(a + 1):
            t1 = bond * lambda_coeff(la, a) * (2 * l + 1) * (2 * la + 1)
            for lb in range(j_min + 1):
                w3 = wigner3j_zero(l, la, lb)
                if not w3:
                    continue
                total += (t1 * lambda_coeff(lb, b) * lambda_coeff(lb, c)
                          * (2 * lb + 1) * w3.square())
    return pref * total


def closed_form_spectrum(blk: BlockSpec) -> BlockSpectrum:
    spec = BlockSpectrum({tJ: eigenvalue_closed_form(blk, HalfInt(tJ))
                          for tJ in blk.j_values_twice()})
    if spec.total() != 1:
        raise NormalizationFailure(f"sum (2J+1) Lambda(J) = {spec.total()}, expected 1")
    return spec


def limit_eigenvalue(s_minus: int, s_plus: int) -> Fraction:
    """1 / ((S_- + 1)(S_+ + 1)), the common eigenvalue as the block grows."""
    if s_minus < 1 or s_plus < 1:
        raise ValueError("limiting boundary bond numbers must be >= 1")
    return Fraction(1, (s_minus + 1) * (s_plus + 1))


def saturated_entropy(s_minus: int, s_plus: int) -> float:
    return math.log((s_minus + 1) * (s_plus + 1))
