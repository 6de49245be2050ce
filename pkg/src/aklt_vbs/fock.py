"""Schwinger-boson state vectors in the occupation (monomial) basis.

A :class:`FockVector` stores the coefficients of monomials
``prod_j (a_j^+)^{p_j} (b_j^+)^{q_j} |vac>`` with ``q_j = n_j - p_j``, where
``n_j`` is the total boson number on site j (``2 S_j`` for a physical spin).
Monomials are orthogonal with squared norm ``prod_j p_j! q_j!``; that factorial
metric is what :func:`inner` uses, so amplitudes stay rational (often integer).
Orthonormal amplitudes are ``coefficient * sqrt(prod p! q!)`` and are only
formed in :meth:`FockVector.to_dense`.
"""

from __future__ import annotations

import cmath
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .angular_momentum import clebsch_gordan
from .chain import BlockSpec, ChainSpec
from .numerics import HalfInt, SignedSqrtRational, binomial, factorial, rational_sqrt

__all__ = [
    "FockVector",
    "ScaledVector",
    "metric_weight",
    "inner",
    "apply_total_spin",
    "apply_creation",
    "build_vbs",
    "build_block_vbs",
    "vbs_norm_closed_form",
    "boundary_states",
    "degenerate_vbs",
    "coherent_weight",
    "coherent_ground_state",
    "expansion_prefactor",
    "basis_configs",
]


def metric_weight(occupations: tuple[int, ...], p: tuple[int, ...]) -> int:
    """Squared norm prod_j p_j! (n_j - p_j)! of one monomial."""
    w = 1
    for n, pj in zip(occupations, p):
        w *= factorial(pj) * factorial(n - pj)
    return w


def basis_configs(occupations: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Every p-vector of the space, in lexicographic order."""
    return list(itertools.product(*(range(n + 1) for n in occupations)))


@dataclass(frozen=True, eq=False)
class FockVector:
    occupations: tuple[int, ...]
    amplitudes: Mapping[tuple[int, ...], object]

    def __post_init__(self):
        object.__setattr__(self, "occupations", tuple(self.occupations))
        clean = {p: c for p, c in self.amplitudes.items() if c != 0}
        for p in clean:
            if len(p) != len(self.occupations) or any(
                    not 0 <= pj <= n for pj, n in zip(p, self.occupations)):
                raise ValueError(f"configuration {p} is outside occupations {self.occupations}")
        object.__setattr__(self, "amplitudes", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, occupations) -> "FockVector":
        return cls(tuple(occupations), {})

    @classmethod
    def vacuum(cls, n_sites: int) -> "FockVector":
        return cls((0,) * n_sites, {(0,) * n_sites: 1})

    @property
    def n_sites(self) -> int:
        return len(self.occupations)

    @property
    def spins_twice(self) -> tuple[int, ...]:
        return self.occupations

    def __len__(self):
        return len(self.amplitudes)

    def __bool__(self):
        return bool(self.amplitudes)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.occupations == other.occupations and self.amplitudes == other.amplitudes

    def _check_space(self, other: "FockVector") -> None:
        if self.occupations != other.occupations:
            raise ValueError(
                f"space mismatch: occupations {self.occupations} vs {other.occupations}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_space(other)
        out = defaultdict(int, self.amplitudes)
        for p, c in other.amplitudes.items():
            out[p] += c
        return FockVector(self.occupations, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scaled(-1)

    def scaled(self, c) -> "FockVector":
        return FockVector(self.occupations, {p: c * a for p, a in self.amplitudes.items()})

    def sz_twice(self, p: tuple[int, ...]) -> int:
        """Twice the S^z eigenvalue of one configuration."""
        return sum(2 * pj - n for pj, n in zip(p, self.occupations))

    def sectors(self) -> set[int]:
        return {self.sz_twice(p) for p in self.amplitudes}

    def to_dense(self, basis: list[tuple[int, ...]] | None = None) -> np.ndarray:
        """Amplitudes in the orthonormal |S, m> product basis, as a numpy vector."""
        if basis is None:
            basis = basis_configs(self.occupations)
        is_complex = any(isinstance(c, complex) for c in self.amplitudes.values())
        out = np.zeros(len(basis), dtype=complex if is_complex else float)
        index = {p: i for i, p in enumerate(basis)}
        cast = complex if is_complex else float
        for p, c in self.amplitudes.items():
            out[index[p]] = cast(c) * math.sqrt(metric_weight(self.occupations, p))
        return out

    def dump(self) -> str:
        """Debug text: one ``p-vector TAB numerator/denominator`` line per configuration."""
        lines = []
        for p, c in self.amplitudes.items():
            q = Fraction(c)
            lines.append(f"{','.join(map(str, p))}\t{q.numerator}/{q.denominator}")
        return "\n".join(lines)


def inner(v: FockVector, w: FockVector):
    """<v|w> under the factorial metric (conjugate-linear in v)."""
    v._check_space(w)
    small, large = (v, w) if len(v) <= len(w) else (w, v)
    total = 0
    for p, c in small.amplitudes.items():
        d = large.amplitudes.get(p)
        if d is None:
            continue
        cv, cw = (c, d) if small is v else (d, c)
        total += cv.conjugate() * cw * metric_weight(v.occupations, p)
    return total


def apply_total_spin(which: str, v: FockVector) -> FockVector:
    """Apply S+ = sum a^+ b, S- = sum b^+ a, or Sz = sum (a^+ a - b^+ b)/2."""
    occ = v.occupations
    out = defaultdict(int)
    if which in ("Sz", "z"):
        for p, c in v.amplitudes.items():
            out[p] += c * Fraction(v.sz_twice(p), 2)
        return FockVector(occ, out)
    if which in ("S+", "+"):
        for p, c in v.amplitudes.items():
            for j, (pj, n) in enumerate(zip(p, occ)):
                qj = n - pj
                if qj:
                    out[p[:j] + (pj + 1,) + p[j + 1:]] += qj * c
        return FockVector(occ, out)
    if which in ("S-", "-"):
        for p, c in v.amplitudes.items():
            for j, pj in enumerate(p):
                if pj:
                    out[p[:j] + (pj - 1,) + p[j + 1:]] += pj * c
        return FockVector(occ, out)
    raise ValueError(f"unknown spin operator {which!r}")


def apply_creation(v: FockVector, terms: Iterable[tuple[object, Mapping[int, tuple[int, int]]]]
                   ) -> FockVector:
    """Multiply v by sum_t coef_t prod_{site} (a^+)^da (b^+)^db.

    Every term must add the same number of bosons to each site.
    """
    terms = list(terms)
    if not terms:
        return FockVector.zero(v.occupations)
    added = [0] * v.n_sites
    for site, (da, db) in terms[0][1].items():
        added[site] += da + db
    new_occ = tuple(n + a for n, a in zip(v.occupations, added))
    out = defaultdict(int)
    for coef, mono in terms:
        if coef == 0:
            continue
        shift = [0] * v.n_sites
        total = [0] * v.n_sites
        for site, (da, db) in mono.items():
            shift[site] += da
            total[site] += da + db
        if total != added:
            raise ValueError("creation terms add different boson numbers per site")
        for p, c in v.amplitudes.items():
            out[tuple(pj + s for pj, s in zip(p, shift))] += coef * c
    return FockVector(new_occ, out)


def _expand_bonds(bonds: tuple[int, ...]) -> FockVector:
    """prod_j (a_j^+ b_{j+1}^+ - b_j^+ a_{j+1}^+)^{M_j} |vac> on len(bonds)+1 sites.

    Accumulated site by site: after bond j only site j+1 is still open.
    """
    states: dict[tuple[int, ...], int] = {(0,): 1}
    for m in bonds:
        coeffs = [(-1) ** k * binomial(m, k) for k in range(m + 1)]
        new: dict[tuple[int, ...], int] = defaultdict(int)
        for key, amp in states.items():
            head, last = key[:-1], key[-1]
            for k, c in enumerate(coeffs):
                new[head + (last + m - k, k)] += c * amp
        states = {key: a for key, a in new.items() if a}
    padded = (0,) + tuple(bonds) + (0,)
    occ = tuple(padded[j] + padded[j + 1] for j in range(len(bonds) + 1))
    return FockVector(occ, states)


def build_vbs(chain: ChainSpec) -> FockVector:
    """The full-chain VBS state with integer monomial coefficients."""
    v = _expand_bonds(chain.bonds)
    assert v.occupations == chain.spins_twice
    return v


def build_block_vbs(chain: ChainSpec, blk: BlockSpec) -> FockVector:
    """Interior-bond product on the block; edge sites are short of M_left / M_right bosons."""
    return _expand_bonds(blk.interior_bonds)


def vbs_norm_closed_form(chain: ChainSpec) -> Fraction:
    num = 1
    for t in chain.spins_twice:
        num *= factorial(t + 1)
    den = 1
    for m in chain.bonds:
        den *= m + 1
    return Fraction(num, den)


def boundary_states(chain: ChainSpec, blk: BlockSpec) -> dict[tuple[int, int], FockVector]:
    """(b_1^+)^p (a_1^+)^{M_left-p} (a_L^+)^q (b_L^+)^{M_right-q} |VBS_L>, keyed by (p, q)."""
    base = build_block_vbs(chain, blk)
    last = blk.length - 1
    out = {}
    for p in range(blk.m_left + 1):
        for q in range(blk.m_right + 1):
            mono = defaultdict(lambda: (0, 0))
            mono[0] = (blk.m_left - p, p)
            da, db = mono[last]
            mono[last] = (da + q, db + blk.m_right - q)
            out[(p, q)] = apply_creation(base, [(1, dict(mono))])
    return out


@dataclass(frozen=True)
class ScaledVector:
    """``scale * vector``: an exact state whose only irrational part is one overall root."""

    scale: SignedSqrtRational
    vector: FockVector

    def norm_squared(self) -> Fraction:
        return self.scale.radicand * inner(self.vector, self.vector)

    def to_fock_float(self) -> FockVector:
        s = float(self.scale)
        return FockVector(self.vector.occupations,
                          {p: s * float(c) for p, c in self.vector.amplitudes.items()})

    def to_dense(self, basis=None) -> np.ndarray:
        return float(self.scale) * self.vector.to_dense(basis)


def degenerate_vbs(chain: ChainSpec, blk: BlockSpec, J, M) -> ScaledVector:
    """Psi^+_{JM} |VBS_L>: edge spins M_left/2 and M_right/2 coupled to total (J, M).

    Each Clebsch-Gordan term divided by sqrt((j+m)!(j-m)!...) shares one radical
    factor, so the state is exactly one signed root times a rational vector.
    """
    tJ, tM = HalfInt.of(J).twice, HalfInt.of(M).twice
    if tJ not in blk.j_values_twice():
        raise ValueError(f"J={HalfInt(tJ)} outside {blk.j_values()}")
    if abs(tM) > tJ or (tJ - tM) % 2:
        raise ValueError(f"M={HalfInt(tM)} invalid for J={HalfInt(tJ)}")
    tj1, tj2 = blk.m_left, blk.m_right
    base = build_block_vbs(chain, blk)
    last = blk.length - 1

    coeffs = []
    for tm1 in range(-tj1, tj1 + 1, 2):
        tm2 = tM - tm1
        if abs(tm2) > tj2:
            continue
        cg = clebsch_gordan(HalfInt(tj1), HalfInt(tm1), HalfInt(tj2), HalfInt(tm2),
                            HalfInt(tJ), HalfInt(tM))
        if not cg:
            continue
        a1, b1 = (tj1 + tm1) // 2, (tj1 - tm1) // 2
        a2, b2 = (tj2 + tm2) // 2, (tj2 - tm2) // 2
        w = factorial(a1) * factorial(b1) * factorial(a2) * factorial(b2)
        coeffs.append((SignedSqrtRational(cg.sign, cg.radicand / w), (a1, b1, a2, b2)))

    root = coeffs[0][0].radicand
    terms = []
    for c, (a1, b1, a2, b2) in coeffs:
        ratio = rational_sqrt(c.radicand / root)
        if ratio is None:
            raise ArithmeticError("coefficients do not share a common radical")
        mono = defaultdict(lambda: (0, 0))
        mono[0] = (a1, b1)
        da, db = mono[last]
        mono[last] = (da + a2, db + b2)
        terms.append((c.sign * ratio, dict(mono)))
    return ScaledVector(SignedSqrtRational(1, root), apply_creation(base, terms))


def _spinor(theta: float, phi: float) -> tuple[complex, complex]:
    return (math.cos(theta / 2) * cmath.exp(0.5j * phi),
            math.sin(theta / 2) * cmath.exp(-0.5j * phi))


def coherent_weight(J, M, theta: float, phi: float) -> complex:
    """X_{JM} = u^{J+M} v^{J-M} / sqrt((J+M)! (J-M)!)."""
    tJ, tM = HalfInt.of(J).twice, HalfInt.of(M).twice
    u, v = _spinor(theta, phi)
    a, b = (tJ + tM) // 2, (tJ - tM) // 2
    return u ** a * v ** b / math.sqrt(factorial(a) * factorial(b))


def expansion_prefactor(blk: BlockSpec, J) -> float:
    """sqrt[(J_+ + J + 1)! (J_- + J)! (J_+ - J)! (-J_- + J)! / (2J + 1)]."""
    tJ = HalfInt.of(J).twice
    jm, jp = blk.j_minus_twice, blk.j_plus_twice
    num = (factorial((jp + tJ) // 2 + 1) * factorial((jm + tJ) // 2)
           * factorial((jp - tJ) // 2) * factorial((tJ - jm) // 2))
    return math.sqrt(num / (tJ + 1))


def coherent_ground_state(chain: ChainSpec, blk: BlockSpec, J, theta: float, phi: float
                          ) -> FockVector:
    """A^+_J |VBS_L> for the direction (theta, phi), with complex float amplitudes."""
    tJ = HalfInt.of(J).twice
    if tJ not in blk.j_values_twice():
        raise ValueError(f"J={HalfInt(tJ)} outside {blk.j_values()}")
    n1 = (blk.j_minus_twice + tJ) // 2
    n2 = (blk.j_plus_twice - tJ) // 2
    n3 = (tJ - blk.j_minus_twice) // 2
    u, v = _spinor(theta, phi)
    last = blk.length - 1
    terms = []
    for i in range(n1 + 1):
        ci = binomial(n1, i) * u ** i * v ** (n1 - i)
        for k in range(n2 + 1):
            ck = ci * binomial(n2, k) * (-1) ** k
            for r in range(n3 + 1):
                c = ck * binomial(n3, r) * u ** r * v ** (n3 - r)
                a0, b0 = i + n2 - k, n1 - i + k
                aL, bL = k + r, n2 - k + n3 - r
                mono = defaultdict(lambda: (0, 0))
                mono[0] = (a0, b0)
                da, db = mono[last]
                mono[last] = (da + aL, db + bL)
                terms.append((c, dict(mono)))
    base = build_block_vbs(chain, blk)
    base = FockVector(base.occupations, {p: complex(c) for p, c in base.amplitudes.items()})
    return apply_creation(base, terms)
