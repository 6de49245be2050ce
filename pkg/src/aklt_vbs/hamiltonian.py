"""Bond-projector Hamiltonians acting on Schwinger-boson coefficient vectors.

Operators act on monomial coefficients (see :mod:`aklt_vbs.fock`): a matrix
``A`` maps coefficients ``c`` to ``A c``. In the orthonormal spin basis this is
the similar matrix ``D A D^-1`` with ``D = diag(sqrt(p! q!))``, so rank, trace
and idempotence carry over unchanged.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .chain import BlockSpec, ChainSpec
from .fock import FockVector
from .linalg import rank
from .numerics import HalfInt

__all__ = [
    "TwoSiteOperator",
    "Hamiltonian",
    "bond_projector",
    "bond_casimir",
    "penalized_spins_twice",
    "build_block_hamiltonian",
    "build_full_hamiltonian",
]


@dataclass(frozen=True)
class TwoSiteOperator:
    """Dense rational matrix on the (p1, p2) configurations of two sites."""

    occupations: tuple[int, int]
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def configs(self) -> list[tuple[int, int]]:
        n1, n2 = self.occupations
        return [(p1, p2) for p1 in range(n1 + 1) for p2 in range(n2 + 1)]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def index(self, p1: int, p2: int) -> int:
        return p1 * (self.occupations[1] + 1) + p2

    def __matmul__(self, other: "TwoSiteOperator") -> "TwoSiteOperator":
        n = self.dim
        cols = list(zip(*other.matrix))
        return TwoSiteOperator(self.occupations, tuple(
            tuple(sum(a * b for a, b in zip(self.matrix[i], cols[j])) for j in range(n))
            for i in range(n)))

    def __add__(self, other: "TwoSiteOperator") -> "TwoSiteOperator":
        return TwoSiteOperator(self.occupations, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix)))

    def scaled(self, c) -> "TwoSiteOperator":
        c = Fraction(c)
        return TwoSiteOperator(self.occupations,
                               tuple(tuple(c * a for a in row) for row in self.matrix))

    def trace(self) -> Fraction:
        return sum((self.matrix[i][i] for i in range(self.dim)), Fraction(0))

    @classmethod
    def identity(cls, occupations) -> "TwoSiteOperator":
        n = (occupations[0] + 1) * (occupations[1] + 1)
        return cls(tuple(occupations), tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def nonzero(self) -> dict[tuple[int, int], list[tuple[tuple[int, int], Fraction]]]:
        """Sparse action: input config -> [(output config, coefficient)]."""
        cfg = self.configs
        out = defaultdict(list)
        for i, row in enumerate(self.matrix):
            for j, a in enumerate(row):
                if a:
                    out[cfg[j]].append((cfg[i], a))
        return dict(out)


def bond_casimir(tS1: int, tS2: int) -> TwoSiteOperator:
    """(S_1 + S_2)^2 = S1^2 + S2^2 + S1+ S2- + S1- S2+ + 2 S1z S2z."""
    occ = (tS1, tS2)
    n = (tS1 + 1) * (tS2 + 1)
    mat = [[Fraction(0)] * n for _ in range(n)]
    idx = lambda p1, p2: p1 * (tS2 + 1) + p2  # noqa: E731
    const = Fraction(tS1 * (tS1 + 2) + tS2 * (tS2 + 2), 4)
    for p1 in range(tS1 + 1):
        for p2 in range(tS2 + 1):
            col = idx(p1, p2)
            q1, q2 = tS1 - p1, tS2 - p2
            mat[col][col] += const + Fraction((2 * p1 - tS1) * (2 * p2 - tS2), 2)
            # S1+ S2-: p1 -> p1+1 (factor q1), p2 -> p2-1 (factor p2)
            if q1 and p2:
                mat[idx(p1 + 1, p2 - 1)][col] += q1 * p2
            if p1 and q2:
                mat[idx(p1 - 1, p2 + 1)][col] += p1 * q2
    return TwoSiteOperator(occ, tuple(tuple(r) for r in mat))


def bond_projector(S1, S2, J) -> TwoSiteOperator:
    """Projector onto total spin J of two sites, as a polynomial in the bond Casimir."""
    t1, t2, tJ = (HalfInt.of(x).twice for x in (S1, S2, J))
    allowed = range(abs(t1 - t2), t1 + t2 + 1, 2)
    if tJ not in allowed:
        raise ValueError(f"J={HalfInt(tJ)} cannot be formed from {HalfInt(t1)} and {HalfInt(t2)}")
    casimir = bond_casimir(t1, t2)
    ident = TwoSiteOperator.identity((t1, t2))
    x = Fraction(tJ * (tJ + 2), 4)
    out = ident
    for tK in allowed:
        if tK == tJ:
            continue
        y = Fraction(tK * (tK + 2), 4)
        out = out @ (casimir + ident.scaled(-y)).scaled(1 / (x - y))
    return out


def penalized_spins_twice(tS1: int, tS2: int, m: int) -> list[int]:
    """Bond spins J = S1+S2+1-M .. S1+S2 that the Hamiltonian penalizes (twice-values)."""
    top = tS1 + tS2
    return list(range(top + 2 - 2 * m, top + 1, 2))


@dataclass(frozen=True)
class Hamiltonian:
    """Sum of two-site terms; ``terms[i] = (left site, operator on sites left, left+1)``."""

    occupations: tuple[int, ...]
    terms: tuple[tuple[int, TwoSiteOperator], ...]

    def _sparse_terms(self):
        return [(j, op.nonzero()) for j, op in self.terms]

    def apply(self, v: FockVector) -> FockVector:
        if v.occupations != self.occupations:
            raise ValueError("vector does not live on this Hamiltonian's space")
        out = defaultdict(int)
        for j, action in self._sparse_terms():
            for p, c in v.amplitudes.items():
                for (o1, o2), a in action.get((p[j], p[j + 1]), ()):
                    out[p[:j] + (o1, o2) + p[j + 2:]] += a * c
        return FockVector(self.occupations, out)

    def sector_columns(self, sz_twice: int) -> tuple[list[tuple[int, ...]], list[list[Fraction]]]:
        """Configurations of one S^z sector and the matrix of H restricted to it (by columns)."""
        configs = [p for p in itertools.product(*(range(n + 1) for n in self.occupations))
                   if sum(2 * pj - n for pj, n in zip(p, self.occupations)) == sz_twice]
        index = {p: i for i, p in enumerate(configs)}
        sparse = self._sparse_terms()
        cols = []
        for p in configs:
            col = [Fraction(0)] * len(configs)
            for j, action in sparse:
                for (o1, o2), a in action.get((p[j], p[j + 1]), ()):
                    col[index[p[:j] + (o1, o2) + p[j + 2:]]] += a
            cols.append(col)
        return configs, cols

    def sectors(self) -> range:
        total = sum(self.occupations)
        return range(-total, total + 1, 2)

    def kernel_dimension(self) -> int:
        """dim ker H, summed over S^z sectors, by exact elimination."""
        dim = 0
        for s in self.sectors():
            configs, cols = self.sector_columns(s)
            dim += len(configs) - rank(cols)
        return dim


def _coefficient(coefficients, j: int, tJ: int) -> Fraction:
    if coefficients is None:
        return Fraction(1)
    return Fraction(coefficients.get((j, HalfInt(tJ)), 1))


def _check_coefficients(coefficients) -> None:
    for key, c in (coefficients or {}).items():
        if Fraction(c) <= 0:
            raise ValueError(f"coefficient {key} = {c} must be positive")


def _bond_term(tS1: int, tS2: int, m: int, j: int, coefficients) -> TwoSiteOperator:
    op = None
    for tJ in penalized_spins_twice(tS1, tS2, m):
        term = bond_projector(HalfInt(tS1), HalfInt(tS2), HalfInt(tJ)).scaled(
            _coefficient(coefficients, j, tJ))
        op = term if op is None else op + term
    return op


def build_block_hamiltonian(chain: ChainSpec, blk: BlockSpec,
                            coefficients: Mapping | None = None) -> Hamiltonian:
    """Projector terms on the interior bonds of the block, on the block's own sites.

    ``coefficients`` maps (chain bond index j, J as HalfInt) to C_J(j, j+1);
    missing entries default to 1.
    """
    _check_coefficients(coefficients)
    terms = []
    for i in range(blk.length - 1):
        j = blk.start + i
        terms.append((i, _bond_term(blk.spins_twice[i], blk.spins_twice[i + 1],
                                    blk.interior_bonds[i], j, coefficients)))
    return Hamiltonian(blk.spins_twice, tuple(terms))


def build_full_hamiltonian(chain: ChainSpec, coefficients: Mapping | None = None) -> Hamiltonian:
    _check_coefficients(coefficients)
    st = chain.spins_twice
    terms = tuple((j, _bond_term(st[j], st[j + 1], m, j, coefficients))
                  for j, m in enumerate(chain.bonds))
    return Hamiltonian(st, terms)
