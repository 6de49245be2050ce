"""Block reduced density matrices, computed exactly, and their spectra.

A :class:`BlockOperator` stores ``rho = sum rho(P, P') |P><P'|`` over monomial
kets ``|P>``; applying it to a coefficient vector therefore folds in the
factorial metric: ``(rho v)(P) = sum_P' rho(P, P') w(P') v(P')``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .chain import BlockSpec, ChainSpec
from .fock import (
    FockVector,
    apply_total_spin,
    basis_configs,
    boundary_states,
    build_vbs,
    inner,
    metric_weight,
)
from .linalg import nullspace, rank
from .numerics import HalfInt, binomial, factorial

__all__ = [
    "ConsistencyError",
    "BlockOperator",
    "BlockSpectrum",
    "ProjectorReport",
    "partial_trace",
    "reduced_density_matrix",
    "density_from_boundary_sum",
    "sector_trace",
    "sector_traces",
    "spectrum_by_peeling",
    "verify_projector_structure",
    "highest_weight_vector",
    "entropies",
    "von_neumann_entropy",
    "renyi_entropy",
]


class ConsistencyError(ArithmeticError):
    """A density matrix does not have the rotationally invariant form peeling relies on."""


@dataclass(frozen=True, eq=False)
class BlockOperator:
    occupations: tuple[int, ...]
    rows: dict  # P -> {P': Fraction}

    def __post_init__(self):
        clean = {}
        for p, row in sorted(self.rows.items()):
            r = {q: Fraction(c) for q, c in sorted(row.items()) if c != 0}
            if r:
                clean[p] = r
        object.__setattr__(self, "rows", clean)

    def __eq__(self, other):
        if not isinstance(other, BlockOperator):
            return NotImplemented
        return self.occupations == other.occupations and self.rows == other.rows

    def entry(self, p, q) -> Fraction:
        return self.rows.get(p, {}).get(q, Fraction(0))

    def weight(self, p) -> int:
        return metric_weight(self.occupations, p)

    def sz_twice(self, p) -> int:
        return sum(2 * pj - n for pj, n in zip(p, self.occupations))

    def trace(self) -> Fraction:
        return sum((row.get(p, 0) * self.weight(p) for p, row in self.rows.items()), Fraction(0))

    def trace_of_square(self) -> Fraction:
        """tr rho^2 = sum rho(P,P') w(P') rho(P',P) w(P)."""
        total = Fraction(0)
        for p, row in self.rows.items():
            wp = self.weight(p)
            for q, c in row.items():
                total += c * self.entry(q, p) * self.weight(q) * wp
        return total

    def is_self_adjoint(self) -> bool:
        """Hermitian under the factorial metric, i.e. a symmetric coefficient table."""
        return all(self.entry(q, p) == c for p, row in self.rows.items() for q, c in row.items())

    def conserves_sz(self) -> bool:
        return all(self.sz_twice(p) == self.sz_twice(q)
                   for p, row in self.rows.items() for q in row)

    def apply(self, v: FockVector) -> FockVector:
        if v.occupations != self.occupations:
            raise ValueError("vector does not live on this operator's space")
        weighted = {q: c * self.weight(q) for q, c in v.amplitudes.items()}
        out = {}
        for p, row in self.rows.items():
            s = sum((c * weighted[q] for q, c in row.items() if q in weighted), Fraction(0))
            if s:
                out[p] = s
        return FockVector(self.occupations, out)

    def sector_rows(self, sz_twice: int) -> tuple[list, list[list[Fraction]]]:
        configs = [p for p in basis_configs(self.occupations) if self.sz_twice(p) == sz_twice]
        rows = [[self.entry(p, q) for q in configs] for p in configs]
        return configs, rows

    def rank(self) -> int:
        """Exact rank, sector by sector (rho commutes with total S^z)."""
        if not self.conserves_sz():
            return rank([[self.entry(p, q) for q in self.rows] for p in self.rows])
        by_sector = defaultdict(list)
        for p in self.rows:
            by_sector[self.sz_twice(p)].append(p)
        total = 0
        for configs in by_sector.values():
            total += rank([[self.entry(p, q) for q in configs] for p in configs])
        return total

    def to_dense(self, basis=None) -> np.ndarray:
        """Matrix in the orthonormal product basis: sqrt(w(P)) rho(P,P') sqrt(w(P'))."""
        if basis is None:
            basis = basis_configs(self.occupations)
        index = {p: i for i, p in enumerate(basis)}
        out = np.zeros((len(basis), len(basis)))
        for p, row in self.rows.items():
            sp = math.sqrt(self.weight(p))
            for q, c in row.items():
                out[index[p], index[q]] = float(c) * sp * math.sqrt(self.weight(q))
        return out


@dataclass(frozen=True)
class BlockSpectrum:
    """Eigenvalues Lambda(J), keyed by twice J; each has multiplicity 2J + 1."""

    eigenvalues: dict = field(default_factory=dict)

    def items(self):
        return sorted(self.eigenvalues.items())

    def __getitem__(self, J) -> Fraction:
        return self.eigenvalues[HalfInt.of(J).twice]

    def multiplicity(self, j_twice: int) -> int:
        return j_twice + 1

    def total(self) -> Fraction:
        return sum((Fraction(t + 1) * lam for t, lam in self.eigenvalues.items()), Fraction(0))

    def purity(self) -> Fraction:
        return sum((Fraction(t + 1) * lam * lam for t, lam in self.eigenvalues.items()),
                   Fraction(0))

    def as_float_list(self) -> list[float]:
        """All eigenvalues with multiplicity, sorted ascending."""
        return sorted(float(lam) for t, lam in self.eigenvalues.items() for _ in range(t + 1))


def partial_trace(v: FockVector, keep) -> BlockOperator:
    """Normalized reduced density matrix of |v><v| on the sites in ``keep``."""
    keep = tuple(keep)
    keep_set = set(keep)
    env = tuple(j for j in range(v.n_sites) if j not in keep_set)
    occ = v.occupations
    groups = defaultdict(list)
    for p, c in v.amplitudes.items():
        groups[tuple(p[j] for j in env)].append((tuple(p[j] for j in keep), c))
    rows = defaultdict(lambda: defaultdict(int))
    for e, members in groups.items():
        w = 1
        for j, ej in zip(env, e):
            w *= factorial(ej) * factorial(occ[j] - ej)
        for bp, cp in members:
            row = rows[bp]
            wc = w * cp
            for bq, cq in members:
                row[bq] += wc * cq
    norm = inner(v, v)
    return BlockOperator(tuple(occ[j] for j in keep),
                         {p: {q: Fraction(c, 1) / norm for q, c in row.items()}
                          for p, row in rows.items()})


@lru_cache(maxsize=8)
def _vbs(chain: ChainSpec) -> FockVector:
    return build_vbs(chain)


def reduced_density_matrix(chain: ChainSpec, blk: BlockSpec) -> BlockOperator:
    """Trace the full VBS projector over every site outside the block."""
    return partial_trace(_vbs(chain), blk.sites)


def density_from_boundary_sum(chain: ChainSpec, blk: BlockSpec) -> BlockOperator:
    """rho_L from the binomially weighted sum over boundary states."""
    num = 1
    for m in blk.interior_bonds:
        num *= m + 1
    den = 1
    for t in blk.spins_twice:
        den *= factorial(t + 1)
    pref = Fraction(num, den)
    rows = defaultdict(lambda: defaultdict(int))
    for (p, q), b in boundary_states(chain, blk).items():
        c = binomial(blk.m_left, p) * binomial(blk.m_right, q)
        amps = list(b.amplitudes.items())
        for x, cx in amps:
            row = rows[x]
            for y, cy in amps:
                row[y] += c * cx * cy
    return BlockOperator(blk.spins_twice,
                         {x: {y: pref * c for y, c in row.items()} for x, row in rows.items()})


def sector_traces(rho: BlockOperator) -> dict[int, Fraction]:
    """Trace of rho restricted to each S^z sector, keyed by twice M."""
    out = defaultdict(Fraction)
    for p, row in rho.rows.items():
        d = row.get(p)
        if d:
            out[rho.sz_twice(p)] += d * rho.weight(p)
    return dict(out)


def sector_trace(rho: BlockOperator, M) -> Fraction:
    return sector_traces(rho).get(HalfInt.of(M).twice, Fraction(0))


def spectrum_by_peeling(rho: BlockOperator, blk: BlockSpec) -> BlockSpectrum:
    """Lambda(J) = T(J) - T(J+1), where T(M) is the trace of the S^z = M sector.

    Valid because each multiplet J contributes Lambda(J) once to every sector |M| <= J.
    """
    traces = sector_traces(rho)
    for s, t in traces.items():
        if traces.get(-s, 0) != t:
            raise ConsistencyError(f"sector traces differ at M=+-{HalfInt(abs(s))}")
    occupied = [s for s, t in traces.items() if t]
    if not occupied:
        raise ConsistencyError("density matrix has zero trace")
    top = max(occupied)
    parity = top % 2
    lam = {}
    for tJ in range(top, parity - 1, -2):
        val = traces.get(tJ, Fraction(0)) - traces.get(tJ + 2, Fraction(0))
        if val:
            lam[tJ] = val
    if any(v < 0 for v in lam.values()):
        raise ConsistencyError(f"negative peeled eigenvalue in {lam}")
    if blk.length >= 2:
        expected = set(blk.j_values_twice())
        stray = {t: v for t, v in lam.items() if t not in expected}
        if stray:
            raise ConsistencyError(
                f"weight outside predicted J range: {{{', '.join(str(HalfInt(t)) for t in stray)}}}")
        missing = expected - set(lam)
        if missing:
            raise ConsistencyError(
                f"no weight for J in {sorted(str(HalfInt(t)) for t in missing)}")
    spec = BlockSpectrum(dict(sorted(lam.items())))
    if spec.total() != 1:
        raise ConsistencyError(f"peeled spectrum sums to {spec.total()}, not 1")
    return spec


def highest_weight_vector(chain: ChainSpec, blk: BlockSpec, J) -> FockVector:
    """Combination of boundary states in sector M = J annihilated by S+ (exact)."""
    tJ = HalfInt.of(J).twice
    states = [b for (p, q), b in boundary_states(chain, blk).items()
              if (blk.m_left - 2 * p) + (2 * q - blk.m_right) == tJ]
    if not states:
        raise ValueError(f"no boundary state in sector M={HalfInt(tJ)}")
    raised = [apply_total_spin("S+", b) for b in states]
    configs = sorted({p for r in raised for p in r.amplitudes})
    # rows: configurations; columns: coefficients of the combination
    rows = [[r.amplitudes.get(p, 0) for r in raised] for p in configs]
    null = nullspace(rows, len(states)) if rows else nullspace([], len(states))
    if len(null) != 1:
        raise ConsistencyError(
            f"expected one highest-weight vector for J={HalfInt(tJ)}, found {len(null)}")
    out = FockVector.zero(blk.spins_twice)
    for c, b in zip(null[0], states):
        out = out + b.scaled(c)
    return out


@dataclass
class ProjectorReport:
    rank: int
    expected_rank: int
    self_adjoint: bool
    range_in_ground_space: bool
    eigen_checks: dict = field(default_factory=dict)  # (twice J, twice M) -> bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        head = f"rank {self.rank} (expected {self.expected_rank}), " \
               f"{sum(self.eigen_checks.values())}/{len(self.eigen_checks)} eigen-equations exact"
        return head if self.ok else head + "; failed: " + "; ".join(self.failures)


def verify_projector_structure(rho: BlockOperator, chain: ChainSpec, blk: BlockSpec,
                               spectrum: BlockSpectrum | None = None) -> ProjectorReport:
    """Rank, range and exact eigen-equations rho v = Lambda(J) v on every (J, M) vector.

    Needs L >= 2: on a single site the boundary monomials overcount the spin space.
    """
    if blk.length < 2:
        raise ValueError("projector structure is defined for blocks of two or more sites")
    if spectrum is None:
        spectrum = spectrum_by_peeling(rho, blk)
    r = rho.rank()
    report = ProjectorReport(
        rank=r,
        expected_rank=blk.degeneracy,
        self_adjoint=rho.is_self_adjoint(),
        range_in_ground_space=_range_in_span(rho, list(boundary_states(chain, blk).values())),
    )
    if r != blk.degeneracy:
        report.failures.append(f"rank {r} != {blk.degeneracy}")
    if not report.self_adjoint:
        report.failures.append("not self-adjoint under the factorial metric")
    if not report.range_in_ground_space:
        report.failures.append("range of rho leaves the span of the boundary states")
    for tJ in blk.j_values_twice():
        lam = spectrum.eigenvalues.get(tJ, Fraction(0))
        v = highest_weight_vector(chain, blk, HalfInt(tJ))
        for tM in range(tJ, -tJ - 1, -2):
            good = bool(v) and rho.apply(v) == v.scaled(lam)
            report.eigen_checks[(tJ, tM)] = good
            if not good:
                report.failures.append(f"eigen-equation fails at J={HalfInt(tJ)}, M={HalfInt(tM)}")
            v = apply_total_spin("S-", v)
        if v:
            report.failures.append(f"S- does not terminate the J={HalfInt(tJ)} multiplet")
    return report


def _range_in_span(rho: BlockOperator, states: list[FockVector]) -> bool:
    """Every column rho|P'> lies in span(states); equivalent to rho w = 0 off that span."""
    configs = sorted(set(rho.rows) | {p for s in states for p in s.amplitudes})
    basis_rows = [[s.amplitudes.get(p, 0) for p in configs] for s in states]
    cols = defaultdict(dict)
    for p, row in rho.rows.items():
        for q, c in row.items():
            cols[q][p] = c
    col_rows = [[col.get(p, 0) for p in configs] for col in cols.values()]
    return rank(basis_rows + col_rows) == rank(basis_rows)


def von_neumann_entropy(spec: BlockSpectrum) -> float:
    return -sum((t + 1) * float(lam) * math.log(lam) for t, lam in spec.eigenvalues.items())


def renyi_entropy(spec: BlockSpectrum, alpha: float) -> float:
    if alpha <= 0:
        raise ValueError("Renyi order must be positive")
    if alpha == 1:
        raise ValueError("Renyi order 1 is the von Neumann entropy")
    s = sum((t + 1) * math.exp(alpha * math.log(lam)) for t, lam in spec.eigenvalues.items())
    return math.log(s) / (1 - alpha)


def entropies(spec: BlockSpectrum, alpha: float) -> tuple[float, float]:
    """(von Neumann, Renyi of order alpha) from an exact spectrum."""
    return von_neumann_entropy(spec), renyi_entropy(spec, alpha)
