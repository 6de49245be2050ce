"""Open inhomogeneous spin chains, their valence-bond numbers, and contiguous blocks.

Sites are numbered 0..N+1; sites 0 and N+1 are the ending spins and 1..N the bulk.
Bond ``j`` joins sites ``j`` and ``j+1`` and carries ``bonds[j]`` valence bonds.
Spins are kept as twice-values so every relation stays in integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .numerics import HalfInt

__all__ = [
    "ChainError",
    "ConditionViolated",
    "NonPositiveBond",
    "OutOfRange",
    "InvalidChain",
    "ChainSpec",
    "BlockSpec",
    "Violation",
    "ValidationReport",
    "solve_bonds",
    "validate",
    "block",
    "homogeneous_chain",
    "load_chain",
    "parse_chain",
]


class ChainError(ValueError):
    pass


class ConditionViolated(ChainError):
    """The alternating spin sum is nonzero, so no bond numbers exist."""


class NonPositiveBond(ChainError):
    def __init__(self, index: int, value: int):
        super().__init__(f"bond {index} has non-positive bond number {value}")
        self.index = index
        self.value = value


class OutOfRange(ChainError):
    pass


class InvalidChain(ChainError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(v.message for v in report.violations))
        self.report = report


@dataclass(frozen=True)
class Violation:
    kind: str  # "length", "relation", "bond" or "condition"
    index: int | None
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(v.message for v in self.violations)


@dataclass(frozen=True)
class ChainSpec:
    spins_twice: tuple[int, ...]
    bonds: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    @classmethod
    def from_spins(cls, spins, name=None) -> "ChainSpec":
        """Build from spin values; bond numbers are solved and the result validated."""
        st = tuple(HalfInt.of(s).twice for s in spins)
        chain = cls(st, tuple(_solve_twice(st)), name)
        _raise_if_invalid(chain)
        return chain

    @classmethod
    def from_spins_twice(cls, spins_twice, name=None) -> "ChainSpec":
        return cls.from_spins([HalfInt(int(t)) for t in spins_twice], name)

    @classmethod
    def from_bonds(cls, bonds, name=None) -> "ChainSpec":
        """Build from bond numbers; spins follow from 2S_j = M_{j-1,j} + M_{j,j+1}."""
        bonds = tuple(int(m) for m in bonds)
        if not bonds:
            raise ChainError("a chain needs at least one bond")
        padded = (0,) + bonds + (0,)
        st = tuple(padded[j] + padded[j + 1] for j in range(len(bonds) + 1))
        chain = cls(st, bonds, name)
        _raise_if_invalid(chain)
        return chain

    @property
    def spins(self) -> tuple[HalfInt, ...]:
        return tuple(HalfInt(t) for t in self.spins_twice)

    @property
    def n_bulk(self) -> int:
        return len(self.spins_twice) - 2

    @property
    def n_sites(self) -> int:
        return len(self.spins_twice)

    def configuration_count(self) -> int:
        """Dimension of the full chain Hilbert space."""
        n = 1
        for t in self.spins_twice:
            n *= t + 1
        return n


@dataclass(frozen=True)
class BlockSpec:
    """Sites ``start .. start+length-1`` of a chain, with the data the block depends on."""

    start: int
    length: int
    spins_twice: tuple[int, ...]
    interior_bonds: tuple[int, ...]
    m_left: int
    m_right: int

    @property
    def sites(self) -> range:
        return range(self.start, self.start + self.length)

    @property
    def j_minus_twice(self) -> int:
        return self.m_left - self.m_right

    @property
    def j_plus_twice(self) -> int:
        return self.m_left + self.m_right

    @property
    def j_minus(self) -> HalfInt:
        return HalfInt(self.j_minus_twice)

    @property
    def j_plus(self) -> HalfInt:
        return HalfInt(self.j_plus_twice)

    def j_values_twice(self) -> list[int]:
        return list(range(abs(self.j_minus_twice), self.j_plus_twice + 1, 2))

    def j_values(self) -> list[HalfInt]:
        return [HalfInt(t) for t in self.j_values_twice()]

    @property
    def degeneracy(self) -> int:
        return (self.m_left + 1) * (self.m_right + 1)

    def dimension(self) -> int:
        n = 1
        for t in self.spins_twice:
            n *= t + 1
        return n


def _alternating_twice(spins_twice) -> int:
    return sum((-1) ** j * t for j, t in enumerate(spins_twice))


def _solve_twice(spins_twice) -> list[int]:
    if len(spins_twice) < 3:
        raise ChainError("a chain needs two ending spins and at least one bulk spin")
    alt = _alternating_twice(spins_twice)
    if alt != 0:
        raise ConditionViolated(
            f"alternating spin sum is {alt}/2, must vanish for the bond relation to be solvable")
    bonds = []
    acc = 0
    for t in spins_twice[:-1]:
        acc = t - acc  # M_{j,j+1} = 2S_j - M_{j-1,j}
        bonds.append(acc)
    for j, m in enumerate(bonds):
        if m < 1:
            raise NonPositiveBond(j, m)
    return bonds


def solve_bonds(spins) -> list[int]:
    """Bond numbers M_{j,j+1} = 2 sum_{l<=j} (-1)^(j-l) S_l for j = 0..N."""
    return _solve_twice([HalfInt.of(s).twice for s in spins])


def validate(chain: ChainSpec) -> ValidationReport:
    """Check bond/spin relations, positivity and the alternating-sum condition."""
    st, bonds = chain.spins_twice, chain.bonds
    out: list[Violation] = []
    if len(st) < 3:
        out.append(Violation("length", None, "chain needs at least 3 sites"))
    if len(bonds) != len(st) - 1:
        out.append(Violation("length", None,
                             f"{len(st)} sites need {len(st) - 1} bonds, got {len(bonds)}"))
        return ValidationReport(tuple(out))
    for j, m in enumerate(bonds):
        if m < 1:
            out.append(Violation("bond", j, f"bond {j}: bond number {m} is not positive"))
    padded = (0,) + tuple(bonds) + (0,)
    for j, t in enumerate(st):
        expected = padded[j] + padded[j + 1]
        if t != expected:
            out.append(Violation(
                "relation", j,
                f"site {j}: 2S={t} but adjacent bond numbers sum to {expected}"))
    alt = _alternating_twice(st)
    if alt != 0:
        out.append(Violation(
            "condition", None,
            f"alternating spin sum condition violated: sum (-1)^j S_j = {alt}/2"))
    return ValidationReport(tuple(out))


def _raise_if_invalid(chain: ChainSpec) -> None:
    report = validate(chain)
    if not report.ok:
        raise InvalidChain(report)


def block(chain: ChainSpec, k: int, L: int) -> BlockSpec:
    """The block of L bulk sites starting at site k (1 <= k, k+L-1 <= N)."""
    if L < 1 or k < 1 or k + L - 1 > chain.n_bulk:
        raise OutOfRange(f"block start={k} length={L} is outside bulk sites 1..{chain.n_bulk}")
    return BlockSpec(
        start=k,
        length=L,
        spins_twice=chain.spins_twice[k:k + L],
        interior_bonds=chain.bonds[k:k + L - 1],
        m_left=chain.bonds[k - 1],
        m_right=chain.bonds[k + L - 1],
    )


def homogeneous_chain(spin, n_bulk: int) -> ChainSpec:
    """Bulk spin S on N sites, ending spins S/2; every bond carries S valence bonds."""
    m = HalfInt.of(spin).twice // 2
    if HalfInt.of(spin).twice % 2:
        raise ChainError("a homogeneous chain needs integer bulk spin")
    return ChainSpec.from_bonds([m] * (n_bulk + 1), name=f"S{spin}_N{n_bulk}")


def parse_chain(data: dict) -> ChainSpec:
    """Chain from its JSON object form: ``spins_twice`` or ``bonds``, optional ``name``."""
    if not isinstance(data, dict):
        raise TypeError("chain spec must be a JSON object")
    name = data.get("name")
    if "spins_twice" in data and "bonds" in data:
        raise KeyError("give either 'spins_twice' or 'bonds', not both")
    if "spins_twice" in data:
        values = data["spins_twice"]
        kind = "spins_twice"
    elif "bonds" in data:
        values = data["bonds"]
        kind = "bonds"
    else:
        raise KeyError("chain spec needs 'spins_twice' or 'bonds'")
    if not isinstance(values, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise TypeError(f"'{kind}' must be a list of integers")
    if kind == "spins_twice":
        return ChainSpec.from_spins_twice(values, name)
    return ChainSpec.from_bonds(values, name)


def load_chain(path) -> ChainSpec:
    return parse_chain(json.loads(Path(path).read_text()))
