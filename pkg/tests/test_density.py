import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aklt_vbs import (
    BlockSpectrum,
    ChainSpec,
    FockVector,
    block,
    boundary_states,
    build_vbs,
    density_from_boundary_sum,
    homogeneous_chain,
    reduced_density_matrix,
    sector_trace,
    spectrum_by_peeling,
    verify_projector_structure,
)
from aklt_vbs.density import (
    ConsistencyError,
    highest_weight_vector,
    partial_trace,
    renyi_entropy,
    sector_traces,
    von_neumann_entropy,
)
from aklt_vbs.fock import apply_total_spin, basis_configs, metric_weight
from aklt_vbs.linalg import nullspace
from oracles import aklt_ground_state, reduced_spectrum

C5 = ChainSpec.from_spins(["1/2", "3/2", 2, "3/2", "1/2"])
C6 = ChainSpec.from_spins(["1/2", "3/2", 2, 2, "3/2", "1/2"])

# (chain, k, L) blocks small enough for a dense numpy reference
DENSE_CASES = [
    (homogeneous_chain(1, 4), 1, 2),
    (homogeneous_chain(1, 4), 2, 2),
    (homogeneous_chain(1, 4), 1, 3),
    (homogeneous_chain(1, 4), 1, 4),
    (homogeneous_chain(1, 5), 2, 3),
    (C5, 1, 3),
    (C5, 2, 2),
    (C5, 1, 2),
    (C5, 2, 1),
    (C6, 2, 2),
    (homogeneous_chain(2, 2), 1, 2),
]


def case_id(case):
    chain, k, L = case
    return f"{','.join(map(str, chain.spins_twice))}-{k}:{L}"


class TestPartialTrace:
    def test_pure_state(self):
        v = build_vbs(C5)
        rho = partial_trace(v, range(v.n_sites))
        assert rho.trace() == 1
        assert rho.trace_of_square() == 1

    def test_trace_one(self, spin1_chain):
        rho = reduced_density_matrix(spin1_chain, block(spin1_chain, 1, 2))
        assert rho.trace() == 1
        assert rho.is_self_adjoint() and rho.conserves_sz()

    def test_environment_independence_homogeneous(self):
        chain = homogeneous_chain(1, 6)
        a = reduced_density_matrix(chain, block(chain, 1, 3))
        for k in (2, 3, 4):
            assert reduced_density_matrix(chain, block(chain, k, 3)) == a

    def test_environment_independence_inhomogeneous(self):
        # the block (2, 3/2) with M_left=2, M_interior=2, M_right=1 sits in both chains
        a = reduced_density_matrix(C5, block(C5, 2, 2))
        b = reduced_density_matrix(C6, block(C6, 3, 2))
        assert a == b

    def test_normalizes_unnormalized_input(self):
        v = build_vbs(C5).scaled(7)
        assert partial_trace(v, [1, 2]) == partial_trace(build_vbs(C5), [1, 2])


class TestBoundarySum:
    @pytest.mark.parametrize("case", DENSE_CASES, ids=case_id)
    def test_equals_partial_trace(self, case):
        chain, k, L = case
        blk = block(chain, k, L)
        rho = density_from_boundary_sum(chain, blk)
        assert rho.trace() == 1
        assert rho == reduced_density_matrix(chain, blk)

    @given(st.lists(st.integers(1, 3), min_size=3, max_size=5), st.data())
    @settings(max_examples=20, deadline=None)
    def test_equals_partial_trace_random_chains(self, bonds, data):
        chain = ChainSpec.from_bonds(bonds)
        k = data.draw(st.integers(1, chain.n_bulk))
        L = data.draw(st.integers(1, chain.n_bulk - k + 1))
        blk = block(chain, k, L)
        assert density_from_boundary_sum(chain, blk) == reduced_density_matrix(chain, blk)


class TestSectorTraces:
    @pytest.mark.parametrize("case", DENSE_CASES, ids=case_id)
    def test_symmetric_and_normalized(self, case):
        chain, k, L = case
        traces = sector_traces(reduced_density_matrix(chain, block(chain, k, L)))
        assert sum(traces.values()) == 1
        for s, t in traces.items():
            assert traces.get(-s) == t

    def test_spin1_pair_top_sector(self, spin1_chain):
        rho = reduced_density_matrix(spin1_chain, block(spin1_chain, 1, 2))
        assert sector_trace(rho, 1) == Fraction(2, 9)
        assert sector_trace(rho, 0) == Fraction(1, 3) + Fraction(2, 9)


class TestPeeling:
    @pytest.mark.parametrize("L, expected", [
        (2, {0: Fraction(1, 3), 2: Fraction(2, 9)}),
        (3, {0: Fraction(2, 9), 2: Fraction(7, 27)}),
    ])
    def test_spin1_values(self, L, expected):
        chain = homogeneous_chain(1, 5)
        spec = spectrum_by_peeling(reduced_density_matrix(chain, block(chain, 1, L)), block(chain, 1, L))
        assert spec.eigenvalues == expected

    @pytest.mark.parametrize("case", DENSE_CASES, ids=case_id)
    def test_matches_dense_eigensolver(self, case):
        chain, k, L = case
        blk = block(chain, k, L)
        spec = spectrum_by_peeling(reduced_density_matrix(chain, blk), blk)
        assert spec.total() == 1
        psi = aklt_ground_state(chain.spins_twice, chain.bonds)
        ref = reduced_spectrum(psi, chain.spins_twice, blk.sites)
        ours = spec.as_float_list()
        ref_nonzero = ref[-len(ours):]
        assert np.allclose(ours, ref_nonzero, atol=1e-10)
        assert np.all(np.abs(ref[:-len(ours)]) < 1e-10)

    def test_single_site(self, c5):
        blk = block(c5, 2, 1)
        spec = spectrum_by_peeling(reduced_density_matrix(c5, blk), blk)
        assert spec.eigenvalues == {4: Fraction(1, 5)}

    def test_rejects_asymmetric_sectors(self, spin1_chain):
        blk = block(spin1_chain, 1, 1)
        rho = reduced_density_matrix(spin1_chain, blk)
        skewed = type(rho)(rho.occupations, {(2,): {(2,): Fraction(1, 2)}, (1,): {(1,): Fraction(1, 2)}})
        with pytest.raises(ConsistencyError):
            spectrum_by_peeling(skewed, blk)


class TestProjectorStructure:
    @pytest.mark.parametrize("case", [c for c in DENSE_CASES if c[2] >= 2], ids=case_id)
    def test_report(self, case):
        chain, k, L = case
        blk = block(chain, k, L)
        rho = reduced_density_matrix(chain, blk)
        report = verify_projector_structure(rho, chain, blk)
        assert report.ok, str(report)
        assert report.rank == blk.degeneracy
        assert len(report.eigen_checks) == blk.degeneracy

    def test_single_site_refused(self, c5):
        blk = block(c5, 2, 1)
        with pytest.raises(ValueError):
            verify_projector_structure(reduced_density_matrix(c5, blk), c5, blk)

    def test_spin1_pair_rank(self, spin1_chain):
        rho = reduced_density_matrix(spin1_chain, block(spin1_chain, 1, 2))
        assert rho.rank() == 4

    def test_c5_pair_eigen_equations(self):
        blk = block(C5, 2, 2)
        rho = reduced_density_matrix(C5, blk)
        spec = spectrum_by_peeling(rho, blk)
        assert rho.rank() == 6
        for J in ("1/2", "3/2"):
            v = highest_weight_vector(C5, blk, J)
            assert apply_total_spin("S+", v) == FockVector.zero(v.occupations)
            while v:
                assert rho.apply(v) == v.scaled(spec[J])
                v = apply_total_spin("S-", v)

    @pytest.mark.parametrize("chain, k, L", [(homogeneous_chain(1, 4), 1, 2), (C5, 2, 2)])
    def test_complement_is_annihilated(self, chain, k, L):
        blk = block(chain, k, L)
        rho = reduced_density_matrix(chain, blk)
        configs = basis_configs(blk.spins_twice)
        # metric-orthogonal complement of the boundary states
        rows = [[b.amplitudes.get(p, 0) * metric_weight(blk.spins_twice, p) for p in configs]
                for b in boundary_states(chain, blk).values()]
        complement = nullspace(rows, len(configs))
        assert len(complement) == len(configs) - blk.degeneracy
        for w in complement:
            vec = FockVector(blk.spins_twice, dict(zip(configs, w)))
            assert not rho.apply(vec)

    def test_tampered_rho_is_reported(self, spin1_chain):
        blk = block(spin1_chain, 1, 2)
        rho = reduced_density_matrix(spin1_chain, blk)
        rows = {p: dict(r) for p, r in rho.rows.items()}
        p, q = sorted(rows)[:2]
        rows[p][p] += Fraction(1, 100)
        rows[q][q] -= Fraction(1, 100)
        bad = type(rho)(rho.occupations, rows)
        spec = BlockSpectrum({0: Fraction(1, 3), 2: Fraction(2, 9)})
        assert not verify_projector_structure(bad, spin1_chain, blk, spec).ok


class TestEntropies:
    def test_spin1_pair(self):
        spec = BlockSpectrum({0: Fraction(1, 3), 2: Fraction(2, 9)})
        assert von_neumann_entropy(spec) == pytest.approx(1.36892, abs=1e-5)

    @pytest.mark.parametrize("d", [1, 4, 6, 9])
    def test_uniform_spectrum(self, d):
        # a single multiplet of dimension d with weight 1/d
        spec = BlockSpectrum({d - 1: Fraction(1, d)})
        assert von_neumann_entropy(spec) == pytest.approx(math.log(d), abs=1e-12)
        for alpha in (0.5, 2, 10):
            assert renyi_entropy(spec, alpha) == pytest.approx(math.log(d), abs=1e-12)

    def test_renyi_approaches_von_neumann(self):
        spec = BlockSpectrum({0: Fraction(1, 3), 2: Fraction(2, 9)})
        assert abs(renyi_entropy(spec, 1 + 1e-6) - von_neumann_entropy(spec)) < 1e-6

    @pytest.mark.parametrize("alpha", [0, -1, 1])
    def test_renyi_rejects_bad_orders(self, alpha):
        with pytest.raises(ValueError):
            renyi_entropy(BlockSpectrum({0: Fraction(1)}), alpha)

    @given(st.floats(0.1, 20).filter(lambda a: abs(a - 1) > 1e-3))
    def test_renyi_bounded_by_hartley(self, alpha):
        spec = BlockSpectrum({0: Fraction(1, 3), 2: Fraction(2, 9)})
        assert 0 <= renyi_entropy(spec, alpha) <= math.log(4) + 1e-12
