"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line as it finishes (visible with ``-s``) and the
full table is repeated in the terminal summary.
"""

import functools
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import sympy

from aklt_vbs import (
    ChainSpec,
    block,
    boundary_states,
    build_block_hamiltonian,
    build_full_hamiltonian,
    build_vbs,
    clebsch_gordan,
    closed_form_spectrum,
    degenerate_vbs,
    density_from_boundary_sum,
    eigenvalue_closed_form,
    homogeneous_chain,
    inner,
    reduced_density_matrix,
    spectrum_by_peeling,
    vbs_norm_closed_form,
    verify_projector_structure,
    wigner3j,
)
from aklt_vbs.density import renyi_entropy, von_neumann_entropy
from aklt_vbs.fock import (
    apply_total_spin,
    basis_configs,
    coherent_ground_state,
    coherent_weight,
    expansion_prefactor,
)
from aklt_vbs.hamiltonian import penalized_spins_twice
from aklt_vbs.numerics import HalfInt
from conftest import ACCEPTANCE_RESULTS
from oracles import aklt_ground_state, reduced_spectrum

C5 = ChainSpec.from_spins(["1/2", "3/2", 2, "3/2", "1/2"], name="C5")
C6 = ChainSpec.from_spins(["1/2", "3/2", 2, 2, "3/2", "1/2"], name="C6")


def suite():
    """(chain, k, L) for every block of the acceptance suite."""
    out = []
    for n in range(4, 9):
        chain = homogeneous_chain(1, n)
        out += [(chain, 1, L) for L in range(2, min(6, n) + 1)]
    spin2 = homogeneous_chain(2, 4)
    out += [(spin2, 1, L) for L in (2, 3)]
    out += [(C5, k, L) for k, L in ((1, 3), (2, 2), (1, 2))]
    out += [(C6, k, L) for k, L in ((1, 4), (2, 2))]
    return out


SUITE = suite()
SUITE_CHAINS = list(dict.fromkeys(chain for chain, _, _ in SUITE))


def distinct_blocks():
    """Suite blocks with duplicate profiles removed (the block data fixes rho)."""
    seen = {}
    for chain, k, L in SUITE:
        seen.setdefault(block(chain, k, L), chain)
    return [(chain, blk) for blk, chain in seen.items()]


def criterion(n, description):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_RESULTS[n] = (description, False)
                print(f"\ncriterion {n}: FAIL  {description}")
                raise
            ACCEPTANCE_RESULTS[n] = (description, True)
            print(f"\ncriterion {n}: PASS  {description}")
        return wrapper
    return deco


def coefficient_map(chain, factor):
    return {(j, HalfInt(tJ)): Fraction(factor)
            for j, m in enumerate(chain.bonds)
            for tJ in penalized_spins_twice(chain.spins_twice[j], chain.spins_twice[j + 1], m)}


@criterion(1, "closed form equals brute-force peeling exactly on the suite, under 2 minutes")
def test_closed_form_vs_brute_force():
    start = time.perf_counter()
    for chain, k, L in SUITE:
        blk = block(chain, k, L)
        peeled = spectrum_by_peeling(reduced_density_matrix(chain, blk), blk)
        for tJ in blk.j_values_twice():
            assert eigenvalue_closed_form(blk, HalfInt(tJ)) == peeled.eigenvalues[tJ], (chain.name, k, L, tJ)
        assert closed_form_spectrum(blk) == peeled
    elapsed = time.perf_counter() - start
    print(f"\n  {len(SUITE)} blocks in {elapsed:.1f}s")
    assert elapsed < 120


@criterion(2, "spin-1 spot values {1/3, 2/9} and {2/9, 7/27}, float oracle within 1e-10")
def test_spot_values():
    chain = homogeneous_chain(1, 4)
    psi = aklt_ground_state(chain.spins_twice, chain.bonds)
    expected = {2: {0: Fraction(1, 3), 2: Fraction(2, 9)}, 3: {0: Fraction(2, 9), 2: Fraction(7, 27)}}
    for L, values in expected.items():
        blk = block(chain, 1, L)
        assert closed_form_spectrum(blk).eigenvalues == values
        assert spectrum_by_peeling(reduced_density_matrix(chain, blk), blk).eigenvalues == values
        dense = reduced_spectrum(psi, chain.spins_twice, blk.sites)
        assert len(dense) <= 81
        ours = sorted(float(lam) for tJ, lam in values.items() for _ in range(tJ + 1))
        assert np.allclose(dense[-len(ours):], ours, atol=1e-10)
        assert np.all(np.abs(dense[:-len(ours)]) < 1e-10)


@criterion(3, "VBS norm closed form equals the brute-force inner product")
def test_normalization():
    extra = [ChainSpec.from_spins(["1/2", 1, "1/2"])]
    for chain in SUITE_CHAINS + extra:
        v = build_vbs(chain)
        assert inner(v, v) == vbs_norm_closed_form(chain)
    assert vbs_norm_closed_form(extra[0]) == 6
    assert vbs_norm_closed_form(C5) == 7680


@criterion(4, "rank (M_left+1)(M_right+1) and exact eigen-equations on highest weights and descendants")
def test_projector_structure():
    for chain, blk in distinct_blocks():
        rho = reduced_density_matrix(chain, blk)
        assert rho == density_from_boundary_sum(chain, blk)
        report = verify_projector_structure(rho, chain, blk)
        assert report.ok, f"{chain.name} {blk.start}:{blk.length}: {report}"
        assert report.rank == (blk.m_left + 1) * (blk.m_right + 1)
        assert len(report.eigen_checks) == blk.degeneracy and all(report.eigen_checks.values())


@criterion(5, "H|VBS> = 0, dim ker H_b = degeneracy, both invariant under C_J -> 7/3 C_J")
def test_ground_state_facts():
    for chain in SUITE_CHAINS:
        vbs = build_vbs(chain)
        assert not build_full_hamiltonian(chain).apply(vbs)
        assert not build_full_hamiltonian(chain, coefficient_map(chain, Fraction(7, 3))).apply(vbs)
    scaled_cache = {}
    for chain, blk in distinct_blocks():
        coeffs = scaled_cache.setdefault(chain, coefficient_map(chain, Fraction(7, 3)))
        for c in (None, coeffs):
            h = build_block_hamiltonian(chain, blk, c)
            assert h.kernel_dimension() == blk.degeneracy
            for state in boundary_states(chain, blk).values():
                assert not h.apply(state)
    small = homogeneous_chain(1, 4)
    assert build_full_hamiltonian(small).kernel_dimension() == 1
    assert build_full_hamiltonian(small, coefficient_map(small, Fraction(7, 3))).kernel_dimension() == 1


@criterion(6, "identical exact rho_L for one block profile at two positions")
def test_environment_independence():
    chain = homogeneous_chain(1, 8)
    for L in (2, 3, 4):
        a = reduced_density_matrix(chain, block(chain, 1, L))
        b = reduced_density_matrix(chain, block(chain, 8 - L, L))
        assert a == b
    spin2 = homogeneous_chain(2, 4)
    assert reduced_density_matrix(spin2, block(spin2, 1, 2)) == reduced_density_matrix(spin2, block(spin2, 3, 2))
    # inhomogeneous profile (2, 3/2) with bonds 2 | 2 | 1 in two different chains
    assert reduced_density_matrix(C5, block(C5, 2, 2)) == reduced_density_matrix(C6, block(C6, 3, 2))


@criterion(7, "spin-1 L=10 within 6e-5 of 1/4, entropies within 1e-6 / 1e-5 of ln 4, gap decreasing")
def test_large_block_limit():
    chain = homogeneous_chain(1, 10)
    spec = closed_form_spectrum(block(chain, 1, 10))
    assert max(abs(lam - Fraction(1, 4)) for lam in spec.eigenvalues.values()) <= Fraction(6, 10 ** 5)
    assert abs(von_neumann_entropy(spec) - math.log(4)) <= 1e-6
    for alpha in (0.5, 2, 10):
        assert abs(renyi_entropy(spec, alpha) - math.log(4)) <= 1e-5
    gaps = [math.log(4) - von_neumann_entropy(closed_form_spectrum(block(chain, 1, L)))
            for L in range(2, 11)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


@criterion(8, "degenerate VBS Gram matrix diagonal, norms M-independent, exact ladder identity")
def test_degenerate_states():
    for chain, blk in distinct_blocks():
        basis = basis_configs(blk.spins_twice)
        labels = [(tJ, tM) for tJ in blk.j_values_twice() for tM in range(-tJ, tJ + 1, 2)]
        states = {lab: degenerate_vbs(chain, blk, HalfInt(lab[0]), HalfInt(lab[1])) for lab in labels}
        dense = {lab: s.to_dense(basis) for lab, s in states.items()}
        scale = max(float(np.vdot(v, v).real) for v in dense.values())
        for a, b in itertools.combinations(labels, 2):
            assert abs(np.vdot(dense[a], dense[b])) <= 1e-12 * scale
        for tJ in blk.j_values_twice():
            norms = [float(states[(tJ, tM)].norm_squared()) for tM in range(-tJ, tJ + 1, 2)]
            assert max(norms) - min(norms) <= 1e-10 * max(norms)
        for (tJ, tM), s in states.items():
            v = s.vector
            J, M = Fraction(tJ, 2), Fraction(tM, 2)
            up, down = apply_total_spin("S+", v), apply_total_spin("S-", v)
            assert inner(up, up) == (J - M) * (J + M + 1) * inner(v, v)
            assert inner(down, down) == (J + M) * (J - M + 1) * inner(v, v)


@criterion(9, "coherent ground state equals its X_JM expansion within 1e-10 at 20 random directions")
def test_expansion_identity():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for chain, blk in distinct_blocks():
        basis = basis_configs(blk.spins_twice)
        for tJ in blk.j_values_twice():
            J = HalfInt(tJ)
            dense = {tM: degenerate_vbs(chain, blk, J, HalfInt(tM)).to_dense(basis)
                     for tM in range(-tJ, tJ + 1, 2)}
            pref = expansion_prefactor(blk, J)
            for _ in range(20):
                theta = math.acos(rng.uniform(-1, 1))
                phi = rng.uniform(0, 2 * math.pi)
                lhs = coherent_ground_state(chain, blk, J, theta, phi).to_dense(basis)
                rhs = pref * sum(coherent_weight(J, HalfInt(tM), theta, phi) * v for tM, v in dense.items())
                # no per-(J, M) phase is fitted: the identity holds as written
                worst = max(worst, np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs))
    print(f"\n  worst relative residual {worst:.2e}")
    assert worst <= 1e-10


def _radical(x):
    r = x.radicand
    return x.sign * sympy.sqrt(sympy.Rational(r.numerator, r.denominator))


@criterion(10, "CG completeness exact; 3j orthogonality within 1e-12 for l, l_alpha <= 4")
def test_coefficient_library():
    for t1, t2 in itertools.product(range(7), repeat=2):
        ms = list(itertools.product(range(-t1, t1 + 1, 2), range(-t2, t2 + 1, 2)))
        for (a1, a2), (b1, b2) in itertools.product(ms, ms):
            if a1 + a2 != b1 + b2:
                continue
            tM = a1 + a2
            js = range(max(abs(t1 - t2), abs(tM)), t1 + t2 + 1, 2)
            cgs = [(clebsch_gordan(HalfInt(t1), HalfInt(a1), HalfInt(t2), HalfInt(a2), HalfInt(tJ), HalfInt(tM)),
                    clebsch_gordan(HalfInt(t1), HalfInt(b1), HalfInt(t2), HalfInt(b2), HalfInt(tJ), HalfInt(tM)))
                   for tJ in js]
            if (a1, a2) == (b1, b2):
                assert sum((x.square() for x, _ in cgs), Fraction(0)) == 1
            else:
                total = sum((_radical(x) * _radical(y) for x, y in cgs), sympy.Integer(0))
                assert sympy.nsimplify(sympy.expand(total)) == 0
    for l, la in itertools.product(range(5), repeat=2):
        lbs = range(abs(l - la), l + la + 1)
        for lb, lbp in itertools.product(lbs, lbs):
            for mb in range(-min(lb, lbp), min(lb, lbp) + 1):
                s = sum(float(wigner3j(l, la, lb, m, -m - mb, mb)) * float(wigner3j(l, la, lbp, m, -m - mb, mb))
                        for m in range(-l, l + 1) if abs(m + mb) <= la)
                assert abs((2 * lb + 1) * s - (lb == lbp)) <= 1e-12

