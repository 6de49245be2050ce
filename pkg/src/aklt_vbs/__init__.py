"""Exact block density matrices of inhomogeneous AKLT valence-bond-solid chains."""

from .angular_momentum import clebsch_gordan, wigner3j, wigner3j_zero
from .chain import BlockSpec, ChainSpec, block, homogeneous_chain, load_chain, solve_bonds, validate
from .closed_form import (
    closed_form_spectrum,
    eigenvalue_closed_form,
    lambda_coeff,
    limit_eigenvalue,
    saturated_entropy,
)
from .density import (
    BlockOperator,
    BlockSpectrum,
    density_from_boundary_sum,
    entropies,
    reduced_density_matrix,
    sector_trace,
    spectrum_by_peeling,
    verify_projector_structure,
)
from .fock import (
    FockVector,
    apply_total_spin,
    boundary_states,
    build_block_vbs,
    build_vbs,
    coherent_ground_state,
    degenerate_vbs,
    inner,
    vbs_norm_closed_form,
)
from .hamiltonian import bond_projector, build_block_hamiltonian, build_full_hamiltonian
from .numerics import HalfInt, SignedSqrtRational, binomial, factorial, ssr_mul

__all__ = [
    "closed_form_spectrum",
    "eigenvalue_closed_form",
    "lambda_coeff",
    "limit_eigenvalue",
    "saturated_entropy",
    "BlockOperator",
    "BlockSpectrum",
    "density_from_boundary_sum",
    "entropies",
    "reduced_density_matrix",
    "sector_trace",
    "spectrum_by_peeling",
    "verify_projector_structure",
    "FockVector",
    "apply_total_spin",
    "boundary_states",
    "build_block_vbs",
    "build_vbs",
    "coherent_ground_state",
    "degenerate_vbs",
    "inner",
    "vbs_norm_closed_form",
    "clebsch_gordan",
    "wigner3j",
    "wigner3j_zero",
    "BlockSpec",
    "ChainSpec",
    "block",
    "homogeneous_chain",
    "load_chain",
    "solve_bonds",
    "validate",
    "bond_projector",
    "build_block_hamiltonian",
    "build_full_hamiltonian",
    "HalfInt",
    "SignedSqrtRational",
    "binomial",
    "factorial",
    "ssr_mul",
]

__version__ = "0.1.0"
