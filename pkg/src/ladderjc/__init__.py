"""Ladder-type three-level atom in a single-mode cavity: exact block evolution,
a brute-force cross-check, photon statistics and Wigner functions."""

from .fock import (
    PhotonDistribution,
    TruncatedFockVector,
    coherent_amplitudes,
    distribution_moments,
    fock_amplitudes,
    suggest_truncation,
)
from .ladder import (
    BlockPropagator,
    ModelParams,
    TriLevelState,
    boundary_block_matrices,
    detuned_block_matrix,
    evolve,
    initial_state,
    resonant_block_matrix,
)
from .observables import (
    PhotonStatsRecord,
    PopulationRecord,
    level_populations,
    mean_photon_closed_form,
    mean_photon_intermediate_corrected,
    photon_statistics,
)
from .wigner import (
    EmptySectorError,
    PhaseSpaceGrid,
    WignerField,
    displaced_number_overlap,
    wigner_conditioned,
    wigner_parity_form,
    wigner_reduced,
    wigner_series_values,
)

__version__ = "0.1.0"

__all__ = [
    "BlockPropagator",
    "EmptySectorError",
    "ModelParams",
    "PhaseSpaceGrid",
    "PhotonDistribution",
    "PhotonStatsRecord",
    "PopulationRecord",
    "TriLevelState",
    "TruncatedFockVector",
    "WignerField",
    "boundary_block_matrices",
    "coherent_amplitudes",
    "detuned_block_matrix",
    "displaced_number_overlap",
    "distribution_moments",
    "evolve",
    "fock_amplitudes",
    "initial_state",
    "level_populations",
    "mean_photon_closed_form",
    "mean_photon_intermediate_corrected",
    "photon_statistics",
    "resonant_block_matrix",
    "suggest_truncation",
    "wigner_conditioned",
    "wigner_parity_form",
    "wigner_reduced",
    "wigner_series_values",
]
