"""Exact simulation of open XX spin-1/2 chains via free fermions."""

from .analytics import (
    CONSTANTS,
    Constants,
    FitError,
    QuasimomentumSet,
    RootCountError,
    dimer_band_energy,
    dimer_concurrence_fidelity,
    dimer_dispersion,
    dimer_gap_asymptotic,
    dimer_has_complex_mode,
    dimer_quasimomenta,
    dimer_x_asymptotic,
    endbond_eigenvector,
    endbond_gap_approx,
    endbond_normalization_sq,
    endbond_quasimomenta,
    endbond_x_interpolated,
    endbond_x_largelambda,
    endbond_x_smalllambda,
    endbond_x_zeroT,
    fit_surface_order,
    localization_length,
    smalllambda_in_regime,
)
from .model import (
    ChainSpec,
    ChainSpecError,
    TridiagonalMatrix,
    build_adjacency,
    make_custom,
    make_dimer,
    make_end_bond,
    make_uniform,
)
from .observables import (
    CLASSICAL_FIDELITY,
    EndToEndState,
    ObservableError,
    ThermalContext,
    concurrence_from_x,
    end_to_end_correlation,
    end_to_end_state,
    energy_gap,
    fidelity_from_x,
    fully_entangled_fraction,
    reduced_density_matrix,
)
from .oracle import (
    DenseState,
    OracleError,
    dense_hamiltonian,
    gibbs_state,
    oracle_end_correlators,
    reduce_to_endpoints,
    site_magnetization,
    wootters_concurrence,
)
from .spectral import (
    SpectralDecomposition,
    SpectralError,
    classify_parity,
    diagonalize,
)

__version__ = "0.1.0"

__all__ = [
    "CLASSICAL_FIDELITY",
    "CONSTANTS",
    "ChainSpec",
    "ChainSpecError",
    "Constants",
    "DenseState",
    "EndToEndState",
    "FitError",
    "ObservableError",
    "OracleError",
    "QuasimomentumSet",
    "RootCountError",
    "SpectralDecomposition",
    "SpectralError",
    "ThermalContext",
    "TridiagonalMatrix",
    "build_adjacency",
    "classify_parity",
    "concurrence_from_x",
    "dense_hamiltonian",
    "diagonalize",
    "dimer_band_energy",
    "dimer_concurrence_fidelity",
    "dimer_dispersion",
    "dimer_gap_asymptotic",
    "dimer_has_complex_mode",
    "dimer_quasimomenta",
    "dimer_x_asymptotic",
    "end_to_end_correlation",
    "end_to_end_state",
    "endbond_eigenvector",
    "endbond_gap_approx",
    "endbond_normalization_sq",
    "endbond_quasimomenta",
    "endbond_x_interpolated",
    "endbond_x_largelambda",
    "endbond_x_smalllambda",
    "endbond_x_zeroT",
    "energy_gap",
    "fidelity_from_x",
    "fit_surface_order",
    "fully_entangled_fraction",
    "gibbs_state",
    "localization_length",
    "make_custom",
    "make_dimer",
    "make_end_bond",
    "make_uniform",
    "oracle_end_correlators",
    "reduce_to_endpoints",
    "reduced_density_matrix",
    "site_magnetization",
    "smalllambda_in_regime",
    "wootters_concurrence",
    "__version__",
]
