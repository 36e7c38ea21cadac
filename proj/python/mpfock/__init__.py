"""k-photon pair states on a truncated Fock space."""

from ._core import (
    GridError,
    SectorError,
    SingleModeState,
    SpecError,
    SqueezingParam,
    StandardizeError,
    TruncationConfig,
    TruncationError,
    TwoModeState,
    __version__,
    annihilation,
    compress_single_to_sector,
    compress_to_sector,
    covariance,
    covariance_single,
    criterion,
    detect_sector,
    detect_sector_two_mode,
    entanglement_entropy,
    expectation,
    expectation_single,
    gamma_for_energy,
    gaussianity_check,
    geometric_tail_levels,
    infer_k,
    log_negativity,
    mean_energy,
    mean_energy_single,
    mp_thermal,
    mp_tmsv,
    multi_ladder,
    multi_number,
    p_min,
    partial_trace,
    partial_transpose,
    partial_transpose_spectrum,
    ppt_check,
    product,
    purity,
    purity_single,
    quadratures,
    run_cli,
    sector_isometry,
    separability_report,
    standardize,
    state_report,
    thermal,
    tmsv,
    von_neumann_entropy,
    von_neumann_entropy_single,
    wigner,
    wigner_multiphoton,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
