"""Pseudospectral simulation of semilinear wave equations on the 3-torus."""

from ._core import (
    BlowupError,
    FitResult,
    KRule,
    ModelParams,
    Scheme,
    SchemeConfig,
    SpectralField,
    State,
    TorusGrid,
    TrajectoryEntry,
    corrected_lie_step,
    endpoint_ratio,
    energy,
    error_norm_h1_l2,
    error_norm_l2_hm1,
    evolve,
    evolve_final,
    fit_order,
    g_apply,
    h_apply,
    half_wave,
    hermitian_defect,
    lebesgue_norm,
    lie_step,
    lowpass,
    phi2_apply,
    s_map,
    sobolev_noise,
    sobolev_norm,
    strang_reference_step,
    strichartz_ratio,
    to_physical,
    to_spectral,
    wave_admissible,
    wave_group,
)

__all__ = [
    "BlowupError",
    "FitResult",
    "KRule",
    "ModelParams",
    "Scheme",
    "SchemeConfig",
    "SpectralField",
    "State",
    "TorusGrid",
    "TrajectoryEntry",
    "corrected_lie_step",
    "endpoint_ratio",
    "energy",
    "error_norm_h1_l2",
    "error_norm_l2_hm1",
    "evolve",
    "evolve_final",
    "fit_order",
    "g_apply",
    "h_apply",
    "half_wave",
    "hermitian_defect",
    "lebesgue_norm",
    "lie_step",
    "lowpass",
    "phi2_apply",
    "s_map",
    "sobolev_noise",
    "sobolev_norm",
    "strang_reference_step",
    "strichartz_ratio",
    "to_physical",
    "to_spectral",
    "wave_admissible",
    "wave_group",
]

__version__ = "0.1.0"
