"""Random-matrix predictions for the realized symmetry classes, and Monte Carlo oracles."""

from .bessel import bessel_j, bessel_j_integral
from .predictions import (
    PredictionCurve,
    SymmetryClassId,
    d_bdi,
    d_ci,
    d_ci_integral_form,
    delta_n_prediction,
    gap_cdf,
    goe_gap_from_spacing,
    wigner_surmise,
)
from .sampling import (
    chgoe_center_spacing,
    chgoe_density_histogram,
    chgoe_first_eigenvalues,
    goe_center_spacing,
    sample_chgoe,
    sample_goe,
)

__all__ = [
    "PredictionCurve",
    "SymmetryClassId",
    "bessel_j",
    "bessel_j_integral",
    "chgoe_center_spacing",
    "chgoe_density_histogram",
    "chgoe_first_eigenvalues",
    "d_bdi",
    "d_ci",
    "d_ci_integral_form",
    "delta_n_prediction",
    "gap_cdf",
    "goe_gap_from_spacing",
    "goe_center_spacing",
    "sample_chgoe",
    "sample_goe",
    "wigner_surmise",
]
