"""Quantum sufficiency and recoverability numerics.

Thin wrapper around the compiled extension: relative entropy by the spectral
and integral routes, hypothesis-testing curves, and Petz / rotated / universal
recovery maps. States are complex numpy matrices, channels are lists of Kraus
operators.
"""

from qsuff._core import (
    apply_adjoint,
    apply_channel,
    bayes_error_of_test,
    beta0_density,
    cocycles,
    d_max,
    default_s_grid,
    deficiency_epsilon,
    divergence_report,
    fidelity,
    frenkel_integrand,
    kraus_to_choi,
    optimal_test,
    petz_kraus,
    recovery_report,
    relative_entropy_integral,
    relative_entropy_spectral,
    rotated_petz_kraus,
    sufficiency_report,
    sweep_curves,
    trace_norm,
    universal_recovery_choi,
    __version__,
)

__all__ = [
    "apply_adjoint",
    "apply_channel",
    "bayes_error_of_test",
    "beta0_density",
    "cocycles",
    "d_max",
    "default_s_grid",
    "deficiency_epsilon",
    "divergence_report",
    "fidelity",
    "frenkel_integrand",
    "kraus_to_choi",
    "optimal_test",
    "petz_kraus",
    "recovery_report",
    "relative_entropy_integral",
    "relative_entropy_spectral",
    "rotated_petz_kraus",
    "sufficiency_report",
    "sweep_curves",
    "trace_norm",
    "universal_recovery_choi",
    "__version__",
]
