"""Python bindings for the driven transverse-field Ising chain solvers."""

from ._core import (
    DriveConfig,
    InvalidConfig,
    NumericalError,
    bdg_run,
    chi_local_spectral,
    chi_prime,
    chi_second,
    chi_subchain_spectral,
    detect_tstar,
    ed_evolve,
    lrt_energy,
    lrt_trace,
    m_eq_finite,
    magnetization_trace,
    period_fourier,
    quasienergy_gaps,
    revival_time,
    sweep_omega,
)

__all__ = [
    "DriveConfig",
    "InvalidConfig",
    "NumericalError",
    "bdg_run",
    "chi_local_spectral",
    "chi_prime",
    "chi_second",
    "chi_subchain_spectral",
    "detect_tstar",
    "ed_evolve",
    "lrt_energy",
    "lrt_trace",
    "m_eq_finite",
    "magnetization_trace",
    "period_fourier",
    "quasienergy_gaps",
    "revival_time",
    "sweep_omega",
]
