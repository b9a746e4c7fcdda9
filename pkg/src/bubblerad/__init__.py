"""Vacuum photon emission from time-dependent bubble-radius trajectories."""

from .unitsys import (
    DEFAULT_COUPLING,
    PhysicalConstants,
    REDUCED_PLANCK,
    Scales,
    SPEED_OF_LIGHT,
    UnitError,
    from_internal,
    to_internal,
)
from .trajectory import (
    LorentzianPulse,
    TabulatedTrajectory,
    Trajectory,
    TrajectoryError,
    beta,
    characteristic_time,
    dynamic_area,
    max_surface_velocity,
    radius,
    surface_velocity,
)
from .spectral import (
    QuadratureSettings,
    SpectralError,
    Spectrum,
    YieldResult,
    evaluate,
    form_factor,
    photon_number,
    radiated_energy,
    spectral_density,
    spectrum_table,
)
from .oracles import (
    BoundReport,
    YIELD_CONSTANT,
    YIELD_CONSTANT_ALT,
    bound_check,
    check_window_supports_closed_form,
    lorentzian_form_factor_closed,
    lorentzian_photon_number,
    lorentzian_radiated_energy,
    observed_gap,
    peak_and_mean_omega,
    velocity_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DEFAULT_COUPLING",
    "LorentzianPulse",
    "PhysicalConstants",
    "QuadratureSettings",
    "REDUCED_PLANCK",
    "Scales",
    "SPEED_OF_LIGHT",
    "SpectralError",
    "Spectrum",
    "TabulatedTrajectory",
    "Trajectory",
    "TrajectoryError",
    "UnitError",
    "YIELD_CONSTANT",
    "YIELD_CONSTANT_ALT",
    "YieldResult",
    "beta",
    "bound_check",
    "characteristic_time",
    "check_window_supports_closed_form",
    "dynamic_area",
    "evaluate",
    "form_factor",
    "from_internal",
    "lorentzian_form_factor_closed",
    "lorentzian_photon_number",
    "lorentzian_radiated_energy",
    "max_surface_velocity",
    "observed_gap",
    "peak_and_mean_omega",
    "photon_number",
    "radiated_energy",
    "radius",
    "spectral_density",
    "spectrum_table",
    "surface_velocity",
    "to_internal",
    "velocity_bound",
]
