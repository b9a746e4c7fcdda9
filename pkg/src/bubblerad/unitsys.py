"""Physical constants and unit handling at the user boundary.

All core numerics run in nondimensional variables: lengths divided by a
reference length, times by a reference time, velocities by the speed of
light.  SI values appear only on the way in and out.  The frequency-weighted
integrals downstream span tens of orders of magnitude in SI units, and
keeping intermediates near unity is what makes them stable in doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 299792458.0  # m/s, exact by definition
REDUCED_PLANCK = 1.054571817e-34  # J s
DEFAULT_COUPLING = 1e-4  # dimensionless emission coupling for a water-air interface


class UnitError(ValueError):
    """Unknown unit tag or non-finite value at the unit boundary."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Compiled-in constants plus the one tunable model parameter, alpha."""

    c: float = SPEED_OF_LIGHT
    hbar: float = REDUCED_PLANCK
    alpha: float = DEFAULT_COUPLING

    def __post_init__(self) -> None:
        # c and hbar are defined values, not knobs; only alpha is adjustable
        if self.c != SPEED_OF_LIGHT:
            raise ValueError(f"c must be {SPEED_OF_LIGHT!r} m/s exactly, got {self.c!r}")
        if self.hbar != REDUCED_PLANCK:
            raise ValueError(f"hbar must be {REDUCED_PLANCK!r} J s, got {self.hbar!r}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite and positive, got {self.alpha!r}")


@dataclass(frozen=True)
class Scales:
    """Reference length and time defining the nondimensional frame."""

    length_m: float
    time_s: float

    def __post_init__(self) -> None:
        for name in ("length_m", "time_s"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and positive, got {v!r}")


# unit tag -> (SI factor, dimension); velocities are measured in units of c
_LENGTH_TAGS = {"um": 1e-6, "µm": 1e-6, "m": 1.0}
_TIME_TAGS = {"ns": 1e-9, "s": 1.0}
_VELOCITY_TAGS = {"km/s": 1e3, "m/s": 1.0}


def _dimension(unit: str) -> tuple[str, float]:
    if unit in _LENGTH_TAGS:
        return "length", _LENGTH_TAGS[unit]
    if unit in _TIME_TAGS:
        return "time", _TIME_TAGS[unit]
    if unit in _VELOCITY_TAGS:
        return "velocity", _VELOCITY_TAGS[unit]
    raise UnitError(f"unknown unit tag {unit!r}; supported: um, m, ns, s, km/s, m/s")


def to_internal(value: float, unit: str, scales: Scales) -> float:
    """Convert a tagged quantity to the nondimensional frame."""
    if not math.isfinite(value):
        raise UnitError(f"non-finite value {value!r} for unit {unit!r}")
    kind, factor = _dimension(unit)
    si = value * factor
    if kind == "length":
        return si / scales.length_m
    if kind == "time":
        return si / scales.time_s
    return si / SPEED_OF_LIGHT


def from_internal(value: float, unit: str, scales: Scales) -> float:
    """Inverse of to_internal for the same unit tag and scales."""
    if not math.isfinite(value):
        raise UnitError(f"non-finite value {value!r} for unit {unit!r}")
    kind, factor = _dimension(unit)
    if kind == "length":
        si = value * scales.length_m
    elif kind == "time":
        si = value * scales.time_s
    else:
        si = value * SPEED_OF_LIGHT
    return si / factor
