"""Bubble-radius histories and their kinematics.

Two trajectory flavors share one functional interface: an analytic collapse
pulse whose squared radius dips as a Lorentzian, and a tabulated trace built
from sampled (t, R) pairs.  Everything downstream consumes them through the
free functions below (radius, dynamic_area, surface_velocity, ...), so the
two kinds stay interchangeable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Union

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.signal import savgol_filter

from .unitsys import SPEED_OF_LIGHT

# golden-section interior ratio
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# scan width around the dip center for velocity maximization, in units of gamma
_SCAN_HALF_WIDTH = 10.0
_SCAN_POINTS = 4096


class TrajectoryError(ValueError):
    """Invalid trajectory data or out-of-domain evaluation."""


@dataclass(frozen=True)
class LorentzianPulse:
    """Analytic collapse model: a Lorentzian dip in the squared radius.

    R^2(tau) = r0^2 - (r0^2 - rmin^2) * gamma^2 / ((tau - center)^2 + gamma^2)

    The dip sits at ``period/2`` so a window [0, period] brackets it
    symmetrically.  Closed-form spectral references assume the dip is well
    inside the window; keep ``period >= 40 * gamma`` when comparing against
    them, otherwise window truncation is no longer negligible.

    ``center_offset`` shifts the dip away from mid-window.  It exists for
    translation-invariance diagnostics and defaults to zero.
    """

    r0: float
    rmin: float
    gamma: float
    period: float
    center_offset: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 < self.rmin < self.r0) or not math.isfinite(self.r0):
            raise TrajectoryError(
                f"need 0 < rmin < r0, got rmin={self.rmin!r} r0={self.r0!r}")
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise TrajectoryError(f"gamma must be positive, got {self.gamma!r}")
        if not (self.period > 0.0 and math.isfinite(self.period)):
            raise TrajectoryError(f"period must be positive, got {self.period!r}")
        if not math.isfinite(self.center_offset):
            raise TrajectoryError(f"center_offset must be finite, got {self.center_offset!r}")

    @property
    def center(self) -> float:
        return 0.5 * self.period + self.center_offset

    @property
    def dip_amplitude(self) -> float:
        """r0^2 - rmin^2, the depth of the squared-radius dip, m^2."""
        return self.r0 ** 2 - self.rmin ** 2

    def squared_radius(self, tau):
        d = np.asarray(tau, dtype=float) - self.center
        return self.r0 ** 2 - self.dip_amplitude * self.gamma ** 2 / (d * d + self.gamma ** 2)


class TabulatedTrajectory:
    """Sampled R(t) trace evaluated through a monotone cubic interpolant.

    The interpolant passes through every sample and never overshoots, which
    keeps R > 0 wherever the samples are positive.  ``baseline_r0`` is the
    ambient radius subtracted before spectral analysis; when omitted it is
    estimated as the mean radius over the first and last 5% of samples,
    where experimental traces sit near ambient.

    Optional pre-smoothing (``smooth_window`` of 5 to 11 points, quadratic
    local fit) tames sample noise before differentiation; the surface
    velocity enters the yield bound to the fourth power, so noise there is
    expensive.
    """

    def __init__(self, times, radii, baseline_r0: float | None = None,
                 smooth_window: int = 0) -> None:
        t = np.asarray(times, dtype=float)
        r = np.asarray(radii, dtype=float)
        if t.ndim != 1 or r.ndim != 1 or t.size != r.size:
            raise TrajectoryError("times and radii must be 1-d arrays of equal length")
        if t.size < 8:
            raise TrajectoryError(f"need at least 8 samples, got {t.size}")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(r)):
            raise TrajectoryError("samples must be finite")
        if not np.all(np.diff(t) > 0.0):
            raise TrajectoryError("sample times must be strictly increasing")
        if not np.all(r > 0.0):
            raise TrajectoryError("all radii must be positive")

        if smooth_window:
            if smooth_window not in (5, 7, 9, 11):
                raise TrajectoryError(
                    f"smooth_window must be one of 5, 7, 9, 11, got {smooth_window}")
            if t.size > smooth_window:
                r = savgol_filter(r, smooth_window, polyorder=2)
                if not np.all(r > 0.0):
                    raise TrajectoryError("smoothing drove a radius nonpositive")

        if baseline_r0 is None:
            edge = max(1, t.size // 20)
            baseline_r0 = float(np.mean(np.concatenate([r[:edge], r[-edge:]])))
        if not (baseline_r0 > 0.0 and math.isfinite(baseline_r0)):
            raise TrajectoryError(f"baseline_r0 must be positive, got {baseline_r0!r}")

        self.times = t
        self.radii = r
        self.baseline_r0 = float(baseline_r0)
        self.smooth_window = int(smooth_window)
        self._interp = PchipInterpolator(t, r, extrapolate=False)
        self._dinterp = self._interp.derivative()

    @property
    def t_start(self) -> float:
        return float(self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def __repr__(self) -> str:
        return (f"TabulatedTrajectory(n={self.times.size}, "
                f"t=[{self.t_start:.3e}, {self.t_end:.3e}] s, "
                f"baseline_r0={self.baseline_r0:.6e} m)")


Trajectory = Union[LorentzianPulse, TabulatedTrajectory]


def _check_domain(traj: Trajectory, tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    if isinstance(traj, LorentzianPulse):
        lo, hi = 0.0, traj.period
    else:
        lo, hi = traj.t_start, traj.t_end
    if np.any(tau < lo) or np.any(tau > hi):
        raise TrajectoryError(
            f"tau outside trajectory domain [{lo:.6e}, {hi:.6e}] s")
    return tau


def radius(traj: Trajectory, tau):
    """R(tau) in meters; accepts scalars or arrays."""
    t = _check_domain(traj, tau)
    if isinstance(traj, LorentzianPulse):
        out = np.sqrt(traj.squared_radius(t))
    else:
        out = traj._interp(t)
    return float(out) if np.isscalar(tau) else out


def dynamic_area(traj: Trajectory, tau):
    """Baseline-subtracted squared radius R^2(tau) - r0^2, m^2.

    This is the quantity whose Fourier content drives emission; a static
    interface gives identically zero.
    """
    t = _check_domain(traj, tau)
    if isinstance(traj, LorentzianPulse):
        d = t - traj.center
        out = -traj.dip_amplitude * traj.gamma ** 2 / (d * d + traj.gamma ** 2)
    else:
        r = traj._interp(t)
        out = r * r - traj.baseline_r0 ** 2
    return float(out) if np.isscalar(tau) else out


def surface_velocity(traj: Trajectory, tau):
    """dR/dtau in m/s.

    Lorentzian pulses use the analytic derivative.  Tabulated traces
    differentiate the interpolant, which is one-sided and unreliable at the
    very endpoints, so those are rejected.
    """
    t = _check_domain(traj, tau)
    if isinstance(traj, LorentzianPulse):
        d = t - traj.center
        den = d * d + traj.gamma ** 2
        # v = (dR^2/dtau) / (2 R)
        darea_dt = 2.0 * traj.dip_amplitude * traj.gamma ** 2 * d / (den * den)
        out = darea_dt / (2.0 * np.sqrt(traj.squared_radius(t)))
    else:
        if np.any(t == traj.t_start) or np.any(t == traj.t_end):
            raise TrajectoryError("tabulated derivative is undefined at the domain boundary")
        out = traj._dinterp(t)
    return float(out) if np.isscalar(tau) else out


def _golden_max(f, a: float, b: float, rel_tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section maximization of f on [a, b] to relative x tolerance."""
    scale = max(abs(a), abs(b), 1e-300)
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > rel_tol * scale:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


def max_surface_velocity(traj: Trajectory) -> float:
    """Global maximum of |dR/dtau| over the trajectory domain, m/s.

    Dense scan bracketing plus golden-section refinement; robust for both
    analytic and interpolated trajectories and reproducible run to run.
    """
    if isinstance(traj, LorentzianPulse):
        lo = max(0.0, traj.center - _SCAN_HALF_WIDTH * traj.gamma)
        hi = min(traj.period, traj.center + _SCAN_HALF_WIDTH * traj.gamma)
        grid = np.linspace(lo, hi, _SCAN_POINTS)
        speed = np.abs(surface_velocity(traj, grid))
    else:
        # interior sample times; endpoint derivatives are not defined
        grid = traj.times[1:-1]
        if grid.size == 0:
            return 0.0
        lo, hi = traj.t_start, traj.t_end
        speed = np.abs(surface_velocity(traj, grid))
    i = int(np.argmax(speed))
    a = grid[i - 1] if i > 0 else lo
    b = grid[i + 1] if i < grid.size - 1 else hi

    def negspeed_safe(t: float) -> float:
        # clamp off exact endpoints where the tabulated derivative is undefined
        eps = 1e-15 * max(abs(lo), abs(hi), 1.0)
        t = min(max(t, lo + eps), hi - eps)
        return abs(surface_velocity(traj, t))

    _, vmax = _golden_max(negspeed_safe, a, b)
    return max(float(vmax), float(speed[i]))


def beta(pulse: LorentzianPulse) -> float:
    """Characteristic surface velocity sqrt(r0^2 - rmin^2) / (c * gamma), in units of c."""
    if not isinstance(pulse, LorentzianPulse):
        raise TrajectoryError("beta is defined for the analytic pulse model")
    return math.sqrt(pulse.dip_amplitude) / (SPEED_OF_LIGHT * pulse.gamma)


def characteristic_time(radius_scale: float, velocity_scale: float) -> float:
    """Collapse timescale radius_scale / velocity_scale, seconds.

    Scales are round decimal quantities (1 um, 1 km/s), so the quotient is
    taken in decimal and rounded to float once; binary division of the two
    float inputs would double-round (1e-6 / 1000.0 misses 1e-9 by one ulp).
    """
    if not (radius_scale > 0.0 and velocity_scale > 0.0):
        raise TrajectoryError("radius_scale and velocity_scale must be positive")
    if not (math.isfinite(radius_scale) and math.isfinite(velocity_scale)):
        raise TrajectoryError("radius_scale and velocity_scale must be finite")
    return float(Decimal(repr(radius_scale)) / Decimal(repr(velocity_scale)))
