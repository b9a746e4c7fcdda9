"""Config parsing, trajectory ingestion, and bit-stable serialization.

The config format is flat `key = value` lines with `#` comments: a dozen
scalar parameters need no nesting, and flat text diffs cleanly in tests.
Keys carry their unit in the name (r0_um, gamma_ns) so a value can never
be mistaken for the wrong scale.  All serializers render floats with 17
significant digits, which round-trips doubles losslessly, and emit
byte-identical output for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Sequence

import numpy as np

from .trajectory import LorentzianPulse, TabulatedTrajectory, Trajectory
from .spectral import QuadratureSettings, Spectrum, YieldResult
from .unitsys import DEFAULT_COUPLING


class ConfigError(ValueError):
    """Base for config problems; message carries the location when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConfigSyntaxError(ConfigError):
    """Malformed line: no separator, bad literal, duplicate key."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        self.column = column
        super().__init__(f"column {column}: {message}", line)


class UnknownKeyError(ConfigError):
    """Key outside the documented set."""


class MissingKeyError(ConfigError):
    """A key required by the chosen model is absent."""


class ValueRangeError(ConfigError):
    """Value violates its documented range or the model's invariants."""


class TrajectoryDataError(ValueError):
    """Bad trajectory CSV; message carries the data row when applicable."""


@dataclass(frozen=True)
class RunConfig:
    """One run's inputs: the model, its parameters, and quadrature overrides.

    Exactly the parameters of the chosen model may be present: pulse
    dimensions for "lorentzian", a trace file (plus optional smoothing)
    for "tabulated".  Quadrature fields left as None fall back to the
    QuadratureSettings defaults.
    """

    model: str
    r0_um: float | None = None
    rmin_um: float | None = None
    gamma_ns: float | None = None
    period_us: float | None = None
    trajectory_csv: str | None = None
    alpha: float = DEFAULT_COUPLING
    smoothing: bool = False
    smooth_window: int | None = None
    rel_tol: float | None = None
    abs_tol: float | None = None
    max_panels: int | None = None
    oscillation_resolution: float | None = None
    tail_rel_threshold: float | None = None


_MODELS = ("lorentzian", "tabulated")
_PULSE_KEYS = ("r0_um", "rmin_um", "gamma_ns", "period_us")
_TABLE_KEYS = ("trajectory_csv", "smoothing", "smooth_window")
_BOOL_WORDS = {"true": True, "false": False, "yes": True, "no": False,
               "1": True, "0": False}

# key -> (converter tag, description of the allowed range)
_KEY_SPECS: dict[str, tuple[str, str]] = {
    "model": ("model", "lorentzian or tabulated"),
    "r0_um": ("pos_float", "> 0"),
    "rmin_um": ("pos_float", "> 0"),
    "gamma_ns": ("pos_float", "> 0"),
    "period_us": ("pos_float", "> 0"),
    "trajectory_csv": ("str", "nonempty path"),
    "alpha": ("pos_float", "> 0"),
    "smoothing": ("bool", "true or false"),
    "smooth_window": ("window", "5, 7, 9, or 11"),
    "rel_tol": ("unit_float", "in (0, 1)"),
    "abs_tol": ("nonneg_float", ">= 0"),
    "max_panels": ("pos_int", ">= 1"),
    "oscillation_resolution": ("min4_float", ">= 4"),
    "tail_rel_threshold": ("unit_float", "in (0, 1)"),
}


def _convert(key: str, raw: str, lineno: int, column: int):
    tag, allowed = _KEY_SPECS[key]
    if tag == "str":
        if not raw:
            raise ValueRangeError(f"{key} must be a {allowed}", lineno)
        return raw
    if tag == "model":
        if raw not in _MODELS:
            raise ValueRangeError(f"model must be one of {', '.join(_MODELS)}, got {raw!r}", lineno)
        return raw
    if tag == "bool":
        if raw.lower() not in _BOOL_WORDS:
            raise ConfigSyntaxError(f"{key} expects {allowed}, got {raw!r}",
                                    lineno, column)
        return _BOOL_WORDS[raw.lower()]
    if tag in ("pos_int", "window"):
        try:
            value = int(raw)
        except ValueError:
            raise ConfigSyntaxError(f"{key} expects an integer, got {raw!r}",
                                    lineno, column) from None
        if tag == "window" and value not in (5, 7, 9, 11):
            raise ValueRangeError(f"{key} must be {allowed}, got {value}", lineno)
        if tag == "pos_int" and value < 1:
            raise ValueRangeError(f"{key} must be {allowed}, got {value}", lineno)
        return value
    try:
        value = float(raw)
    except ValueError:
        raise ConfigSyntaxError(f"{key} expects a number, got {raw!r}",
                                lineno, column) from None
    if not math.isfinite(value):
        raise ValueRangeError(f"{key} must be finite, got {raw!r}", lineno)
    if tag == "pos_float" and not value > 0.0:
        raise ValueRangeError(f"{key} must be {allowed}, got {raw!r}", lineno)
    if tag == "nonneg_float" and not value >= 0.0:
        raise ValueRangeError(f"{key} must be {allowed}, got {raw!r}", lineno)
    if tag == "unit_float" and not 0.0 < value < 1.0:
        raise ValueRangeError(f"{key} must be {allowed}, got {raw!r}", lineno)
    if tag == "min4_float" and not value >= 4.0:
        raise ValueRangeError(f"{key} must be {allowed}, got {raw!r}", lineno)
    return value


def parse_config(text: str) -> RunConfig:
    """Parse `key = value` config text into a validated RunConfig.

    Errors are specific and located: syntax errors carry line and column,
    unknown and out-of-range keys carry the line, and missing required
    keys name both the key and the model that needs it.
    """
    values: dict[str, object] = {}
    seen_lines: dict[str, int] = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "=" not in line:
            raise ConfigSyntaxError("expected 'key = value'", lineno,
                                    len(line.rstrip()) + 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        raw = value_part.strip()
        if not key:
            raise ConfigSyntaxError("empty key before '='", lineno)
        if key not in _KEY_SPECS:
            raise UnknownKeyError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigSyntaxError(
                f"duplicate key {key!r} (first set on line {seen_lines[key]})",
                lineno)
        column = rawline.index("=") + 2
        values[key] = _convert(key, raw, lineno, column)
        seen_lines[key] = lineno

    if "model" not in values:
        raise MissingKeyError("missing required key 'model'")
    model = values["model"]

    required = _PULSE_KEYS if model == "lorentzian" else ("trajectory_csv",)
    for key in required:
        if key not in values:
            raise MissingKeyError(f"model {model!r} requires key {key!r}")
    banned = _TABLE_KEYS if model == "lorentzian" else _PULSE_KEYS
    for key in banned:
        if key in values:
            raise ValueRangeError(f"key {key!r} does not apply to model {model!r}",
                                  seen_lines[key])

    if model == "lorentzian" and values["rmin_um"] >= values["r0_um"]:
        raise ValueRangeError(
            f"rmin_um must be smaller than r0_um "
            f"(got {values['rmin_um']!r} >= {values['r0_um']!r})",
            seen_lines["rmin_um"])

    return RunConfig(**values)  # type: ignore[arg-type]


def render_config(config: RunConfig) -> str:
    """Config text that parses back to an equivalent RunConfig."""
    # keys tied to the other model would be rejected on re-parse
    banned = _TABLE_KEYS if config.model == "lorentzian" else _PULSE_KEYS
    lines = [f"model = {config.model}"]
    for f in fields(RunConfig):
        if f.name == "model" or f.name in banned:
            continue
        value = getattr(config, f.name)
        if value is None:
            continue
        if isinstance(value, bool):
            rendered = "true" if value else "false"
        elif isinstance(value, float):
            rendered = repr(value)  # shortest exact form
        else:
            rendered = str(value)
        lines.append(f"{f.name} = {rendered}")
    return "\n".join(lines) + "\n"


def config_to_settings(config: RunConfig,
                       rel_tol: float | None = None) -> QuadratureSettings:
    """QuadratureSettings from config overrides; rel_tol argument wins."""
    kwargs = {}
    for name in ("rel_tol", "abs_tol", "max_panels",
                 "oscillation_resolution", "tail_rel_threshold"):
        value = getattr(config, name)
        if value is not None:
            kwargs[name] = value
    if rel_tol is not None:
        kwargs["rel_tol"] = rel_tol
    return QuadratureSettings(**kwargs)


def config_to_trajectory(config: RunConfig) -> Trajectory:
    """Build the configured trajectory, loading the trace file if tabulated."""
    if config.model == "lorentzian":
        return LorentzianPulse(
            r0=config.r0_um * 1e-6,
            rmin=config.rmin_um * 1e-6,
            gamma=config.gamma_ns * 1e-9,
            period=config.period_us * 1e-6,
        )
    window = 0
    if config.smoothing:
        window = config.smooth_window if config.smooth_window is not None else 5
    return load_trajectory_csv(config.trajectory_csv, smooth_window=window)


_CSV_HEADER = "t_s,R_m"


def load_trajectory_csv(path: str, smooth_window: int = 0) -> TabulatedTrajectory:
    """Read a `t_s,R_m` trace file into a TabulatedTrajectory.

    Errors name the offending data row (1-based, header excluded):
    non-numeric fields, nonmonotonic times, nonpositive radii, or too few
    rows.  The baseline radius follows the trajectory-module estimate.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != _CSV_HEADER:
        got = lines[0].strip() if lines else "<empty file>"
        raise TrajectoryDataError(
            f"{path}: bad header {got!r}, expected {_CSV_HEADER!r}")
    times = []
    radii = []
    for row, line in enumerate(lines[1:], start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise TrajectoryDataError(
                f"{path}: data row {row}: expected 2 fields, got {len(parts)}")
        try:
            t = float(parts[0])
            r = float(parts[1])
        except ValueError:
            raise TrajectoryDataError(
                f"{path}: data row {row}: non-numeric field in {line!r}") from None
        times.append(t)
        radii.append(r)
    if len(times) < 8:
        raise TrajectoryDataError(
            f"{path}: need at least 8 data rows, got {len(times)}")
    t = np.asarray(times)
    r = np.asarray(radii)
    bad = np.nonzero(np.diff(t) <= 0.0)[0]
    if bad.size:
        raise TrajectoryDataError(
            f"{path}: data row {bad[0] + 2}: time does not increase")
    bad = np.nonzero(r <= 0.0)[0]
    if bad.size:
        raise TrajectoryDataError(
            f"{path}: data row {bad[0] + 1}: nonpositive radius {r[bad[0]]!r}")
    return TabulatedTrajectory(t, r, smooth_window=smooth_window)


def _f17(x: float) -> str:
    return format(float(x), ".17g")


def render_result_json(result: YieldResult) -> str:
    """The documented flat result object, keys in fixed order, LF-terminated."""
    pairs = [
        ("photon_number", _f17(result.photon_number)),
        ("radiated_energy_J", _f17(result.radiated_energy)),
        ("v_max_m_s", _f17(result.v_max)),
        ("beta", _f17(result.beta_effective)),
        ("bound_value", _f17(result.bound_value)),
        ("supraluminal", "true" if result.supraluminal else "false"),
        ("error_estimate", _f17(result.quadrature_error_estimate)),
    ]
    body = ",\n".join(f'  "{k}": {v}' for k, v in pairs)
    return "{\n" + body + "\n}\n"


def write_result_json(result: YieldResult, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_result_json(result))


def render_spectrum_csv(spectrum: Spectrum) -> str:
    lines = ["omega_rad_s,dN_dOmega_s"]
    for om, dens in zip(spectrum.omegas, spectrum.densities):
        lines.append(f"{_f17(om)},{_f17(dens)}")
    return "\n".join(lines) + "\n"


def write_spectrum_csv(spectrum: Spectrum, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_spectrum_csv(spectrum))


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a parameter sweep; error is empty on success."""

    value: float
    photon_number: float
    v_max: float
    bound_value: float
    ratio: float
    error: str = ""


def render_sweep_csv(parameter: str, rows: Sequence[SweepRow]) -> str:
    lines = [f"{parameter},photon_number,v_max_m_s,bound_value,ratio,error"]
    for row in rows:
        note = row.error.replace(",", ";").replace("\n", " ")
        lines.append(
            f"{_f17(row.value)},{_f17(row.photon_number)},{_f17(row.v_max)},"
            f"{_f17(row.bound_value)},{_f17(row.ratio)},{note}")
    return "\n".join(lines) + "\n"


def write_sweep_csv(parameter: str, rows: Sequence[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_sweep_csv(parameter, rows))
