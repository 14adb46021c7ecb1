"""Parameter sweeps over mirror separation, and their CSV/config plumbing.

A sweep is described by a :class:`SweepSpec`: an L-range with a point count
and spacing, one temperature, one or more mirrors, an optional area, and the
numerical tolerances.  Specs can be loaded from (and saved to) a flat
``key = value`` config file, with command-line flags overriding file values.

CSV output is fully deterministic: fixed column order, 12 significant digits,
``\\n`` line endings, and atomic writes (the file appears only when complete).
"""

import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .domain import (InputError, Mirror, PERFECT, PRESET_WAVELENGTHS,
                     ThermalState, make_material, thermal_wavelength)
from .corrections import force_report
from .lifshitz import pressure_finite_T
from .quadrature import Tolerance

__all__ = [
    "SWEEP_CSV_HEADER",
    "SweepSpec",
    "parse_material_token",
    "mirror_from_token",
    "separation_grid",
    "load_config",
    "save_config",
    "run_sweep",
    "format_csv",
    "write_atomic",
]

#: Column order of the sweep CSV; one row per (material, separation) pair.
SWEEP_CSV_HEADER = [
    "L_m", "L_over_lambda_T", "material", "lambda_P_m", "T_K",
    "pressure_Pa", "force_N", "eta_P", "eta_T", "eta_F",
    "delta_F", "big_delta_F", "err_estimate",
]

#: Sweeps favor throughput: 1e-8 is already 100x tighter than the delta_F
#: error budget requires (see corrections).
_SWEEP_TOLERANCE = Tolerance(rel_tol=1e-8)


def parse_material_token(token: str):
    """Interpret one material token: preset name, ``perfect``, or a wavelength.

    Returns the token itself for names (``"Al"``, ``"perfect"``) and a float
    (meters) for anything that parses as a number.
    """
    token = token.strip()
    if not token:
        raise InputError("empty material token")
    if token == "perfect" or token in PRESET_WAVELENGTHS:
        return token
    try:
        return float(token)
    except ValueError:
        names = ", ".join(sorted(PRESET_WAVELENGTHS))
        raise InputError(f"unknown material {token!r}; use {names}, 'perfect', "
                         "or a plasma wavelength in meters") from None


def mirror_from_token(token) -> Mirror:
    """Turn a parsed material token into a mirror object."""
    if token == "perfect":
        return PERFECT
    return make_material(token)


def material_label(token) -> str:
    """Stable string used for the CSV ``material`` column and column suffixes."""
    if isinstance(token, str):
        return token
    return f"{token:.12g}"


@dataclass(frozen=True)
class SweepSpec:
    """Complete description of one sweep (also the config-file schema)."""

    L_min: float = 1e-7
    L_max: float = 1e-5
    points: int = 50
    spacing: str = "log"
    T: float = 300.0
    materials: tuple = ("Al",)
    area: float | None = None
    tolerances: Tolerance = field(default_factory=lambda: _SWEEP_TOLERANCE)

    def __post_init__(self):
        if not (isinstance(self.L_min, (int, float)) and math.isfinite(self.L_min) and self.L_min > 0):
            raise InputError(f"L_min must be positive and finite (got {self.L_min!r})")
        if not (isinstance(self.L_max, (int, float)) and math.isfinite(self.L_max) and self.L_max > self.L_min):
            raise InputError(f"L_max must be finite and greater than L_min (got {self.L_max!r})")
        if not (isinstance(self.points, int) and self.points >= 2):
            raise InputError(f"points must be an integer >= 2 (got {self.points!r})")
        if self.spacing not in ("log", "linear"):
            raise InputError(f"spacing must be 'log' or 'linear' (got {self.spacing!r})")
        if not (isinstance(self.T, (int, float)) and math.isfinite(self.T) and self.T > 0):
            raise InputError(f"T must be positive and finite (got {self.T!r})")
        if not self.materials:
            raise InputError("materials must not be empty")
        if self.area is not None and not (math.isfinite(self.area) and self.area > 0):
            raise InputError(f"area must be positive and finite (got {self.area!r})")
        # Normalize: validate every token once, store parsed form.
        object.__setattr__(self, "materials",
                           tuple(parse_material_token(m) if isinstance(m, str) else float(m)
                                 for m in self.materials))


def separation_grid(spec: SweepSpec) -> list[float]:
    """The sweep's separations in meters, ascending, deterministic."""
    if spec.spacing == "log":
        values = np.geomspace(spec.L_min, spec.L_max, spec.points)
    else:
        values = np.linspace(spec.L_min, spec.L_max, spec.points)
    return [float(v) for v in values]


# --- config files -------------------------------------------------------------

_CONFIG_KEYS = ("L_min", "L_max", "points", "spacing", "T", "materials",
                "area", "rel_tol", "abs_tol", "max_evals")


def load_config(path: str) -> SweepSpec:
    """Parse a flat ``key = value`` config file into a SweepSpec.

    Blank lines and ``#`` comments are ignored; unknown keys and lines
    without ``=`` are errors that name the offending line.
    """
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _CONFIG_KEYS:
                raise InputError(f"{path}:{lineno}: unknown key {key!r}; "
                                 f"valid keys are {', '.join(_CONFIG_KEYS)}")
            if key in values:
                raise InputError(f"{path}:{lineno}: duplicate key {key!r}")
            values[key] = (value, lineno)

    def take(key, convert):
        if key not in values:
            return None
        value, lineno = values.pop(key)
        try:
            return convert(value)
        except (ValueError, InputError) as exc:
            raise InputError(f"{path}:{lineno}: bad value for {key}: {exc}") from None

    kwargs = {}
    for key, convert in (("L_min", float), ("L_max", float), ("points", int),
                         ("spacing", str), ("T", float), ("area", float)):
        parsed = take(key, convert)
        if parsed is not None:
            kwargs[key] = parsed
    mats = take("materials", lambda v: tuple(parse_material_token(t) for t in v.split(",")))
    if mats is not None:
        kwargs["materials"] = mats
    tol_kwargs = {}
    for key, name, convert in (("rel_tol", "rel_tol", float),
                               ("abs_tol", "abs_tol", float),
                               ("max_evals", "max_evals", int)):
        parsed = take(key, convert)
        if parsed is not None:
            tol_kwargs[name] = parsed
    if tol_kwargs:
        base = _SWEEP_TOLERANCE
        try:
            kwargs["tolerances"] = replace(base, **tol_kwargs)
        except ValueError as exc:
            raise InputError(f"{path}: bad tolerance: {exc}") from None
    return SweepSpec(**kwargs)


def save_config(spec: SweepSpec, path: str) -> None:
    """Write a config file that :func:`load_config` parses back to ``spec``."""
    lines = [
        "# casimir-plasma sweep configuration",
        f"L_min = {spec.L_min!r}",
        f"L_max = {spec.L_max!r}",
        f"points = {spec.points}",
        f"spacing = {spec.spacing}",
        f"T = {spec.T!r}",
        "materials = " + ",".join(material_label(m) for m in spec.materials),
    ]
    if spec.area is not None:
        lines.append(f"area = {spec.area!r}")
    lines += [
        f"rel_tol = {spec.tolerances.rel_tol!r}",
        f"abs_tol = {spec.tolerances.abs_tol!r}",
        f"max_evals = {spec.tolerances.max_evals}",
    ]
    write_atomic(path, "\n".join(lines) + "\n")


# --- sweep execution and CSV --------------------------------------------------

def _fmt(value) -> str:
    """12-significant-digit cell formatting; empty cell for None."""
    if value is None:
        return ""
    return f"{value:.12g}"


def run_sweep(spec: SweepSpec) -> list[list[str]]:
    """Evaluate the sweep and return formatted CSV rows (header excluded).

    Rows are ordered material-major, separation-ascending.  The perfect-mirror
    pressure at each (L, T) is computed once and shared between materials.
    ``err_estimate`` is the absolute error on delta_F for plasma mirrors and
    the relative pressure error for perfect-mirror rows.
    """
    thermal = ThermalState(T=spec.T)
    lambda_T = thermal.lambda_T
    grid = separation_grid(spec)
    shared = {L: pressure_finite_T(L, thermal, PERFECT, spec.tolerances) for L in grid}

    rows = []
    for token in spec.materials:
        mirror = mirror_from_token(token)
        label = material_label(token)
        for L in grid:
            report = force_report(L, thermal, mirror, tol=spec.tolerances,
                                  area=spec.area, perfect_pressure=shared[L])
            if report.delta_abs_error is not None:
                err = report.delta_abs_error
            else:
                err = report.pressure_abs_error / report.pressure
            rows.append([
                _fmt(L), _fmt(L / lambda_T), label, _fmt(report.lambda_P), _fmt(spec.T),
                _fmt(report.pressure), _fmt(report.force),
                _fmt(report.eta_P), _fmt(report.eta_T), _fmt(report.eta_F),
                _fmt(report.delta_F), _fmt(report.big_delta_F), _fmt(err),
            ])
    return rows


def format_csv(header: list[str], rows: list[list[str]]) -> str:
    """Serialize rows as RFC-4180 CSV with LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` so that a partial file is never visible."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".casimir-", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(temp_path, path)
    except BaseException:
        try:
            os.unlink(temp_path)
        except OSError:
            pass
        raise
