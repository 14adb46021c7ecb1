"""Correction factors to the ideal Casimir pressure and their correlation.

The pressure between real mirrors at temperature T is conventionally written
as the ideal zero-temperature result times a global factor eta_F.  Two partial
factors are in common use, each obtained by switching on a single imperfection:

    eta_P = P(L, T=0, plasma mirror) / P_ideal(L)      (finite conductivity),
    eta_T = P(L, T, perfect mirror)  / P_ideal(L)      (thermal photons),

and the naive estimate multiplies them.  The two effects are correlated —
the metal reflects the low-frequency thermal fluctuations differently from a
perfect mirror — so the product misses a factor

    1 + delta_F,     delta_F = eta_F / (eta_P * eta_T) - 1.

delta_F is positive here (plasma mirrors *gain* pressure relative to the
product estimate) and scales, to first order, linearly in the ratio of the two
imperfection length scales:

    delta_F = (lambda_P / lambda_T) * Delta_F(L / lambda_T),

with Delta_F a dimensionless function of the reduced distance only.  The
:func:`scaling_collapse` helper quantifies how well curves for different
plasma wavelengths collapse onto that single function.
"""

import math
import warnings
from dataclasses import dataclass, replace

from .domain import (InputError, Mirror, MirrorModel, PERFECT, PerfectMirror,
                     Thermal, ThermalState, ZeroTemperature)
from .lifshitz import PressureResult, pressure_finite_T, pressure_ideal, pressure_zero_T
from .quadrature import DEFAULT_TOLERANCE, Tolerance

__all__ = [
    "DELTA_F_ERROR_BUDGET",
    "ScalingValidityWarning",
    "CorrectionFactors",
    "ForceReport",
    "CollapseReport",
    "plasma_correction",
    "thermal_correction",
    "correction_factors",
    "force_report",
    "scaling_collapse",
]

#: Hard ceiling on the propagated absolute error of delta_F; the correlation
#: signal itself is only ~1e-3–1e-2, so anything noisier is unusable.
DELTA_F_ERROR_BUDGET = 1e-6

#: Correction factors are ratios of same-scale pressures; this is the loosest
#: pressure tolerance that keeps delta_F comfortably inside its budget.
_FACTOR_REL_TOL = 1e-8


class ScalingValidityWarning(UserWarning):
    """The first-order scaling law is being stretched (lambda_P/lambda_T > 0.1)."""


@dataclass(frozen=True)
class CorrectionFactors:
    """The three correction factors and their correlation at one (L, T, mirror).

    ``eta_F = eta_P * eta_T * (1 + delta_F)`` holds by construction;
    ``big_delta_F`` is delta_F rescaled by lambda_T/lambda_P.
    ``abs_error_estimate`` is the propagated absolute error on delta_F.
    """

    eta_P: float
    eta_T: float
    eta_F: float
    delta_F: float
    big_delta_F: float
    abs_error_estimate: float


@dataclass(frozen=True)
class ForceReport:
    """Everything the command line reports for a single cavity evaluation.

    ``lambda_P``, ``delta_F``, ``big_delta_F`` and ``delta_abs_error`` are
    ``None`` for perfect mirrors; ``force`` is ``None`` unless an area was
    given; at T = 0 the thermal factor is exactly 1 and the correlation is
    undefined (also ``None``).
    """

    L: float
    T: float
    lambda_P: float | None
    pressure: float
    pressure_abs_error: float
    force: float | None
    eta_P: float
    eta_T: float
    eta_F: float
    delta_F: float | None
    big_delta_F: float | None
    delta_abs_error: float | None
    matsubara_terms: int


def _clamped(tol: Tolerance) -> Tolerance:
    if tol.rel_tol > _FACTOR_REL_TOL:
        return replace(tol, rel_tol=_FACTOR_REL_TOL)
    return tol


def plasma_correction(L: float, model: MirrorModel, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Finite-conductivity factor eta_P = P(L, 0, model) / P_ideal(L), in (0, 1].

    For separations much larger than the plasma wavelength it approaches 1
    from below as ``1 - 8*lambda_P/(3*pi*L)``.
    """
    if isinstance(model, PerfectMirror):
        return 1.0
    return pressure_zero_T(L, model, tol).pressure / pressure_ideal(L)


def thermal_correction(L: float, thermal: ThermalState, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Thermal factor eta_T = P(L, T, perfect) / P_ideal(L), always >= 1.

    It is exponentially close to 1 for L << lambda_T and grows linearly,
    ``eta_T -> (60*zeta(3)/pi^3) * L/lambda_T``, deep in the classical regime.
    """
    return pressure_finite_T(L, thermal, PERFECT, tol).pressure / pressure_ideal(L)


def _evaluate_factors(L: float, thermal: ThermalState, model: MirrorModel, tol: Tolerance,
                      perfect_pressure: PressureResult | None = None):
    """Compute the three pressures once and assemble CorrectionFactors."""
    if isinstance(model, PerfectMirror):
        raise InputError("correction factors compare a plasma mirror against the perfect one; "
                         "got a perfect mirror")
    if isinstance(thermal, ZeroTemperature):
        raise InputError("the thermal/conductivity correlation needs T > 0")
    tol = _clamped(tol)
    full = pressure_finite_T(L, thermal, model, tol)
    cold = pressure_zero_T(L, model, tol)
    hot_perfect = perfect_pressure if perfect_pressure is not None \
        else pressure_finite_T(L, thermal, PERFECT, tol)
    ideal = pressure_ideal(L)

    eta_F = full.pressure / ideal
    eta_P = cold.pressure / ideal
    eta_T = hot_perfect.pressure / ideal
    ratio = eta_F / (eta_P * eta_T)
    delta_F = ratio - 1.0
    relative_noise = (full.abs_error_estimate / full.pressure
                      + cold.abs_error_estimate / cold.pressure
                      + hot_perfect.abs_error_estimate / hot_perfect.pressure)
    delta_error = ratio * relative_noise
    if delta_error > DELTA_F_ERROR_BUDGET:
        raise _budget_violation(delta_error)
    factors = CorrectionFactors(
        eta_P=eta_P,
        eta_T=eta_T,
        eta_F=eta_F,
        delta_F=delta_F,
        big_delta_F=delta_F * thermal.lambda_T / model.lambda_P,
        abs_error_estimate=delta_error,
    )
    return full, factors


def _budget_violation(delta_error: float) -> Exception:
    from .quadrature import ConvergenceError
    return ConvergenceError(
        f"propagated error on delta_F is {delta_error:.3e}, above the "
        f"{DELTA_F_ERROR_BUDGET:.0e} budget; tighten the tolerances")


def correction_factors(L: float, thermal: ThermalState, model: MirrorModel,
                       tol: Tolerance = DEFAULT_TOLERANCE) -> CorrectionFactors:
    """Correction factors and correlation at one separation/temperature/mirror.

    The three underlying pressures are computed at a relative tolerance of at
    most 1e-8 (tighter if ``tol`` asks for it) and the propagated error on
    delta_F is checked against :data:`DELTA_F_ERROR_BUDGET`.
    """
    _, factors = _evaluate_factors(L, thermal, model, tol)
    return factors


def force_report(L: float, thermal: Thermal, mirror: Mirror,
                 tol: Tolerance = DEFAULT_TOLERANCE, area: float | None = None,
                 perfect_pressure: PressureResult | None = None) -> ForceReport:
    """Full single-point evaluation: pressure, optional force, all factors.

    ``perfect_pressure`` lets a sweep reuse the perfect-mirror pressure at
    this (L, T), which is shared between all materials.
    """
    if area is not None and not (math.isfinite(area) and area > 0):
        raise InputError(f"mirror area must be positive and finite (got {area!r})")
    ideal = pressure_ideal(L)

    if isinstance(thermal, ZeroTemperature):
        temperature = 0.0
        if isinstance(mirror, PerfectMirror):
            result = PressureResult(ideal, 0.0, 0)
            eta_P = 1.0
        else:
            result = pressure_zero_T(L, mirror, _clamped(tol))
            eta_P = result.pressure / ideal
        eta_T, eta_F = 1.0, eta_P
        lambda_P = None if isinstance(mirror, PerfectMirror) else mirror.lambda_P
        delta = big_delta = delta_err = None
    elif isinstance(mirror, PerfectMirror):
        temperature = thermal.T
        result = perfect_pressure if perfect_pressure is not None \
            else pressure_finite_T(L, thermal, PERFECT, _clamped(tol))
        eta_P = 1.0
        eta_T = eta_F = result.pressure / ideal
        lambda_P = None
        delta = big_delta = delta_err = None
    else:
        temperature = thermal.T
        result, factors = _evaluate_factors(L, thermal, mirror, tol, perfect_pressure)
        eta_P, eta_T, eta_F = factors.eta_P, factors.eta_T, factors.eta_F
        delta, big_delta, delta_err = factors.delta_F, factors.big_delta_F, factors.abs_error_estimate
        lambda_P = mirror.lambda_P

    return ForceReport(
        L=L,
        T=temperature,
        lambda_P=lambda_P,
        pressure=result.pressure,
        pressure_abs_error=result.abs_error_estimate,
        force=None if area is None else result.pressure * area,
        eta_P=eta_P,
        eta_T=eta_T,
        eta_F=eta_F,
        delta_F=delta,
        big_delta_F=big_delta,
        delta_abs_error=delta_err,
        matsubara_terms=result.matsubara_terms_used,
    )


@dataclass(frozen=True)
class CollapseReport:
    """Rescaled correlation curves for several materials on a common grid.

    ``curves[i]`` is the Delta_F curve of ``lambda_Ps[i]`` sampled on the
    reduced abscissa ``L_over_lambda_T``.  The spread is the largest pairwise
    curve difference anywhere on the grid, normalized by the mean magnitude of
    all curve values — a scale-free number that is 0 for a perfect collapse.
    """

    L_over_lambda_T: tuple[float, ...]
    lambda_Ps: tuple[float, ...]
    curves: tuple[tuple[float, ...], ...]
    max_pairwise_relative_spread: float


def scaling_collapse(materials, L_grid, thermal: ThermalState,
                     tol: Tolerance = DEFAULT_TOLERANCE) -> CollapseReport:
    """Test the one-curve scaling law by overlaying Delta_F for several mirrors.

    Parameters
    ----------
    materials : sequence of MirrorModel
        At least two plasma mirrors (duplicates allowed; their curves then
        coincide and contribute zero spread).
    L_grid : sequence of float
        Separations in meters (all positive).
    thermal : ThermalState
        Common temperature of all curves.

    Raises
    ------
    InputError
        If any lambda_P/lambda_T >= 0.2 — far outside the first-order law.
    Also emits :class:`ScalingValidityWarning` above 0.1.
    """
    materials = list(materials)
    if len(materials) < 2:
        raise InputError("scaling collapse needs at least two materials")
    for m in materials:
        if not isinstance(m, MirrorModel):
            raise InputError("scaling collapse is defined for plasma mirrors only")
    if isinstance(thermal, ZeroTemperature):
        raise InputError("scaling collapse compares thermal curves; T must be positive")
    grid = [float(L) for L in L_grid]
    if not grid:
        raise InputError("L_grid must contain at least one separation")
    if any(not (math.isfinite(L) and L > 0) for L in grid):
        raise InputError("every separation in L_grid must be positive and finite")
    worst = max(m.lambda_P for m in materials) / thermal.lambda_T
    if worst >= 0.2:
        raise InputError(
            f"lambda_P/lambda_T = {worst:.3f} >= 0.2: the first-order scaling law "
            "does not apply; lower lambda_P or raise lambda_T")
    if worst > 0.1:
        warnings.warn(
            f"lambda_P/lambda_T = {worst:.3f} > 0.1: scaling-law residuals may be large",
            ScalingValidityWarning, stacklevel=2)

    tol = _clamped(tol)
    curves = [[] for _ in materials]
    for L in grid:
        shared = pressure_finite_T(L, thermal, PERFECT, tol)
        for i, m in enumerate(materials):
            _, factors = _evaluate_factors(L, thermal, m, tol, perfect_pressure=shared)
            curves[i].append(factors.big_delta_F)

    largest_gap = 0.0
    for k in range(len(grid)):
        column = [c[k] for c in curves]
        gap = max(column) - min(column)
        largest_gap = max(largest_gap, gap)
    scale = sum(abs(v) for c in curves for v in c) / (len(curves) * len(grid))
    if scale == 0.0:
        spread = 0.0 if largest_gap == 0.0 else math.inf
    else:
        spread = largest_gap / scale

    return CollapseReport(
        L_over_lambda_T=tuple(L / thermal.lambda_T for L in grid),
        lambda_Ps=tuple(m.lambda_P for m in materials),
        curves=tuple(tuple(c) for c in curves),
        max_pairwise_relative_spread=spread,
    )
