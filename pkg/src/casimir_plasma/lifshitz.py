"""Casimir pressure between two identical plane mirrors facing each other.

The pressure is evaluated on the imaginary frequency axis, where the
integrands are smooth and positive.  With the dimensionless variables

    u  = 2 * kappa * L      (kappa: transverse wavevector norm after rotation),
    nu = 2 * xi * L / c     (xi: imaginary frequency),
    alpha = 2 * L * omega_P / c = 4 * pi * L / lambda_P,

the squared reflection amplitudes of a plasma-model mirror are

    r_TE^2 = ((u - u_m) / (u + u_m))^2,
    r_TM^2 = ((eps*u - u_m) / (eps*u + u_m))^2,   eps = 1 + (alpha/nu)^2,

with ``u_m = sqrt(u^2 + alpha^2)``; note u_m does not depend on nu, a special
simplification of the plasma model.  At nu = 0 the TM amplitude tends to 1
(perfect electrostatic screening) while TE keeps the same expression.

At temperature T the pressure is a sum over Matsubara frequencies
``xi_n = 2*pi*n*k_B*T/hbar`` (n = 0 counted with half weight), each term an
integral over u from ``nu_n = 4*pi*n*L/lambda_T``; at T = 0 the sum becomes an
integral over nu.  Both routines reduce to the same one-loop integrand

    u^2 * sum_p r_p^2 e^{-u} / (1 - r_p^2 e^{-u}),    p in {TE, TM},

which for perfect mirrors is ``2 u^2 e^{-u} / (1 - e^{-u})``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .domain import CODATA, InputError, Mirror, MirrorModel, PerfectMirror, ThermalState, ZeroTemperature
from .quadrature import (DEFAULT_TOLERANCE, Tolerance,
                         integrate_semi_infinite, integrate_semi_infinite_batch, sum_series)

__all__ = [
    "ImaginaryFrequencyPoint",
    "ReflectionPair",
    "PressureResult",
    "permittivity_imag",
    "reflection_amplitudes",
    "matsubara_integrand",
    "pressure_ideal",
    "pressure_finite_T",
    "pressure_zero_T",
]

_HBAR = CODATA.hbar
_C = CODATA.c
_KB = CODATA.k_B


@dataclass(frozen=True)
class ImaginaryFrequencyPoint:
    """A point (xi, kappa) on the imaginary frequency axis.

    ``xi >= 0`` is the imaginary frequency in rad/s and ``kappa >= xi/c`` the
    rotated transverse wavevector in 1/m (the region kappa < xi/c corresponds
    to propagating waves and does not occur after the rotation).
    """

    xi: float
    kappa: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and self.xi >= 0):
            raise InputError(f"imaginary frequency xi must be >= 0 (got {self.xi!r})")
        if not (math.isfinite(self.kappa) and self.kappa >= self.xi / _C):
            raise InputError(
                f"wavevector kappa must satisfy kappa >= xi/c (got kappa={self.kappa!r}, xi/c={self.xi / _C!r})")


@dataclass(frozen=True)
class ReflectionPair:
    """TE and TM reflection amplitudes of one mirror at one (xi, kappa) point."""

    r_te: float
    r_tm: float


@dataclass(frozen=True)
class PressureResult:
    """Attractive Casimir pressure (positive, in Pa) with error bookkeeping.

    ``matsubara_terms_used`` is the number of frequency terms summed at finite
    temperature and 0 for the zero-temperature integral representation.
    """

    pressure: float
    abs_error_estimate: float
    matsubara_terms_used: int


def permittivity_imag(xi: float, model: MirrorModel) -> float:
    """Plasma-model permittivity ``1 + (omega_P/xi)**2`` at imaginary frequency xi > 0.

    Overflows to ``inf`` (rather than raising) when xi is so small that the
    ratio leaves double-precision range; the reflection amplitudes treat that
    as the xi -> 0 limit.
    """
    if isinstance(model, PerfectMirror):
        raise InputError("a perfect mirror has no dielectric function; use a MirrorModel")
    if not (isinstance(xi, (int, float)) and math.isfinite(xi) and xi > 0):
        raise InputError(f"imaginary frequency xi must be positive and finite (got {xi!r})")
    ratio = model.omega_P / xi
    return 1.0 + ratio * ratio


def reflection_amplitudes(point: ImaginaryFrequencyPoint, model: Mirror) -> ReflectionPair:
    """TE/TM reflection amplitudes of a single mirror at an imaginary-frequency point.

    For the plasma model the wavevector inside the metal is
    ``kappa_m = sqrt(kappa**2 + (omega_P/c)**2)`` independently of xi, and

        r_TE = (kappa - kappa_m) / (kappa + kappa_m),
        r_TM = (eps*kappa - kappa_m) / (eps*kappa + kappa_m).

    At xi = 0 the TM amplitude equals 1 exactly.  Perfect mirrors reflect both
    polarizations fully: ``(r_TE, r_TM) = (-1, 1)``.
    """
    if isinstance(model, PerfectMirror):
        return ReflectionPair(r_te=-1.0, r_tm=1.0)
    kappa = point.kappa
    kappa_m = math.hypot(kappa, model.omega_P / _C)
    r_te = (kappa - kappa_m) / (kappa + kappa_m)
    if point.xi == 0.0:
        r_tm = 1.0
    else:
        eps = permittivity_imag(point.xi, model)
        # Evaluated divided through by eps: kappa_m / eps cannot overflow no
        # matter how small xi is (eps * kappa can), and eps = inf lands on the
        # exact xi -> 0 limit of 1.
        scaled = kappa_m / eps
        r_tm = (kappa - scaled) / (kappa + scaled)
    return ReflectionPair(r_te=r_te, r_tm=r_tm)


def _squared_reflections(u, nu, alpha):
    """Vectorized (r_TE^2, r_TM^2) in reduced variables; ``nu`` may be an array."""
    u_m = np.sqrt(u * u + alpha * alpha)
    r_te = (u - u_m) / (u + u_m)
    r2_te = r_te * r_te
    nu_safe = np.where(nu > 0.0, nu, 1.0)
    eps = 1.0 + (alpha / nu_safe) ** 2
    r_tm = (eps * u - u_m) / (eps * u + u_m)
    r2_tm = np.where(nu > 0.0, r_tm * r_tm, 1.0)
    return r2_te, r2_tm


def _loop_integrand(u, r2_te, r2_tm):
    """``u^2 * sum_p y_p/(1-y_p)`` with ``y_p = r_p^2 e^{-u}``; 0 at u = 0 by limit."""
    x = np.exp(-u)
    y_te = r2_te * x
    y_tm = r2_tm * x
    # e^{-u} < 1 for u > 0 and r^2 <= 1, so the denominators only close at the
    # excluded corner u = 0 with full reflection; anything else is a bug.
    bad = ((y_te >= 1.0) | (y_tm >= 1.0)) & (u > 0.0)
    if np.any(bad):
        raise AssertionError("round-trip factor reached 1 at u > 0; reflection amplitudes out of range")
    with np.errstate(divide="ignore", invalid="ignore"):
        total = y_te / (1.0 - y_te) + y_tm / (1.0 - y_tm)
        out = u * u * total
    return np.where(u > 0.0, out, 0.0)


def matsubara_integrand(u, nu: float, L: float, model: Mirror):
    """One-frequency integrand of the reduced pressure formula.

    Parameters
    ----------
    u : array_like
        Dimensionless integration variable ``2*kappa*L``; must satisfy
        ``u >= nu`` everywhere (below that the wave would propagate).
    nu : float
        Dimensionless imaginary frequency ``2*xi*L/c >= 0``.
    L : float
        Mirror separation in meters (fixes the reduced plasma parameter).
    model : MirrorModel or PerfectMirror

    Returns
    -------
    ndarray
        ``u^2 * sum_p r_p^2 e^{-u} / (1 - r_p^2 e^{-u})``, non-negative.
    """
    u = np.asarray(u, dtype=float)
    if not (math.isfinite(L) and L > 0):
        raise InputError(f"mirror separation L must be positive (got {L!r})")
    if not (math.isfinite(nu) and nu >= 0):
        raise InputError(f"reduced frequency nu must be >= 0 (got {nu!r})")
    if np.any(u < nu):
        raise InputError("integration variable u must satisfy u >= nu")
    if isinstance(model, PerfectMirror):
        one = np.ones_like(u)
        return _loop_integrand(u, one, one)
    alpha = 2.0 * L * model.omega_P / _C
    r2_te, r2_tm = _squared_reflections(u, nu, alpha)
    return _loop_integrand(u, r2_te, r2_tm)


def pressure_ideal(L: float) -> float:
    """Perfect-mirror zero-temperature pressure ``pi^2 hbar c / (240 L^4)`` in Pa."""
    if not (isinstance(L, (int, float)) and math.isfinite(L) and L > 0):
        raise InputError(f"mirror separation L must be positive and finite (got {L!r})")
    return math.pi ** 2 * _HBAR * _C / (240.0 * L ** 4)


def _reduced_family(model: Mirror, L: float):
    """Return f(u, nu_values, member) evaluating the loop integrand vectorized."""
    if isinstance(model, PerfectMirror):
        def f(u, nu_of_member):
            one = np.ones_like(u)
            return _loop_integrand(u, one, one)
    else:
        alpha = 2.0 * L * model.omega_P / _C

        def f(u, nu_of_member):
            r2_te, r2_tm = _squared_reflections(u, nu_of_member, alpha)
            return _loop_integrand(u, r2_te, r2_tm)
    return f


def pressure_finite_T(L: float, thermal: ThermalState, model: Mirror,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> PressureResult:
    """Casimir pressure at temperature ``thermal.T`` via the Matsubara sum.

    The reduced frequency spacing is ``d_nu = 4*pi*L/lambda_T``; term ``n``
    integrates the loop integrand over ``u in [n*d_nu, infinity)`` and the
    series carries the customary half weight on n = 0.  Terms are fetched from
    the quadrature engine in growing blocks so that the whole block shares
    each vectorized kernel call.

    Returns
    -------
    PressureResult
        Pressure in Pa (positive = attraction), a propagated absolute error
        estimate, and the number of Matsubara terms summed.
    """
    if not (isinstance(L, (int, float)) and math.isfinite(L) and L > 0):
        raise InputError(f"mirror separation L must be positive and finite (got {L!r})")
    if isinstance(thermal, ZeroTemperature):
        raise InputError("finite-temperature pressure needs T > 0; use pressure_zero_T for T = 0")
    d_nu = 4.0 * math.pi * L / thermal.lambda_T
    integrand = _reduced_family(model, L)

    term_values = {}
    term_errors = {}
    state = {"block": 8, "evaluations": 0}

    def term(n):
        if n not in term_values:
            block = state["block"]
            indices = np.arange(n, n + block)
            nu_values = d_nu * indices

            def f(u, member):
                return integrand(u, nu_values[member])

            values, errors, n_eval = integrate_semi_infinite_batch(f, nu_values, tol)
            for k, idx in enumerate(indices):
                term_values[int(idx)] = float(values[k])
                term_errors[int(idx)] = float(errors[k])
            state["evaluations"] += n_eval
            state["block"] = min(2 * block, 64)
        return term_values[n]

    series = sum_series(term, half_first=True, tol=tol)
    n_terms = series.evaluations
    inner_error = sum((0.5 if n == 0 else 1.0) * term_errors[n] for n in range(n_terms))
    prefactor = _KB * thermal.T / (8.0 * math.pi * L ** 3)
    return PressureResult(
        pressure=prefactor * series.value,
        abs_error_estimate=prefactor * (series.abs_error_estimate + inner_error),
        matsubara_terms_used=n_terms,
    )


def pressure_zero_T(L: float, model: Mirror, tol: Tolerance = DEFAULT_TOLERANCE) -> PressureResult:
    """Zero-temperature Casimir pressure via the double integral over (nu, u).

    The Matsubara sum becomes an integral: ``P = hbar*c/(32*pi^2*L^4) *
    integral_0^inf d_nu integral_nu^inf du`` of the loop integrand.  The outer
    nu-integral is evaluated adaptively; each request for outer integrand
    values triggers one batched family of inner u-integrals (one member per nu
    node), whose tolerance is held two orders tighter than the outer one so
    that inner noise never masquerades as outer structure.
    """
    if not (isinstance(L, (int, float)) and math.isfinite(L) and L > 0):
        raise InputError(f"mirror separation L must be positive and finite (got {L!r})")
    integrand = _reduced_family(model, L)
    inner_tol = Tolerance(rel_tol=max(tol.rel_tol * 1e-2, 1e-13),
                          abs_tol=tol.abs_tol, max_evals=tol.max_evals)
    state = {"evaluations": 0}

    def outer_integrand(nu):
        def f(u, member):
            return integrand(u, nu[member])

        values, _, n_eval = integrate_semi_infinite_batch(f, nu, tol=inner_tol)
        state["evaluations"] += n_eval
        return values

    outer = integrate_semi_infinite(outer_integrand, 0.0, tol)
    prefactor = _HBAR * _C / (32.0 * math.pi ** 2 * L ** 4)
    abs_error = prefactor * (outer.abs_error_estimate + inner_tol.rel_tol * abs(outer.value))
    return PressureResult(
        pressure=prefactor * outer.value,
        abs_error_estimate=abs_error,
        matsubara_terms_used=0,
    )
