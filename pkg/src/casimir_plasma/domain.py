"""Physical constants, mirror and thermal descriptions, and material presets.

Everything downstream (reflection amplitudes, pressures, correction factors)
is phrased in terms of the few quantities defined here: a mirror is either a
plasma-model metal characterized by its plasma wavelength ``lambda_P`` or an
idealized perfect reflector; the thermal environment is either a temperature
``T > 0`` with its thermal wavelength ``lambda_T = hbar*c/(k_B*T)`` or the
zero-temperature vacuum.
"""

import math
from dataclasses import dataclass, field


class InputError(ValueError):
    """A physical parameter is out of range or a material name is unknown."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants in SI units (CODATA 2018 exact values)."""

    hbar: float  # reduced Planck constant, J s
    c: float     # speed of light in vacuum, m / s
    k_B: float   # Boltzmann constant, J / K


CODATA = PhysicalConstants(hbar=1.054571817e-34, c=2.99792458e8, k_B=1.380649e-23)

#: Plasma wavelengths of the preset mirror metals, in meters.
PRESET_WAVELENGTHS = {"Al": 107e-9, "Cu": 136e-9, "Au": 136e-9}


def plasma_frequency(lambda_P: float) -> float:
    """Angular plasma frequency omega_P = 2*pi*c / lambda_P, in rad/s."""
    if not (isinstance(lambda_P, (int, float)) and math.isfinite(lambda_P) and lambda_P > 0):
        raise InputError(f"plasma wavelength lambda_P must be a positive finite number (got {lambda_P!r})")
    return 2.0 * math.pi * CODATA.c / lambda_P


def thermal_wavelength(T: float) -> float:
    """Thermal wavelength lambda_T = hbar*c / (k_B*T), in meters.

    This is the length scale separating the quantum (L << lambda_T) from the
    classical (L >> lambda_T) regime of the thermal Casimir effect; at room
    temperature it is a few micrometers.
    """
    if not (isinstance(T, (int, float)) and math.isfinite(T) and T > 0):
        raise InputError(f"temperature T must be positive and finite (got {T!r})")
    return CODATA.hbar * CODATA.c / (CODATA.k_B * T)


@dataclass(frozen=True)
class MirrorModel:
    """Metallic mirror described by the plasma-model permittivity.

    The dielectric response on the imaginary frequency axis is
    ``eps(i*xi) = 1 + (omega_P/xi)**2``; the single material parameter is the
    plasma wavelength ``lambda_P`` (the derived ``omega_P`` always satisfies
    ``omega_P * lambda_P = 2*pi*c`` to machine rounding).
    """

    lambda_P: float
    omega_P: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "omega_P", plasma_frequency(self.lambda_P))


@dataclass(frozen=True)
class PerfectMirror:
    """Idealized mirror reflecting both polarizations fully at all frequencies."""


#: Shared perfect-mirror instance (the type is stateless).
PERFECT = PerfectMirror()

Mirror = MirrorModel | PerfectMirror


@dataclass(frozen=True)
class ThermalState:
    """Thermal environment at temperature ``T > 0`` kelvin."""

    T: float
    lambda_T: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lambda_T", thermal_wavelength(self.T))


@dataclass(frozen=True)
class ZeroTemperature:
    """The zero-temperature vacuum (pure quantum fluctuations)."""


#: Shared zero-temperature instance.
ZERO_T = ZeroTemperature()

Thermal = ThermalState | ZeroTemperature


@dataclass(frozen=True)
class CavityConfig:
    """Plane-parallel cavity geometry: mirror separation ``L`` and optional area.

    The plasma model treats the metal's response locally and is a reliable
    description of real metals only for separations of a micrometer or more;
    ``plasma_model_reliable`` flags that regime.
    """

    L: float
    A: float | None = None

    def __post_init__(self):
        if not (isinstance(self.L, (int, float)) and math.isfinite(self.L) and self.L > 0):
            raise InputError(f"mirror separation L must be positive and finite (got {self.L!r})")
        if self.A is not None and not (math.isfinite(self.A) and self.A > 0):
            raise InputError(f"mirror area A must be positive and finite (got {self.A!r})")

    @property
    def plasma_model_reliable(self) -> bool:
        return self.L >= 1e-6


def make_material(spec: str | float) -> MirrorModel:
    """Build a plasma-model mirror from a preset name or a plasma wavelength.

    Parameters
    ----------
    spec : str or float
        Either one of the preset metal names (exactly ``"Al"``, ``"Cu"``,
        ``"Au"``) or a plasma wavelength in meters.

    Returns
    -------
    MirrorModel
    """
    if isinstance(spec, str):
        try:
            return MirrorModel(lambda_P=PRESET_WAVELENGTHS[spec])
        except KeyError:
            names = ", ".join(sorted(PRESET_WAVELENGTHS))
            raise InputError(f"unknown material name {spec!r}; presets are {names}, "
                             "or pass a plasma wavelength in meters") from None
    return MirrorModel(lambda_P=float(spec))
