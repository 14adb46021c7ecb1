"""Casimir pressure between plane plasma-model mirrors.

The package computes the attractive pressure between two identical plane
metallic mirrors — described by the plasma dielectric function — at zero and
finite temperature, the finite-conductivity and thermal correction factors to
the ideal result, and the correlation between the two corrections together
with its scaling law in lambda_P/lambda_T.
"""

from .domain import (CODATA, CavityConfig, InputError, Mirror, MirrorModel,
                     PERFECT, PRESET_WAVELENGTHS, PerfectMirror, PhysicalConstants,
                     Thermal, ThermalState, ZERO_T, ZeroTemperature,
                     make_material, plasma_frequency, thermal_wavelength)
from .quadrature import (ConvergenceError, DEFAULT_TOLERANCE, QuadratureResult,
                         Tolerance, integrate_semi_infinite, sum_series)
from .lifshitz import (ImaginaryFrequencyPoint, PressureResult, ReflectionPair,
                       matsubara_integrand, permittivity_imag, pressure_finite_T,
                       pressure_ideal, pressure_zero_T, reflection_amplitudes)
from .corrections import (CollapseReport, CorrectionFactors, DELTA_F_ERROR_BUDGET,
                          ForceReport, ScalingValidityWarning, correction_factors,
                          force_report, plasma_correction, scaling_collapse,
                          thermal_correction)
from .sweep import (SWEEP_CSV_HEADER, SweepSpec, load_config, run_sweep,
                    save_config, separation_grid)

__version__ = "0.1.0"

__all__ = [
    "CODATA", "CavityConfig", "InputError", "Mirror", "MirrorModel", "PERFECT",
    "PRESET_WAVELENGTHS", "PerfectMirror", "PhysicalConstants", "Thermal",
    "ThermalState", "ZERO_T", "ZeroTemperature", "make_material",
    "plasma_frequency", "thermal_wavelength",
    "ConvergenceError", "DEFAULT_TOLERANCE", "QuadratureResult", "Tolerance",
    "integrate_semi_infinite", "sum_series",
    "ImaginaryFrequencyPoint", "PressureResult", "ReflectionPair",
    "matsubara_integrand", "permittivity_imag", "pressure_finite_T",
    "pressure_ideal", "pressure_zero_T", "reflection_amplitudes",
    "CollapseReport", "CorrectionFactors", "DELTA_F_ERROR_BUDGET", "ForceReport",
    "ScalingValidityWarning", "correction_factors", "force_report",
    "plasma_correction", "scaling_collapse", "thermal_correction",
    "SWEEP_CSV_HEADER", "SweepSpec", "load_config", "run_sweep", "save_config",
    "separation_grid",
    "__version__",
]
