"""Kinetic response of a degenerate plasma slab with specular-accommodative walls."""

__version__ = "0.1.0"

from .errors import (DegenerateError, DomainError, NearCurveError, NumericalError, ParameterError,
                     PlasmodeError, QuadratureError, SeriesError)
from .params import DerivedConstants, PlasmaParams, derive
from .quadrature import QuadratureResult, integrate, integrate_pv, sum_symmetric_series
from .spectrum import (CurveLPoint, SpectrumResult, analyze_spectrum, find_eta0, trace_curve_L,
                       winding_index)
from .solution import (FieldProfile, SolutionCoefficients, boundary_distribution, compute_A1,
                       compute_E0, continuum_coefficient, field_profile, solve)
from .absorption import AbsorptionResult, J0_quadrature, J1_series, compute_absorption

__all__ = [
    "AbsorptionResult", "CurveLPoint", "DegenerateError", "DerivedConstants", "DomainError",
    "FieldProfile", "J0_quadrature", "J1_series", "NearCurveError", "NumericalError",
    "ParameterError", "PlasmaParams", "PlasmodeError", "QuadratureError", "QuadratureResult",
    "SeriesError", "SolutionCoefficients", "SpectrumResult", "analyze_spectrum",
    "boundary_distribution", "compute_A1", "compute_E0", "compute_absorption",
    "continuum_coefficient", "derive", "field_profile", "find_eta0", "integrate", "integrate_pv",
    "solve", "sum_symmetric_series", "trace_curve_L", "winding_index",
]
