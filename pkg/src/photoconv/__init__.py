"""Phototactic bioconvection onset: radiation, base state, and linear stability."""

from .params import DimensionalInputs, Params, RadiationParams, nondimensionalize
from .radiative import RadiationField, collimated_intensity, eval_field, solve_radiation
from .specfun import QuadratureRule, expint, gauss_legendre
from .taxis import CalibratedTaxis, TaxisFunction, taxis_derivative, taxis_value

__all__ = [
    "CalibratedTaxis",
    "DimensionalInputs",
    "Params",
    "QuadratureRule",
    "RadiationField",
    "RadiationParams",
    "TaxisFunction",
    "collimated_intensity",
    "eval_field",
    "expint",
    "gauss_legendre",
    "nondimensionalize",
    "solve_radiation",
    "taxis_derivative",
    "taxis_value",
]
