"""Dimensionless parameter groups and the conversion from dimensional inputs."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace


def _check_radiation(tau_H, omega, A1, theta0, I_D, I_t):
    if not tau_H > 0:
        raise ValueError(f"tau_H must be positive, got {tau_H}")
    if not (0.0 <= omega < 1.0):
        raise ValueError(f"omega must lie in [0, 1), got {omega}")
    if not (0.0 <= A1 < 1.0):
        raise ValueError(f"A1 must lie in [0, 1), got {A1}")
    if not (0.0 <= theta0 < math.pi / 2) or not math.cos(theta0) > 0:
        raise ValueError(f"theta0 must lie in [0, pi/2), got {theta0}")
    if I_D < 0 or I_t < 0:
        raise ValueError("irradiance magnitudes must be non-negative")


@dataclass(frozen=True)
class RadiationParams:
    """Inputs that fully determine the equilibrium radiation field.

    The field in optical-depth coordinates depends on nothing else, which is
    what makes it cacheable independently of the concentration profile.
    """

    tau_H: float
    omega: float
    A1: float
    theta0: float  # beam angle from vertical, radians
    I_D: float
    I_t: float

    def __post_init__(self):
        _check_radiation(self.tau_H, self.omega, self.A1, self.theta0, self.I_D, self.I_t)

    @property
    def mu0(self) -> float:
        """Cosine of the beam angle."""
        return math.cos(self.theta0)


@dataclass(frozen=True)
class Params:
    """All dimensionless governing numbers for one suspension configuration."""

    S_c: float = 20.0
    V_c: float = 15.0
    tau_H: float = 0.5
    omega: float = 0.4
    A1: float = 0.0
    theta0: float = 0.0
    I_D: float = 0.26
    I_t: float = 1.0
    G_c: float = 1.3
    R: float = 0.0

    def __post_init__(self):
        _check_radiation(self.tau_H, self.omega, self.A1, self.theta0, self.I_D, self.I_t)
        if not self.S_c > 0:
            raise ValueError(f"S_c must be positive, got {self.S_c}")
        if not self.V_c > 0:
            raise ValueError(f"V_c must be positive, got {self.V_c}")
        if not self.G_c > 0:
            raise ValueError(f"G_c must be positive, got {self.G_c}")
        if self.R < 0:
            raise ValueError(f"R must be non-negative, got {self.R}")

    @property
    def radiation(self) -> RadiationParams:
        return RadiationParams(
            tau_H=self.tau_H, omega=self.omega, A1=self.A1,
            theta0=self.theta0, I_D=self.I_D, I_t=self.I_t,
        )

    @property
    def mu0(self) -> float:
        return math.cos(self.theta0)

    def with_(self, **kw) -> "Params":
        return replace(self, **kw)


@dataclass(frozen=True)
class DimensionalInputs:
    """Dimensional suspension data (SI units throughout)."""

    H: float                    # depth, m
    D: float                    # cell diffusivity, m^2/s
    W_c: float                  # swimming speed, m/s
    nu_fluid: float             # kinematic viscosity, m^2/s
    n_bar: float                # mean cell concentration, 1/m^3
    V_cell: float               # cell volume, m^3
    delta_rho_over_rho: float   # relative density excess
    g: float                    # gravity, m/s^2
    alpha: float                # absorption cross-section, m^2
    beta: float                 # scattering cross-section, m^2

    def __post_init__(self):
        for name in ("H", "D", "W_c", "nu_fluid", "n_bar", "V_cell",
                     "delta_rho_over_rho", "g", "alpha", "beta"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.delta_rho_over_rho > 0.1:
            warnings.warn(
                "delta_rho/rho > 0.1 violates the dilute Boussinesq assumption",
                stacklevel=2,
            )


def nondimensionalize(d: DimensionalInputs, *, theta0: float = 0.0,
                      I_D: float = 0.26, I_t: float = 1.0,
                      G_c: float = 1.3) -> Params:
    """Form the dimensionless groups from dimensional inputs.

    The illumination magnitudes and critical intensity are already
    dimensionless model inputs and are passed through.
    """
    V_c = d.W_c * d.H / d.D
    S_c = d.nu_fluid / d.D
    tau_H = (d.alpha + d.beta) * d.n_bar * d.H
    omega = d.beta / (d.alpha + d.beta)
    R = d.n_bar * d.V_cell * d.g * d.delta_rho_over_rho * d.H ** 3 / (d.nu_fluid * d.D)
    return Params(S_c=S_c, V_c=V_c, tau_H=tau_H, omega=omega, A1=0.0,
                  theta0=theta0, I_D=I_D, I_t=I_t, G_c=G_c, R=R)
