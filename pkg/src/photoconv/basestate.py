"""Equilibrium concentration profile and sublayer diagnostics.

The concentration n_s(z) obeys dn_s/dz = V_c M(G_s) n_s with unit mean,
coupled to the radiation field through the optical depth
tau(z) = tau_H * int_z^1 n_s dz'.  Shooting from the illuminated top
boundary: guess n_s(1) = s, integrate (n_s, tau) down to z = 0, and drive
the residual tau(0) - tau_H to zero (equivalent to int_0^1 n_s dz = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import BracketError, ConvergenceError
from .params import DimensionalInputs, Params, nondimensionalize  # noqa: F401  (re-export)
from .radiative import RadiationField, collimated_intensity, eval_field
from .taxis import CalibratedTaxis, TaxisFunction, taxis_derivative, taxis_value

_S_MIN = 1e-6


@dataclass(frozen=True)
class SublayerMetrics:
    sublayer_z: float
    WUR: float
    CDUR: float
    regime: str          # "interior", "fully-lit", or "fully-dark"
    roots: tuple         # all G_s = G_c crossings, ascending in z

    def __iter__(self):
        return iter((self.sublayer_z, self.WUR, self.CDUR))


@dataclass(frozen=True)
class BaseState:
    """Equilibrium profiles on a uniform z grid (z = 0 bottom, z = 1 top)."""

    z_grid: np.ndarray
    n_s: np.ndarray
    tau: np.ndarray
    G_s: np.ndarray
    q_s: np.ndarray
    M_s: np.ndarray
    dMdG_s: np.ndarray
    sublayer_z: float
    WUR: float
    CDUR: float
    params: Params
    taxis: TaxisFunction
    field: RadiationField
    regime: str = "interior"
    # dense samples (two extra points per cell) for the radiation sweeps
    fine_z: np.ndarray = field(default=None, repr=False)
    fine_n_s: np.ndarray = field(default=None, repr=False)
    fine_tau: np.ndarray = field(default=None, repr=False)
    fine_G_s: np.ndarray = field(default=None, repr=False)
    fine_q_s: np.ndarray = field(default=None, repr=False)

    @property
    def nz(self) -> int:
        """Number of grid intervals."""
        return len(self.z_grid) - 1

    def collimated_G(self) -> np.ndarray:
        g, _ = collimated_intensity(self.tau, self.params.radiation)
        return g

    def restrict(self, stride: int) -> "BaseState":
        """Subsampled copy on every ``stride``-th node (for coarse scans)."""
        if (len(self.z_grid) - 1) % stride:
            raise ValueError("stride must divide the interval count")
        sl = slice(None, None, stride)
        # dense grid keeps two interior samples per (larger) cell
        fsl = slice(None, None, stride)
        return BaseState(
            z_grid=self.z_grid[sl], n_s=self.n_s[sl], tau=self.tau[sl],
            G_s=self.G_s[sl], q_s=self.q_s[sl], M_s=self.M_s[sl],
            dMdG_s=self.dMdG_s[sl], sublayer_z=self.sublayer_z, WUR=self.WUR,
            CDUR=self.CDUR, params=self.params, taxis=self.taxis,
            field=self.field, regime=self.regime,
            fine_z=self.fine_z[fsl], fine_n_s=self.fine_n_s[fsl],
            fine_tau=self.fine_tau[fsl], fine_G_s=self.fine_G_s[fsl],
            fine_q_s=self.fine_q_s[fsl],
        )


def _taxis_table(p: Params, field_: RadiationField, taxis: TaxisFunction,
                 n_tab: int = 65537):
    """Dense M(G_s(tau)) lookup so the shooting RHS is a cheap interp."""
    tau_tab = np.linspace(0.0, p.tau_H, n_tab)
    G_tab, _ = eval_field(field_, tau_tab)
    m_tab = taxis.value(np.maximum(G_tab, 1e-300))
    return tau_tab, m_tab


def _integrate(p: Params, tau_tab, m_tab, s_top: float, n_steps: int,
               store: bool = False):
    """Classical RK4 march of (n_s, tau) from z=1 down to z=0.

    Fixed steps keep the shooting residual a smooth function of the top
    concentration (adaptive step-count jumps would put noise right at the
    residual tolerance).  With ``store`` the whole descending trajectory is
    returned, one state per step point.
    """
    tau_H = p.tau_H
    V_c = p.V_c
    interp = np.interp

    def rhs(n, tau):
        m = interp(tau, tau_tab, m_tab)
        return V_c * m * n, -tau_H * n

    h = -1.0 / n_steps
    n, tau = float(s_top), 0.0
    traj = np.empty((n_steps + 1, 2)) if store else None
    if store:
        traj[0] = (n, tau)
    for i in range(n_steps):
        k1n, k1t = rhs(n, tau)
        k2n, k2t = rhs(n + 0.5 * h * k1n, tau + 0.5 * h * k1t)
        k3n, k3t = rhs(n + 0.5 * h * k2n, tau + 0.5 * h * k2t)
        k4n, k4t = rhs(n + h * k3n, tau + h * k3t)
        n += h * (k1n + 2 * k2n + 2 * k3n + k4n) / 6.0
        tau += h * (k1t + 2 * k2t + 2 * k3t + k4t) / 6.0
        tau = min(tau, tau_H + 1e-9)
        if store:
            traj[i + 1] = (n, tau)
    if store:
        return traj
    return n, tau


def solve_base_state(p: Params, field_: RadiationField, nz: int = 512, *,
                     taxis: TaxisFunction | None = None,
                     s_max: float = 1e3, residual_tol: float = 1e-10) -> BaseState:
    """Shooting solve of the equilibrium concentration profile.

    ``nz`` is the number of uniform grid intervals on [0, 1] (the profile is
    reported on nz + 1 nodes).  The taxis function defaults to the
    calibrated response with the critical intensity taken from ``p``.
    """
    if nz < 64:
        raise ValueError(f"nz must be >= 64, got {nz}")
    if field_.params != p.radiation:
        raise ValueError("radiation field was solved with different parameters")
    if taxis is None:
        taxis = CalibratedTaxis(G_c=p.G_c)
    tau_tab, m_tab = _taxis_table(p, field_, taxis)
    n_steps = 3 * nz  # march lands exactly on the dense output grid

    def shoot(s):
        _, tau0 = _integrate(p, tau_tab, m_tab, s, n_steps)
        return tau0 - p.tau_H

    # bracket the residual; it is increasing in s for any bounded response
    lo, flo = _S_MIN, shoot(_S_MIN)
    hi = 1.0
    fhi = shoot(hi)
    while flo * fhi > 0 and hi < s_max:
        lo, flo = hi, fhi
        hi = min(hi * 4.0, s_max)
        fhi = shoot(hi)
    if flo * fhi > 0:
        raise BracketError(
            f"no sign change of the shooting residual on [{_S_MIN}, {s_max}]")
    s_star = brentq(shoot, lo, hi, xtol=1e-14, rtol=8.9e-16, maxiter=100)
    resid = shoot(s_star)
    if abs(resid) > residual_tol:
        raise ConvergenceError(
            f"shooting residual {resid:.2e} exceeds {residual_tol:.0e}")

    # the stored march already lives on the dense grid, descending in z
    z_nodes = np.linspace(0.0, 1.0, nz + 1)
    z_fine = np.linspace(0.0, 1.0, 3 * nz + 1)
    traj = _integrate(p, tau_tab, m_tab, s_star, n_steps, store=True)
    n_fine = traj[::-1, 0]
    tau_fine = np.clip(traj[::-1, 1], 0.0, p.tau_H)
    G_fine, q_fine = eval_field(field_, tau_fine)

    n_s = n_fine[::3]
    tau = tau_fine[::3]
    G_s = G_fine[::3]
    q_s = q_fine[::3]
    M_s = taxis_value(taxis, G_s)
    dMdG = taxis_derivative(taxis, G_s)

    metrics = _sublayer_from_profiles(z_nodes, tau, field_, p.G_c, n_s)
    return BaseState(
        z_grid=z_nodes, n_s=n_s, tau=tau, G_s=G_s, q_s=q_s, M_s=M_s,
        dMdG_s=dMdG, sublayer_z=metrics.sublayer_z, WUR=metrics.WUR,
        CDUR=metrics.CDUR, params=p, taxis=taxis, field=field_,
        regime=metrics.regime, fine_z=z_fine, fine_n_s=n_fine,
        fine_tau=tau_fine, fine_G_s=G_fine, fine_q_s=q_fine,
    )


def _sublayer_from_profiles(z, tau, field_, G_c, n_s) -> SublayerMetrics:
    tau_of_z = PchipInterpolator(z, tau)

    def g_of_z(zz):
        return eval_field(field_, float(np.clip(tau_of_z(zz), 0.0, field_.params.tau_H)))[0]

    gz = np.array([g_of_z(zz) for zz in z])
    excess = gz - G_c
    roots = []
    for i in range(len(z) - 1):
        if excess[i] == 0.0:
            roots.append(z[i])
        elif excess[i] * excess[i + 1] < 0:
            roots.append(brentq(lambda zz: g_of_z(zz) - G_c, z[i], z[i + 1], xtol=1e-12))
    if excess[-1] == 0.0:
        roots.append(z[-1])

    cdur = float(np.max(n_s) - n_s[0])
    if not roots:
        if excess.max() < 0:
            # dark everywhere: cells climb, the whole depth is unstable
            return SublayerMetrics(1.0, 1.0, cdur, "fully-dark", ())
        return SublayerMetrics(0.0, 0.0, cdur, "fully-lit", ())
    zs = float(max(roots))
    return SublayerMetrics(zs, zs, cdur, "interior", tuple(sorted(roots)))


def sublayer_metrics(b: BaseState, G_c: float | None = None) -> SublayerMetrics:
    """Sublayer position (topmost G_s = G_c crossing), WUR, and CDUR."""
    gc = b.params.G_c if G_c is None else G_c
    return _sublayer_from_profiles(b.z_grid, b.tau, b.field, gc, b.n_s)
