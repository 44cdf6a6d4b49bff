"""Linear-stability eigenproblem, neutral curves, and critical points.

Disturbances W1 = W(z) exp(gamma t + i(lx + my)) of the equilibrium state
satisfy a 7th-order system for (W, Theta), Theta being the depth-integrated
concentration disturbance:

    (gamma/S_c + k^2 - D^2)(D^2 - k^2) W = R k^2 D Theta,
    D^3 Theta = L0 + L1 Theta + (gamma + k^2 + L2) D Theta + L3 D^2 Theta
                + (Dn_s) W,

with rigid walls (W = DW = 0), zero wall cell flux
(D^2 Theta - L3 D Theta - n_s V_c G dM/dG = 0), and Theta(1) = 0.  The
coefficient L0 and the wall values of the perturbed diffuse intensity are
nonlocal (they depend on the disturbance through the radiation moments), so
neutral solves alternate a frozen-coefficient Newton-collocation pass with
a moment update until the eigenvalue settles.

Neutral points pin Re(gamma) = 0 and append the unknowns (R on the
stationary branch; R and Im(gamma) on the oscillatory branch) as constant
fields, normalized by D Theta(0) = 1.  A coarse dense eigensolve provides
seeds and detects oscillatory branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import PchipInterpolator

from .basestate import BaseState, solve_base_state
from .errors import ConvergenceError, DomainError
from .gridops import deriv4, midpoints4
from .nrk import solve_collocation
from .params import Params
from .perturbation import MomentOperator, PerturbationMoments, perturbed_collimated
from .radiative import RadiationField, solve_radiation
from .taxis import CalibratedTaxis, TaxisFunction

OSCILLATORY_THRESHOLD = 1e-3


@dataclass(frozen=True)
class StabilityCoefficients:
    """Profiles multiplying Theta derivatives in the disturbance equation."""

    lambda0: np.ndarray   # complex, nonlocal (diffuse moments)
    lambda1: np.ndarray
    lambda2: np.ndarray
    lambda3: np.ndarray


def assemble_coefficients(base: BaseState, moments: PerturbationMoments,
                          p: Params) -> StabilityCoefficients:
    """Build L0..L3 from the base state and perturbed moments.

    The collimated-beam pieces carry the slant-path factor tau_H/mu0, and
    L3 = V_c M_s identically.
    """
    if np.min(base.q_s) < 1e-12:
        raise DomainError("q_s vanishes: degenerate illumination")
    h = base.z_grid[1] - base.z_grid[0]
    V_c = p.V_c
    dM = base.dMdG_s
    Gc = base.collimated_G()
    Gd = base.G_s - Gc
    slant = p.tau_H / p.mu0

    lam0 = (V_c * deriv4(base.n_s * moments.Gd1 * dM, h)
            - 1j * (V_c * base.n_s * base.M_s / base.q_s)
            * (moments.l * moments.P + moments.m * moments.Q))
    lam1 = slant * V_c * deriv4(base.n_s * Gc * dM, h)
    lam2 = 2.0 * slant * V_c * base.n_s * Gc * dM + V_c * dM * deriv4(Gd, h)
    lam3 = V_c * base.M_s
    return StabilityCoefficients(lam0, lam1, lam2, lam3)


@dataclass(frozen=True)
class EigenSolution:
    k: float
    R: float
    gamma: complex
    W: np.ndarray
    Theta: np.ndarray
    N: np.ndarray
    mode_index: int
    oscillatory: bool
    z_grid: np.ndarray
    branch: str
    bc_residual: float = 0.0
    outer_iterations: int = 0
    moments: PerturbationMoments | None = field(default=None, repr=False)

    @property
    def lambda_wave(self) -> float:
        return 2.0 * math.pi / self.k


@dataclass(frozen=True)
class NeutralCurve:
    samples: tuple          # (k, R, Im gamma, branch, mode_index) per k, lower branch
    k_b: float | None       # stationary/oscillatory junction, if found
    stationary: tuple = ()
    oscillatory: tuple = ()
    failures: tuple = ()


@dataclass(frozen=True)
class CriticalPoint:
    k_c: float
    R_c: float
    lambda_c: float
    Im_gamma_c: float
    branch: str
    mode_index: int = 1


def classify_mode(sol: EigenSolution) -> int:
    """1 + number of interior sign changes of Re W."""
    w = np.real(np.asarray(sol.W))
    scale = np.max(np.abs(w))
    if scale == 0.0:
        return 1
    w = w[1:-1]
    w = w[np.abs(w) > 1e-9 * scale]
    if w.size == 0:
        return 1
    return int(np.count_nonzero(np.diff(np.sign(w)) != 0) + 1)


class StabilityProblem:
    """Shared machinery (base state, moments, coefficients) for one Params."""

    def __init__(self, p: Params, *, taxis: TaxisFunction | None = None,
                 mesh: int = 513, radiation_nodes: int = 256,
                 n_mu: int = 24, n_phi: int = 16,
                 field_: RadiationField | None = None,
                 base: BaseState | None = None):
        if (mesh - 1) % 2:
            raise ValueError("mesh must have an even interval count")
        self.p = p
        self.taxis = taxis if taxis is not None else CalibratedTaxis(G_c=p.G_c)
        self.mesh = mesh
        self.n_mu = n_mu
        self.n_phi = n_phi
        self.field = field_ if field_ is not None else solve_radiation(
            p.radiation, radiation_nodes)
        self.base = base if base is not None else solve_base_state(
            p, self.field, mesh - 1, taxis=self.taxis)
        self.z = self.base.z_grid
        self.h = self.z[1] - self.z[0]
        self._fixed = self._fixed_coefficients()
        self._op_cache = {}
        self._coarse_cache = {}

    # -- fixed (moment-independent) coefficient data ----------------------

    def _fixed_coefficients(self):
        b = self.base
        p = self.p
        dM = b.dMdG_s
        Gc = b.collimated_G()
        Gd = b.G_s - Gc
        slant = p.tau_H / p.mu0
        lam1 = slant * p.V_c * deriv4(b.n_s * Gc * dM, self.h)
        lam2 = 2.0 * slant * p.V_c * b.n_s * Gc * dM + p.V_c * dM * deriv4(Gd, self.h)
        lam3 = p.V_c * b.M_s
        dns = p.V_c * b.M_s * b.n_s   # dn_s/dz from the equilibrium balance
        fixed = {
            "lam1": lam1, "lam2": lam2, "lam3": lam3, "dns": dns,
            "lam1_m": midpoints4(lam1), "lam2_m": midpoints4(lam2),
            "lam3_m": midpoints4(lam3), "dns_m": midpoints4(dns),
        }
        # wall constants for the flux boundary condition
        for tag, idx in (("0", 0), ("1", -1)):
            fixed["lam3_" + tag] = lam3[idx]
            fixed["beta_" + tag] = (p.V_c * b.n_s[idx] * dM[idx] * slant * Gc[idx])
            fixed["gdcoef_" + tag] = p.V_c * b.n_s[idx] * dM[idx]
        return fixed

    def moment_operator(self, l: float, m: float) -> MomentOperator:
        key = (round(float(l), 12), round(float(m), 12))
        if key not in self._op_cache:
            if len(self._op_cache) > 3:
                self._op_cache.clear()
            self._op_cache[key] = MomentOperator(
                self.base, self.field, self.p, l, m,
                n_mu=self.n_mu, n_phi=self.n_phi)
        return self._op_cache[key]

    def lambda0(self, moments: PerturbationMoments) -> np.ndarray:
        b = self.base
        p = self.p
        return (p.V_c * deriv4(b.n_s * moments.Gd1 * b.dMdG_s, self.h)
                - 1j * (p.V_c * b.n_s * b.M_s / b.q_s)
                * (moments.l * moments.P + moments.m * moments.Q))

    # -- collocation system builders --------------------------------------

    def _real_system(self, k, lam0_re, gd0, gd1, *, unknown, R_fixed=0.0):
        """Fields [W, W', W'', W''', Th, Th', Th'', par]; par is R or gamma."""
        fx = self._fixed
        S_c = self.p.S_c
        k2 = k * k
        node = {"lam0": lam0_re, "lam1": fx["lam1"], "lam2": fx["lam2"],
                "lam3": fx["lam3"], "dns": fx["dns"]}
        mid = {"lam0": midpoints4(lam0_re), "lam1": fx["lam1_m"],
               "lam2": fx["lam2_m"], "lam3": fx["lam3_m"], "dns": fx["dns_m"]}

        def coeffs(kind):
            return node if kind == "node" else mid

        def f(kind, Y):
            c = coeffs(kind)
            par = Y[:, 7]
            if unknown == "R":
                R, gam = par, 0.0
            else:
                R, gam = R_fixed, par
            out = np.empty_like(Y)
            out[:, 0] = Y[:, 1]
            out[:, 1] = Y[:, 2]
            out[:, 2] = Y[:, 3]
            out[:, 3] = ((gam / S_c + 2.0 * k2) * Y[:, 2]
                         - k2 * (gam / S_c + k2) * Y[:, 0] - R * k2 * Y[:, 5])
            out[:, 4] = Y[:, 5]
            out[:, 5] = Y[:, 6]
            out[:, 6] = (c["lam0"] + c["lam1"] * Y[:, 4]
                         + (gam + k2 + c["lam2"]) * Y[:, 5]
                         + c["lam3"] * Y[:, 6] + c["dns"] * Y[:, 0])
            out[:, 7] = 0.0
            return out

        def jac(kind, Y):
            c = coeffs(kind)
            n = Y.shape[0]
            par = Y[:, 7]
            if unknown == "R":
                R, gam = par, 0.0
            else:
                R, gam = R_fixed, par
            A = np.zeros((n, 8, 8))
            A[:, 0, 1] = 1.0
            A[:, 1, 2] = 1.0
            A[:, 2, 3] = 1.0
            A[:, 3, 0] = -k2 * (gam / S_c + k2)
            A[:, 3, 2] = gam / S_c + 2.0 * k2
            A[:, 3, 5] = -R * k2
            if unknown == "R":
                A[:, 3, 7] = -k2 * Y[:, 5]
            else:
                A[:, 3, 7] = (Y[:, 2] - k2 * Y[:, 0]) / S_c
            A[:, 4, 5] = 1.0
            A[:, 5, 6] = 1.0
            A[:, 6, 0] = c["dns"]
            A[:, 6, 4] = c["lam1"]
            A[:, 6, 5] = gam + k2 + c["lam2"]
            A[:, 6, 6] = c["lam3"]
            if unknown != "R":
                A[:, 6, 7] = Y[:, 5]
            return A

        fx0, fx1 = self._fixed, self._fixed

        def bc(ya, yb):
            return np.array([
                ya[0], ya[1],
                ya[6] - fx0["lam3_0"] * ya[5] - fx0["beta_0"] * ya[4]
                - fx0["gdcoef_0"] * gd0,
                ya[5] - 1.0,
                yb[0], yb[1],
                yb[6] - fx1["lam3_1"] * yb[5] - fx1["beta_1"] * yb[4]
                - fx1["gdcoef_1"] * gd1,
                yb[4],
            ])

        def bc_jac(ya, yb):
            ga = np.zeros((8, 8))
            gb = np.zeros((8, 8))
            ga[0, 0] = 1.0
            ga[1, 1] = 1.0
            ga[2, 6] = 1.0
            ga[2, 5] = -fx0["lam3_0"]
            ga[2, 4] = -fx0["beta_0"]
            ga[3, 5] = 1.0
            gb[4, 0] = 1.0
            gb[5, 1] = 1.0
            gb[6, 6] = 1.0
            gb[6, 5] = -fx1["lam3_1"]
            gb[6, 4] = -fx1["beta_1"]
            gb[7, 4] = 1.0
            return ga, gb

        return f, jac, bc, bc_jac

    def _complex_system(self, k, lam0, gd0, gd1, *, unknowns, R_fixed=0.0):
        """Real-split fields [u1..u7, v1..v7, p1, p2].

        ``unknowns`` is "R_Omega" (neutral oscillatory: gamma = i p2, R = p1)
        or "gamma" (growth solve: gamma = p1 + i p2, R fixed).
        """
        fx = self._fixed
        S_c = self.p.S_c
        k2 = k * k
        node = {"l0r": lam0.real, "l0i": lam0.imag, "lam1": fx["lam1"],
                "lam2": fx["lam2"], "lam3": fx["lam3"], "dns": fx["dns"]}
        mid = {"l0r": midpoints4(lam0.real), "l0i": midpoints4(lam0.imag),
               "lam1": fx["lam1_m"], "lam2": fx["lam2_m"],
               "lam3": fx["lam3_m"], "dns": fx["dns_m"]}

        def coeffs(kind):
            return node if kind == "node" else mid

        def split_params(Y):
            if unknowns == "R_Omega":
                return Y[:, 14], 0.0 * Y[:, 15], Y[:, 15]
            return np.full(Y.shape[0], R_fixed), Y[:, 14], Y[:, 15]

        def f(kind, Y):
            c = coeffs(kind)
            R, gr, gi = split_params(Y)
            u = Y[:, 0:7]
            v = Y[:, 7:14]
            out = np.zeros_like(Y)
            out[:, 0] = u[:, 1]
            out[:, 1] = u[:, 2]
            out[:, 2] = u[:, 3]
            out[:, 3] = ((gr / S_c + 2 * k2) * u[:, 2] - (gi / S_c) * v[:, 2]
                         - k2 * ((gr / S_c + k2) * u[:, 0] - (gi / S_c) * v[:, 0])
                         - R * k2 * u[:, 5])
            out[:, 4] = u[:, 5]
            out[:, 5] = u[:, 6]
            out[:, 6] = (c["l0r"] + c["lam1"] * u[:, 4]
                         + (gr + k2 + c["lam2"]) * u[:, 5] - gi * v[:, 5]
                         + c["lam3"] * u[:, 6] + c["dns"] * u[:, 0])
            out[:, 7] = v[:, 1]
            out[:, 8] = v[:, 2]
            out[:, 9] = v[:, 3]
            out[:, 10] = ((gr / S_c + 2 * k2) * v[:, 2] + (gi / S_c) * u[:, 2]
                          - k2 * ((gr / S_c + k2) * v[:, 0] + (gi / S_c) * u[:, 0])
                          - R * k2 * v[:, 5])
            out[:, 11] = v[:, 5]
            out[:, 12] = v[:, 6]
            out[:, 13] = (c["l0i"] + c["lam1"] * v[:, 4]
                          + (gr + k2 + c["lam2"]) * v[:, 5] + gi * u[:, 5]
                          + c["lam3"] * v[:, 6] + c["dns"] * v[:, 0])
            return out

        def jac(kind, Y):
            c = coeffs(kind)
            n = Y.shape[0]
            R, gr, gi = split_params(Y)
            u = Y[:, 0:7]
            v = Y[:, 7:14]
            A = np.zeros((n, 16, 16))
            for off in (0, 7):
                A[:, off + 0, off + 1] = 1.0
                A[:, off + 1, off + 2] = 1.0
                A[:, off + 2, off + 3] = 1.0
                A[:, off + 4, off + 5] = 1.0
                A[:, off + 5, off + 6] = 1.0
            # u3' row
            A[:, 3, 2] = gr / S_c + 2 * k2
            A[:, 3, 9] = -gi / S_c
            A[:, 3, 0] = -k2 * (gr / S_c + k2)
            A[:, 3, 7] = k2 * gi / S_c
            A[:, 3, 5] = -R * k2
            # v3' row
            A[:, 10, 9] = gr / S_c + 2 * k2
            A[:, 10, 2] = gi / S_c
            A[:, 10, 7] = -k2 * (gr / S_c + k2)
            A[:, 10, 0] = -k2 * gi / S_c
            A[:, 10, 12] = -R * k2
            # u6' row
            A[:, 6, 0] = c["dns"]
            A[:, 6, 4] = c["lam1"]
            A[:, 6, 5] = gr + k2 + c["lam2"]
            A[:, 6, 12] = -gi
            A[:, 6, 6] = c["lam3"]
            # v6' row
            A[:, 13, 7] = c["dns"]
            A[:, 13, 11] = c["lam1"]
            A[:, 13, 12] = gr + k2 + c["lam2"]
            A[:, 13, 5] = gi
            A[:, 13, 13] = c["lam3"]
            if unknowns == "R_Omega":
                A[:, 3, 14] = -k2 * u[:, 5]
                A[:, 10, 14] = -k2 * v[:, 5]
                A[:, 3, 15] = -v[:, 2] / S_c + k2 * v[:, 0] / S_c
                A[:, 10, 15] = u[:, 2] / S_c - k2 * u[:, 0] / S_c
                A[:, 6, 15] = -v[:, 5]
                A[:, 13, 15] = u[:, 5]
            else:
                A[:, 3, 14] = (u[:, 2] - k2 * u[:, 0]) / S_c
                A[:, 10, 14] = (v[:, 2] - k2 * v[:, 0]) / S_c
                A[:, 6, 14] = u[:, 5]
                A[:, 13, 14] = v[:, 5]
                A[:, 3, 15] = (-v[:, 2] + k2 * v[:, 0]) / S_c
                A[:, 10, 15] = (u[:, 2] - k2 * u[:, 0]) / S_c
                A[:, 6, 15] = -v[:, 5]
                A[:, 13, 15] = u[:, 5]
            return A

        fx0 = self._fixed
        g0r, g0i = np.real(gd0), np.imag(gd0)
        g1r, g1i = np.real(gd1), np.imag(gd1)

        def flux(yvec, tag, gdr, gdi, off):
            lam3w = fx0["lam3_" + tag]
            beta = fx0["beta_" + tag]
            gco = fx0["gdcoef_" + tag]
            gd = gdr if off == 0 else gdi
            return yvec[off + 6] - lam3w * yvec[off + 5] - beta * yvec[off + 4] - gco * gd

        def bc(ya, yb):
            return np.array([
                ya[0], ya[7], ya[1], ya[8],
                flux(ya, "0", g0r, g0i, 0), flux(ya, "0", g0r, g0i, 7),
                ya[5] - 1.0, ya[12],
                yb[0], yb[7], yb[1], yb[8],
                flux(yb, "1", g1r, g1i, 0), flux(yb, "1", g1r, g1i, 7),
                yb[4], yb[11],
            ])

        def bc_jac(ya, yb):
            ga = np.zeros((16, 16))
            gb = np.zeros((16, 16))
            for row, col in ((0, 0), (1, 7), (2, 1), (3, 8)):
                ga[row, col] = 1.0
            for row, off, tag in ((4, 0, "0"), (5, 7, "0")):
                ga[row, off + 6] = 1.0
                ga[row, off + 5] = -fx0["lam3_" + tag]
                ga[row, off + 4] = -fx0["beta_" + tag]
            ga[6, 5] = 1.0
            ga[7, 12] = 1.0
            for row, col in ((8, 0), (9, 7), (10, 1), (11, 8)):
                gb[row, col] = 1.0
            for row, off in ((12, 0), (13, 7)):
                gb[row, off + 6] = 1.0
                gb[row, off + 5] = -fx0["lam3_1"]
                gb[row, off + 4] = -fx0["beta_1"]
            gb[14, 4] = 1.0
            gb[15, 11] = 1.0
            return ga, gb

        return f, jac, bc, bc_jac

    # -- seeding -----------------------------------------------------------

    def _poly_seed(self, k, R0=None):
        """Polynomial W satisfying the rigid walls plus a linear Theta solve."""
        z = self.z
        W = z * z * (1 - z) ** 2
        dW = 2 * z * (1 - z) ** 2 - 2 * z * z * (1 - z)
        d2W = 2 * (1 - z) ** 2 - 8 * z * (1 - z) + 2 * z * z
        d3W = -12 * (1 - 2 * z)
        fx = self._fixed
        k2 = k * k

        node = {"lam1": fx["lam1"], "lam2": fx["lam2"], "lam3": fx["lam3"],
                "dnsW": fx["dns"] * W}
        mid = {"lam1": fx["lam1_m"], "lam2": fx["lam2_m"], "lam3": fx["lam3_m"],
               "dnsW": fx["dns_m"] * midpoints4(W)}

        def f(kind, Y):
            c = node if kind == "node" else mid
            out = np.empty_like(Y)
            out[:, 0] = Y[:, 1]
            out[:, 1] = Y[:, 2]
            out[:, 2] = (c["lam1"] * Y[:, 0] + (k2 + c["lam2"]) * Y[:, 1]
                         + c["lam3"] * Y[:, 2] + c["dnsW"])
            return out

        def jac(kind, Y):
            c = node if kind == "node" else mid
            A = np.zeros((Y.shape[0], 3, 3))
            A[:, 0, 1] = 1.0
            A[:, 1, 2] = 1.0
            A[:, 2, 0] = c["lam1"]
            A[:, 2, 1] = k2 + c["lam2"]
            A[:, 2, 2] = c["lam3"]
            return A

        def bc(ya, yb):
            return np.array([
                ya[2] - fx["lam3_0"] * ya[1] - fx["beta_0"] * ya[0],
                yb[2] - fx["lam3_1"] * yb[1] - fx["beta_1"] * yb[0],
                yb[0],
            ])

        def bc_jac(ya, yb):
            ga = np.zeros((3, 3))
            gb = np.zeros((3, 3))
            ga[0, 2] = 1.0
            ga[0, 1] = -fx["lam3_0"]
            ga[0, 0] = -fx["beta_0"]
            gb[1, 2] = 1.0
            gb[1, 1] = -fx["lam3_1"]
            gb[1, 0] = -fx["beta_1"]
            gb[2, 0] = 1.0
            return ga, gb

        Y0 = np.zeros((len(z), 3))
        res = solve_collocation(f, jac, bc, bc_jac, z, Y0, n_a=1, tol=1e-9,
                                max_iter=8)
        Th, dTh, d2Th = res.Y.T
        scale = dTh[0]
        if abs(scale) < 1e-12:
            scale = 1.0
        W, dW, d2W, d3W = W / scale, dW / scale, d2W / scale, d3W / scale
        Th, dTh, d2Th = Th / scale, dTh / scale, d2Th / scale
        if R0 is None:
            h = self.h
            d4W = np.zeros_like(W)  # quartic: W'''' = 24/scale
            d4W[:] = 24.0 / scale
            lhs = d4W - 2 * k2 * d2W + k2 * k2 * W
            num = np.trapezoid(W * lhs, dx=h)
            den = k2 * np.trapezoid(W * dTh, dx=h)
            R0 = abs(num / den) if den != 0 else 500.0
        Y = np.zeros((len(z), 8))
        Y[:, 0], Y[:, 1], Y[:, 2], Y[:, 3] = W, dW, d2W, d3W
        Y[:, 4], Y[:, 5], Y[:, 6] = Th, dTh, d2Th
        Y[:, 7] = R0
        return Y

    def stationary_pencil_seed(self, k, max_nodes=129):
        """Dense R-eigensolve at gamma = 0 (frozen L0 = 0) for seeding.

        Returns (R0, W, Theta) on the full mesh, normalized by D Theta(0),
        for the smallest positive real eigenvalue.
        """
        stride = 1
        while (len(self.z) - 1) // stride + 1 > max_nodes:
            stride *= 2
        sl = slice(None, None, stride)
        z = self.z[sl]
        n = len(z)
        h = z[1] - z[0]
        fx = self._fixed
        lam1, lam2, lam3, dns = (fx["lam1"][sl], fx["lam2"][sl],
                                 fx["lam3"][sl], fx["dns"][sl])
        D1 = _diff_matrix(n, h)
        D2 = D1 @ D1
        D3 = D2 @ D1
        D4 = D2 @ D2
        k2 = k * k
        I = np.eye(n)
        A = np.zeros((2 * n, 2 * n))
        B = np.zeros_like(A)
        # stationary pencil: (D^2-k^2)^2 W + R k^2 D Theta = 0
        A[:n, :n] = D4 - 2 * k2 * D2 + k2 * k2 * I
        B[:n, n:] = k2 * D1
        A[n:, n:] = (D3 - lam3[:, None] * D2 - (k2 + lam2)[:, None] * D1
                     - np.diag(lam1))
        A[n:, :n] = -np.diag(dns)

        def clear(r):
            A[r, :] = 0.0
            B[r, :] = 0.0

        clear(0); A[0, 0] = 1.0
        clear(1); A[1, :n] = D1[0]
        clear(n - 2); A[n - 2, :n] = D1[-1]
        clear(n - 1); A[n - 1, n - 1] = 1.0
        clear(n)
        A[n, n:] = D2[0] - fx["lam3_0"] * D1[0]
        A[n, n] -= fx["beta_0"]
        clear(2 * n - 2)
        A[2 * n - 2, n:] = D2[-1] - fx["lam3_1"] * D1[-1]
        A[2 * n - 2, 2 * n - 1] -= fx["beta_1"]
        clear(2 * n - 1); A[2 * n - 1, 2 * n - 1] = 1.0
        from scipy.linalg import eig
        vals, vecs = eig(A, -B)
        good = (np.isfinite(vals) & (np.abs(vals.imag) < 1e-6 * np.abs(vals))
                & (vals.real > 1.0) & (np.abs(vals) < 1e7))
        if not np.any(good):
            raise ConvergenceError(f"no positive stationary eigenvalue at k={k:g}")
        idx = np.where(good)[0]
        best = idx[np.argmin(vals.real[idx])]
        R0 = float(vals.real[best])
        vec = vecs[:, best].real
        W_c, Th_c = vec[:n], vec[n:]
        dTh0 = float(D1[0] @ Th_c)
        if abs(dTh0) < 1e-14:
            raise ConvergenceError("degenerate pencil eigenvector")
        W = PchipInterpolator(z, W_c / dTh0)(self.z)
        Th = PchipInterpolator(z, Th_c / dTh0)(self.z)
        return R0, W, Th

    def _coarse_nonlocal(self, k, max_nodes=65):
        """Dense matrix of the nonlocal coupling on a decimated grid.

        Returns (stride, L0, gd_top_row, gd_bot_row): L0 @ Theta gives the
        L0 profile, the rows give the wall values of the perturbed diffuse
        intensity.  Built once per wavenumber for branch detection/seeding.
        """
        key = round(float(k), 12)
        if key in self._coarse_cache:
            return self._coarse_cache[key]
        stride = 1
        while (len(self.z) - 1) // stride + 1 > max_nodes:
            stride *= 2
        cb = self.base.restrict(stride)
        nc = len(cb.z_grid)
        hc = cb.z_grid[1] - cb.z_grid[0]
        op = MomentOperator(cb, self.field, self.p, k, 0.0, n_mu=8, n_phi=8)
        D1 = _diff_matrix(nc, hc)
        L0 = np.zeros((nc, nc), dtype=complex)
        gd_top = np.zeros(nc, dtype=complex)
        gd_bot = np.zeros(nc, dtype=complex)
        p = self.p
        pref = p.V_c * cb.n_s * cb.M_s / cb.q_s
        for j in range(nc):
            Th = np.zeros(nc, dtype=complex)
            Th[j] = 1.0
            mom = op.apply(D1[:, j].astype(complex), Th, tol=1e-10)
            L0[:, j] = (p.V_c * deriv4(cb.n_s * mom.Gd1 * cb.dMdG_s, hc)
                        - 1j * pref * (k * mom.P))
            gd_bot[j] = mom.Gd1[0]
            gd_top[j] = mom.Gd1[-1]
        if len(self._coarse_cache) > 3:
            self._coarse_cache.clear()
        self._coarse_cache[key] = (stride, L0, gd_bot, gd_top)
        return self._coarse_cache[key]

    def coarse_spectrum(self, k, R, lam0=None, max_nodes=129,
                        nonlocal_mats=None):
        """Dense generalized eigensolve on a decimated mesh (seeding only)."""
        if nonlocal_mats is not None:
            stride = nonlocal_mats[0]
        else:
            stride = 1
            while (len(self.z) - 1) // stride + 1 > max_nodes:
                stride *= 2
        sl = slice(None, None, stride)
        z = self.z[sl]
        n = len(z)
        h = z[1] - z[0]
        fx = self._fixed
        lam1, lam2, lam3, dns = (fx["lam1"][sl], fx["lam2"][sl],
                                 fx["lam3"][sl], fx["dns"][sl])
        l0 = np.zeros(n, dtype=complex) if lam0 is None else lam0[sl]
        D1 = _diff_matrix(n, h)
        D2 = D1 @ D1
        D3 = D2 @ D1
        D4 = D2 @ D2
        k2 = k * k
        I = np.eye(n)
        A = np.zeros((2 * n, 2 * n), dtype=complex)
        B = np.zeros_like(A)
        # W rows: gamma S_c^-1 (D2 - k2) W = (D2-k2)^2 W + R k2 D1 Theta
        A[:n, :n] = D4 - 2 * k2 * D2 + k2 * k2 * I
        A[:n, n:] = R * k2 * D1
        B[:n, :n] = (D2 - k2 * I) / self.p.S_c
        # Theta rows: gamma D1 Th = D3 Th - lam3 D2 Th - (k2+lam2) D1 Th
        #             - lam1 Th - dns W - lam0
        A[n:, n:] = (D3 - lam3[:, None] * D2 - (k2 + lam2)[:, None] * D1
                     - np.diag(lam1))
        A[n:, :n] = -np.diag(dns)
        B[n:, n:] = D1
        if nonlocal_mats is not None:
            _, L0, gd_bot, gd_top = nonlocal_mats
            A[n:, n:] -= L0
        # boundary rows
        for row, vec in ((0, I[0]), (n - 1, I[-1])):
            A[row, :] = 0.0
            B[row, :] = 0.0
            A[row, :n] = vec
        A[1, :] = 0.0
        B[1, :] = 0.0
        A[1, :n] = D1[0]
        A[n - 2, :] = 0.0
        B[n - 2, :] = 0.0
        A[n - 2, :n] = D1[-1]
        for row, idx, tag in ((n, 0, "0"), (2 * n - 2, n - 1, "1")):
            A[row, :] = 0.0
            B[row, :] = 0.0
            A[row, n:] = D2[idx] - fx["lam3_" + tag] * D1[idx]
            A[row, n + idx] -= fx["beta_" + tag]
            if nonlocal_mats is not None:
                wall = gd_bot if tag == "0" else gd_top
                A[row, n:] -= fx["gdcoef_" + tag] * wall
        A[2 * n - 1, :] = 0.0
        B[2 * n - 1, :] = 0.0
        A[2 * n - 1, n + n - 1] = 1.0
        from scipy.linalg import eig
        vals, vecs = eig(A, B)
        finite = np.isfinite(vals) & (np.abs(vals) < 1e6)
        return z, vals[finite], vecs[:, finite]

    def _oscillatory_seed(self, k, R_lo=100.0, R_hi=6000.0):
        """Locate Re(gamma) = 0 on the leading oscillatory mode by bisection
        over the coarse spectrum, returning (R0, Omega0, W, Theta)."""

        mats = self._coarse_nonlocal(k)

        def leading(R):
            return self._seed_from_coarse(k, R, True, nonlocal_mats=mats)

        grid = np.geomspace(R_lo, R_hi, 9)
        prev = None
        bracket = None
        for R in grid:
            got = leading(R)
            if got is None:
                prev = None
                continue
            re = got[0].real
            if prev is not None and prev[1] * re <= 0.0:
                bracket = (prev[0], R)
                break
            prev = (R, re)
        if bracket is None:
            raise ConvergenceError(f"no oscillatory neutral seed at k={k:g}")
        a, b = bracket
        ga = leading(a)[0].real
        for _ in range(12):
            mid = 0.5 * (a + b)
            got = leading(mid)
            if got is None:
                break
            if ga * got[0].real <= 0:
                b = mid
            else:
                a, ga = mid, got[0].real
            if (b - a) < 1e-3 * b:
                break
        R0 = 0.5 * (a + b)
        got = leading(R0)
        if got is None:
            raise ConvergenceError(f"oscillatory seed lost at k={k:g}")
        gam, Wi, Ti = got
        return R0, max(abs(gam.imag), 2 * OSCILLATORY_THRESHOLD), Wi, Ti

    def _seed_from_coarse(self, k, R, want_oscillatory, lam0=None,
                          nonlocal_mats=None):
        z_c, vals, vecs = self.coarse_spectrum(k, R, lam0=lam0,
                                               nonlocal_mats=nonlocal_mats)
        if want_oscillatory:
            cand = np.where(np.abs(vals.imag) > OSCILLATORY_THRESHOLD)[0]
        else:
            cand = np.where(np.abs(vals.imag) <= OSCILLATORY_THRESHOLD)[0]
        if cand.size == 0:
            return None
        best = cand[np.argmax(vals.real[cand])]
        gam = vals[best]
        vec = vecs[:, best]
        n = len(z_c)
        W_c, Th_c = vec[:n], vec[n:]
        # normalize by D Theta(0)
        h = z_c[1] - z_c[0]
        dTh0 = np.dot(_diff_matrix(n, h)[0], Th_c)
        if abs(dTh0) < 1e-14:
            return None
        W_c = W_c / dTh0
        Th_c = Th_c / dTh0
        if gam.imag < 0:
            gam = gam.conjugate()
            W_c = W_c.conjugate()
            Th_c = Th_c.conjugate()
        Wi = PchipInterpolator(z_c, W_c.real)(self.z) + 1j * PchipInterpolator(z_c, W_c.imag)(self.z)
        Ti = PchipInterpolator(z_c, Th_c.real)(self.z) + 1j * PchipInterpolator(z_c, Th_c.imag)(self.z)
        return gam, Wi, Ti

    # -- neutral and growth solves -----------------------------------------

    def _profiles_to_fields(self, W, Theta, complex_mode):
        h = self.h
        if complex_mode:
            Y = np.zeros((len(self.z), 16))
            for off, arr in ((0, W.real), (7, W.imag)):
                Y[:, off + 0] = arr
                Y[:, off + 1] = deriv4(arr, h)
                Y[:, off + 2] = deriv4(Y[:, off + 1], h)
                Y[:, off + 3] = deriv4(Y[:, off + 2], h)
            for off, arr in ((0, Theta.real), (7, Theta.imag)):
                Y[:, off + 4] = arr
                Y[:, off + 5] = deriv4(arr, h)
                Y[:, off + 6] = deriv4(Y[:, off + 5], h)
        else:
            Y = np.zeros((len(self.z), 8))
            Y[:, 0] = W.real
            Y[:, 1] = deriv4(W.real, h)
            Y[:, 2] = deriv4(Y[:, 1], h)
            Y[:, 3] = deriv4(Y[:, 2], h)
            Y[:, 4] = Theta.real
            Y[:, 5] = deriv4(Theta.real, h)
            Y[:, 6] = deriv4(Y[:, 5], h)
        return Y

    def neutral_solve(self, k: float, branch: str = "stationary",
                      seed: EigenSolution | None = None, *,
                      outer_tol: float = 1e-8, max_outer: int = 60,
                      moment_tol: float = 1e-9) -> EigenSolution:
        """Neutral point (Re gamma = 0) at wavenumber k on the given branch."""
        if k <= 0:
            raise ValueError("k must be positive")
        op = self.moment_operator(k, 0.0)
        complex_mode = branch == "oscillatory"

        moments = seed.moments if seed is not None and seed.moments is not None else None
        lam0 = self.lambda0(moments) if moments is not None else np.zeros(
            len(self.z), dtype=complex)
        gd0 = moments.Gd1[0] if moments is not None else 0.0
        gd1 = moments.Gd1[-1] if moments is not None else 0.0

        if seed is not None:
            Y = self._profiles_to_fields(seed.W, seed.Theta, complex_mode)
            R_prev = seed.R
            omega_prev = abs(seed.gamma.imag)
            if complex_mode and omega_prev <= OSCILLATORY_THRESHOLD:
                omega_prev = 5.0
        elif complex_mode:
            R_prev, omega_prev, Wi, Ti = self._oscillatory_seed(k)
            Y = self._profiles_to_fields(Wi, Ti, True)
        else:
            R_prev, W0, T0 = self.stationary_pencil_seed(k)
            Y = self._profiles_to_fields(W0.astype(complex), T0.astype(complex),
                                         False)
            omega_prev = 0.0

        if complex_mode:
            Y[:, 14] = R_prev
            Y[:, 15] = omega_prev
        else:
            Y[:, 7] = R_prev

        relax = 1.0
        prev_dR = None
        R_val = R_prev
        omega = omega_prev
        result = None
        for outer in range(1, max_outer + 1):
            if complex_mode:
                f, jac, bc, bc_jac = self._complex_system(
                    k, lam0, gd0, gd1, unknowns="R_Omega")
                res = solve_collocation(f, jac, bc, bc_jac, self.z, Y, n_a=8,
                                        tol=1e-10, max_iter=50)
                R_new = res.Y[0, 14]
                omega = res.Y[0, 15]
                N_prof = res.Y[:, 5] + 1j * res.Y[:, 12]
                Th_prof = res.Y[:, 4] + 1j * res.Y[:, 11]
            else:
                f, jac, bc, bc_jac = self._real_system(
                    k, lam0.real, np.real(gd0), np.real(gd1), unknown="R")
                res = solve_collocation(f, jac, bc, bc_jac, self.z, Y, n_a=4,
                                        tol=1e-10, max_iter=50)
                R_new = res.Y[0, 7]
                omega = 0.0
                N_prof = res.Y[:, 5].astype(complex)
                Th_prof = res.Y[:, 4].astype(complex)
            Y = res.Y
            result = res

            new_moments = op.apply(N_prof, Th_prof, start=moments,
                                   tol=moment_tol)
            if moments is None:
                moments = new_moments
            else:
                moments = PerturbationMoments(
                    z_grid=new_moments.z_grid,
                    Gc1=new_moments.Gc1,
                    Gd1=relax * new_moments.Gd1 + (1 - relax) * moments.Gd1,
                    P=relax * new_moments.P + (1 - relax) * moments.P,
                    Q=relax * new_moments.Q + (1 - relax) * moments.Q,
                    S=relax * new_moments.S + (1 - relax) * moments.S,
                    l=new_moments.l, m=new_moments.m,
                    iterations=new_moments.iterations)
            lam0 = self.lambda0(moments)
            gd0 = moments.Gd1[0]
            gd1 = moments.Gd1[-1]

            dR = abs(R_new - R_val)
            if prev_dR is not None and dR > prev_dR:
                relax = 0.7
            converged = outer > 1 and dR <= outer_tol * max(1.0, abs(R_new))
            R_val = R_new
            prev_dR = dR
            if converged:
                break
        else:
            raise ConvergenceError(
                f"outer moment iteration did not settle R at k={k:g}")

        if R_val < 0:
            raise ConvergenceError(
                f"neutral solve converged to negative R={R_val:g} at k={k:g} "
                f"({branch} branch): no neutral mode here")
        if complex_mode and omega < 0:
            omega = -omega
            Th_prof = Th_prof.conjugate()
            N_prof = N_prof.conjugate()
        W_prof = (Y[:, 0] + 1j * Y[:, 7]) if complex_mode else Y[:, 0].astype(complex)
        gamma = 1j * omega if complex_mode else 0.0 + 0.0j
        sol = EigenSolution(
            k=float(k), R=float(R_val), gamma=gamma, W=W_prof, Theta=Th_prof,
            N=N_prof, mode_index=0, oscillatory=abs(gamma.imag) > OSCILLATORY_THRESHOLD,
            z_grid=self.z, branch=branch, bc_residual=result.bc_residual,
            outer_iterations=outer, moments=moments)
        return replace(sol, mode_index=classify_mode(sol))

    def growth_rate(self, k: float, R: float,
                    seed: EigenSolution | None = None, *,
                    outer_tol: float = 1e-8, max_outer: int = 60) -> complex:
        """Leading growth rate gamma at fixed (k, R)."""
        seeds = []
        if seed is not None:
            seeds.append(seed)
        else:
            for branch in ("stationary", "oscillatory"):
                try:
                    seeds.append(self.neutral_solve(k, branch))
                except ConvergenceError:
                    continue
        if not seeds:
            raise ConvergenceError(f"no neutral seed available at k={k:g}")
        best = None
        for s in seeds:
            try:
                gam = self._growth_from_seed(k, R, s, outer_tol, max_outer)
            except ConvergenceError:
                continue
            if best is None or gam.real > best.real:
                best = gam
        if best is None:
            raise ConvergenceError(f"growth solves failed at k={k:g}, R={R:g}")
        return best

    def _growth_from_seed(self, k, R, seed: EigenSolution, outer_tol, max_outer):
        op = self.moment_operator(k, 0.0)
        moments = seed.moments
        lam0 = self.lambda0(moments) if moments is not None else np.zeros(
            len(self.z), dtype=complex)
        gd0 = moments.Gd1[0] if moments is not None else 0.0
        gd1 = moments.Gd1[-1] if moments is not None else 0.0
        Y = self._profiles_to_fields(seed.W, seed.Theta, True)
        Y[:, 14] = seed.gamma.real
        Y[:, 15] = seed.gamma.imag
        gam_val = seed.gamma
        for outer in range(1, max_outer + 1):
            f, jac, bc, bc_jac = self._complex_system(
                k, lam0, gd0, gd1, unknowns="gamma", R_fixed=R)
            res = solve_collocation(f, jac, bc, bc_jac, self.z, Y, n_a=8,
                                    tol=1e-10, max_iter=50)
            Y = res.Y
            gam_new = complex(res.Y[0, 14], res.Y[0, 15])
            N_prof = res.Y[:, 5] + 1j * res.Y[:, 12]
            Th_prof = res.Y[:, 4] + 1j * res.Y[:, 11]
            moments = op.apply(N_prof, Th_prof, start=moments)
            lam0 = self.lambda0(moments)
            gd0 = moments.Gd1[0]
            gd1 = moments.Gd1[-1]
            if outer > 1 and abs(gam_new - gam_val) <= outer_tol * (1.0 + abs(gam_new)):
                return gam_new
            gam_val = gam_new
        raise ConvergenceError(f"growth solve did not settle at k={k:g}, R={R:g}")

    # -- curve tracing ------------------------------------------------------

    def trace_neutral_curve(self, k_min: float, k_max: float, n_k: int,
                            *, both_branches: bool = True) -> NeutralCurve:
        if not (0 < k_min < k_max) or n_k < 8:
            raise ValueError("need 0 < k_min < k_max and n_k >= 8")
        ks = np.linspace(k_min, k_max, n_k)
        stationary = []
        oscillatory = []
        failures = []
        seed_s = None
        seed_o = None
        prev_osc = False
        k_b = None
        for k in ks:
            sol_s = None
            try:
                sol_s = self.neutral_solve(k, "stationary", seed=seed_s)
                seed_s = sol_s
                stationary.append(sol_s)
            except ConvergenceError as exc:
                seed_s = None
                failures.append((float(k), "stationary", str(exc)))
            sol_o = None
            if both_branches:
                attempt = prev_osc or self._oscillatory_candidate(k, sol_s)
                if attempt:
                    try:
                        sol_o = self.neutral_solve(k, "oscillatory", seed=seed_o)
                        if sol_o.gamma.imag <= OSCILLATORY_THRESHOLD:
                            # merged with the stationary branch
                            k_b = float(k) if k_b is None else max(k_b, float(k))
                            sol_o = None
                            seed_o = None
                        else:
                            seed_o = sol_o
                            oscillatory.append(sol_o)
                            k_b = float(k) if k_b is None else max(k_b, float(k))
                    except ConvergenceError as exc:
                        seed_o = None
                        failures.append((float(k), "oscillatory", str(exc)))
            prev_osc = sol_o is not None
        samples = []
        osc_by_k = {round(s.k, 12): s for s in oscillatory}
        for s in stationary:
            o = osc_by_k.get(round(s.k, 12))
            pick = o if (o is not None and o.R < s.R) else s
            samples.append((pick.k, pick.R, pick.gamma.imag, pick.branch,
                            pick.mode_index))
        for o in oscillatory:
            if not any(abs(s.k - o.k) < 1e-12 for s in stationary):
                samples.append((o.k, o.R, o.gamma.imag, o.branch, o.mode_index))
        samples.sort(key=lambda t: t[0])
        return NeutralCurve(
            samples=tuple(samples), k_b=k_b,
            stationary=tuple(stationary), oscillatory=tuple(oscillatory),
            failures=tuple(failures))

    def _oscillatory_candidate(self, k, sol_s) -> bool:
        if sol_s is None:
            return False
        mats = self._coarse_nonlocal(k)
        _, vals, _ = self.coarse_spectrum(k, 0.995 * sol_s.R,
                                          nonlocal_mats=mats)
        mask = (np.abs(vals.imag) > OSCILLATORY_THRESHOLD) & (vals.real > -0.5)
        return bool(np.any(mask))


def _diff_matrix(n: int, h: float) -> np.ndarray:
    """Dense 4th-order first-derivative matrix (one-sided at the walls)."""
    D = np.zeros((n, n))
    for i in range(2, n - 2):
        D[i, i - 2:i + 3] = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12 * h)
    D[0, :5] = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12 * h)
    D[1, :5] = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / (12 * h)
    D[n - 2, n - 5:] = -np.array([1.0, -6.0, 18.0, -10.0, -3.0]) / (12 * h)
    D[n - 1, n - 5:] = -np.array([-3.0, 16.0, -36.0, 48.0, -25.0]) / (12 * h)
    return D


# -- module-level operations (spec surface) ---------------------------------

def neutral_solve(p: Params, k: float, guess: EigenSolution | None = None,
                  *, branch: str = "stationary",
                  problem: StabilityProblem | None = None,
                  **problem_opts) -> EigenSolution:
    prob = problem if problem is not None else StabilityProblem(p, **problem_opts)
    return prob.neutral_solve(k, branch, seed=guess)


def growth_rate(p: Params, k: float, R: float, *,
                problem: StabilityProblem | None = None,
                seed: EigenSolution | None = None, **problem_opts) -> complex:
    prob = problem if problem is not None else StabilityProblem(p, **problem_opts)
    return prob.growth_rate(k, R, seed=seed)


def trace_neutral_curve(p: Params, k_min: float = 1.0, k_max: float = 8.0,
                        n_k: int = 29, *,
                        problem: StabilityProblem | None = None,
                        **problem_opts) -> NeutralCurve:
    prob = problem if problem is not None else StabilityProblem(p, **problem_opts)
    return prob.trace_neutral_curve(k_min, k_max, n_k)


def critical_point(curve: NeutralCurve) -> CriticalPoint:
    """Minimizer over the curve samples with parabolic refinement."""
    samples = sorted(curve.samples, key=lambda t: t[0])
    if len(samples) < 3:
        raise ValueError("need at least 3 neutral samples")
    ks = np.array([s[0] for s in samples])
    Rs = np.array([s[1] for s in samples])
    i = int(np.argmin(Rs))
    if i == 0 or i == len(samples) - 1:
        raise ValueError("no interior minimum in the sampled window")
    branch = samples[i][3]
    mode = samples[i][4]
    same = [j for j in (i - 1, i, i + 1) if samples[j][3] == branch]
    if len(same) == 3:
        k3 = ks[i - 1:i + 2]
        R3 = Rs[i - 1:i + 2]
        denom = (k3[0] - k3[1]) * (k3[0] - k3[2]) * (k3[1] - k3[2])
        a = (k3[2] * (R3[1] - R3[0]) + k3[1] * (R3[0] - R3[2])
             + k3[0] * (R3[2] - R3[1])) / denom
        bq = (k3[2] ** 2 * (R3[0] - R3[1]) + k3[1] ** 2 * (R3[2] - R3[0])
              + k3[0] ** 2 * (R3[1] - R3[2])) / denom
        if a > 0:
            k_c = -bq / (2 * a)
            c = R3[0] - a * k3[0] ** 2 - bq * k3[0]
            R_c = a * k_c ** 2 + bq * k_c + c
            ims = np.array([samples[j][2] for j in (i - 1, i, i + 1)])
            im_c = float(np.interp(k_c, k3, ims))
        else:
            k_c, R_c, im_c = ks[i], Rs[i], samples[i][2]
    else:
        k_c, R_c, im_c = ks[i], Rs[i], samples[i][2]
    return CriticalPoint(k_c=float(k_c), R_c=float(R_c),
                         lambda_c=2.0 * math.pi / float(k_c),
                         Im_gamma_c=float(im_c), branch=branch, mode_index=mode)


def find_critical(p: Params, *, k_min: float = 1.0, k_max: float = 8.0,
                  n_k: int = 29, refine: int = 2,
                  problem: StabilityProblem | None = None,
                  **problem_opts) -> tuple[CriticalPoint, NeutralCurve]:
    """Trace, then refine the grid near the discrete minimum."""
    prob = problem if problem is not None else StabilityProblem(p, **problem_opts)
    curve = prob.trace_neutral_curve(k_min, k_max, n_k)
    cp = critical_point(curve)
    for _ in range(refine):
        dk = (k_max - k_min) / (n_k - 1)
        lo = max(k_min, cp.k_c - dk)
        hi = min(k_max, cp.k_c + dk)
        sub = prob.trace_neutral_curve(lo, hi, 9)
        allsamp = tuple(sorted(set(curve.samples) | set(sub.samples)))
        curve = NeutralCurve(samples=allsamp, k_b=curve.k_b or sub.k_b,
                             stationary=curve.stationary + sub.stationary,
                             oscillatory=curve.oscillatory + sub.oscillatory,
                             failures=curve.failures + sub.failures)
        cp = critical_point(curve)
        dk = (hi - lo) / 8
    return cp, curve
