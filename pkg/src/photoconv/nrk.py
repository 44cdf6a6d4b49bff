"""Damped-Newton collocation solver for two-point boundary value problems.

The discretization is the three-point Lobatto (Simpson with eliminated
midpoint) compact scheme,

    y_{i+1} - y_i = (h/6) [f(z_i, y_i) + 4 f(z_mid, y_mid) + f(z_{i+1}, y_{i+1})],
    y_mid = (y_i + y_{i+1})/2 - (h/8) [f(z_{i+1}, y_{i+1}) - f(z_i, y_i)],

which is 4th-order accurate.  Nonlinear systems (the eigen-parameters enter
bilinearly) are solved by Newton iteration with residual backtracking, the
linearized steps by a banded LU factorization.

Eigen-parameters are appended as constant fields (zero derivative) and
normalization conditions enter as boundary rows, so the Jacobian stays
strictly banded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConvergenceError


@dataclass
class CollocationResult:
    z: np.ndarray
    Y: np.ndarray               # (N, nf)
    residual: float             # scaled max collocation residual
    bc_residual: float          # max boundary-condition residual
    iterations: int
    converged: bool


def _midpoint_states(Y, F, h):
    return 0.5 * (Y[:-1] + Y[1:]) - (h / 8.0) * (F[1:] - F[:-1])


def solve_collocation(f, jac, bc, bc_jac, z, Y0, *, n_a, tol=1e-10,
                      max_iter=50, max_backtracks=8):
    """Solve y' = f, bc(y(a), y(b)) = 0 on the mesh ``z``.

    ``f(kind, Y)`` and ``jac(kind, Y)`` evaluate the right side and its
    state Jacobian at the mesh nodes (kind="node", Y of shape (N, nf)) or
    cell midpoints (kind="mid", shape (N-1, nf)).  ``bc(ya, yb)`` returns nf
    residuals whose first ``n_a`` entries depend only on ya and the rest
    only on yb; ``bc_jac`` returns the two nf x nf blocks.
    """
    z = np.asarray(z, dtype=float)
    Y = np.array(Y0, dtype=float)
    N, nf = Y.shape
    h = z[1] - z[0]
    n_b = nf - n_a
    M = N * nf
    kl = ku = 2 * nf - 1

    def residuals(Y):
        F = f("node", Y)
        Ymid = _midpoint_states(Y, F, h)
        Fmid = f("mid", Ymid)
        Phi = Y[1:] - Y[:-1] - (h / 6.0) * (F[:-1] + 4.0 * Fmid + F[1:])
        g = bc(Y[0], Y[-1])
        return Phi, g, F, Ymid, Fmid

    def pack_residual(Phi, g):
        r = np.empty(M)
        r[:n_a] = g[:n_a]
        r[n_a:M - n_b] = Phi.reshape(-1)
        r[M - n_b:] = g[n_a:]
        return r

    def field_weights(F):
        return 1.0 + np.max(np.abs(F), axis=0)

    def scaled_norm(Phi, g, fscale):
        rphi = np.max(np.abs(Phi) / (h * fscale[None, :]))
        return max(rphi, np.max(np.abs(g)))

    def assemble(Y, F, Ymid, Fmid):
        A = jac("node", Y)          # (N, nf, nf)
        Amid = jac("mid", Ymid)     # (N-1, nf, nf)
        eye = np.eye(nf)
        # dYmid/dY_i = I/2 + (h/8) A_i ; dYmid/dY_{i+1} = I/2 - (h/8) A_{i+1}
        dmid_i = 0.5 * eye[None] + (h / 8.0) * A[:-1]
        dmid_ip = 0.5 * eye[None] - (h / 8.0) * A[1:]
        # dPhi/dY_i = -I - (h/6)(A_i + 4 Amid dmid_i)
        Ji = -eye[None] - (h / 6.0) * (A[:-1] + 4.0 * np.matmul(Amid, dmid_i))
        Jip = eye[None] - (h / 6.0) * (A[1:] + 4.0 * np.matmul(Amid, dmid_ip))

        ab = np.zeros((kl + ku + 1, M))
        ga, gb = bc_jac(Y[0], Y[-1])

        def setband(r, c, val):
            ab[ku + r - c, c] = val

        rows = np.arange(nf)
        for e in range(n_a):
            for c in range(nf):
                setband(e, c, ga[e, c])
        for e in range(n_b):
            r = M - n_b + e
            for c in range(nf):
                setband(r, (N - 1) * nf + c, gb[n_a + e, c])
        # interval blocks, vectorized over i
        i_idx = np.arange(N - 1)
        for e in range(nf):
            r = n_a + i_idx * nf + e
            for c in range(nf):
                ab[ku + (n_a + e) - c, i_idx * nf + c] = Ji[:, e, c]
                ab[ku + (n_a + e) - (nf + c), (i_idx + 1) * nf + c] = Jip[:, e, c]
        return ab

    Phi, g, F, Ymid, Fmid = residuals(Y)
    for it in range(1, max_iter + 1):
        fscale = field_weights(F)
        norm = scaled_norm(Phi, g, fscale)
        if norm < tol:
            return CollocationResult(z, Y, norm, float(np.max(np.abs(g))), it - 1, True)
        ab = assemble(Y, F, Ymid, Fmid)
        rhs = -pack_residual(Phi, g)
        try:
            step = solve_banded((kl, ku), ab, rhs)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"singular collocation Jacobian: {exc}") from exc
        if not np.all(np.isfinite(step)):
            raise ConvergenceError("collocation Jacobian produced non-finite step")
        dY = step.reshape(N, nf)
        alpha = 1.0
        for _ in range(max_backtracks + 1):
            Yn = Y + alpha * dY
            Phi_n, g_n, F_n, Ymid_n, Fmid_n = residuals(Yn)
            # frozen weights: the line search must see the same norm the
            # Newton direction was computed for
            norm_n = scaled_norm(Phi_n, g_n, fscale)
            if norm_n < (1.0 - 0.25 * alpha) * norm or norm_n < tol:
                break
            alpha *= 0.5
        else:
            if norm < 50.0 * tol:
                # terminal stall just above tol: the Jacobian is nearly
                # defective (branch merging); the iterate is already accurate
                return CollocationResult(z, Y, norm, float(np.max(np.abs(g))),
                                         it, True)
            raise ConvergenceError(
                f"Newton backtracking stalled at residual {norm:.3e}")
        Y, Phi, g, F, Ymid, Fmid = Yn, Phi_n, g_n, F_n, Ymid_n, Fmid_n
    fscale = field_weights(F)
    norm = scaled_norm(Phi, g, fscale)
    if norm < tol:
        return CollocationResult(z, Y, norm, float(np.max(np.abs(g))), max_iter, True)
    raise ConvergenceError(
        f"collocation Newton did not reach {tol:g} in {max_iter} iterations "
        f"(residual {norm:.3e})")
