"""Finite-difference and interpolation helpers on uniform grids.

All stencils are 4th order so they do not cap the accuracy of the
collocation scheme or the characteristic sweeps that consume them.
"""

from __future__ import annotations

import numpy as np


def deriv4(f: np.ndarray, h: float) -> np.ndarray:
    """First derivative, 4th-order central with one-sided boundary stencils."""
    f = np.asarray(f)
    if f.shape[-1] < 5:
        raise ValueError("deriv4 needs at least 5 points")
    d = np.empty_like(f)
    d[..., 2:-2] = (f[..., :-4] - 8 * f[..., 1:-3] + 8 * f[..., 3:-1] - f[..., 4:]) / (12 * h)
    d[..., 0] = (-25 * f[..., 0] + 48 * f[..., 1] - 36 * f[..., 2]
                 + 16 * f[..., 3] - 3 * f[..., 4]) / (12 * h)
    d[..., 1] = (-3 * f[..., 0] - 10 * f[..., 1] + 18 * f[..., 2]
                 - 6 * f[..., 3] + f[..., 4]) / (12 * h)
    d[..., -2] = (3 * f[..., -1] + 10 * f[..., -2] - 18 * f[..., -3]
                  + 6 * f[..., -4] - f[..., -5]) / (12 * h)
    d[..., -1] = (25 * f[..., -1] - 48 * f[..., -2] + 36 * f[..., -3]
                  - 16 * f[..., -4] + 3 * f[..., -5]) / (12 * h)
    return d


def _lagrange_weights(xs: np.ndarray, t: float) -> np.ndarray:
    w = np.empty(len(xs))
    for j in range(len(xs)):
        others = np.delete(xs, j)
        w[j] = np.prod((t - others) / (xs[j] - others))
    return w


def _cell_samples(f: np.ndarray, t: float) -> np.ndarray:
    """Values at z_i + t*h for every cell i, by sliding cubic interpolation.

    Interior cells use the stencil {i-1, i, i+1, i+2}; the boundary cells
    reuse the nearest interior stencil.  Returns length N-1 along the last
    axis for input of length N.
    """
    f = np.asarray(f)
    n = f.shape[-1]
    if n < 4:
        raise ValueError("need at least 4 nodes")
    w = _lagrange_weights(np.array([-1.0, 0.0, 1.0, 2.0]), t)
    out = np.empty(f.shape[:-1] + (n - 1,), dtype=f.dtype)
    out[..., 1:n - 2] = (w[0] * f[..., 0:n - 3] + w[1] * f[..., 1:n - 2]
                         + w[2] * f[..., 2:n - 1] + w[3] * f[..., 3:n])
    wf = _lagrange_weights(np.array([0.0, 1.0, 2.0, 3.0]), t)
    out[..., 0] = sum(wf[j] * f[..., j] for j in range(4))
    wl = _lagrange_weights(np.array([0.0, 1.0, 2.0, 3.0]), 2.0 + t)
    out[..., n - 2] = sum(wl[j] * f[..., n - 4 + j] for j in range(4))
    return out


def midpoints4(f: np.ndarray) -> np.ndarray:
    """Cell midpoint values by 4-point cubic interpolation (length N-1)."""
    return _cell_samples(f, 0.5)


def refine_thirds(f: np.ndarray) -> np.ndarray:
    """Dense samples [f0, f(h/3), f(2h/3), f1, ...] of length 3N-2.

    Node values pass through unchanged; the two interior points per cell
    come from sliding cubic interpolation.
    """
    f = np.asarray(f)
    n = f.shape[-1]
    out = np.empty(f.shape[:-1] + (3 * n - 2,), dtype=f.dtype)
    out[..., 0::3] = f
    out[..., 1::3] = _cell_samples(f, 1.0 / 3.0)
    out[..., 2::3] = _cell_samples(f, 2.0 / 3.0)
    return out


def simpson(f: np.ndarray, h: float) -> float:
    """Composite Simpson on a uniform grid with an even number of intervals."""
    f = np.asarray(f)
    n = f.shape[-1]
    if n % 2 == 0:
        raise ValueError("composite Simpson needs an odd node count")
    return float(h / 3.0 * (f[0] + f[-1] + 4 * f[1:-1:2].sum() + 2 * f[2:-1:2].sum()))
