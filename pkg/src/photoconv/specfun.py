"""Exponential integrals E_n and Gauss-Legendre quadrature.

These are the two numerical primitives everything else leans on: the
radiation kernels are built from E_1..E_5 and every angular integral is a
Gauss-Legendre sum.  E_1 uses the classic power series below the switch
point and a modified-Lentz continued fraction above it; higher orders come
from the upward recurrence n E_{n+1}(x) = e^{-x} - x E_n(x), which is stable
for the small orders needed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243

# Series/continued-fraction switch for E_1.
_E1_SWITCH = 1.0
# Below this the E_1 series would need log(x) of a denormal; treat as x = 0.
_E1_TINY = 1e-300


def _e1_series(x: np.ndarray) -> np.ndarray:
    """E_1 on 0 < x <= 1 via -gamma - ln x - sum (-x)^k / (k k!)."""
    out = -EULER_GAMMA - np.log(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        term = term * (-x) / k
        contrib = -term / k
        out += contrib
        if np.max(np.abs(contrib)) < 1e-18:
            break
    return out


def _en_contfrac(n: int, x: np.ndarray) -> np.ndarray:
    """E_n on x > 1 via the continued fraction with modified Lentz iteration."""
    tiny = 1e-300
    b = x + float(n)
    c = np.full_like(x, 1.0 / tiny)
    d = 1.0 / b
    f = d.copy()
    for k in range(1, 200):
        a = -float(k) * float(n - 1 + k)
        b = b + 2.0
        d = b + a * d
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b + a / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if np.max(np.abs(delta - 1.0)) < 1e-16:
            break
    return np.exp(-x) * f


def _e1_contfrac(x: np.ndarray) -> np.ndarray:
    return _en_contfrac(1, x)


def expint(n: int, x):
    """Exponential integral E_n(x) = int_1^inf e^{-x t} / t^n dt.

    Accepts a scalar or array ``x``.  Relative accuracy is ~1e-14 over the
    range exercised here (x in [0, ~50], n in 1..5).

    Raises
    ------
    DomainError
        If n < 1, x < 0, or (n == 1 and x ~ 0) where E_1 diverges.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"expint order must be an integer >= 1, got {n!r}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    if np.any(x_arr < 0.0):
        raise DomainError("expint requires x >= 0")
    small = x_arr < _E1_TINY
    if n == 1 and np.any(small):
        raise DomainError("E_1(x) diverges as x -> 0; got x < 1e-300")

    e1 = np.empty_like(x_arr)
    pos = ~small
    xp = x_arr[pos]
    if xp.size:
        lo = xp <= _E1_SWITCH
        vals = np.empty_like(xp)
        if np.any(lo):
            vals[lo] = _e1_series(xp[lo])
        if np.any(~lo):
            vals[~lo] = _e1_contfrac(xp[~lo])
        e1[pos] = vals
    e1[small] = np.inf

    if n == 1:
        result = e1
    else:
        # Upward recurrence amplifies rounding roughly by x^{n-1}/(n-1)!, so
        # switch to the direct continued fraction where that would exceed
        # the 1e-12 accuracy contract.
        cf_switch = 60.0 if n <= 3 else 2.0
        result = np.full_like(x_arr, 1.0 / (n - 1))
        xv = x_arr[pos]
        ev = e1[pos]
        emx = np.exp(-xv)
        for m in range(1, n):
            ev = (emx - xv * ev) / m
        big = xv > cf_switch
        if np.any(big):
            ev[big] = _en_contfrac(n, xv[big])
        result[pos] = ev
    return float(result[0]) if scalar else result


def expint_table(n_max: int, x: np.ndarray) -> list[np.ndarray]:
    """[E_1(x), ..., E_nmax(x)] sharing one E_1 evaluation.

    ``x`` may contain zeros only if callers skip the E_1 row there; the
    returned E_1 is +inf at such points, higher orders take 1/(n-1).
    """
    x = np.asarray(x, dtype=float)
    small = x < _E1_TINY
    e1 = np.empty_like(x)
    xp = x[~small]
    if xp.size:
        lo = xp <= _E1_SWITCH
        vals = np.empty_like(xp)
        if np.any(lo):
            vals[lo] = _e1_series(xp[lo])
        if np.any(~lo):
            vals[~lo] = _e1_contfrac(xp[~lo])
        e1[~small] = vals
    e1[small] = np.inf
    out = [e1]
    pos = ~small
    emx = np.exp(-x[pos])
    ev = e1[pos]
    for m in range(1, n_max):
        ev = (emx - x[pos] * ev) / m
        en = np.full_like(x, 1.0 / m)
        en[pos] = ev
        out.append(en)
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        if abs(weights.sum() - 2.0) > 1e-12:
            raise ValueError("weights must sum to 2 on (-1, 1)")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.max(np.abs(nodes + nodes[::-1])) > 1e-12:
            raise ValueError("nodes must be symmetric about 0")
        nodes.setflags(write=False)
        weights.setflags(write=False)

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on (-1, 1), Newton-refined to ~1e-15."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"gauss_legendre needs n >= 2, got {n!r}")
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for m in range(2, n + 1):
            p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for m in range(2, n + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce exact symmetry so downstream parity arguments hold to roundoff
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    order = np.argsort(x)
    return QuadratureRule(nodes=x[order], weights=w[order])
