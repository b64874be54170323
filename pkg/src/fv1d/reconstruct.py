"""Spatial reconstructions: minmod-theta piecewise-linear (MUSCL) boundary
extrapolation and second-order ENO interface values.

All operations are componentwise and accept either a 1D array of values or a
(k, m) array, acting along axis 0. Arrays are expected to carry two ghost
cells per side; outputs cover every interface whose full stencil is known.
"""

from __future__ import annotations

from enum import Enum

import numpy as np


class Bias(Enum):
    """Upwind direction of an ENO interface value."""

    FROM_LEFT = "from_left"    # wave moving right: reconstruct from the left cell
    FROM_RIGHT = "from_right"  # wave moving left: reconstruct from the right cell


def minmod(a, b, c=None):
    """Smallest-magnitude argument when all share a sign, else zero.

    Elementwise on arrays; scalar inputs return a float.
    """
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    if c is not None:
        lo = np.minimum(lo, c)
        hi = np.maximum(hi, c)
    out = np.where(lo > 0.0, lo, 0.0) + np.where(hi < 0.0, hi, 0.0)
    return float(out) if np.ndim(out) == 0 else out


def muscl_slopes(values, theta: float = 1.5):
    """Limited slope minmod(theta*d_minus, d_central, theta*d_plus) per cell.

    For input of length k the result has length k - 2 (slopes of the cells
    with both neighbours present). theta in [1, 2]: 1 is the most diffusive
    (plain minmod), 2 the sharpest.
    """
    if not 1.0 <= theta <= 2.0:
        raise ValueError(f"theta must lie in [1, 2], got {theta}")
    v = np.asarray(values, dtype=float)
    d_minus = v[1:-1] - v[:-2]
    d_plus = v[2:] - v[1:-1]
    central = 0.5 * (v[2:] - v[:-2])
    return minmod(theta * d_minus, central, theta * d_plus)


def boundary_extrapolate(values, slopes):
    """Left/right interface values from per-cell linear reconstructions.

    values has length k, slopes length k - 2 (from muscl_slopes on the same
    array). Returns (u_minus, u_plus) of length k - 3: at interface i,
    u_minus is the value extrapolated from the cell on its left,
    u_plus from the cell on its right.
    """
    v = np.asarray(values, dtype=float)
    s = np.asarray(slopes, dtype=float)
    u_minus = v[1:-2] + 0.5 * s[:-1]
    u_plus = v[2:-1] - 0.5 * s[1:]
    return u_minus, u_plus


def eno2_interface(values, bias: Bias):
    """Second-order ENO value at each interface, biased to one side.

    The reconstructing cell extends with the divided difference of smaller
    magnitude, so the stencil never crosses a discontinuity. Ties pick the
    backward (smaller-index) difference for deterministic output. For input
    of length k the result has length k - 3, matching boundary_extrapolate.
    """
    v = np.asarray(values, dtype=float)
    d = np.diff(v, axis=0)
    if bias is Bias.FROM_LEFT:
        back, fwd = d[:-2], d[1:-1]
        slope = np.where(np.abs(back) <= np.abs(fwd), back, fwd)
        return v[1:-2] + 0.5 * slope
    if bias is Bias.FROM_RIGHT:
        back, fwd = d[1:-1], d[2:]
        slope = np.where(np.abs(back) <= np.abs(fwd), back, fwd)
        return v[2:-1] - 0.5 * slope
    raise ValueError(f"unknown bias: {bias!r}")
