"""The two semidiscrete right-hand sides.

KtScheme: the Kurganov-Tadmor central-upwind flux, componentwise, with
minmod-theta piecewise-linear boundary extrapolation and a single local
maximal speed per interface.

RelaxScheme: the Jin-Xin relaxation scheme in its relaxed (zero stiffness)
limit. The auxiliary variable is projected onto the flux at every
evaluation, the diagonal wave-speed matrix is refreshed once per time step
from per-family speed bounds, and each 2x2 block is upwinded in its
characteristic variables with second-order ENO interface values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoundaryKind, Field, Grid1D, Model, SchemeRhs, extend_with_ghosts
from .reconstruct import Bias, boundary_extrapolate, eno2_interface, muscl_slopes

SPEED_FLOOR = 1e-12  # keeps degenerate families (e.g. a static contact) usable


def kt_local_speed(u_minus, u_plus, model: Model):
    """Maximal propagation speed at an interface: the larger spectral radius
    of the two boundary-extrapolated states. Accepts single states (m,) or
    stacked rows (k, m); the value is shared by all components."""
    um = np.atleast_2d(np.asarray(u_minus, dtype=float))
    up = np.atleast_2d(np.asarray(u_plus, dtype=float))
    a = np.maximum(model.wave_speed(um), model.wave_speed(up))
    return float(a[0]) if np.ndim(u_minus) == 1 else a


def kt_numerical_flux(u_minus, u_plus, a, model: Model):
    """Central-upwind flux (f(u+) + f(u-) - a (u+ - u-)) / 2."""
    um = np.atleast_2d(np.asarray(u_minus, dtype=float))
    up = np.atleast_2d(np.asarray(u_plus, dtype=float))
    a_col = np.asarray(a, dtype=float).reshape(-1, 1)
    if np.any(a_col < 0):
        raise ValueError("interface speed must be nonnegative")
    flux = 0.5 * (model.flux(up) + model.flux(um) - a_col * (up - um))
    return flux[0] if np.ndim(u_minus) == 1 else flux


def kt_rhs(field: Field, grid: Grid1D, bc: BoundaryKind, model: Model,
           theta: float = 1.5) -> Field:
    """Conservation-form time derivative -(F_{j+1/2} - F_{j-1/2}) / dx with
    the central-upwind flux on minmod-theta boundary-extrapolated data."""
    ue = extend_with_ghosts(field, bc).data
    slopes = muscl_slopes(ue, theta)
    u_minus, u_plus = boundary_extrapolate(ue, slopes)
    a = np.maximum(model.wave_speed(u_minus), model.wave_speed(u_plus))
    flux = 0.5 * (model.flux(u_plus) + model.flux(u_minus)
                  - a[:, None] * (u_plus - u_minus))
    return Field(-(flux[1:] - flux[:-1]) / grid.dx)


def relax_update_speeds(model: Model, field: Field, safety: float = 1.0) -> np.ndarray:
    """Diagonal wave speeds, one per component family: safety times the
    model's per-family bounds, floored to avoid a degenerate characteristic
    transform."""
    bounds = np.asarray(model.family_speed_bounds(field), dtype=float)
    return np.maximum(safety * bounds, SPEED_FLOOR)


def relax_rhs(field: Field, grid: Grid1D, bc: BoundaryKind, model: Model,
              A: np.ndarray) -> Field:
    """Relaxed-limit time derivative of the relaxation system.

    With the auxiliary variable pinned to v = f(u), each component couples
    to its own speed A_i through the characteristic pair w+ = v + A_i u
    (moving right) and w- = v - A_i u (moving left). Each is reconstructed
    with ENO2 biased to its upwind side; the interface flux for u is their
    mean. Only u is evolved.
    """
    A = np.asarray(A, dtype=float)
    if np.any(A <= 0):
        raise ValueError(f"relaxation speeds must be positive, got {A}")
    ue = extend_with_ghosts(field, bc).data
    v = model.flux(ue)
    w_plus = v + A * ue
    w_minus = v - A * ue
    v_half = 0.5 * (eno2_interface(w_plus, Bias.FROM_LEFT)
                    + eno2_interface(w_minus, Bias.FROM_RIGHT))
    return Field(-(v_half[1:] - v_half[:-1]) / grid.dx)


@dataclass(frozen=True)
class SubcharReport:
    """Outcome of a subcharacteristic-condition check (warnings, not errors)."""

    ok: bool
    warning: bool
    detail: str = ""


def subchar_check(field: Field, A, model: Model) -> SubcharReport:
    """Monitor the subcharacteristic condition: the relaxation speeds must
    dominate the physical ones.

    Scalar laws: max |f'(u)| <= A_1 is exact. For systems the componentwise
    diagonal choice does not guarantee the matrix condition, so the check
    only compares against the largest entry and flags (without failing) when
    the smallest family bound is below the global spectral radius.
    """
    A = np.asarray(A, dtype=float)
    s_max = model.max_signal_speed(field)
    slack = 1.0 + 1e-12
    if model.m == 1:
        ok = s_max <= A[0] * slack
        detail = "" if ok else f"max |f'(u)| = {s_max:.6g} exceeds A = {A[0]:.6g}"
        return SubcharReport(ok=ok, warning=not ok, detail=detail)
    ok = s_max <= float(A.max()) * slack
    lagging = float(A.min()) * slack < s_max
    detail = ""
    if not ok:
        detail = f"spectral radius {s_max:.6g} exceeds every family speed (max {A.max():.6g})"
    elif lagging:
        detail = (f"family speed {A.min():.6g} below the spectral radius "
                  f"{s_max:.6g}; matrix condition not guaranteed")
    return SubcharReport(ok=ok, warning=(not ok) or lagging, detail=detail)


class KtScheme(SchemeRhs):
    """Semidiscrete Kurganov-Tadmor central-upwind scheme."""

    def __init__(self, model: Model, theta: float = 1.5):
        if not 1.0 <= theta <= 2.0:
            raise ValueError(f"theta must lie in [1, 2], got {theta}")
        self.model = model
        self.theta = theta

    def rhs(self, field, grid, bc):
        return kt_rhs(field, grid, bc, self.model, self.theta)


class RelaxScheme(SchemeRhs):
    """Semidiscrete relaxed Jin-Xin scheme with per-step diagonal speeds.

    begin_step refreshes the speeds (held fixed across both Heun stages, so
    the two-stage update shares one characteristic frame) and runs the
    subcharacteristic monitor.
    """

    def __init__(self, model: Model, safety: float = 1.0):
        if not safety >= 1.0:
            raise ValueError(f"safety factor must be at least 1, got {safety}")
        self.model = model
        self.safety = safety
        self.A: np.ndarray | None = None

    def update_speeds(self, field: Field) -> np.ndarray:
        self.A = relax_update_speeds(self.model, field, self.safety)
        return self.A

    def begin_step(self, field):
        A = self.update_speeds(field)
        report = subchar_check(field, A, self.model)
        return float(A.max()), int(report.warning)

    def rhs(self, field, grid, bc):
        A = self.A if self.A is not None else self.update_speeds(field)
        return relax_rhs(field, grid, bc, self.model, A)
