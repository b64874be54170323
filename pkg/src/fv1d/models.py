"""Concrete conservation laws (linear advection, a non-convex scalar law,
Euler gas dynamics) and the independent reference solutions used to validate
the schemes: the exact advection translate, an exact Euler Riemann solver,
and a fine-grid monotone (Rusanov) reference."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BoundaryKind,
    Field,
    Grid1D,
    Model,
    NumericsError,
    PositivityError,
    cell_averages,
    extend_with_ghosts,
)

GAMMA = 1.4  # ratio of specific heats for every gas-dynamics benchmark here


# ---------------------------------------------------------------------------
# scalar models
# ---------------------------------------------------------------------------

def advection_exact(x, t: float):
    """Exact solution of u_t + u_x = 0 with data sin(2 pi x): the translate."""
    return np.sin(2.0 * np.pi * (np.asarray(x, dtype=float) - t))


class AdvectionModel(Model):
    """u_t + u_x = 0 with unit speed."""

    m = 1
    component_names = ("u",)
    speed = 1.0

    def flux(self, states):
        return self.speed * np.asarray(states, dtype=float)

    def wave_speed(self, states):
        states = np.asarray(states, dtype=float)
        return np.full(states.shape[0], abs(self.speed))

    def family_speed_bounds(self, field):
        return np.array([abs(self.speed)])


def nonconvex_flux(u):
    """f(u) = (u^2 - 1)(u^2 - 4) / 4, a double-well flux with two inflections."""
    u = np.asarray(u, dtype=float)
    u2 = u * u
    out = 0.25 * (u2 - 1.0) * (u2 - 4.0)
    return float(out) if np.ndim(out) == 0 else out


def nonconvex_dflux(u):
    """f'(u) = u^3 - 2.5 u."""
    u = np.asarray(u, dtype=float)
    out = u * u * u - 2.5 * u
    return float(out) if np.ndim(out) == 0 else out


class NonConvexModel(Model):
    """Scalar law with the double-well flux (u^2-1)(u^2-4)/4."""

    m = 1
    component_names = ("u",)

    def flux(self, states):
        return nonconvex_flux(np.asarray(states, dtype=float))

    def wave_speed(self, states):
        states = np.asarray(states, dtype=float)
        return np.abs(nonconvex_dflux(states[:, 0]))

    def family_speed_bounds(self, field):
        return np.array([float(np.max(np.abs(nonconvex_dflux(field.data[:, 0]))))])


# ---------------------------------------------------------------------------
# Euler gas dynamics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerPrimitive:
    """Primitive gas state (density, velocity, pressure)."""

    rho: float
    u: float
    p: float

    def __post_init__(self):
        if not (self.rho > 0 and self.p > 0):
            raise PositivityError(f"nonpositive primitive state {self!r}")

    def sound_speed(self, gamma: float = GAMMA) -> float:
        return math.sqrt(gamma * self.p / self.rho)


def euler_prim_to_cons(prim: EulerPrimitive, gamma: float = GAMMA) -> np.ndarray:
    """Conserved triple (rho, rho*u, E) with E = p/(gamma-1) + rho*u^2/2."""
    m = prim.rho * prim.u
    energy = prim.p / (gamma - 1.0) + 0.5 * prim.rho * prim.u * prim.u
    return np.array([prim.rho, m, energy])


def euler_cons_to_prim(cons, gamma: float = GAMMA) -> EulerPrimitive:
    """Inverse of euler_prim_to_cons; raises PositivityError on a bad state."""
    rho, m, energy = (float(v) for v in np.asarray(cons, dtype=float))
    if not rho > 0:
        raise PositivityError(f"nonpositive density {rho} in state {cons}")
    u = m / rho
    p = (gamma - 1.0) * (energy - 0.5 * m * u)
    if not p > 0:
        raise PositivityError(f"nonpositive pressure {p} in state {cons}")
    return EulerPrimitive(rho, u, p)


def _primitive_arrays(states: np.ndarray, gamma: float):
    """(rho, u, p) columns of an array of conserved states, with checks."""
    rho = states[:, 0]
    if not np.all(rho > 0):
        cell = int(np.argmin(rho))
        raise PositivityError(f"nonpositive density {rho[cell]} at row {cell}")
    u = states[:, 1] / rho
    p = (gamma - 1.0) * (states[:, 2] - 0.5 * states[:, 1] * u)
    if not np.all(p > 0):
        cell = int(np.argmin(p))
        raise PositivityError(f"nonpositive pressure {p[cell]} at row {cell}")
    return rho, u, p


def euler_flux(states, gamma: float = GAMMA):
    """Flux (rho*u, rho*u^2 + p, u*(E + p)) of conserved rows (k, 3)."""
    states = np.atleast_2d(np.asarray(states, dtype=float))
    rho, u, p = _primitive_arrays(states, gamma)
    out = np.empty_like(states)
    out[:, 0] = states[:, 1]
    out[:, 1] = states[:, 1] * u + p
    out[:, 2] = u * (states[:, 2] + p)
    return out


class EulerModel(Model):
    """Compressible Euler equations for a perfect gas, conserved (rho, m, E)."""

    m = 3
    component_names = ("rho", "momentum", "energy")

    def __init__(self, gamma: float = GAMMA):
        self.gamma = gamma

    def flux(self, states):
        return euler_flux(states, self.gamma)

    def wave_speed(self, states):
        states = np.atleast_2d(np.asarray(states, dtype=float))
        rho, u, p = _primitive_arrays(states, self.gamma)
        return np.abs(u) + np.sqrt(self.gamma * p / rho)

    def family_speed_bounds(self, field):
        return euler_family_speed_bounds(field, self.gamma)


def euler_family_speed_bounds(field: Field, gamma: float = GAMMA) -> np.ndarray:
    """(max |u - c|, max |u|, max |u + c|) over all cells of the field."""
    rho, u, p = _primitive_arrays(field.data, gamma)
    c = np.sqrt(gamma * p / rho)
    return np.array([np.max(np.abs(u - c)), np.max(np.abs(u)), np.max(np.abs(u + c))])


# ---------------------------------------------------------------------------
# exact Riemann solver for the Euler equations
# ---------------------------------------------------------------------------

def _pressure_fn(p: float, rho_k: float, p_k: float, a_k: float, gamma: float):
    """Velocity change across one wave as a function of the star pressure,
    and its derivative: shock branch from the jump conditions, rarefaction
    branch from the isentropic relations."""
    if p > p_k:
        A = 2.0 / ((gamma + 1.0) * rho_k)
        B = (gamma - 1.0) / (gamma + 1.0) * p_k
        root = math.sqrt(A / (p + B))
        return (p - p_k) * root, root * (1.0 - 0.5 * (p - p_k) / (p + B))
    z = (gamma - 1.0) / (2.0 * gamma)
    f = 2.0 * a_k / (gamma - 1.0) * ((p / p_k) ** z - 1.0)
    df = (p / p_k) ** (-(gamma + 1.0) / (2.0 * gamma)) / (rho_k * a_k)
    return f, df


def riemann_star(left: EulerPrimitive, right: EulerPrimitive,
                 gamma: float = GAMMA) -> tuple[float, float]:
    """Star-region pressure and velocity by Newton iteration on the pressure.

    Initial guess: two-rarefaction approximation, falling back to the
    pressure average. Converges to 1e-12 relative or raises NumericsError
    after 100 iterations. Vacuum-forming data raises NumericsError.
    """
    a_l, a_r = left.sound_speed(gamma), right.sound_speed(gamma)
    du = right.u - left.u
    if 2.0 * (a_l + a_r) / (gamma - 1.0) <= du:
        raise NumericsError("vacuum forms between the given Riemann states")

    z = (gamma - 1.0) / (2.0 * gamma)
    num = a_l + a_r - 0.5 * (gamma - 1.0) * du
    den = a_l / left.p ** z + a_r / right.p ** z
    p = (num / den) ** (1.0 / z) if num > 0 else 0.0
    if not (np.isfinite(p) and p > 0):
        p = 0.5 * (left.p + right.p)

    for _ in range(100):
        f_l, df_l = _pressure_fn(p, left.rho, left.p, a_l, gamma)
        f_r, df_r = _pressure_fn(p, right.rho, right.p, a_r, gamma)
        step = (f_l + f_r + du) / (df_l + df_r)
        p_new = p - step
        if p_new <= 0:
            p_new = 0.5 * p
        done = abs(p_new - p) <= 1e-12 * p_new
        p = p_new
        if done:
            f_l, _ = _pressure_fn(p, left.rho, left.p, a_l, gamma)
            f_r, _ = _pressure_fn(p, right.rho, right.p, a_r, gamma)
            return p, 0.5 * (left.u + right.u) + 0.5 * (f_r - f_l)
    raise NumericsError("star-pressure Newton iteration did not converge in 100 steps")


def _star_density(p_star: float, side: EulerPrimitive, gamma: float) -> float:
    g = (gamma - 1.0) / (gamma + 1.0)
    ratio = p_star / side.p
    if p_star > side.p:  # shock: jump-condition density
        return side.rho * (ratio + g) / (g * ratio + 1.0)
    return side.rho * ratio ** (1.0 / gamma)  # rarefaction: isentropic density


def riemann_wave_span(left: EulerPrimitive, right: EulerPrimitive,
                      gamma: float = GAMMA) -> tuple[float, float]:
    """Outermost wave speeds (left edge, right edge) of the solution fan."""
    p_star, u_star = riemann_star(left, right, gamma)
    a_l, a_r = left.sound_speed(gamma), right.sound_speed(gamma)
    gp = (gamma + 1.0) / (2.0 * gamma)
    gm = (gamma - 1.0) / (2.0 * gamma)
    if p_star > left.p:
        s_left = left.u - a_l * math.sqrt(gp * p_star / left.p + gm)
    else:
        s_left = left.u - a_l
    if p_star > right.p:
        s_right = right.u + a_r * math.sqrt(gp * p_star / right.p + gm)
    else:
        s_right = right.u + a_r
    return s_left, s_right


def riemann_profile(left: EulerPrimitive, right: EulerPrimitive, xi,
                    gamma: float = GAMMA) -> np.ndarray:
    """Self-similar solution sampled at xi = x/t: primitive rows (k, 3).

    Continuous across rarefactions, jumps at shocks and at the contact.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    p_star, u_star = riemann_star(left, right, gamma)
    rho = np.empty_like(xi)
    u = np.empty_like(xi)
    p = np.empty_like(xi)

    gp = (gamma + 1.0) / (2.0 * gamma)
    gm = (gamma - 1.0) / (2.0 * gamma)

    on_left = xi < u_star
    for side, mask in ((left, on_left), (right, ~on_left)):
        sgn = 1.0 if side is left else -1.0  # +1: wave left of contact, -1: right
        a_k = side.sound_speed(gamma)
        rho_star = _star_density(p_star, side, gamma)
        if p_star > side.p:  # shock on this side
            s = side.u - sgn * a_k * math.sqrt(gp * p_star / side.p + gm)
            outside = mask & (sgn * xi < sgn * s)
            inside = mask & ~outside
            rho[outside], u[outside], p[outside] = side.rho, side.u, side.p
            rho[inside], u[inside], p[inside] = rho_star, u_star, p_star
        else:  # rarefaction on this side
            a_star = a_k * (p_star / side.p) ** gm
            head = side.u - sgn * a_k
            tail = u_star - sgn * a_star
            outside = mask & (sgn * xi < sgn * head)
            fan = mask & (sgn * xi >= sgn * head) & (sgn * xi < sgn * tail)
            star = mask & ~outside & ~fan
            rho[outside], u[outside], p[outside] = side.rho, side.u, side.p
            u[fan] = 2.0 / (gamma + 1.0) * (sgn * a_k + 0.5 * (gamma - 1.0) * side.u + xi[fan])
            a_fan = sgn * (u[fan] - xi[fan])  # local sound speed inside the fan
            rho[fan] = side.rho * (a_fan / a_k) ** (2.0 / (gamma - 1.0))
            p[fan] = side.p * (a_fan / a_k) ** (2.0 * gamma / (gamma - 1.0))
            rho[star], u[star], p[star] = rho_star, u_star, p_star
    return np.column_stack([rho, u, p])


def exact_riemann_euler(left: EulerPrimitive, right: EulerPrimitive, xi: float,
                        gamma: float = GAMMA) -> EulerPrimitive:
    """Exact Riemann solution at a single similarity coordinate xi = x/t."""
    rho, u, p = riemann_profile(left, right, float(xi), gamma)[0]
    return EulerPrimitive(rho, u, p)


# ---------------------------------------------------------------------------
# Riemann benchmark setups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RiemannSetup:
    """Single-jump initial data on an interval, integrated to t_end."""

    left: np.ndarray      # conserved state, shape (m,)
    right: np.ndarray
    x_interface: float
    x_min: float
    x_max: float
    t_end: float
    bc: BoundaryKind = BoundaryKind.OUTFLOW

    def __post_init__(self):
        if not self.x_min < self.x_interface < self.x_max:
            raise ValueError("interface must lie strictly inside the domain")
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")

    def initial(self, x) -> np.ndarray:
        """Pointwise step data: rows of `left` where x < interface, else `right`."""
        x = np.asarray(x, dtype=float)
        return np.where((x < self.x_interface)[:, None], self.left, self.right)


def check_waves_contained(setup: RiemannSetup, span: tuple[float, float]) -> None:
    """Verify the wave fan stays strictly inside the domain until t_end."""
    lo = setup.x_interface + span[0] * setup.t_end
    hi = setup.x_interface + span[1] * setup.t_end
    if not (setup.x_min < lo and hi < setup.x_max):
        raise ValueError(
            f"waves reach [{lo:.6g}, {hi:.6g}] by t = {setup.t_end}, outside "
            f"({setup.x_min}, {setup.x_max})")


def scalar_wave_span(model: Model, u_lo: float, u_hi: float,
                     samples: int = 1025) -> tuple[float, float]:
    """Signed range of characteristic speeds over a scalar state interval.

    Shock speeds are chord slopes of the flux, hence mean values of f', so
    the sampled range of f' bounds every wave in the fan.
    """
    if u_lo > u_hi:
        u_lo, u_hi = u_hi, u_lo
    if u_hi == u_lo:
        return 0.0, 0.0
    u = np.linspace(u_lo, u_hi, samples)
    f = model.flux(u[:, None])[:, 0]
    slopes = np.diff(f) / np.diff(u)
    return float(np.min(slopes)), float(np.max(slopes))


def nonconvex_riemann() -> tuple[NonConvexModel, RiemannSetup]:
    """u = 2 | -2 on [-1, 1] at t = 0.25: two shocks joined by a rarefaction."""
    model = NonConvexModel()
    setup = RiemannSetup(left=np.array([2.0]), right=np.array([-2.0]),
                         x_interface=0.0, x_min=-1.0, x_max=1.0, t_end=0.25)
    check_waves_contained(setup, scalar_wave_span(model, -2.0, 2.0))
    return model, setup


LAX_LEFT = EulerPrimitive(rho=0.445, u=0.698, p=3.528)
LAX_RIGHT = EulerPrimitive(rho=0.5, u=0.0, p=0.571)


def lax_riemann() -> tuple[EulerModel, RiemannSetup]:
    """The Lax shock tube on [-0.5, 0.5] at t = 0.16: left rarefaction,
    contact, and a strong right-moving shock with a density peak."""
    model = EulerModel()
    setup = RiemannSetup(left=euler_prim_to_cons(LAX_LEFT),
                         right=euler_prim_to_cons(LAX_RIGHT),
                         x_interface=0.0, x_min=-0.5, x_max=0.5, t_end=0.16)
    check_waves_contained(setup, riemann_wave_span(LAX_LEFT, LAX_RIGHT))
    return model, setup


# ---------------------------------------------------------------------------
# fine-grid monotone reference
# ---------------------------------------------------------------------------

def rusanov_reference(model: Model, initial, n_fine: int, t_end: float,
                      x_min: float, x_max: float,
                      bc: BoundaryKind = BoundaryKind.OUTFLOW) -> Field:
    """First-order local Lax-Friedrichs (Rusanov) solution on a fine grid.

    Monotone, hence convergent to the entropy solution; serves as the
    reference for benchmarks without a closed-form answer. Self-steps with
    forward Euler at CFL 0.4. Project the result onto the comparison grid
    with core.project_average.
    """
    if n_fine < 4096:
        raise ValueError(f"reference grid needs at least 4096 cells, got {n_fine}")
    grid = Grid1D(x_min, x_max, n_fine)
    u = cell_averages(grid, initial).data
    t = 0.0
    while t < t_end * (1.0 - 1e-14):
        ue = extend_with_ghosts(Field(u), bc, width=1).data
        speeds = model.wave_speed(ue)
        s_max = float(speeds.max())
        dt = t_end - t if s_max <= 0 else min(0.4 * grid.dx / s_max, t_end - t)
        f = model.flux(ue)
        a = np.maximum(speeds[:-1], speeds[1:])
        flux_if = 0.5 * (f[:-1] + f[1:]) - 0.5 * a[:, None] * (ue[1:] - ue[:-1])
        u = u - (dt / grid.dx) * (flux_if[1:] - flux_if[:-1])
        t += dt
    return Field(u)
