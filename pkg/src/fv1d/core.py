"""Grids, state fields, boundary handling, CFL time steps, norms, and the
contracts (Model, SchemeRhs) shared by every scheme and benchmark."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable

import numpy as np

GHOST_WIDTH = 2  # MUSCL boundary extrapolation and ENO2 both need two neighbours


class SolverError(Exception):
    """Base class for numerical failures raised by this package."""


class PositivityError(SolverError):
    """Density or pressure lost positivity."""


class NumericsError(SolverError):
    """Non-finite values appeared, or an iteration failed to converge."""


class BoundaryKind(Enum):
    PERIODIC = "periodic"
    OUTFLOW = "outflow"


class CflMode(Enum):
    CONVECTIVE = "convective"  # dt = C * dx / s_max
    PARABOLIC = "parabolic"    # dt = C * dx**2


@dataclass(frozen=True)
class Grid1D:
    """Uniform partition of [x_min, x_max] into n_cells cells.

    dx is computed once at construction and stored, so every consumer sees
    the identical floating-point value.
    """

    x_min: float
    x_max: float
    n_cells: int
    dx: float = dc_field(init=False)

    def __post_init__(self):
        if self.n_cells < 4:
            raise ValueError(f"n_cells must be at least 4, got {self.n_cells}")
        if not self.x_max > self.x_min:
            raise ValueError(f"empty interval [{self.x_min}, {self.x_max}]")
        object.__setattr__(self, "dx", (self.x_max - self.x_min) / self.n_cells)


class Field:
    """Cell averages of m conserved components: data has shape (n_cells, m)."""

    __slots__ = ("data",)

    def __init__(self, data):
        data = np.asarray(data, dtype=float)
        if data.ndim == 1:
            data = data[:, None]
        if data.ndim != 2:
            raise ValueError("field data must be an (n_cells, m) array")
        self.data = data

    @property
    def n_cells(self) -> int:
        return self.data.shape[0]

    @property
    def m(self) -> int:
        return self.data.shape[1]

    def copy(self) -> "Field":
        return Field(self.data.copy())

    def check_finite(self) -> "Field":
        """Raise NumericsError if any entry is NaN or infinite."""
        if not np.all(np.isfinite(self.data)):
            cell, comp = np.argwhere(~np.isfinite(self.data))[0]
            raise NumericsError(f"non-finite value in cell {cell}, component {comp}")
        return self


@dataclass(frozen=True)
class CflPolicy:
    """Time-step rule: convective dt = C*dx/s_max or parabolic dt = C*dx**2."""

    mode: CflMode
    C: float = 0.45

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError(f"CFL constant must be positive, got {self.C}")


class Model(ABC):
    """A conservation law u_t + f(u)_x = 0: flux, signal speeds, component count."""

    m: int = 1
    component_names: tuple[str, ...] = ("u",)

    @abstractmethod
    def flux(self, states: np.ndarray) -> np.ndarray:
        """Physical flux of each state row; states and result have shape (k, m)."""

    @abstractmethod
    def wave_speed(self, states: np.ndarray) -> np.ndarray:
        """Spectral radius of the flux Jacobian at each state row, shape (k,)."""

    @abstractmethod
    def family_speed_bounds(self, field: Field) -> np.ndarray:
        """One nonnegative speed bound per characteristic family, shape (m,)."""

    def max_signal_speed(self, field: Field) -> float:
        """Global bound on the spectral radius over all cells of the field."""
        return float(np.max(self.wave_speed(field.data)))


class SchemeRhs(ABC):
    """Semidiscrete right-hand side L(u) for method-of-lines integration."""

    model: Model

    @abstractmethod
    def rhs(self, field: Field, grid: Grid1D, bc: BoundaryKind) -> Field:
        """Time derivative of the cell averages, same shape as the input."""

    def begin_step(self, field: Field) -> tuple[float, int]:
        """Once-per-step refresh hook.

        Returns (max propagation speed for the CFL restriction, number of
        warning records produced). The default suits schemes whose wave
        speeds are the physical ones.
        """
        return self.model.max_signal_speed(field), 0


def cell_centers(grid: Grid1D) -> np.ndarray:
    """Positions x_min + (j + 1/2) dx for j = 0..n_cells-1."""
    return grid.x_min + (np.arange(grid.n_cells) + 0.5) * grid.dx


def extend_with_ghosts(field: Field, bc: BoundaryKind, width: int = GHOST_WIDTH) -> Field:
    """Pad a field with `width` ghost cells per side.

    Periodic ghosts copy wrap-around values; outflow ghosts copy the nearest
    interior value (zero-order extrapolation).
    """
    if width not in (1, 2):
        raise ValueError(f"ghost width must be 1 or 2, got {width}")
    u = field.data
    if field.n_cells < width:
        raise ValueError(f"field with {field.n_cells} cells cannot take width-{width} ghosts")
    if bc is BoundaryKind.PERIODIC:
        ext = np.concatenate([u[-width:], u, u[:width]])
    elif bc is BoundaryKind.OUTFLOW:
        ext = np.concatenate([np.repeat(u[:1], width, axis=0), u,
                              np.repeat(u[-1:], width, axis=0)])
    else:
        raise ValueError(f"unknown boundary kind: {bc!r}")
    return Field(ext)


def compute_dt(grid: Grid1D, s_max: float, policy: CflPolicy, t_remaining: float) -> float:
    """Next time step under the given CFL policy, clipped to land on t_end."""
    if not t_remaining > 0:
        raise ValueError(f"t_remaining must be positive, got {t_remaining}")
    if policy.mode is CflMode.CONVECTIVE:
        if not s_max > 0:
            raise ValueError("max signal speed is zero under a convective CFL "
                             "(no wave motion; check for a steady state)")
        candidate = policy.C * grid.dx / s_max
    else:
        candidate = policy.C * grid.dx ** 2
    return min(candidate, t_remaining)


def total_mass(field: Field, grid: Grid1D) -> np.ndarray:
    """dx * sum of the cell averages, one entry per component."""
    return grid.dx * field.data.sum(axis=0)


def l1_distance(a: Field, b: Field, grid: Grid1D) -> np.ndarray:
    """Discrete L1 distance dx * sum |a - b|, one entry per component."""
    if a.data.shape != b.data.shape:
        raise ValueError(f"field shapes differ: {a.data.shape} vs {b.data.shape}")
    return grid.dx * np.abs(a.data - b.data).sum(axis=0)


_GL3_NODES, _GL3_W = np.polynomial.legendre.leggauss(3)
_GL3_W = _GL3_W / 2.0  # weights on the unit cell


def cell_averages(grid: Grid1D, fn: Callable[[np.ndarray], np.ndarray]) -> Field:
    """Project pointwise data onto cell averages with 3-point Gauss-Legendre
    quadrature per cell (exceeds second order, so initialization does not
    pollute convergence rates).

    fn maps an array of positions (k,) to values (k,) or (k, m).
    """
    x = cell_centers(grid)[:, None] + 0.5 * grid.dx * _GL3_NODES[None, :]
    vals = np.asarray(fn(x.ravel()), dtype=float)
    if vals.ndim == 1:
        vals = vals[:, None]
    vals = vals.reshape(grid.n_cells, 3, vals.shape[1])
    return Field(np.einsum("q,cqm->cm", _GL3_W, vals))


def project_average(fine: Field, fine_grid: Grid1D, coarse_grid: Grid1D) -> Field:
    """Conservative averaging of piecewise-constant fine-grid data onto a
    coarser grid covering the same interval. Grid ratios need not divide."""
    if (fine_grid.x_min, fine_grid.x_max) != (coarse_grid.x_min, coarse_grid.x_max):
        raise ValueError("grids must cover the same interval")
    if fine_grid.n_cells == coarse_grid.n_cells:
        return fine.copy()
    if fine_grid.n_cells < coarse_grid.n_cells:
        raise ValueError("projection target must be the coarser grid")
    nf = fine_grid.n_cells
    edges_f = fine_grid.x_min + fine_grid.dx * np.arange(nf + 1)
    out = np.empty((coarse_grid.n_cells, fine.m))
    for c in range(coarse_grid.n_cells):
        a = coarse_grid.x_min + c * coarse_grid.dx
        b = a + coarse_grid.dx
        i0 = max(int(np.searchsorted(edges_f, a, side="right")) - 1, 0)
        i1 = min(int(np.searchsorted(edges_f, b, side="left")), nf)
        overlap = (np.minimum(edges_f[i0 + 1:i1 + 1], b)
                   - np.maximum(edges_f[i0:i1], a)).clip(min=0.0)
        out[c] = overlap @ fine.data[i0:i1] / coarse_grid.dx
    return Field(out)
