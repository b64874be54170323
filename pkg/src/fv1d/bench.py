"""Benchmark drivers: advection convergence table, non-convex Riemann
problem against a fine-grid monotone reference, and the Lax shock tube
against the exact Riemann solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .core import (
    BoundaryKind,
    CflMode,
    CflPolicy,
    Field,
    Grid1D,
    cell_averages,
    cell_centers,
    l1_distance,
    project_average,
)
from .models import (
    GAMMA,
    AdvectionModel,
    advection_exact,
    lax_riemann,
    nonconvex_riemann,
    riemann_profile,
    rusanov_reference,
    LAX_LEFT,
    LAX_RIGHT,
)
from .schemes import KtScheme, RelaxScheme
from .timeint import RunDiagnostics, integrate

SCHEME_KINDS = ("kt", "relax")
REFERENCE_CELLS = 8192  # fine grid for the monotone non-convex reference


def make_scheme(kind: str, model, theta: float = 1.5, safety: float = 1.0):
    if kind == "kt":
        return KtScheme(model, theta=theta)
    if kind == "relax":
        return RelaxScheme(model, safety=safety)
    raise ValueError(f"unknown scheme kind {kind!r}; expected one of {SCHEME_KINDS}")


def observed_order(e_coarse: float, e_fine: float) -> float:
    """log2(e_coarse / e_fine): the convergence rate for a refinement ratio of 2."""
    if not (e_coarse > 0 and e_fine > 0):
        raise ValueError(f"errors must be positive, got {e_coarse}, {e_fine}")
    return math.log2(e_coarse / e_fine)


@dataclass
class ConvergenceRow:
    """One resolution of an error table, with the parameters that produced it."""

    n: int
    scheme: str
    cfl_mode: str
    C: float
    theta: float
    safety: float
    l1_error: float
    observed_order: float | None = None
    diagnostics: RunDiagnostics | None = None  # not emitted to CSV


@dataclass
class SolutionDump:
    """Plot-ready solution data: positions, named columns, and the metadata
    needed to reproduce the run."""

    x: np.ndarray
    columns: dict[str, np.ndarray]
    metadata: dict[str, object] = dc_field(default_factory=dict)


def run_advection_table(kind: str, cfl_mode: CflMode, n_list,
                        C: float = 0.45, theta: float = 1.5,
                        safety: float = 1.0) -> list[ConvergenceRow]:
    """L1 errors of sin(2 pi x) advected once around the unit period.

    Rows come back sorted by n with observed orders between consecutive
    resolutions (meaningful for refinement ratio 2).
    """
    model = AdvectionModel()
    policy = CflPolicy(cfl_mode, C)
    rows: list[ConvergenceRow] = []
    prev_error = None
    for n in sorted(n_list):
        grid = Grid1D(0.0, 1.0, n)
        start = cell_averages(grid, lambda x: advection_exact(x, 0.0))
        scheme = make_scheme(kind, model, theta, safety)
        final, diag = integrate(scheme, start, grid, BoundaryKind.PERIODIC, policy, 1.0)
        exact = cell_averages(grid, lambda x: advection_exact(x, 1.0))
        error = float(l1_distance(final, exact, grid)[0])
        order = observed_order(prev_error, error) if prev_error is not None else None
        rows.append(ConvergenceRow(n=n, scheme=kind, cfl_mode=cfl_mode.value, C=C,
                                   theta=theta, safety=safety, l1_error=error,
                                   observed_order=order, diagnostics=diag))
        prev_error = error
    return rows


def nonconvex_reference(n_fine: int = REFERENCE_CELLS) -> Field:
    """Monotone fine-grid solution of the non-convex Riemann benchmark."""
    model, setup = nonconvex_riemann()
    return rusanov_reference(model, setup.initial, n_fine, setup.t_end,
                             setup.x_min, setup.x_max, setup.bc)


def run_nonconvex(kind: str, n: int, C: float = 0.45, theta: float = 1.5,
                  safety: float = 1.0,
                  reference: Field | None = None) -> tuple[SolutionDump, float]:
    """Integrate the non-convex Riemann problem and measure the L1 distance
    to the fine-grid monotone reference averaged onto the run grid.

    Pass a precomputed `reference` (from nonconvex_reference) to amortize
    the fine-grid solve over several runs.
    """
    if n < 50:
        raise ValueError(f"n must be at least 50, got {n}")
    model, setup = nonconvex_riemann()
    grid = Grid1D(setup.x_min, setup.x_max, n)
    start = cell_averages(grid, setup.initial)
    scheme = make_scheme(kind, model, theta, safety)
    policy = CflPolicy(CflMode.CONVECTIVE, C)
    final, diag = integrate(scheme, start, grid, setup.bc, policy, setup.t_end)

    if reference is None:
        reference = nonconvex_reference()
    fine_grid = Grid1D(setup.x_min, setup.x_max, reference.n_cells)
    ref_on_grid = project_average(reference, fine_grid, grid)
    distance = float(l1_distance(final, ref_on_grid, grid)[0])

    metadata = {
        "benchmark": "nonconvex", "scheme": kind, "n": n,
        "cfl": CflMode.CONVECTIVE.value, "C": C, "theta": theta, "safety": safety,
        "t_end": setup.t_end, "l1_vs_reference": distance,
        "reference_cells": reference.n_cells, "steps": diag.steps,
    }
    dump = SolutionDump(x=cell_centers(grid),
                        columns={"u": final.data[:, 0], "u_ref": ref_on_grid.data[:, 0]},
                        metadata=metadata)
    return dump, distance


_GL5_NODES, _GL5_W = np.polynomial.legendre.leggauss(5)
_GL5_W = _GL5_W / 2.0


def lax_exact_averages(grid: Grid1D, t: float) -> Field:
    """Exact Lax solution as conserved cell averages (5-point quadrature per
    cell), the like-for-like reference for a finite-volume result."""
    x = cell_centers(grid)[:, None] + 0.5 * grid.dx * _GL5_NODES[None, :]
    prims = riemann_profile(LAX_LEFT, LAX_RIGHT, x.ravel() / t)
    rho, u, p = prims[:, 0], prims[:, 1], prims[:, 2]
    cons = np.column_stack([rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u])
    cons = cons.reshape(grid.n_cells, _GL5_NODES.size, 3)
    return Field(np.einsum("q,cqm->cm", _GL5_W, cons))


def run_lax(kind: str, n: int, C: float = 0.45, theta: float = 1.5,
            safety: float = 1.0) -> tuple[SolutionDump, float]:
    """Integrate the Lax shock tube and measure the density L1 distance to
    the exact Riemann solution averaged onto the run grid."""
    if n < 50:
        raise ValueError(f"n must be at least 50, got {n}")
    model, setup = lax_riemann()
    grid = Grid1D(setup.x_min, setup.x_max, n)
    start = cell_averages(grid, setup.initial)
    scheme = make_scheme(kind, model, theta, safety)
    policy = CflPolicy(CflMode.CONVECTIVE, C)
    final, diag = integrate(scheme, start, grid, setup.bc, policy, setup.t_end)

    exact = lax_exact_averages(grid, setup.t_end)
    density_error = float(l1_distance(final, exact, grid)[0])
    peak_cell = int(np.argmax(final.data[:, 0]))
    x = cell_centers(grid)

    metadata = {
        "benchmark": "lax", "scheme": kind, "n": n,
        "cfl": CflMode.CONVECTIVE.value, "C": C, "theta": theta, "safety": safety,
        "t_end": setup.t_end, "l1_density_vs_exact": density_error,
        "peak_density": float(final.data[peak_cell, 0]),
        "peak_position": float(x[peak_cell]),
        "steps": diag.steps, "subchar_warnings": diag.subchar_warnings,
    }
    dump = SolutionDump(x=x,
                        columns={"rho": final.data[:, 0],
                                 "momentum": final.data[:, 1],
                                 "energy": final.data[:, 2],
                                 "rho_exact": exact.data[:, 0]},
                        metadata=metadata)
    return dump, density_error


def steepest_drop_interfaces(values, count: int = 2, min_separation: int = 5):
    """Interface indices of the most negative jumps, pairwise separated by at
    least min_separation cells. Used to locate shocks in a decreasing profile."""
    diffs = np.diff(np.asarray(values, dtype=float))
    picked: list[int] = []
    for idx in np.argsort(diffs):
        if all(abs(int(idx) - p) >= min_separation for p in picked):
            picked.append(int(idx))
        if len(picked) == count:
            break
    return sorted(picked)
