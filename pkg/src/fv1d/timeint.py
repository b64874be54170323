"""Heun (two-stage, second-order SSP Runge-Kutta) time stepping driven by a
CFL policy, with run-to-final-time orchestration and per-run diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .core import (
    BoundaryKind,
    CflPolicy,
    Field,
    Grid1D,
    SchemeRhs,
    SolverError,
    compute_dt,
    total_mass,
)


@dataclass
class RunDiagnostics:
    """Per-run bookkeeping collected by integrate."""

    steps: int = 0
    dt_min: float = np.inf
    dt_max: float = 0.0
    t_final: float = 0.0
    mass_drift: np.ndarray = dc_field(default_factory=lambda: np.zeros(0))
    subchar_warnings: int = 0
    positivity_failures: int = 0


def heun_step(rhs: SchemeRhs, field: Field, grid: Grid1D, bc: BoundaryKind,
              dt: float) -> Field:
    """u* = u + dt L(u); u_next = (u + u* + dt L(u*)) / 2."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    predictor = Field(field.data + dt * rhs.rhs(field, grid, bc).data)
    corrected = Field(0.5 * (field.data + predictor.data
                             + dt * rhs.rhs(predictor, grid, bc).data))
    return corrected.check_finite()


def integrate(rhs: SchemeRhs, field: Field, grid: Grid1D, bc: BoundaryKind,
              policy: CflPolicy, t_end: float) -> tuple[Field, RunDiagnostics]:
    """March the semidiscrete system to exactly t_end.

    Each step refreshes the scheme (relaxation speeds and warnings), derives
    dt from the CFL policy, clips the final step to land on t_end, and takes
    one Heun step. Simulation time accumulates with compensated (Kahan)
    summation so runs with ~1e6 steps still land on t_end to roundoff.
    Numerical failures are re-raised with the step index and time attached.
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    diag = RunDiagnostics()
    mass_start = total_mass(field, grid)
    t = 0.0
    residual = 0.0  # Kahan compensation
    while t_end - t > 1e-14 * t_end:
        speed, warnings = rhs.begin_step(field)
        diag.subchar_warnings += warnings
        dt = compute_dt(grid, speed, policy, t_end - t)
        try:
            field = heun_step(rhs, field, grid, bc, dt)
        except SolverError as err:
            raise type(err)(f"step {diag.steps} at t = {t:.12g}: {err}") from err
        y = dt - residual
        t_next = t + y
        residual = (t_next - t) - y
        t = t_next
        diag.steps += 1
        diag.dt_min = min(diag.dt_min, dt)
        diag.dt_max = max(diag.dt_max, dt)
    diag.t_final = t
    diag.mass_drift = np.abs(total_mass(field, grid) - mass_start)
    return field, diag
