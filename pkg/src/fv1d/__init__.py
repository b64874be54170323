"""1D finite-volume schemes for hyperbolic conservation laws.

Two semidiscrete, Riemann-solver-free schemes — the Kurganov-Tadmor
central-upwind scheme and the relaxed Jin-Xin scheme — with Heun time
stepping under convective or parabolic CFL rules, plus benchmark drivers
(advection convergence table, non-convex Riemann problem, Lax shock tube)
validated against built-in reference solutions.
"""

from .core import (
    BoundaryKind,
    CflMode,
    CflPolicy,
    Field,
    Grid1D,
    Model,
    NumericsError,
    PositivityError,
    SchemeRhs,
    SolverError,
    cell_averages,
    cell_centers,
    compute_dt,
    extend_with_ghosts,
    l1_distance,
    project_average,
    total_mass,
)
from .models import (
    AdvectionModel,
    EulerModel,
    EulerPrimitive,
    NonConvexModel,
    RiemannSetup,
    advection_exact,
    euler_cons_to_prim,
    euler_family_speed_bounds,
    euler_flux,
    euler_prim_to_cons,
    exact_riemann_euler,
    lax_riemann,
    nonconvex_dflux,
    nonconvex_flux,
    nonconvex_riemann,
    riemann_profile,
    riemann_star,
    rusanov_reference,
)
from .reconstruct import Bias, boundary_extrapolate, eno2_interface, minmod, muscl_slopes
from .schemes import (
    KtScheme,
    RelaxScheme,
    SubcharReport,
    kt_local_speed,
    kt_numerical_flux,
    kt_rhs,
    relax_rhs,
    relax_update_speeds,
    subchar_check,
)
from .timeint import RunDiagnostics, heun_step, integrate
from .bench import (
    ConvergenceRow,
    SolutionDump,
    make_scheme,
    nonconvex_reference,
    observed_order,
    run_advection_table,
    run_lax,
    run_nonconvex,
    steepest_drop_interfaces,
)

__all__ = [name for name in dir() if not name.startswith("_")]
