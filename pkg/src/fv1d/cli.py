"""Command-line entry point.

Subcommands `advect`, `nonconvex`, and `lax` run the benchmarks and emit
deterministic CSV files: convergence tables for `advect`, solution dumps for
the two Riemann problems. Every output embeds its full configuration as
`#`-prefixed metadata lines, so no result is separable from its parameters.

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .bench import (
    ConvergenceRow,
    SolutionDump,
    nonconvex_reference,
    run_advection_table,
    run_lax,
    run_nonconvex,
)
from .core import CflMode, SolverError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

CONVERGENCE_HEADER = "n,scheme,cfl_mode,C,theta,safety,l1_error,observed_order"

_ADVECT_N_CONVECTIVE = (20, 40, 80, 160, 320, 640, 1280)
_ADVECT_N_PARABOLIC = (20, 40, 80, 160, 320, 640)  # runtime discipline: n > 640 omitted


class UsageError(Exception):
    """Bad flags or out-of-range values; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved benchmark configuration."""

    benchmark: str                # advect | nonconvex | lax
    scheme: str                   # kt | relax | both
    cfl_mode: str                 # convective | parabolic
    C: float
    theta: float
    safety: float
    n_list: tuple[int, ...]
    out: str

    @property
    def scheme_kinds(self) -> tuple[str, ...]:
        return ("kt", "relax") if self.scheme == "both" else (self.scheme,)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we reserve 2 for numerics
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fv1d", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="benchmark", metavar="BENCHMARK")
    specs = {
        "advect": "advection of sin(2 pi x) over one period: L1 convergence table",
        "nonconvex": "non-convex-flux Riemann problem vs. a fine monotone reference",
        "lax": "Lax shock tube vs. the exact Riemann solution",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scheme", default="both", choices=("kt", "relax", "both"),
                       help="which scheme to run (default: both)")
        p.add_argument("--cfl", default="convective", choices=("convective", "parabolic"),
                       help="time-step rule (default: convective)")
        p.add_argument("--C", type=float, default=0.45, metavar="C",
                       help="CFL constant (default: 0.45)")
        p.add_argument("--theta", type=float, default=1.5,
                       help="limiter parameter in [1, 2] for the kt scheme (default: 1.5)")
        p.add_argument("--safety", type=float, default=1.0,
                       help="factor >= 1 on the relaxation speeds (default: 1)")
        p.add_argument("--n", default=None, metavar="N[,N...]",
                       help="cell counts; advect takes a comma list, the Riemann "
                            "benchmarks a single value (defaults: advect "
                            "20,...,1280 convective / 640 parabolic; others 200)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="output CSV path (default: <benchmark>.csv)")
    return parser


def _parse_n_list(token: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in token.split(","))
    except ValueError:
        raise UsageError(f"--n expects integers, got {token!r}") from None
    return values


def parse_args(argv) -> RunConfig:
    """Resolve argv into a validated RunConfig (raises UsageError)."""
    args = _build_parser().parse_args(argv)
    if args.benchmark is None:
        raise UsageError("a benchmark subcommand is required (advect, nonconvex, lax)")

    if not 1.0 <= args.theta <= 2.0:
        raise UsageError(f"--theta {args.theta:g} outside [1, 2]")
    if not args.C > 0:
        raise UsageError(f"--C {args.C:g} must be positive")
    if not args.safety >= 1.0:
        raise UsageError(f"--safety {args.safety:g} must be at least 1")

    if args.n is not None:
        n_list = _parse_n_list(args.n)
    elif args.benchmark == "advect":
        n_list = (_ADVECT_N_CONVECTIVE if args.cfl == "convective"
                  else _ADVECT_N_PARABOLIC)
    else:
        n_list = (200,)

    if args.benchmark == "advect":
        if any(n < 4 for n in n_list):
            raise UsageError(f"--n entries must be at least 4, got {min(n_list)}")
    else:
        if len(n_list) != 1:
            raise UsageError(f"{args.benchmark} takes a single --n value")
        if n_list[0] < 50:
            raise UsageError(f"--n {n_list[0]} must be at least 50 for {args.benchmark}")

    out = args.out if args.out is not None else f"{args.benchmark}.csv"
    return RunConfig(benchmark=args.benchmark, scheme=args.scheme, cfl_mode=args.cfl,
                     C=args.C, theta=args.theta, safety=args.safety,
                     n_list=n_list, out=out)


# ---------------------------------------------------------------------------
# metadata round trip
# ---------------------------------------------------------------------------

def metadata_lines(config: RunConfig) -> list[str]:
    """`# key = value` lines that fully determine the configuration."""
    items = [
        ("benchmark", config.benchmark),
        ("scheme", config.scheme),
        ("cfl", config.cfl_mode),
        ("C", repr(config.C)),
        ("theta", repr(config.theta)),
        ("safety", repr(config.safety)),
        ("n", ",".join(str(n) for n in config.n_list)),
        ("out", config.out),
    ]
    return [f"# {key} = {value}" for key, value in items]


def parse_metadata(lines) -> RunConfig:
    """Rebuild a RunConfig from metadata lines (inverse of metadata_lines)."""
    pairs = {}
    for line in lines:
        line = line.strip()
        if not line.startswith("#"):
            continue
        key, _, value = line.lstrip("# ").partition(" = ")
        pairs[key] = value
    try:
        return RunConfig(benchmark=pairs["benchmark"], scheme=pairs["scheme"],
                         cfl_mode=pairs["cfl"], C=float(pairs["C"]),
                         theta=float(pairs["theta"]), safety=float(pairs["safety"]),
                         n_list=_parse_n_list(pairs["n"]), out=pairs["out"])
    except KeyError as missing:
        raise ValueError(f"metadata is missing key {missing}") from None


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_convergence_csv(rows: list[ConvergenceRow], path,
                         config: RunConfig | None = None) -> None:
    """Write a convergence table; numbers carry 12 significant digits and the
    file ends with a single LF per line. Identical inputs produce identical
    bytes."""
    lines = metadata_lines(config) if config is not None else []
    lines.append(CONVERGENCE_HEADER)
    for row in rows:
        order = "" if row.observed_order is None else _fmt(row.observed_order)
        lines.append(",".join([str(row.n), row.scheme, row.cfl_mode, _fmt(row.C),
                               _fmt(row.theta), _fmt(row.safety),
                               _fmt(row.l1_error), order]))
    _write_lines(path, lines)


def emit_solution_csv(dump: SolutionDump, path) -> None:
    """Write a solution dump: metadata comments, then x plus one column per
    component (and any reference columns)."""
    lines = [f"# {key} = {_fmt(value)}" for key, value in dump.metadata.items()]
    names = list(dump.columns)
    lines.append(",".join(["x"] + names))
    columns = [dump.x] + [dump.columns[name] for name in names]
    for i in range(len(dump.x)):
        lines.append(",".join(_fmt(float(col[i])) for col in columns))
    _write_lines(path, lines)


def _write_lines(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# command dispatch
# ---------------------------------------------------------------------------

def _scheme_out_path(config: RunConfig, kind: str) -> Path:
    path = Path(config.out)
    if len(config.scheme_kinds) == 1:
        return path
    return path.with_name(f"{path.stem}_{kind}{path.suffix}")


def _run_advect(config: RunConfig) -> None:
    mode = CflMode(config.cfl_mode)
    rows: list[ConvergenceRow] = []
    for kind in config.scheme_kinds:
        rows.extend(run_advection_table(kind, mode, config.n_list, C=config.C,
                                        theta=config.theta, safety=config.safety))
    emit_convergence_csv(rows, config.out, config)
    print(f"wrote {config.out}")
    for row in rows:
        order = "-" if row.observed_order is None else f"{row.observed_order:.2f}"
        print(f"  {row.scheme:<5} n={row.n:<5} L1={row.l1_error:.3e} order={order}")


def _run_nonconvex(config: RunConfig) -> None:
    if config.cfl_mode != "convective":
        raise UsageError("nonconvex runs under the convective CFL only")
    reference = nonconvex_reference()
    n = config.n_list[0]
    for kind in config.scheme_kinds:
        dump, distance = run_nonconvex(kind, n, C=config.C, theta=config.theta,
                                       safety=config.safety, reference=reference)
        dump.metadata["out"] = str(_scheme_out_path(config, kind))
        emit_solution_csv(dump, _scheme_out_path(config, kind))
        print(f"wrote {_scheme_out_path(config, kind)}  "
              f"({kind}: L1 vs reference = {distance:.4e})")


def _run_lax(config: RunConfig) -> None:
    if config.cfl_mode != "convective":
        raise UsageError("lax runs under the convective CFL only")
    n = config.n_list[0]
    for kind in config.scheme_kinds:
        dump, distance = run_lax(kind, n, C=config.C, theta=config.theta,
                                 safety=config.safety)
        dump.metadata["out"] = str(_scheme_out_path(config, kind))
        emit_solution_csv(dump, _scheme_out_path(config, kind))
        print(f"wrote {_scheme_out_path(config, kind)}  "
              f"({kind}: density L1 vs exact = {distance:.4e}, "
              f"peak rho = {dump.metadata['peak_density']:.4f} "
              f"at x = {dump.metadata['peak_position']:.4f})")


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_args(list(argv))
        if config.benchmark == "advect":
            _run_advect(config)
        elif config.benchmark == "nonconvex":
            _run_nonconvex(config)
        else:
            _run_lax(config)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def entry() -> None:
    raise SystemExit(main())
