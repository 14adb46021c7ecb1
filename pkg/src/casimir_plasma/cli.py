"""Command-line interface.

Three subcommands:

``force``
    One cavity evaluation: pressure (optionally force), all correction
    factors, printed as ``key = value`` lines; ``--out`` additionally writes a
    one-row CSV in the sweep schema.
``sweep``
    Pressure and correction factors over a range of separations, one CSV row
    per (material, separation) pair.
``scaling-check``
    Overlay the rescaled correlation curves of several materials, emit the
    per-material delta_F / Delta_F columns, print the collapse spread, and
    gate it against a threshold.

Exit codes: 0 success, 2 invalid input, 3 convergence failure, 4 scaling
spread above threshold.
"""

import argparse
import sys
from dataclasses import replace

from .domain import InputError, ThermalState, ZERO_T, CavityConfig
from .corrections import force_report, scaling_collapse
from .quadrature import ConvergenceError
from .sweep import (SWEEP_CSV_HEADER, SweepSpec, format_csv, load_config,
                    material_label, mirror_from_token, parse_material_token,
                    run_sweep, separation_grid, write_atomic)

__all__ = ["main", "entrypoint", "DEFAULT_SPREAD_THRESHOLD"]

#: scaling-check passes when the collapse spread stays below this.
DEFAULT_SPREAD_THRESHOLD = 0.02

_fmt = "{:.12g}".format


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--out", metavar="PATH", help="write CSV here (atomic) instead of stdout")
    common.add_argument("--rel-tol", type=float, default=None, help="relative tolerance")
    common.add_argument("--abs-tol", type=float, default=None, help="absolute tolerance")
    common.add_argument("--threshold", type=float, default=None,
                        help=f"scaling-check spread threshold (default {DEFAULT_SPREAD_THRESHOLD})")

    parser = argparse.ArgumentParser(
        prog="casimir-plasma",
        description="Casimir pressure between plane plasma-model mirrors, "
                    "with thermal/conductivity correction factors and their correlation.")
    sub = parser.add_subparsers(dest="command", required=True)

    force = sub.add_parser("force", parents=[common],
                           help="evaluate one cavity (pressure, factors, correlation)")
    force.add_argument("--L", type=float, required=True, help="mirror separation in meters")
    force.add_argument("--T", type=float, default=None, help="temperature in kelvin (0 allowed)")
    force.add_argument("--material", default=None,
                       help="Al, Cu, Au, 'perfect', or a plasma wavelength in meters")
    force.add_argument("--area", type=float, default=None, help="mirror area in m^2")

    def add_sweep_flags(p):
        p.add_argument("--L-min", type=float, default=None, help="smallest separation in meters")
        p.add_argument("--L-max", type=float, default=None, help="largest separation in meters")
        p.add_argument("--points", type=int, default=None, help="number of separations")
        p.add_argument("--spacing", choices=("log", "linear"), default=None)
        p.add_argument("--T", type=float, default=None, help="temperature in kelvin")
        p.add_argument("--materials", default=None, help="comma-separated material tokens")
        p.add_argument("--area", type=float, default=None, help="mirror area in m^2")

    swp = sub.add_parser("sweep", parents=[common],
                         help="sweep the separation for one or more materials")
    add_sweep_flags(swp)

    check = sub.add_parser("scaling-check", parents=[common],
                           help="overlay rescaled correlation curves and gate their spread")
    add_sweep_flags(check)
    return parser


def _build_spec(args, sweep_flags=True) -> SweepSpec:
    """Config file (if any) -> SweepSpec, with command-line flags overriding.

    ``force`` passes ``sweep_flags=False``: its --T/--area describe one point
    and are applied by the command itself (T = 0 is legal there but not in a
    sweep), so only the config file and the tolerance flags reach the spec.
    """
    spec = load_config(args.config) if args.config else SweepSpec()
    overrides = {}
    if sweep_flags:
        for attr, key in (("L_min", "L_min"), ("L_max", "L_max"), ("points", "points"),
                          ("spacing", "spacing"), ("T", "T"), ("area", "area")):
            value = getattr(args, attr, None)
            if value is not None:
                overrides[key] = value
        materials = getattr(args, "materials", None)
        if materials is not None:
            overrides["materials"] = tuple(parse_material_token(t) for t in materials.split(","))
    tol = spec.tolerances
    if args.rel_tol is not None or args.abs_tol is not None:
        try:
            tol = replace(tol,
                          **{k: v for k, v in (("rel_tol", args.rel_tol),
                                               ("abs_tol", args.abs_tol)) if v is not None})
        except ValueError as exc:
            raise InputError(str(exc)) from None
        overrides["tolerances"] = tol
    return replace(spec, **overrides) if overrides else spec


def _emit(args, header, rows) -> str:
    """Format the CSV and either write it atomically or return it for stdout."""
    text = format_csv(header, rows)
    if args.out:
        write_atomic(args.out, text)
        return ""
    return text


def _cmd_force(args) -> int:
    spec = _build_spec(args, sweep_flags=False)
    L = args.L
    temperature = args.T if args.T is not None else spec.T
    token = parse_material_token(args.material) if args.material is not None else spec.materials[0]
    area = args.area if args.area is not None else spec.area

    if not temperature >= 0:
        raise InputError(f"temperature T must be >= 0 (got {temperature!r})")
    thermal = ZERO_T if temperature == 0 else ThermalState(T=temperature)
    cavity = CavityConfig(L=L, A=area)
    mirror = mirror_from_token(token)
    report = force_report(cavity.L, thermal, mirror, tol=spec.tolerances, area=cavity.A)

    lines = [
        ("L_m", _fmt(report.L)),
        ("T_K", _fmt(report.T)),
        ("material", material_label(token)),
    ]
    if report.lambda_P is not None:
        lines.append(("lambda_P_m", _fmt(report.lambda_P)))
    lines.append(("plasma_model_reliable", "true" if cavity.plasma_model_reliable else "false"))
    lines += [
        ("pressure_Pa", _fmt(report.pressure)),
        ("pressure_err_Pa", _fmt(report.pressure_abs_error)),
    ]
    if report.force is not None:
        lines += [("area_m2", _fmt(area)), ("force_N", _fmt(report.force))]
    lines += [
        ("eta_P", _fmt(report.eta_P)),
        ("eta_T", _fmt(report.eta_T)),
        ("eta_F", _fmt(report.eta_F)),
    ]
    if report.delta_F is not None:
        lines += [
            ("delta_F", _fmt(report.delta_F)),
            ("big_delta_F", _fmt(report.big_delta_F)),
            ("delta_F_err", _fmt(report.delta_abs_error)),
        ]
    lines.append(("matsubara_terms", str(report.matsubara_terms)))
    for key, value in lines:
        print(f"{key} = {value}")

    if args.out:
        lamT = thermal.lambda_T if isinstance(thermal, ThermalState) else None
        err = report.delta_abs_error if report.delta_abs_error is not None \
            else report.pressure_abs_error / report.pressure
        row = [[
            _fmt(report.L), _fmt(report.L / lamT) if lamT else "", material_label(token),
            _fmt(report.lambda_P) if report.lambda_P is not None else "",
            _fmt(report.T), _fmt(report.pressure),
            _fmt(report.force) if report.force is not None else "",
            _fmt(report.eta_P), _fmt(report.eta_T), _fmt(report.eta_F),
            _fmt(report.delta_F) if report.delta_F is not None else "",
            _fmt(report.big_delta_F) if report.big_delta_F is not None else "",
            _fmt(err),
        ]]
        write_atomic(args.out, format_csv(SWEEP_CSV_HEADER, row))
    return 0


def _cmd_sweep(args) -> int:
    spec = _build_spec(args)
    rows = run_sweep(spec)
    text = _emit(args, SWEEP_CSV_HEADER, rows)
    if text:
        sys.stdout.write(text)
    return 0


def _cmd_scaling_check(args) -> int:
    spec = _build_spec(args)
    if len(spec.materials) < 2:
        raise InputError("scaling-check needs at least two materials (--materials a,b,...)")
    mirrors = [mirror_from_token(t) for t in spec.materials]
    thermal = ThermalState(T=spec.T)
    grid = separation_grid(spec)
    report = scaling_collapse(mirrors, grid, thermal, tol=spec.tolerances)

    header = ["L_m", "L_over_lambda_T"]
    for token in spec.materials:
        label = material_label(token)
        header += [f"delta_F_{label}", f"big_delta_F_{label}"]
    rows = []
    for k, L in enumerate(grid):
        row = [_fmt(L), _fmt(report.L_over_lambda_T[k])]
        for i, lambda_P in enumerate(report.lambda_Ps):
            big = report.curves[i][k]
            row += [_fmt(big * lambda_P / thermal.lambda_T), _fmt(big)]
        rows.append(row)
    text = _emit(args, header, rows)
    if text:
        sys.stdout.write(text)

    spread = report.max_pairwise_relative_spread
    print(f"max_spread={_fmt(spread)}")
    threshold = args.threshold if args.threshold is not None else DEFAULT_SPREAD_THRESHOLD
    return 0 if spread <= threshold else 4


def main(argv=None) -> int:
    """Run the CLI; returns the exit code instead of raising SystemExit."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "force":
            return _cmd_force(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_scaling_check(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
