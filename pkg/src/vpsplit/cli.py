"""Command-line front end.

Subcommands: run, convergence, verify, snapshot-info.  Exit codes:
0 success, 1 verification failure, 2 configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import load_config, parse_step_size
from .driver import convergence_study, run_simulation
from .errors import (
    ConfigurationError,
    DimensionError,
    NumericalFailureError,
    SnapshotFormatError,
)
from .snapshot import snapshot_info
from .splitting import METHODS
from .verify import format_report, run_verification

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vpsplit",
        description="1D1V Vlasov-Poisson splitting solver and verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="integrate one configuration and write diagnostics")
    run_p.add_argument("--config", required=True, help="flat-key JSON configuration file")
    run_p.add_argument("--out", help="output directory (default: output.dir from the config)")

    conv_p = sub.add_parser("convergence", help="measure observed order against a fine reference")
    conv_p.add_argument("--config", required=True, help="flat-key JSON configuration file")
    conv_p.add_argument("--taus", required=True,
                        help="comma list of step sizes, decimals or fractions (e.g. 1/8,1/16)")
    conv_p.add_argument("--tau-ref", required=True,
                        help="reference step size, decimal or fraction (e.g. 1/256)")
    conv_p.add_argument("--method", choices=[*METHODS, "both"], default="both")
    conv_p.add_argument("--out", help="output directory (default: output.dir from the config)")
    conv_p.add_argument("--no-cache", action="store_true",
                        help="do not reuse or write the on-disk reference snapshot")

    verify_p = sub.add_parser("verify", help="run the kernel verification suite")
    verify_p.add_argument("--override", action="append", default=[], metavar="NAME=TOL",
                          help="override a check tolerance (repeatable, for debugging)")

    info_p = sub.add_parser("snapshot-info", help="print the header of a snapshot file")
    info_p.add_argument("path")

    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config)
    out_dir = args.out if args.out is not None else config.out_dir
    artifacts = run_simulation(config, out_dir)
    last = artifacts.records[-1]
    drift = last.mass / artifacts.initial_mass - 1.0
    print(f"completed {last.step} steps to t = {last.t:g}")
    print(f"relative mass drift {drift:.3e}, final electric energy {last.electric_energy:.6e}")
    for kind, path in artifacts.paths.items():
        print(f"  {kind}: {path}")
    return 0


def _cmd_convergence(args) -> int:
    config = load_config(args.config)
    out_dir = args.out if args.out is not None else config.out_dir
    taus = [parse_step_size(part) for part in args.taus.split(",") if part.strip()]
    tau_ref = parse_step_size(args.tau_ref)
    methods = list(METHODS) if args.method == "both" else [args.method]
    reports = convergence_study(config, taus, tau_ref, methods,
                                out_dir=out_dir, use_cache=not args.no_cache)
    for report in reports:
        print(f"{report.method}: fitted order {report.fit.slope:.4f} "
              f"(pairwise {', '.join(f'{p:.3f}' for p in report.pairwise)})")
        for tau, err in report.points:
            print(f"  tau = {tau:.6g}: L1 error = {err:.6e}")
    print(f"artifacts written to {out_dir}")
    return 0


def _cmd_verify(args) -> int:
    overrides = {}
    for item in args.override:
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigurationError(f"--override expects NAME=TOL, got {item!r}")
        try:
            overrides[name] = float(value)
        except ValueError as exc:
            raise ConfigurationError(f"bad tolerance in --override {item!r}") from exc
    try:
        results = run_verification(overrides)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    print(format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _cmd_snapshot_info(args) -> int:
    info = snapshot_info(args.path)
    for key in ("version", "nx", "nv", "L", "vmax", "time"):
        print(f"{key}: {info[key]}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "convergence": _cmd_convergence,
        "verify": _cmd_verify,
        "snapshot-info": _cmd_snapshot_info,
    }
    try:
        return handlers[args.command](args)
    except (ConfigurationError, SnapshotFormatError, DimensionError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailureError as exc:
        step = f" (step {exc.step})" if exc.step is not None else ""
        print(f"numerical failure{step}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
