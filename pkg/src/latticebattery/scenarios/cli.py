"""Command-line entry point.

Exit codes: 0 success, 2 invalid configuration, 3 solver non-convergence.
"""
from __future__ import annotations

import argparse
import logging
import sys

from ..errors import InvalidSpecError, LatticeBatteryError
from .config import RunConfig, load_config_file
from .output import check_writable, emit, to_json
from .runner import run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

SCENARIO_DEFAULTS = {
    "dephasing": {"gamma_d": [0.0, 0.15, 0.3]},
}


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers: {text!r}") from exc


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    a = common.add_argument
    a("--config", help="JSON file of configuration keys; command-line flags override it")
    a("--sites", type=int, help="chain length L")
    a("--cells-x", type=int, help="honeycomb unit cells along x")
    a("--cells-y", type=int, help="honeycomb unit cells along y")
    a("--hopping", type=float, help="hopping amplitude t")
    a("--gamma", type=float, help="bond-dissipation rate")
    a("--gamma-d", type=_floats, help="dephasing rate(s), comma-separated for the dephasing sweep")
    a("--phi", type=float, help="bond phase; 0 pumps to the band top, pi to the bottom")
    a("--disorder", type=_floats, help="disorder strengths W, comma-separated")
    a("--realizations", type=int, help="disorder realizations per point")
    a("--seed", type=int, help="base seed of the disorder generator")
    a("--t-max", type=float, help="initial charging horizon (units of 1/gamma)")
    a("--t-cap", type=float, help="largest charging horizon (units of 1/gamma)")
    a("--n-points", type=int, help="log-spaced samples in the first window")
    a("--workers", type=int, help="parallel worker processes")
    a("--out", help="output file")
    a("--format", choices=("csv", "json"), help="output format")
    a("--omega", type=float, help="collision: battery splitting")
    a("--beta", type=float, help="collision: ancilla inverse temperature")
    a("--coupling", type=float, help="collision: coupling g")
    a("--duration", type=float, help="collision: duration of one collision")
    a("--collisions", type=int, help="collision: maximum number of collisions")
    a("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="latticebattery",
        description="Bond-dissipative charging of tight-binding quantum batteries.",
    )
    sub = parser.add_subparsers(dest="scenario", required=True)
    sub.add_parser("chain", parents=[common], help="periodic chain, disorder sweep")
    sub.add_parser("graphene", parents=[common], help="honeycomb lattice, disorder sweep")
    sub.add_parser("dephasing", parents=[common], help="chain with local dephasing sweep")
    sub.add_parser("collision", parents=[common], help="qubit collision-model fixed point")
    return parser


def config_from_args(args) -> RunConfig:
    values = dict(SCENARIO_DEFAULTS.get(args.scenario, {}))
    if args.config:
        values.update(load_config_file(args.config))
    for key, value in vars(args).items():
        if key in ("config", "verbose") or value is None:
            continue
        values[key] = value
    values["scenario"] = args.scenario
    return RunConfig.from_dict(values)


def _print_summary(report, stream):
    if report.collision is not None:
        c = report.collision
        print(
            f"collisions={c['n_collisions']} excited={c['fixed_point_excited_population']:.10f} "
            f"(closed form {c['closed_form_excited_population']:.10f}) "
            f"ergotropy={c['fixed_point_ergotropy']:.10f} (closed form {c['closed_form_ergotropy']:.10f})",
            file=stream,
        )
        return
    print(f"{report.parameter_name:>10} {'E_ss':>12} {'W_bound':>12} {'P':>12} {'tau99':>10}", file=stream)
    for p in report.points:
        print(
            f"{p.parameter:10.4g} {p.e_ss_mean:12.6g} {p.w_bound_mean:12.6g} "
            f"{p.power_mean:12.6g} {p.tau99_mean:10.4g}",
            file=stream,
        )
    for r in report.failed:
        print(f"failed: point {r.point} realization {r.realization}: {r.error}", file=stream)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = config_from_args(args)
        if cfg.out:
            check_writable(cfg.out)
    except (InvalidSpecError, OSError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = run_scenario(cfg)
    except InvalidSpecError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LatticeBatteryError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    if cfg.out:
        emit(report, cfg.format, cfg.out)
        _print_summary(report, sys.stdout)
    elif cfg.format == "json":
        print(to_json(report))
    else:
        _print_summary(report, sys.stdout)
    return EXIT_SOLVER if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
