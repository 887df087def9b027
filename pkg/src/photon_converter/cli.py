"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 numerical failure,
3 oracle comparison failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import DEFAULT_FREQUENCIES, bound_state_report, run_oracle_check
from .errors import (
    ConfigError,
    PrematureMeasurementError,
    PropagationError,
    RootFindingError,
)
from .figures import FIGURES, run_figure
from .sweep import DEFAULTS, build_configs, evaluate_point, load_sweep_spec, parse_params, run_sweep

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def _result_json(model, params, status, result):
    payload = {"model": model, "params": params, "status": status}
    if result is not None:
        payload.update(
            omega_k=result.omega_k,
            k=result.k,
            r_minus=[result.r_minus.real, result.r_minus.imag],
            t_minus=[result.t_minus.real, result.t_minus.imag],
            t_plus=[result.t_plus.real, result.t_plus.imag],
            flow_r=result.flow_r,
            flow_t=result.flow_t,
            flow_tr=result.flow_tr,
            flow_sum=result.flow_sum,
            transfer_open=result.transfer_open,
            partner=None
            if result.partner is None
            else {"branch": result.partner.branch.value, "value": result.partner.value},
        )
    return payload


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _emit(text, out):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text)


def cmd_scatter(args):
    raw = {
        name: getattr(args, name)
        for name in DEFAULTS[args.model]
        if getattr(args, name, None) is not None
    }
    params = parse_params(args.model, raw)
    build_configs(args.model, params)  # surface invalid parameters as validation errors
    status, result = evaluate_point(args.model, params)
    _emit(json.dumps(_result_json(args.model, params, status, result), indent=1), None)
    return 0 if result is not None else EXIT_VALIDATION


def cmd_sweep(args):
    table = run_sweep(load_sweep_spec(args.config), threads=args.threads)
    if args.seed is not None:
        table.meta["seed"] = args.seed
    _emit(table.to_csv() if args.format == "csv" else table.to_json(), args.out)
    return 0


def cmd_figure(args):
    run_figure(args.id, args.out, threads=args.threads, fmt=args.format)
    return 0


def cmd_bound_states(args):
    raw = _read_json(args.config)
    if not isinstance(raw, dict):
        raise ConfigError(f"{args.config}: expected an object")
    report = bound_state_report(raw.get("params"), oracle_N=raw.get("oracle_N"))
    _emit(json.dumps(report, indent=1), args.out)
    return 0


def cmd_oracle(args):
    raw = _read_json(args.config)
    if not isinstance(raw, dict):
        raise ConfigError(f"{args.config}: expected an object")
    unknown = set(raw) - {"params", "omega_k", "packet"}
    if unknown:
        raise ConfigError(f"{args.config}: unknown keys {sorted(unknown)}")
    freqs = raw.get("omega_k", list(DEFAULT_FREQUENCIES))
    if not isinstance(freqs, list):
        freqs = [freqs]
    report, status = run_oracle_check(
        raw.get("params"), frequencies=freqs, packet=raw.get("packet"), threads=args.threads
    )
    _emit(json.dumps(report, indent=1), args.out)
    return status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker count for sweeps / oracle runs")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="table output format")
    common.add_argument("--seed", type=int, default=None,
                        help="recorded in sweep metadata; the physics is deterministic")

    parser = argparse.ArgumentParser(
        prog="photon-converter",
        description="Single-photon frequency conversion by a driven V-type atom in a waveguide.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scatter", parents=[common], help="evaluate one incident frequency")
    p.add_argument("model", choices=("crw", "linear"))
    for name in sorted(set(DEFAULTS["crw"]) | set(DEFAULTS["linear"])):
        kind = int if name == "atom_site" else float
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind, default=None)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("sweep", parents=[common], help="run a sweep config (JSON)")
    p.add_argument("config")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", parents=[common], help="write a figure dataset")
    p.add_argument("id", choices=sorted(FIGURES))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("bound-states", parents=[common], help="bound states of the CRW model")
    p.add_argument("config")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bound_states)

    p = sub.add_parser("oracle", parents=[common], help="compare against the lattice oracle")
    p.add_argument("config")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except (RootFindingError, PropagationError, PrematureMeasurementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
