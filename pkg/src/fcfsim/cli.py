"""Command-line front end: ``fcfsim sweep | truncation | noise``.

Exit status is 0 when every internal consistency check passes, 1 when a
check fails and 2 on usage errors. Failures print one JSON object on
standard error.
"""

import argparse
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone

import numpy as np

from fcfsim import __version__
from fcfsim._checks import ConsistencyError, FcfSimError
from fcfsim.analytic import in_forbidden_region
from fcfsim.config import ConfigError, build_config, convert, parse_eta, read_config_file
from fcfsim.experiments import (
    check_convergence,
    normalization_for,
    reference_value,
    sweep_table,
    truncation_study,
)
from fcfsim.moussa import SOLVE_TOL
from fcfsim.noise import robustness_curve, write_curve
from fcfsim.table import fmt, open_output, write_csv

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
DEFAULT_ETA_GRID = parse_eta("0:1:0.1")


class UsageError(Exception):
    pass


def _add_common(p):
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--method", choices=["tomography", "moussa", "direct", "analytic"])
    p.add_argument("--b0", type=float, help="maximum displacement")
    p.add_argument("--steps", type=int, help="number of translation steps N")
    p.add_argument("--dim", help="basis dimension (truncation: comma list)")
    p.add_argument("--theta", type=float, help="controlled-phase angle for the Moussa run")
    p.add_argument("--norm", choices=["unit", "fourLevel"], help="Moussa normalization mode")
    p.add_argument("--eta", help="noise half-width: value, comma list or start:stop:step")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.add_argument("--deterministic", action="store_true", default=None,
                   help="omit the timestamp so repeated runs are byte-identical")


def build_parser():
    parser = argparse.ArgumentParser(prog="fcfsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "FCFs over the translation grid for one method"),
        ("truncation", "truncated-basis error against the infinite-basis values"),
        ("noise", "robustness of both readout pipelines to uniform noise"),
    ):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def _config_from_args(args, dim_override=True):
    file_values = read_config_file(args.config) if args.config else {}
    overrides = {
        "method": args.method,
        "b0": args.b0,
        "steps": args.steps,
        "dim": convert("dim", args.dim) if (args.dim is not None and dim_override) else None,
        "theta": args.theta,
        "norm": args.norm,
        "eta": parse_eta(args.eta) if args.eta is not None else None,
        "trials": args.trials,
        "seed": args.seed,
        "out": args.out,
        "deterministic": args.deterministic,
    }
    if overrides["eta"] == ():
        raise UsageError("eta grid is empty")
    return build_config(file_values, overrides)


def _header(cfg, command, extra=None):
    lines = [f"# fcfsim {__version__} {command}"]
    if not cfg.deterministic:
        lines.append(f"# generated: {datetime.now(timezone.utc).isoformat(timespec='seconds')}")
    for key, value in (extra or {}).items():
        lines.append(f"# {key}: {value}")
    return "".join(line + "\n" for line in lines)


def _destination(cfg):
    return sys.stdout if cfg.out in ("-", "") else cfg.out


def cmd_sweep(cfg):
    if len(cfg.eta) != 1:
        raise UsageError("sweep takes a single eta value")
    table = sweep_table(cfg)
    extra = {
        "analytic": lambda r: fmt(reference_value(r.m, r.n, r.b)),
        "forbidden": lambda r: "1" if in_forbidden_region(r.m, r.n, r.b) else "0",
    }
    header = _header(cfg, "sweep", {
        "method": cfg.method, "b0": fmt(cfg.b0), "steps": cfg.steps, "dim": cfg.dim,
        "theta": fmt(cfg.theta), "norm": cfg.norm, "eta": fmt(cfg.eta[0]), "seed": cfg.seed,
        "out_of_range": len(table.out_of_range()),
    })
    write_csv(_destination(cfg), table, extra, header)
    return table


TRUNCATION_COLUMNS = ("m", "n", "b", "dim", "truncated", "analytic", "deviation")


def cmd_truncation(cfg, dims, b_grid):
    if any(d < 2 for d in dims):
        raise UsageError("every basis dimension must be >= 2")
    rows = truncation_study(dims, b_grid)
    worst = check_convergence(rows)
    header = _header(cfg, "truncation", {
        "dims": " ".join(map(str, dims)),
        "max_deviation": " ".join(f"{d}={fmt(worst[d])}" for d in sorted(worst)),
    })
    with open_output(_destination(cfg)) as fh:
        fh.write(header)
        fh.write(",".join(TRUNCATION_COLUMNS) + "\n")
        for r in rows:
            fh.write(f"{r.m},{r.n},{fmt(r.b)},{r.dim},{fmt(r.truncated)},{fmt(r.analytic)},{fmt(r.deviation)}\n")
    return rows


def cmd_noise(cfg):
    curve = robustness_curve(
        cfg.eta,
        trials=cfg.trials,
        seed=cfg.seed,
        normalization=normalization_for(cfg.norm),
        theta=cfg.theta,
    )
    zero = [p for p in curve.points if p[0] == 0.0]
    if any(max(p[1], p[2]) >= SOLVE_TOL for p in zero):
        raise ConsistencyError("noiseless spread is not zero")
    if not cfg.deterministic:
        curve.metadata["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    write_curve(_destination(cfg), curve)
    return curve


def _fail(code, kind, message):
    print(json.dumps({"status": "error", "kind": kind, "message": message}), file=sys.stderr)
    return code


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "truncation":
            cfg = _config_from_args(args, dim_override=False)
            dims = [int(v) for v in args.dim.split(",")] if args.dim else [4, 8, 16]
            b0 = args.b0 if args.b0 is not None else 4.0
            steps = args.steps if args.steps is not None else 40
            cmd_truncation(cfg, dims, np.linspace(0.0, b0, steps + 1))
        elif args.command == "noise":
            cfg = _config_from_args(args, dim_override=False)
            if args.eta is None and not (args.config and "eta" in read_config_file(args.config)):
                cfg = replace(cfg, eta=DEFAULT_ETA_GRID)
            cmd_noise(cfg)
        else:
            cfg = _config_from_args(args)
            cmd_sweep(cfg)
    except (UsageError, ConfigError) as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except ConsistencyError as exc:
        return _fail(EXIT_CHECK, "consistency", str(exc))
    except (FcfSimError, ValueError) as exc:
        return _fail(EXIT_USAGE, type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail(EXIT_CHECK, "io", str(exc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
