"""Command-line interface: scenarios, traces, sweeps and verification.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 I/O error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from . import scenarios
from .errors import ConfigError, NumericalError
from .hamiltonian import load_config
from .qstate import from_angles

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4

SERIES_COLUMNS = ("t", "re_c0", "im_c0", "re_c1", "im_c1", "ax", "ay", "az",
                  "theta", "phi", "deltaE", "k_t", "v_t", "kappa_sq")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Float with 17 significant digits; non-finite values become ``nan``/``inf``."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def to_json(obj) -> str:
    """Compact JSON with floats at 17 significant digits and NaN as null."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if obj is None:
        return "null"
    return json.dumps(obj)


def series_rows(report) -> np.ndarray:
    tr = report.trajectory
    return np.column_stack([
        tr.times, tr.states[:, 0].real, tr.states[:, 0].imag, tr.states[:, 1].real, tr.states[:, 1].imag,
        tr.bloch, tr.theta, tr.phi, tr.delta_e, report.k_series, report.v_series, report.kappa_series,
    ])


def render_report(report, fmt_name: str) -> str:
    rows = series_rows(report)
    summary = report.summary()
    if fmt_name == "json":
        return to_json({"columns": list(SERIES_COLUMNS), "rows": rows, "summary": summary}) + "\n"
    buf = io.StringIO()
    buf.write(",".join(SERIES_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    buf.write("# " + to_json(summary) + "\n")
    return buf.getvalue()


def write_output(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_scenario(args) -> int:
    params = {k: getattr(args, k) for k in ("omega", "nu", "omega0", "nu0", "beta0", "tf")}
    accepted = scenarios.scenario_parameters(args.name)
    extra = [k for k, v in params.items() if v is not None and k not in accepted]
    if extra:
        raise UsageError(f"scenario {args.name} does not take {', '.join('--' + k for k in extra)}")
    spec = scenarios.build_scenario(args.name, **params)
    report = scenarios.run_scenario(spec, args.samples, numeric=args.numeric)
    write_output(render_report(report, args.format), args.out)
    return EXIT_OK


def cmd_trace(args) -> int:
    try:
        config = load_config(args.config)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.config}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except ConfigError as exc:
        raise UsageError(f"{args.config}: {exc}") from exc
    psi0 = from_angles(args.theta0, args.phi0)
    if args.t1 < args.t0:
        raise UsageError("--t1 must not be smaller than --t0")
    samples = 1 if args.t1 == args.t0 else args.samples
    from .propagator import trajectory

    traj = trajectory(config, psi0, args.t0, args.t1, samples, numeric=args.numeric)
    report = scenarios.report_for(traj)
    write_output(render_report(report, args.format), args.out)
    return EXIT_OK


def parse_range(text: str):
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"--range expects start:stop:step, got {text!r}") from exc
    try:
        return scenarios.grid(a, b, step)
    except ValueError as exc:
        raise UsageError(f"--range {text}: {exc}") from exc


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("COMPLEXKIT_JOBS", "1")))
    except ValueError:
        return 1


def cmd_sweep(args) -> int:
    if args.param not in scenarios.scenario_parameters(args.scenario):
        raise UsageError(f"scenario {args.scenario} has no parameter {args.param!r}")
    values = parse_range(args.range)
    base = {k: getattr(args, k) for k in ("omega", "nu", "omega0", "nu0", "beta0", "tf")
            if getattr(args, k) is not None and k in scenarios.scenario_parameters(args.scenario)}
    point = partial(scenarios.sweep_point, args.scenario, args.param, base=base, samples=args.samples)
    jobs = args.jobs or default_jobs()
    if jobs > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(point, [float(v) for v in values]))
    else:
        rows = [point(float(v)) for v in values]
    text = ",".join(scenarios.SWEEP_COLUMNS) + "\n" + "".join(
        ",".join(fmt(v) for v in row) + "\n" for row in rows
    )
    write_output(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = scenarios.verify_all(args.tolerance_profile)
    if args.json:
        payload = [
            {"criterion": r.criterion, "label": r.label, "value": r.value, "expected": r.expected,
             "tolerance": r.tolerance, "relation": r.relation, "passed": r.passed}
            for r in rows
        ]
        sys.stdout.write(to_json(payload) + "\n")
    else:
        for r in rows:
            print(r.line())
        failed = sum(not r.passed for r in rows)
        print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VERIFY


def _add_params(p):
    for name in ("omega", "nu", "omega0", "nu0", "beta0", "tf"):
        p.add_argument(f"--{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complexkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", help="run one of the built-in evolutions")
    p.add_argument("name", choices=sorted(scenarios.SCENARIOS))
    _add_params(p)
    p.add_argument("--samples", type=int, default=scenarios.DEFAULT_SAMPLES)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--numeric", action="store_true", help="force the ordered integrator")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("trace", help="evolve a state under a field read from a JSON file")
    p.add_argument("--config", required=True)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=scenarios.DEFAULT_SAMPLES)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--numeric", action="store_true", help="force the ordered integrator")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("sweep", help="summary scalars over a parameter grid")
    p.add_argument("--scenario", choices=sorted(scenarios.SCENARIOS), default="rotating-field")
    p.add_argument("--param", required=True)
    p.add_argument("--range", required=True, help="start:stop:step (inclusive)")
    _add_params(p)
    p.add_argument("--samples", type=int, default=257)
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $COMPLEXKIT_JOBS or 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check the golden values")
    p.add_argument("--tolerance-profile", choices=sorted(scenarios.PROFILES), default="default")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 2) < 1:
        parser.error("--samples must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"complexkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"complexkit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, ArithmeticError) as exc:
        print(f"complexkit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"complexkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
