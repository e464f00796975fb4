"""Command-line interface: ``crossband {simulate,sweep,validate,figure}``.

Exit codes: 0 ok, 2 usage, 3 physicality, 4 I/O, 5 validation failure.
"""

import argparse
import configparser
import sys
from pathlib import Path

from . import closed_form as cf
from .errors import PhysicalityError
from .protocols import run
from .sweep import (
    SWEEP_COLUMNS,
    FIGURES,
    SweepAxis,
    SweepRecord,
    SweepSpec,
    figure_table,
    run_sweep,
    validate,
    write_csv,
)

EXIT_OK, EXIT_USAGE, EXIT_PHYSICALITY, EXIT_IO, EXIT_VALIDATION = 0, 2, 3, 4, 5

PROTOCOL_NAMES = {
    "de": "DE",
    "dt": "DT",
    "single-band": "single_band_EA",
    "dual-band": "dual_band",
}

# flag dest -> (ProtocolParams field, converter)
PARAM_FLAGS = {
    "eta": ("eta", float),
    "kappa_e": ("kappa_e", float),
    "kappa_f": ("kappa_f", float),
    "kappa_a": ("kappa_a", float),
    "kappa_b": ("kappa_b", float),
    "g_db": ("g", lambda v: cf.db_to_gain(float(v))),
    "gs_db": ("g_s", lambda v: cf.db_to_gain(float(v))),
    "gp": ("g_p", float),
    "gps": ("g_ps", float),
    "cooperativity": ("cooperativity", float),
    "zeta_m": ("zeta_m", float),
    "zeta_o": ("zeta_o", float),
    "n_input": ("n_input", float),
}


class UsageError(Exception):
    pass


def _add_param_flags(parser):
    parser.add_argument("--protocol", choices=sorted(PROTOCOL_NAMES))
    for dest in PARAM_FLAGS:
        parser.add_argument("--" + dest.replace("_", "-"), dest=dest, type=float)
    parser.add_argument("--config", type=Path, help="key = value file; flags win on conflict")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crossband",
        description="Simulate entanglement-assisted crossband entanglement generation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one protocol at one parameter point")
    _add_param_flags(sim)
    sim.add_argument("--out", type=Path, help="append the result as a CSV row")
    sim.add_argument("--digits", type=int)

    sweep = sub.add_parser("sweep", help="evaluate a protocol on a 1-D or 2-D grid")
    _add_param_flags(sweep)
    sweep.add_argument(
        "--axis", action="append", nargs=4, metavar=("NAME", "START", "STOP", "POINTS"),
        required=True, help="swept axis; repeat for a grid (outer axis first)")
    sweep.add_argument("--log", action="append", default=[], metavar="NAME",
                       help="use log spacing for the named axis")
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--out", type=Path)
    sweep.add_argument("--digits", type=int)

    val = sub.add_parser("validate", help="randomized numeric vs closed-form check")
    val.add_argument("--seed", type=int, default=0)
    val.add_argument("--trials", type=int, default=500)
    val.add_argument("--corrupt-oracle", type=float, default=0.0, help=argparse.SUPPRESS)

    fig = sub.add_parser("figure", help="write the data behind one figure")
    fig.add_argument("which", choices=sorted(FIGURES))
    fig.add_argument("--out", type=Path)
    fig.add_argument("--digits", type=int)
    return parser


def read_config(path):
    parser = configparser.ConfigParser()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    parser.read_string("[params]\n" + text)
    return {key.replace("-", "_"): value for key, value in parser["params"].items()}


def collect_params(args):
    """Merge config file values and flags into (protocol, ProtocolParams)."""
    values = read_config(args.config) if args.config else {}
    for dest in PARAM_FLAGS:
        if getattr(args, dest) is not None:
            values[dest] = getattr(args, dest)
    protocol = args.protocol or values.pop("protocol", None)
    values.pop("protocol", None)
    if protocol is None:
        raise UsageError("--protocol is required")
    if protocol not in PROTOCOL_NAMES:
        raise UsageError(f"unknown protocol {protocol!r}")
    kwargs = {}
    for key, value in values.items():
        if key not in PARAM_FLAGS:
            raise UsageError(f"unknown parameter {key!r}")
        field_name, convert = PARAM_FLAGS[key]
        try:
            kwargs[field_name] = convert(value)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {value!r}") from exc
    return PROTOCOL_NAMES[protocol], kwargs


def _open_out(path):
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def cmd_simulate(args, stdout):
    protocol, kwargs = collect_params(args)
    if protocol == "dual_band" and "g_s" not in kwargs:
        kwargs["g_s"] = kwargs.get("g", 1.0)
    result = run(protocol, cf.ProtocolParams(**kwargs))
    print(f"protocol = {result.protocol}", file=stdout)
    if result.eta_ea is not None:
        print(f"eta_EA = {result.eta_ea:.10g}", file=stdout)
    if result.g_p is not None:
        print(f"Gp = {result.g_p:.10g}", file=stdout)
        print(f"Gp_S = {result.g_ps:.10g}", file=stdout)
    for name, m in result.measures.items():
        print(f"[{name}]", file=stdout)
        print(f"N_S = {m.n_photons:.10g}", file=stdout)
        print(f"gamma = {m.gamma:.10g}", file=stdout)
        entropy = "n/a (mixed)" if m.entropy_ebits is None else f"{m.entropy_ebits:.10g}"
        print(f"entropy_ebits = {entropy}", file=stdout)
        print(f"logneg_ebits = {m.log_negativity_ebits:.10g}", file=stdout)
        print(f"epr_variance = {m.epr_variance:.10g}", file=stdout)
        print(f"epr_squeezing_dB = {m.epr_squeezing_db:.10g}", file=stdout)
    for key, value in result.extras.items():
        if value is not None and key in ("plob", "eta_dt", "de_entropy"):
            print(f"{key} = {value:.10g}", file=stdout)
    delta = "n/a" if result.oracle_delta is None else f"{result.oracle_delta:.3e}"
    print(f"oracle_delta = {delta}", file=stdout)
    if args.out:
        with _open_out(args.out) as fh:
            write_csv(SWEEP_COLUMNS, [SweepRecord.from_result(result)], fh, args.digits)
    return EXIT_OK


def cmd_sweep(args, stdout):
    protocol, kwargs = collect_params(args)
    try:
        axes = [SweepAxis(name, float(start), float(stop), int(points),
                          "log" if name in args.log else "linear")
                for name, start, stop, points in args.axis]
        spec = SweepSpec(protocol, tuple(axes), kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    records = run_sweep(spec, workers=args.workers)
    if args.out:
        with _open_out(args.out) as fh:
            write_csv(SWEEP_COLUMNS, records, fh, args.digits)
    else:
        write_csv(SWEEP_COLUMNS, records, stdout, args.digits)
    return EXIT_OK


def corrupted_oracle(eps):
    def oracle(params, g_p, g_ps, order=cf.FULL_ORDER):
        cov = cf.general_covariance(params, g_p, g_ps, order)
        cov[0, 0] += eps
        return cov
    return oracle


def cmd_validate(args, stdout):
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    oracle = corrupted_oracle(args.corrupt_oracle) if args.corrupt_oracle else cf.general_covariance
    report = validate(args.seed, args.trials, oracle)
    for k, dev in enumerate(report.deviations):
        print(f"trial {k}: max deviation {dev:.3e}", file=stdout)
    print(f"overall max deviation {report.max_deviation:.3e} over {args.trials} trials",
          file=stdout)
    if report.passed:
        print("PASS", file=stdout)
        return EXIT_OK
    for k, dev, params in report.failures():
        print(f"FAIL trial {k}: deviation {dev:.3e} at {params}", file=stdout)
    return EXIT_VALIDATION


def cmd_figure(args, stdout):
    header, rows = figure_table(args.which)
    out = args.out or Path(f"{args.which}.csv")
    with _open_out(out) as fh:
        write_csv(header, rows, fh, args.digits)
    print(f"wrote {len(rows)} rows to {out}", file=stdout)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "figure": cmd_figure,
}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout)
    except PhysicalityError as exc:
        print(f"physicality error: {exc} (eigenvalue {exc.eigenvalue})", file=stderr)
        return EXIT_PHYSICALITY
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
