#!/usr/bin/env python3
"""
Command-line front end for the Gaussian isotropic state toolkit

Subcommands:
    state     CM, symplectic eigenvalues, purity and entropies
    criteria  PPT, steering and CCNR verdicts with margins
    measures  EOF, Gaussian discord and mutual information
    sweep     CSV grid over (r, p)
    channel   Send a single-mode input through the isomorphic channel
    fock      Truncated Fock-space diagnostics of the closed forms

Exit codes: 0 success, 2 usage, 3 numerical/tolerance failure, 4 I/O.
"""
import argparse
import json
import logging
import math
import os
import sys

# Add project paths
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.gaussian import reports
from src.gaussian.channel import InputKind
from src.gaussian.errors import DomainError, NumericalError
from src.gaussian.states import GIParams
from src.gaussian.sweep import bounding_box, grid, run_sweep, write_csv, CSV_HEADER
from src.settings import FOCK_CONFIG, LOG_LEVEL, SWEEP_CONFIG

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class GIArgumentParser(argparse.ArgumentParser):
    """argparse with single-line diagnostics"""

    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not math.isfinite(value) or value < 0:
        raise argparse.ArgumentTypeError(f"must be a finite number >= 0, got {text}")
    return value


def _unit_float(text: str) -> float:
    value = _nonneg_float(text)
    if value > 1:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return value


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return value


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {text}")
        return value
    return parse


# ============================================================================
# Output
# ============================================================================

def _format_value(value) -> str:
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:.7g}"
    return str(value)


def render_text(title: str, payload: dict) -> str:
    lines = [title, "=" * 60]
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.extend("  " + "  ".join(f"{entry:12.7f}" for entry in row) for row in value)
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {sub}: {_format_value(entry)}" for sub, entry in value.items())
        else:
            lines.append(f"{key}: {_format_value(value)}")
    return "\n".join(lines) + "\n"


def emit(args, title: str, payload: dict):
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = render_text(title, payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"✓ Wrote {args.out}")
    else:
        sys.stdout.write(text)


# ============================================================================
# Subcommands
# ============================================================================

def _params(args) -> GIParams:
    return GIParams(args.r, args.p)


def _title(name: str, args) -> str:
    return f"{name} r={args.r:g} p={args.p:g}"


def cmd_state(args) -> int:
    emit(args, _title("GAUSSIAN ISOTROPIC STATE", args), reports.state_payload(_params(args), bits=args.bits))
    return EXIT_OK


def cmd_criteria(args) -> int:
    emit(args, _title("ENTANGLEMENT CRITERIA", args), reports.criteria_payload(_params(args)))
    return EXIT_OK


def cmd_measures(args) -> int:
    emit(args, _title("CORRELATION MEASURES", args), reports.measures_payload(_params(args), bits=args.bits))
    return EXIT_OK


def cmd_sweep(args) -> int:
    r_values = grid(args.r_min, args.r_max, args.r_steps)
    p_values = grid(args.p_min, args.p_max, args.p_steps)
    records = run_sweep(r_values, p_values, workers=args.workers)

    if not args.out:
        sys.stdout.write(",".join(CSV_HEADER) + "\n")
        sys.stdout.writelines(",".join(rec.csv_row()) + "\n" for rec in records)
        return EXIT_OK

    write_csv(records, args.out)
    print(f"✓ Wrote {len(records)} rows to {args.out}")
    box = bounding_box(records, "eof_exceeds_half_mi")
    if box is None:
        print("EOF > I_M/2 region: empty on this grid")
    else:
        print(f"EOF > I_M/2 region: r in [{box.r_min:.9g}, {box.r_max:.9g}], "
              f"p in [{box.p_min:.9g}, {box.p_max:.9g}] ({box.count} points)")
    return EXIT_OK


def cmd_channel(args) -> int:
    payload = reports.channel_payload(_params(args), args.input, nbar=args.nbar, squeezing=args.squeezing)
    emit(args, _title("ISOMORPHIC CHANNEL", args), payload)
    return EXIT_OK


def cmd_fock(args) -> int:
    payload, op = reports.fock_diagnostics(_params(args), args.cutoff)
    emit(args, _title("FOCK DIAGNOSTICS", args), payload)
    if args.dump:
        op.dump(args.dump)
        print(f"✓ Dumped operator to {args.dump}")
    if args.check and not payload["passed"]:
        failed = ", ".join(name for name, ok in payload["checks"].items() if not ok)
        print(f"gi: error: fock checks failed: {failed}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================

def _add_point_flags(sub, with_bits: bool = False):
    sub.add_argument("--r", type=_nonneg_float, required=True, help="squeezing parameter r >= 0")
    sub.add_argument("--p", type=_unit_float, required=True, help="mixing probability p in [0, 1]")
    sub.add_argument("--format", choices=["text", "json"], default="text")
    sub.add_argument("--out", help="write the report to PATH instead of stdout")
    if with_bits:
        sub.add_argument("--bits", action="store_true", help="report entropies in bits instead of nats")


def build_parser() -> GIArgumentParser:
    parser = GIArgumentParser(prog="gi", description="Gaussian isotropic state toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("state", help="CM, spectrum and entropies")
    _add_point_flags(sub, with_bits=True)
    sub.set_defaults(handler=cmd_state)

    sub = subs.add_parser("criteria", help="PPT, steering and CCNR")
    _add_point_flags(sub)
    sub.set_defaults(handler=cmd_criteria)

    sub = subs.add_parser("measures", help="EOF, discord and mutual information")
    _add_point_flags(sub, with_bits=True)
    sub.set_defaults(handler=cmd_measures)

    sub = subs.add_parser("sweep", help="CSV grid over (r, p)")
    sub.add_argument("--r-min", type=_nonneg_float, default=SWEEP_CONFIG["r_min"])
    sub.add_argument("--r-max", type=_nonneg_float, default=SWEEP_CONFIG["r_max"])
    sub.add_argument("--r-steps", type=_positive_int(1), default=SWEEP_CONFIG["steps"])
    sub.add_argument("--p-min", type=_unit_float, default=SWEEP_CONFIG["p_min"])
    sub.add_argument("--p-max", type=_unit_float, default=SWEEP_CONFIG["p_max"])
    sub.add_argument("--p-steps", type=_positive_int(1), default=SWEEP_CONFIG["steps"])
    sub.add_argument("--workers", type=_positive_int(1), default=SWEEP_CONFIG["workers"])
    sub.add_argument("--out", help="CSV path (stdout when omitted)")
    sub.set_defaults(handler=cmd_sweep)

    sub = subs.add_parser("channel", help="single-mode input through the isomorphic channel")
    _add_point_flags(sub)
    sub.add_argument("--input", type=InputKind, choices=list(InputKind), default=InputKind.COHERENT,
                     metavar="{coherent,thermal,squeezed}")
    sub.add_argument("--nbar", type=_nonneg_float, help="mean photon number of a thermal input")
    sub.add_argument("--squeezing", type=_finite_float, help="squeezing of a squeezed-vacuum input")
    sub.set_defaults(handler=cmd_channel)

    sub = subs.add_parser("fock", help="truncated Fock-space diagnostics")
    _add_point_flags(sub)
    sub.add_argument("--cutoff", type=_positive_int(FOCK_CONFIG["min_cutoff"]), default=None,
                     help="levels per mode (default: max(GI_FOCK_CUTOFF, tail-bound cutoff))")
    sub.add_argument("--check", action="store_true", help="exit 3 if any tolerance fails")
    sub.add_argument("--dump", help="write the operator as a binary fixture to PATH")
    sub.set_defaults(handler=cmd_fock)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "channel":
            if args.input is InputKind.THERMAL and args.nbar is None:
                parser.error("argument --nbar: required when --input thermal")
            if args.input is InputKind.SQUEEZED and args.squeezing is None:
                parser.error("argument --squeezing: required when --input squeezed")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except DomainError as e:
        print(f"gi: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, OverflowError, FloatingPointError) as e:
        print(f"gi: error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as e:
        print(f"gi: error: cannot write {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
