"""Command-line pipeline: synthesize, verify, dump state amplitudes.

Exit codes: 0 success / all checks pass, 1 check failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import sys

from .errors import BethecircError
from .fileio import (
    ConfigError,
    export_circuit,
    format_report,
    format_state_dump,
    load_config,
    write_text,
)
from .simulator import run_circuit
from .states import bethe_state_explicit
from .synthesis import synthesize_circuit
from .verify import run_battery

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _common_flags(sub):
    sub.add_argument("--config", required=True, help="path to the JSON problem configuration")
    sub.add_argument("--out", default=None, help="output path")
    sub.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    sub.add_argument("--tol", type=float, default=None, help="base tolerance override")
    sub.add_argument(
        "--homogeneous",
        action="store_true",
        help="force all inhomogeneities to zero (enables the homogeneous-only checks)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bethecirc",
        description="Deterministic circuits preparing exact Bethe states of the XXZ chain",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    synth = subs.add_parser("synth", help="synthesize a circuit and write the export file")
    _common_flags(synth)

    verify = subs.add_parser("verify", help="run the full property battery")
    _common_flags(verify)

    state = subs.add_parser("state", help="dump oracle Bethe-state amplitudes")
    _common_flags(state)
    state.add_argument("--support", type=int, required=True, help="number of trailing spins k")
    state.add_argument(
        "--selection",
        default="",
        help="comma-separated momentum labels, e.g. 1,3 (empty for the vacuum)",
    )

    return parser


def cmd_synth(args) -> int:
    config = load_config(
        args.config, seed_override=args.seed, tol_override=args.tol, homogeneous=args.homogeneous
    )
    if config.spec.n_magnons == 0:
        print("warning: M = 0, the circuit is a staircase of identities", file=sys.stderr)
    circuit = synthesize_circuit(config.spec)
    text = export_circuit(circuit, config.spec)
    out = args.out or "circuit.bethecirc"
    write_text(out, text)
    print(f"wrote {len(circuit.gates)} gates to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    config = load_config(
        args.config, seed_override=args.seed, tol_override=args.tol, homogeneous=args.homogeneous
    )
    checks = run_battery(config.spec, config.seed, config.tol)
    human, machine = format_report(checks, config.seed, config.tol)
    print(human, end="")
    if args.out:
        write_text(args.out, machine)
        print(f"machine-readable report written to {args.out}")
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_CHECK_FAILED


def cmd_state(args) -> int:
    config = load_config(
        args.config, seed_override=args.seed, tol_override=args.tol, homogeneous=args.homogeneous
    )
    selection = tuple(int(t) for t in args.selection.split(",") if t.strip())
    amplitudes = bethe_state_explicit(args.support, selection, config.spec)
    text = format_state_dump(args.support, selection, amplitudes)
    if args.out:
        write_text(args.out, text)
        print(f"amplitudes written to {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"synth": cmd_synth, "verify": cmd_verify, "state": cmd_state}
    try:
        return handlers[args.command](args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except BethecircError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
