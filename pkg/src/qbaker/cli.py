"""Command-line entry point: ``qbaker {orbits,chaos,verify,oracle-dump}``.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import oracle
from .experiments import (
    ConfigError,
    ExperimentConfig,
    cmd_chaos,
    cmd_orbits,
    format_results,
    run_verification,
)

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_CONFIG = 0, 1, 2

# flag dest -> ExperimentConfig field
_FLAG_FIELDS = {
    "n_qubits": "n_qubits", "seed": "seed", "steps": "steps", "window": "window",
    "bins": "bins", "log_base": "log_base", "classical_mode": "classical_mode",
    "n_sweep": "n_sweep", "out_dir": "out_dir", "format": "format", "gnuplot": "gnuplot",
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _log_base(text: str) -> float:
    if text in ("e", "E"):
        return math.e
    return float(text)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    # defaults are None so that a config file value survives unless a flag is given
    p.add_argument("--config", type=Path, help="JSON file with ExperimentConfig fields")
    p.add_argument("--n-qubits", dest="n_qubits", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--steps", type=int, help="n_max, last time step")
    p.add_argument("--window", type=int, help="window length W")
    p.add_argument("--bins", type=int, help="number of equal bins K")
    p.add_argument("--log-base", dest="log_base", type=_log_base, help="2 or e")
    p.add_argument("--classical-mode", dest="classical_mode", choices=("truncated", "extended"))
    p.add_argument("--n-sweep", dest="n_sweep", type=_int_list)
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--gnuplot", action="store_true", default=None,
                   help="also write a gnuplot script next to the data")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbaker",
        description="Quantum vs classical baker's map: orbits, chaos degree, oracle checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", help="write quantum and classical orbit files")
    _add_config_flags(p)
    p = sub.add_parser("chaos", help="chaos-degree series over the N sweep")
    _add_config_flags(p)

    p = sub.add_parser("verify", help="closed forms against the dense oracle")
    p.add_argument("--max-n", dest="max_n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("oracle-dump", help="dump a dense operator as CSV (row, col, re, im)")
    p.add_argument("--n-qubits", dest="n_qubits", type=int, default=3)
    p.add_argument("--operator", choices=("T", "F", "q", "p", "U", "V"), default="T")
    p.add_argument("--power", type=int, default=1, help="matrix power (T only)")
    p.add_argument("--out", type=Path, help="output file (default stdout)")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if getattr(args, "config", None) is not None:
        try:
            data = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    for dest, name in _FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            data[name] = value
    return ExperimentConfig.from_dict(data)


def _dump_operator(args) -> int:
    n = args.n_qubits
    if args.operator == "T":
        if args.power < 0:
            raise ConfigError("power must be >= 0")
        op = np.linalg.matrix_power(oracle.baker_unitary(n), args.power)
    elif args.operator == "F":
        op = oracle.qft(n)
    elif args.operator == "q":
        op = oracle.position_operator(n)
    elif args.operator == "p":
        op = oracle.momentum_operator(n)
    else:
        u, v = oracle.weyl_pair(n)
        op = u if args.operator == "U" else v
    if args.out is None:
        oracle.dump_operator_csv(op, sys.stdout)
    else:
        with args.out.open("w", newline="") as fh:
            oracle.dump_operator_csv(op, fh)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            results = run_verification(args.max_n, args.seed)
            print(format_results(results))
            ok = all(r.passed for r in results)
            print("ALL PASS" if ok else "VERIFICATION FAILED")
            return EXIT_OK if ok else EXIT_VERIFY_FAILED
        if args.command == "oracle-dump":
            return _dump_operator(args)
        cfg = resolve_config(args)
        report = cmd_orbits(cfg) if args.command == "orbits" else cmd_chaos(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"qbaker: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(report.to_json())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
