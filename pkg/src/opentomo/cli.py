"""Command-line interface.

    opentomo sweep --config sweep.json [--set key=value ...] --out table.csv [--workers N]
    opentomo point --scenario qnd --t 1.0 [--T 1 ...] [--json]
    opentomo verify [all|qnd|sgad|two_qubit|spin1|qutrit|optical] [--json] [--seed S]
    opentomo scenarios

Exit status: 0 on success, 1 if any verification check fails, 2 on
configuration errors, 3 on computation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .errors import ComputeError, ConfigError
from .scenarios import SCENARIOS, get_scenario
from .sweep import UNITS_BANNER, fmt, parse_set, run_sweep, spec_from_config, write_csv
from .verify import CHECKS, DEFAULT_SEED, run_checks

log = logging.getLogger("opentomo")


def _cmd_sweep(args) -> int:
    try:
        config = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.config}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    spec = spec_from_config(config, parse_set(args.set or []))
    t0 = time.perf_counter()
    rows = run_sweep(spec, workers=args.workers)
    if args.out == "-":
        write_csv(spec, rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(spec, rows, fh)
    log.info("%d rows of %s written to %s in %.2fs", len(rows), spec.scenario, args.out,
             time.perf_counter() - t0)
    return 0


def _cmd_point(args, extra: list[str]) -> int:
    sc = get_scenario(args.scenario)
    overrides = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        key, sep, value = tok[2:].partition("=")
        if not sep:
            try:
                value = next(it)
            except StopIteration:
                raise ConfigError(f"--{key} needs a value") from None
        overrides[key] = value
    params = sc.resolve(overrides)
    values = sc.point(params)
    if args.json:
        print(json.dumps({"scenario": sc.name, "params": params,
                          "values": dict(zip(sc.columns, values))}, sort_keys=True))
    else:
        print(f"# {UNITS_BANNER}")
        print(f"# parameters: {json.dumps(params, sort_keys=True)}")
        for name, v in zip(sc.columns, values):
            print(f"{name} = {fmt(v)}")
    return 0


def _cmd_verify(args) -> int:
    names = None if args.scenario == "all" else [args.scenario]
    t0 = time.perf_counter()
    checks = run_checks(names, seed=args.seed)
    elapsed = time.perf_counter() - t0
    failed = [c for c in checks if not c.passed]
    if args.json:
        for c in checks:
            print(json.dumps(c.as_dict(), sort_keys=True))
    else:
        for c in checks:
            print(c.line())
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed in {elapsed:.1f}s")
    return 1 if failed else 0


def _cmd_scenarios(args) -> int:
    for sc in SCENARIOS.values():
        print(f"{sc.name}: {sc.description}")
        print(f"  columns: {', '.join(sc.columns)}")
        for key, f in sc.fields.items():
            print(f"  {key} = {f.default:.6g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opentomo",
        description="Tomograms of open quantum systems: sweeps, single points and self-verification.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep one parameter and write a CSV table")
    p.add_argument("--config", required=True, help="JSON sweep config")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a parameter, 'scenario' or 'sweep.<field>' (repeatable)")
    p.add_argument("--out", required=True, help="output CSV path ('-' for stdout)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")

    p = sub.add_parser("point", help="evaluate one scenario at one parameter point; "
                                     "any scenario parameter may be given as --name value")
    p.add_argument("--scenario", required=True, choices=sorted(SCENARIOS))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run oracle and invariant checks")
    p.add_argument("scenario", nargs="?", default="all", choices=["all", *CHECKS])
    p.add_argument("--json", action="store_true", help="one JSON object per check")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sub.add_parser("scenarios", help="list scenarios, their parameters and defaults")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if extra and args.command != "point":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.command == "sweep":
            if args.workers < 1:
                raise ConfigError("--workers must be >= 1")
            return _cmd_sweep(args)
        if args.command == "point":
            return _cmd_point(args, extra)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_scenarios(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ComputeError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
