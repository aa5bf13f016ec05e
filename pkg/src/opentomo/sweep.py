"""Parameter sweeps and their CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from typing import Mapping, Sequence

from .errors import ComputeError, ConfigError
from .scenarios import SweepAxis, SweepSpec, get_scenario

NORM_TOL = 1e-10
UNITS_BANNER = "units: hbar = k_B = 1"


def _evaluate(args):
    scenario, params = args
    return get_scenario(scenario).point(params)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[list[float]]:
    """One row ``[swept value, component...]`` per grid point, in grid order.

    With ``workers > 1`` points are evaluated in worker processes; results
    are collected in grid order, so the table does not depend on scheduling.
    """
    grid = spec.grid()
    jobs = [(spec.scenario, p) for p in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_evaluate(j) for j in jobs]
    vector = get_scenario(spec.scenario).columns != ("density",)
    rows = []
    for p, comps in zip(grid, results):
        if vector and abs(sum(comps) - 1.0) > NORM_TOL:
            raise ComputeError(f"components {comps} at {spec.axis.name}={p[spec.axis.name]!r} do not sum to 1")
        if not vector and comps[0] < 0:
            raise ComputeError(f"negative density at {spec.axis.name}={p[spec.axis.name]!r}")
        rows.append([p[spec.axis.name], *comps])
    return rows


def fmt(x: float) -> str:
    # 17 significant digits round-trip every double
    return "%.17g" % x


def write_csv(spec: SweepSpec, rows: Sequence[Sequence[float]], stream: io.TextIOBase) -> None:
    record = {
        "scenario": spec.scenario,
        "params": dict(sorted(spec.params.items())),
        "sweep": {"name": spec.axis.name, "start": spec.axis.start, "stop": spec.axis.stop,
                  "count": spec.axis.count},
    }
    stream.write(f"# {UNITS_BANNER}\n")
    stream.write(f"# parameters: {json.dumps(record, sort_keys=True)}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([spec.axis.name, *get_scenario(spec.scenario).columns])
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def parse_set(items: Sequence[str]) -> dict[str, str]:
    """``["key=value", ...]`` to a dict; keys may be ``sweep.start`` etc."""
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--set expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def spec_from_config(config: Mapping, overrides: Mapping[str, str] | None = None) -> SweepSpec:
    """Build a validated ``SweepSpec`` from a decoded JSON config.

    Schema::

        {"scenario": "qnd",
         "params": {"T": 1.0, ...},             # optional, defaults otherwise
         "sweep": {"name": "t", "start": 0, "stop": 15, "count": 151}}

    ``overrides`` keys are parameter names, ``scenario``, or ``sweep.<field>``.
    """
    known = {"scenario", "params", "sweep"}
    extra = set(config) - known
    if extra:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
    overrides = dict(overrides or {})
    scenario = overrides.pop("scenario", config.get("scenario"))
    if scenario is None:
        raise ConfigError("config must name a scenario")
    params = dict(config.get("params") or {})
    sweep = dict(config.get("sweep") or {})
    for key, value in overrides.items():
        if key.startswith("sweep."):
            sweep[key[len("sweep."):]] = value
        else:
            params[key] = value
    missing = {"name", "start", "stop", "count"} - set(sweep)
    if missing:
        raise ConfigError(f"sweep needs fields: {', '.join(sorted(missing))}")
    if set(sweep) - {"name", "start", "stop", "count"}:
        raise ConfigError(f"unknown sweep fields: {', '.join(sorted(set(sweep) - {'name', 'start', 'stop', 'count'}))}")
    try:
        axis = SweepAxis(str(sweep["name"]), float(sweep["start"]), float(sweep["stop"]),
                         float(sweep["count"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad sweep specification: {exc}") from None
    return SweepSpec.build(str(scenario), params, axis)
