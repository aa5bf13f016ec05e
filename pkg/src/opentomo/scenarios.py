"""Named scenarios: parameter schemas, defaults and single-point evaluation.

A scenario turns a flat ``{name: float}`` parameter record into a row of
tomogram components.  Defaults are the standard benchmark settings for each
scenario; every field can be overridden from a config file or the command
line.  All parameters are plain floats so that records can be
swept, serialized and compared without special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .baths import OpticalBathSpec, QndBathSpec, sgad_params
from .channels import (
    EinsteinCoefficients,
    TwoQubitGeometry,
    evolve_two_qubit_vacuum,
    initial_one_excitation_state,
)
from .errors import ComputeError, ConfigError, TomographyError
from .rotations import EulerAngles
from .tomography import (
    acs_qnd_tomogram,
    acs_sgad_tomogram,
    optical_tomogram,
    qutrit_se_tomogram,
    spin1_tomogram,
    two_qubit_tomogram,
)

PI = math.pi
TWO_PI = 2.0 * math.pi
INF = math.inf


@dataclass(frozen=True)
class Field:
    default: float
    lo: float = -INF
    hi: float = INF
    lo_open: bool = False
    doc: str = ""

    def check(self, name: str, value: float) -> None:
        if not math.isfinite(value):
            raise ConfigError(f"{name}={value!r} is not finite")
        below = value <= self.lo if self.lo_open else value < self.lo
        if below or value > self.hi:
            left = "(" if self.lo_open else "["
            raise ConfigError(f"{name}={value!r} outside {left}{self.lo:g}, {self.hi:g}]")


def _angle(default, hi=TWO_PI, doc=""):
    return Field(default, 0.0, hi, doc=doc)


def _nonneg(default, doc=""):
    return Field(default, 0.0, INF, doc=doc)


def _positive(default, doc=""):
    return Field(default, 0.0, INF, lo_open=True, doc=doc)


@dataclass(frozen=True)
class Scenario:
    name: str
    fields: Mapping[str, Field]
    columns: tuple[str, ...]
    evaluate: Callable[[Mapping[str, float]], list[float]]
    description: str = ""

    def defaults(self) -> dict[str, float]:
        return {k: f.default for k, f in self.fields.items()}

    def resolve(self, overrides: Mapping[str, object] | None = None) -> dict[str, float]:
        """Merge ``overrides`` into the defaults and range-check every field."""
        params = self.defaults()
        for key, value in (overrides or {}).items():
            if key not in self.fields:
                raise ConfigError(
                    f"unknown parameter {key!r} for scenario {self.name!r}; "
                    f"known: {', '.join(sorted(self.fields))}"
                )
            try:
                params[key] = float(value)
            except (TypeError, ValueError):
                raise ConfigError(f"{key}={value!r} is not a number") from None
        for key, value in params.items():
            self.fields[key].check(key, value)
        return params

    def point(self, params: Mapping[str, float]) -> list[float]:
        try:
            return [float(v) for v in self.evaluate(params)]
        except ConfigError:
            raise
        except (TomographyError, ValueError, ArithmeticError) as exc:
            raise ComputeError(f"{self.name}: {exc}") from exc


def _euler(p, suffix=""):
    return EulerAngles(p["alpha_t" + suffix], p["beta_t" + suffix], p["gamma_t" + suffix])


# --------------------------------------------------------------- evaluators


def _eval_qnd(p):
    bath = QndBathSpec(T=p["T"], gamma0=p["gamma0"], omega_c=p["omega_c"], r=p["r"],
                       Phi=p["Phi"], omega=p["omega"])
    return list(acs_qnd_tomogram(p["alpha"], p["beta"], _euler(p), p["t"], bath))


def _eval_sgad(p):
    sp = sgad_params(p["T"], p["r"], p["phi"], p["gamma0"], p["omega"])
    return list(acs_sgad_tomogram(p["alpha"], p["beta"], _euler(p), p["t"], sp))


def _eval_two_qubit(p):
    geo = TwoQubitGeometry(Gamma=p["Gamma"], k0=p["k0"], r12=p["r12"],
                           mu_dot_r=p["mu_dot_r"], omega0=p["omega0"])
    rho = evolve_two_qubit_vacuum(initial_one_excitation_state(), p["t"], geo)
    return list(two_qubit_tomogram(rho, _euler(p, "1"), _euler(p, "2")))


def _eval_spin1(p):
    a = complex(p["a_re"], p["a_im"])
    b = complex(p["b_re"], p["b_im"])
    c = complex(p["c_re"], p["c_im"])
    return list(spin1_tomogram(a, b, c, _euler(p)))


def _eval_qutrit(p):
    return list(qutrit_se_tomogram(p["t"], EinsteinCoefficients(p["eta1"], p["eta2"])))


def _eval_optical(p):
    bath = OpticalBathSpec(N=p["N"], r=p["r"], k=p["k"])
    beta = complex(p["beta_re"], p["beta_im"])
    return [optical_tomogram(p["X"], p["theta"], p["t"], beta, bath)]


_ACS_ANGLES = {
    "alpha": Field(PI / 2, 0.0, PI, doc="coherent-state polar angle"),
    "beta": _angle(PI / 3, doc="coherent-state azimuth"),
    "alpha_t": _angle(0.0),
    "beta_t": _angle(PI / 3, PI),
    "gamma_t": _angle(PI / 4),
}

SCENARIOS: dict[str, Scenario] = {
    "qnd": Scenario(
        "qnd",
        {
            **_ACS_ANGLES,
            "t": _nonneg(1.0),
            "T": _nonneg(0.0, "bath temperature"),
            "gamma0": _nonneg(0.1),
            "omega_c": _positive(100.0),
            "r": _nonneg(0.0),
            "Phi": _angle(0.0),
            "omega": _positive(1.0),
        },
        ("w_plus", "w_minus"),
        _eval_qnd,
        "spin-1/2 coherent state under QND dephasing (Ohmic bath)",
    ),
    "sgad": Scenario(
        "sgad",
        {
            **_ACS_ANGLES,
            "t": _nonneg(1.0),
            "T": _nonneg(1.0),
            "gamma0": _nonneg(0.25),
            "r": _nonneg(0.0),
            "phi": _angle(PI),
            "omega": _positive(1.0),
        },
        ("w_plus", "w_minus"),
        _eval_sgad,
        "spin-1/2 coherent state in the squeezed generalized amplitude damping channel",
    ),
    "two_qubit": Scenario(
        "two_qubit",
        {
            "t": _nonneg(1.0),
            "r12": _positive(0.05),
            "Gamma": _nonneg(0.05),
            "k0": _positive(1.0),
            "omega0": Field(1.0),
            "mu_dot_r": Field(0.0, -1.0, 1.0),
            "alpha_t1": _angle(0.0),
            "beta_t1": _angle(PI / 3, PI),
            "gamma_t1": _angle(PI / 3),
            "alpha_t2": _angle(0.0),
            "beta_t2": _angle(PI / 4, PI),
            "gamma_t2": _angle(PI / 4),
        },
        ("w_pp", "w_pm", "w_mp", "w_mm"),
        _eval_two_qubit,
        "two qubits in a common vacuum bath, initially one excitation on qubit 1",
    ),
    "spin1": Scenario(
        "spin1",
        {
            "a_re": Field(1 / math.sqrt(3)),
            "a_im": Field(0.0),
            "b_re": Field(1 / math.sqrt(3)),
            "b_im": Field(0.0),
            "c_re": Field(1 / math.sqrt(3)),
            "c_im": Field(0.0),
            "alpha_t": _angle(0.0),
            "beta_t": _angle(PI / 3, PI),
            "gamma_t": _angle(PI / 4),
        },
        ("w_p1", "w_0", "w_m1"),
        _eval_spin1,
        "pure spin-1 state a|1> + b|0> + c|-1> (normalized internally)",
    ),
    "qutrit": Scenario(
        "qutrit",
        {"t": _nonneg(1.0), "eta1": _nonneg(2.0), "eta2": _nonneg(4.0)},
        ("w0", "w1", "w2"),
        _eval_qutrit,
        "reference qutrit state under spontaneous emission, (t, q) = (0, 1) tomogram",
    ),
    "optical": Scenario(
        "optical",
        {
            "X": Field(1.0),
            "theta": _angle(PI / 3),
            "t": _nonneg(1.0),
            "beta_re": Field(2.0),
            "beta_im": Field(0.0),
            "N": _nonneg(5.0),
            "r": _nonneg(1.0),
            "k": _positive(1.0),
        },
        ("density",),
        _eval_optical,
        "damped coherent state, homodyne quadrature density",
    ),
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ConfigError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 2:
            raise ConfigError("sweep count must be an integer >= 2")
        object.__setattr__(self, "count", int(self.count))

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.count))


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    params: Mapping[str, float]
    axis: SweepAxis

    @classmethod
    def build(cls, scenario: str, params: Mapping[str, object] | None, axis: SweepAxis) -> "SweepSpec":
        sc = get_scenario(scenario)
        if axis.name not in sc.fields:
            raise ConfigError(f"cannot sweep unknown parameter {axis.name!r} of {scenario!r}")
        resolved = sc.resolve(params)
        for v in (axis.start, axis.stop):
            sc.fields[axis.name].check(axis.name, float(v))
        return cls(scenario, resolved, axis)

    def grid(self) -> list[dict[str, float]]:
        out = []
        for v in self.axis.values():
            p = dict(self.params)
            p[self.axis.name] = float(v)
            out.append(p)
        return out
