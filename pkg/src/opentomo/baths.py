"""Bath parameters: thermal occupation, squeezed-bath moments, SGAD rates and
the QND decoherence kernels gamma(t), eta(t).

Units: hbar = k_B = 1 everywhere.

The QND kernels are written as mode sums over bath oscillators.  Here the sum
``sum_k g_k^2 f(omega_k)`` is replaced by ``int J(w) f(w) dw`` with the Ohmic
spectral density ``J(w) = (gamma0/pi) w exp(-w/omega_c)`` and mode-independent
squeezing ``(r, Phi)``.  Any other density can be passed as
``QndBathSpec.spectral_density``; precomputed kernels can be injected through
``gamma_fn`` / ``eta_fn`` (see ``TabulatedKernel``).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import QuadratureFailure

QUAD_RTOL = 1e-8
# tail beyond this many cutoff frequencies is below 1e-26 of the integrand scale
_CUTOFF_SPAN = 60.0


@dataclass(frozen=True)
class QndBathSpec:
    T: float
    gamma0: float
    omega_c: float
    r: float = 0.0
    Phi: float = 0.0
    omega: float = 1.0
    spectral_density: Optional[Callable[[np.ndarray], np.ndarray]] = None
    gamma_fn: Optional[Callable[[float], float]] = None
    eta_fn: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.T < 0:
            raise ValueError("temperature must be non-negative")
        if self.gamma0 < 0:
            raise ValueError("gamma0 must be non-negative")
        if self.omega_c <= 0:
            raise ValueError("omega_c must be positive")

    def j_over_w(self, w):
        """``J(w)/w`` evaluated for ``w > 0``."""
        w = np.asarray(w, dtype=float)
        if self.spectral_density is None:
            return self.gamma0 / math.pi * np.exp(-w / self.omega_c)
        return np.asarray(self.spectral_density(w), dtype=float) / w


@dataclass(frozen=True)
class SgadParams:
    """Derived parameters of the squeezed generalized amplitude damping channel."""

    N: float
    M: complex
    gamma_plus: float
    gamma_minus: float
    gamma_beta: float
    alpha_prime: complex
    gamma0: float
    omega: float

    @classmethod
    def from_moments(cls, N: float, M: complex, gamma0: float, omega: float) -> "SgadParams":
        gp = gamma0 * (N + 1.0)
        gm = gamma0 * N
        ap = cmath.sqrt(complex(gamma0**2 * abs(M) ** 2 - omega**2, 0.0))
        return cls(float(N), complex(M), gp, gm, gp + gm, ap, float(gamma0), float(omega))


@dataclass(frozen=True)
class OpticalBathSpec:
    N: float
    r: float
    k: float

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("mean thermal photon number must be non-negative")
        if self.k <= 0:
            raise ValueError("dissipation coefficient k must be positive")


def planck_number(omega: float, T: float) -> float:
    """Bose-Einstein occupation ``1/(exp(omega/T) - 1)``; zero at ``T = 0``."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0 or omega / T > 700.0:
        return 0.0
    return 1.0 / math.expm1(omega / T)


def sgad_params(T: float, r: float, phi: float, gamma0: float, omega: float) -> SgadParams:
    """SGAD moments and rates for a squeezed thermal bath at temperature ``T``."""
    if gamma0 < 0:
        raise ValueError("gamma0 must be non-negative")
    n_th = planck_number(omega, T) if omega > 0 else 0.0
    sh2 = math.sinh(r) ** 2
    N = n_th * (math.cosh(r) ** 2 + sh2) + sh2
    M = -0.5 * (2.0 * n_th + 1.0) * cmath.exp(1j * phi) * math.sinh(2.0 * r)
    return SgadParams.from_moments(N, M, gamma0, omega)


def _w_coth(w, T: float):
    """``w * coth(w / 2T)``, with the ``T = 0`` limit ``w``."""
    w = np.asarray(w, dtype=float)
    if T == 0:
        return w
    x = w / (2.0 * T)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(x < 1e-8, 2.0 * T + w * x / 3.0, w / np.tanh(x))
    return out


def _quad(f, a, b, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = integrate.quad(f, a, b, full_output=1, epsabs=1e-14, epsrel=1e-11, limit=1000, **kw)
    return res[0], res[1]


def _check(total: float, err: float, what: str, t: float) -> float:
    if not math.isfinite(total) or err > QUAD_RTOL * abs(total) + 1e-13:
        raise QuadratureFailure(f"{what}({t}) = {total!r} with error estimate {err:.2e}")
    return total


def _split_point(t: float, bath: QndBathSpec) -> tuple[float, bool]:
    top = _CUTOFF_SPAN * bath.omega_c
    ws = 10.0 * math.pi / t
    return (top, False) if ws >= top else (ws, True)


@lru_cache(maxsize=4096)
def _gamma_quadrature(t: float, bath: QndBathSpec) -> float:
    if t == 0.0:
        return 0.0
    c2r, s2r = math.cosh(2 * bath.r), math.sinh(2 * bath.r)
    T, phi2 = bath.T, 2.0 * bath.Phi

    def head(w):
        # 0.5 (J/w) (w coth) * 4 sin^2(wt/2)/w^2 * [cosh2r - sinh2r cos(wt - 2Phi)]
        sinc = np.sinc(w * t / (2.0 * math.pi))
        shape = c2r - s2r * np.cos(w * t - phi2)
        return 0.5 * bath.j_over_w(w) * _w_coth(w, T) * t * t * sinc * sinc * shape

    ws, tail = _split_point(t, bath)
    total, err = _quad(head, 0.0, ws)
    if tail:
        def g(w):
            return 0.5 * bath.j_over_w(w) * _w_coth(w, T) / (w * w)

        # 4 sin^2(x/2)[c - s cos(x - 2Phi)] expanded in harmonics of x = w t
        const = 2.0 * c2r + s2r * math.cos(phi2)
        pieces = [
            (const, None, None),
            (-2.0 * c2r - 2.0 * s2r * math.cos(phi2), "cos", t),
            (-2.0 * s2r * math.sin(phi2), "sin", t),
            (s2r * math.cos(phi2), "cos", 2.0 * t),
            (s2r * math.sin(phi2), "sin", 2.0 * t),
        ]
        for coeff, weight, wvar in pieces:
            if coeff == 0.0:
                continue
            if weight is None:
                v, e = _quad(g, ws, np.inf)
            else:
                v, e = _quad(g, ws, np.inf, weight=weight, wvar=wvar)
            total += coeff * v
            err += abs(coeff) * e
    return _check(total, err, "gamma", t)


@lru_cache(maxsize=4096)
def _eta_quadrature(t: float, bath: QndBathSpec) -> float:
    if t == 0.0:
        return 0.0

    def head(w):
        return -bath.j_over_w(w) * t * np.sinc(w * t / math.pi)

    ws, tail = _split_point(t, bath)
    total, err = _quad(head, 0.0, ws)
    if tail:
        v, e = _quad(lambda w: bath.j_over_w(w) / w, ws, np.inf, weight="sin", wvar=t)
        total -= v
        err += e
    return _check(total, err, "eta", t)


def qnd_gamma(t: float, bath: QndBathSpec) -> float:
    """Decoherence kernel gamma(t) of the QND channel (non-negative, gamma(0)=0)."""
    if t < 0:
        raise ValueError("time must be non-negative")
    if bath.gamma_fn is not None:
        return float(bath.gamma_fn(t))
    return _gamma_quadrature(float(t), bath)


def qnd_eta(t: float, bath: QndBathSpec) -> float:
    """Phase kernel eta(t) of the QND channel (eta(0)=0)."""
    if t < 0:
        raise ValueError("time must be non-negative")
    if bath.eta_fn is not None:
        return float(bath.eta_fn(t))
    return _eta_quadrature(float(t), bath)


class TabulatedKernel:
    """Piecewise-linear kernel from a table, usable as ``gamma_fn``/``eta_fn``."""

    def __init__(self, ts, values):
        self.ts = np.asarray(ts, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if self.ts.ndim != 1 or self.ts.shape != self.values.shape or np.any(np.diff(self.ts) <= 0):
            raise ValueError("kernel table needs strictly increasing times and matching values")

    def __call__(self, t: float) -> float:
        return float(np.interp(t, self.ts, self.values))


class ConstantKernel:
    def __init__(self, value: float):
        self.value = float(value)

    def __call__(self, t: float) -> float:
        return self.value
