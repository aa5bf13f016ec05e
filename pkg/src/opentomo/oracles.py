"""Independent brute-force checks for the closed forms.

Nothing here reuses the algebra of the closed forms it is meant to test:

* ``lindblad_rk4_sgad`` integrates the SGAD master equation itself, with a
  fixed-step fourth-order Runge-Kutta scheme.
* ``rotated_diagonal_tomogram`` reads a tomogram off ``diag(u rho u^H)``.
* ``brute_discrete_tomogram`` composes the discrete Wigner function and the
  line sums literally, one scalar at a time.
* ``quadrature_normalize`` integrates a density by step-doubling trapezoid.
* ``qnd_gamma_ohmic_t0`` / ``qnd_eta_ohmic`` are the closed-form Ohmic
  kernels at zero temperature, used to check the QND quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .baths import QndBathSpec, SgadParams
from .channels import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z
from .errors import (
    DimMismatchError,
    NonHermitianInputError,
    QuadratureFailure,
    StepSizeTooLargeError,
)
from .linalg import as_matrix, sandwich
from .tomography import FinitePhaseIndices, TomogramVector

TRACE_DRIFT_LIMIT = 1e-6
# RK4 is stable on the negative real axis up to |h lambda| ~ 2.785 and on the
# imaginary axis up to 2 sqrt(2); stay safely inside both
_RK4_STABLE_RADIUS = 2.5


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings."""

    dt: float = 1e-4
    method: str = "rk4"

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.method != "rk4":
            raise ValueError(f"unsupported integrator {self.method!r}")


# ------------------------------------------------------------------- SGAD ODE


def sgad_rhs(rho: np.ndarray, p: SgadParams) -> np.ndarray:
    """Right-hand side of the SGAD master equation, term by term.

    The squeezing terms act on ``rho(t)``, i.e. the last term is read as
    ``-gamma0 M* sigma_- rho(t) sigma_-``.
    """
    sz, sp, sm = SIGMA_Z, SIGMA_PLUS, SIGMA_MINUS
    g0, N, M = p.gamma0, p.N, p.M
    out = -0.5j * p.omega * (sz @ rho - rho @ sz)
    out = out + g0 * (N + 1.0) * (sm @ rho @ sp - 0.5 * sp @ sm @ rho - 0.5 * rho @ sp @ sm)
    out = out + g0 * N * (sp @ rho @ sm - 0.5 * sm @ sp @ rho - 0.5 * rho @ sm @ sp)
    out = out - g0 * M * (sp @ rho @ sp)
    out = out - g0 * np.conj(M) * (sm @ rho @ sm)
    return out


def sgad_generator(p: SgadParams) -> np.ndarray:
    """4x4 matrix of ``sgad_rhs`` acting on row-major ``vec(rho)``.

    Built column by column by feeding the matrix units ``E_ij`` through the
    literal right-hand side, so it inherits no algebra from the closed form.
    """
    L = np.empty((4, 4), dtype=complex)
    for k in range(4):
        e = np.zeros(4, dtype=complex)
        e[k] = 1.0
        L[:, k] = sgad_rhs(e.reshape(2, 2), p).reshape(4)
    return L


def _rk4_linear(L: np.ndarray, y: np.ndarray, h: float, n_steps: int) -> np.ndarray:
    for _ in range(n_steps):
        k1 = L @ y
        k2 = L @ (y + 0.5 * h * k1)
        k3 = L @ (y + 0.5 * h * k2)
        k4 = L @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def lindblad_rk4_sgad_trajectory(rho0, times: Iterable[float], p: SgadParams,
                                 cfg: IntegratorConfig = IntegratorConfig()) -> list[np.ndarray]:
    """Integrate the SGAD master equation and return ``rho(t)`` at each requested time.

    ``times`` must be non-decreasing; integration proceeds from the previous
    output time with steps of at most ``cfg.dt`` (shortened uniformly so that
    every output time is hit exactly).

    Raises
    ------
    StepSizeTooLargeError
        If ``dt`` lies outside the RK4 stability region of the generator, or
        the trace drifts by more than ``TRACE_DRIFT_LIMIT``.
    """
    rho0 = as_matrix(rho0)
    if rho0.shape != (2, 2):
        raise DimMismatchError("the SGAD oracle acts on 2x2 matrices")
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("times must be non-negative and non-decreasing")
    L = sgad_generator(p)
    radius = float(np.max(np.abs(np.linalg.eigvals(L))))
    if cfg.dt * radius > _RK4_STABLE_RADIUS:
        raise StepSizeTooLargeError(
            f"dt={cfg.dt:g} times generator spectral radius {radius:.3g} exceeds {_RK4_STABLE_RADIUS}"
        )
    tr0 = np.trace(rho0)
    y = rho0.reshape(4).copy()
    now = 0.0
    out = []
    for t in times:
        span = t - now
        if span > 0:
            n = max(1, math.ceil(span / cfg.dt - 1e-9))
            y = _rk4_linear(L, y, span / n, n)
            now = t
        rho = y.reshape(2, 2).copy()
        drift = abs(np.trace(rho) - tr0)
        if not np.all(np.isfinite(rho)) or drift > TRACE_DRIFT_LIMIT:
            raise StepSizeTooLargeError(f"trace drift {drift:.3e} at t={t:g} with dt={cfg.dt:g}")
        out.append(rho)
    return out


def lindblad_rk4_sgad(rho0, t: float, p: SgadParams,
                      cfg: IntegratorConfig = IntegratorConfig()) -> np.ndarray:
    """``rho(t)`` from RK4 integration of the SGAD master equation."""
    return lindblad_rk4_sgad_trajectory(rho0, [t], p, cfg)[0]


# ------------------------------------------------------------ tomogram checks


def rotated_diagonal_tomogram(rho, u, labels: Sequence | None = None,
                              tol: float = 1e-12) -> TomogramVector:
    """Tomogram as the diagonal of ``u rho u^H``.

    Raises ``NotUnitary`` (via ``sandwich``) for a non-unitary ``u`` and
    ``NonHermitianInputError`` if the diagonal has an imaginary residue
    above ``tol``.
    """
    rotated = sandwich(u, rho)
    diag = np.diag(rotated)
    residue = float(np.max(np.abs(diag.imag)))
    if residue > tol:
        raise NonHermitianInputError(f"rotated diagonal has imaginary residue {residue:.3e}")
    if labels is None:
        labels = tuple(range(diag.size))
    return TomogramVector(tuple(labels), diag.real)


def brute_discrete_tomogram(rho, idx: FinitePhaseIndices, tol: float = 1e-10) -> TomogramVector:
    """Discrete tomogram by explicit loops over ``(m, chi, Theta)``."""
    rho = as_matrix(rho)
    d = idx.d
    if rho.shape[0] != d:
        raise DimMismatchError(f"state is {rho.shape[0]}-dimensional, indices are for d={d}")
    probs = []
    for m in range(d):
        total = 0.0 + 0.0j
        for chi in range(d):
            a = (idx.t * m - idx.q * chi) % d
            b = (idx.q * m + idx.t * chi) % d
            w = 0.0 + 0.0j
            for theta in range(d):
                phase = np.exp(4j * np.pi * b * theta / d)
                w += phase * rho[(a - theta) % d, (a + theta) % d]
            total += w / d
        if abs(total.imag) > tol:
            raise NonHermitianInputError(f"tomogram entry {m} has imaginary part {total.imag:.3e}")
        probs.append(total.real)
    return TomogramVector(tuple(range(d)), probs)


def quadrature_normalize(curve_fn: Callable, center: float, sigma: float,
                         rtol: float = 1e-13, max_level: int = 20) -> float:
    """Integral of ``curve_fn`` over ``center +- 10 sigma``.

    Composite trapezoid with repeated step halving (old nodes are reused)
    until two successive estimates agree to ``rtol`` relative, or absolutely
    to ``rtol`` when the integral is near zero.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    a, b = center - 10.0 * sigma, center + 10.0 * sigma

    def f(xs):
        try:
            v = np.asarray(curve_fn(xs), dtype=float)
            if v.shape == xs.shape:
                return v
        except (TypeError, ValueError):
            pass
        return np.array([float(curve_fn(x)) for x in xs])

    n = 16
    xs = np.linspace(a, b, n + 1)
    h = (b - a) / n
    ys = f(xs)
    total = float(ys.sum() - 0.5 * (ys[0] + ys[-1]))
    estimate = h * total
    for _ in range(max_level):
        mids = a + h * (np.arange(n) + 0.5)
        total += float(f(mids).sum())
        n *= 2
        h *= 0.5
        new = h * total
        if abs(new - estimate) <= rtol * max(1.0, abs(new)):
            return new
        estimate = new
    raise QuadratureFailure(f"trapezoid did not converge after {n} panels")


# ------------------------------------------------------- analytic QND kernels


def qnd_gamma_ohmic_t0(t: float, bath: QndBathSpec) -> float:
    """Closed-form ``gamma(t)`` for the Ohmic bath at ``T = 0``."""
    if bath.T != 0 or bath.spectral_density is not None:
        raise ValueError("closed form holds only for the built-in Ohmic density at T = 0")
    wc = bath.omega_c

    def L(a):
        return math.log1p((a * wc) ** 2)

    c2r, s2r = math.cosh(2 * bath.r), math.sinh(2 * bath.r)
    cp, sp = math.cos(2 * bath.Phi), math.sin(2 * bath.Phi)
    body = c2r * L(t) + s2r * (
        cp * (L(t) - 0.5 * L(2 * t)) + sp * (math.atan(2 * wc * t) - 2 * math.atan(wc * t))
    )
    return bath.gamma0 / (2 * math.pi) * body


def qnd_eta_ohmic(t: float, bath: QndBathSpec) -> float:
    """Closed-form ``eta(t)`` for the Ohmic bath (temperature independent)."""
    if bath.spectral_density is not None:
        raise ValueError("closed form holds only for the built-in Ohmic density")
    return -bath.gamma0 / math.pi * math.atan(bath.omega_c * t)
