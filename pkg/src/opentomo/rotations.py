"""Jacobi polynomials, Wigner d/D functions and SU(2) rotation unitaries."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi, sqrt

import numpy as np
from scipy.special import binom

from .errors import BadQuantumNumbersError
from .linalg import twice

_TWO_PI = 2.0 * pi


@dataclass(frozen=True)
class EulerAngles:
    """Euler angles (alpha~, beta~, gamma~) fixing the tomographic axis.

    ``alpha_t`` and ``gamma_t`` lie in [0, 2 pi], ``beta_t`` in [0, pi].
    """

    alpha_t: float = 0.0
    beta_t: float = 0.0
    gamma_t: float = 0.0

    def __post_init__(self):
        for name, hi in (("alpha_t", _TWO_PI), ("beta_t", pi), ("gamma_t", _TWO_PI)):
            v = float(getattr(self, name))
            if not (0.0 <= v <= hi + 1e-12):
                raise ValueError(f"{name}={v} outside [0, {hi:.6g}]")
            object.__setattr__(self, name, v)

    @classmethod
    def zero(cls) -> "EulerAngles":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "EulerAngles":
        return cls(rng.uniform(0, _TWO_PI), rng.uniform(0, pi), rng.uniform(0, _TWO_PI))


def jacobi_polynomial(n: int, a: float, b: float, x):
    """Jacobi polynomial ``P_n^{(a,b)}(x)`` by the standard three-term recurrence.

    ``x`` may be a scalar or an array.  When a recurrence denominator vanishes
    (only possible for ``a + b`` a negative integer) the explicit binomial sum
    is used instead.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.ones_like(x)[()]
    apb = a + b
    p_prev = np.ones_like(x)
    p = 0.5 * (a - b + (apb + 2.0) * x)
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        if c1 == 0.0:
            return _jacobi_series(n, a, b, x)
        c2 = (2.0 * k + apb - 1.0) * (a * a - b * b)
        c3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb)
        p_prev, p = p, ((c2 + c3 * x) * p - c4 * p_prev) / c1
    return p[()]


def _jacobi_series(n, a, b, x):
    xm, xp = 0.5 * (x - 1.0), 0.5 * (x + 1.0)
    return sum(binom(n + a, n - s) * binom(n + b, s) * xm**s * xp ** (n - s) for s in range(n + 1))[()]


def _check_numbers(tj: int, tm: int, tmp: int) -> None:
    if tj < 0 or abs(tm) > tj or abs(tmp) > tj or (tj - tm) % 2 or (tj - tmp) % 2:
        raise BadQuantumNumbersError(f"invalid (j, m, m') = ({tj / 2}, {tm / 2}, {tmp / 2})")


def _small_d_twice(tj: int, tm: int, tmp: int, beta):
    # d_{m,m'} = (-1)^(m-m') d_{m',m}: keep m >= m'
    if tm < tmp:
        sign = -1.0 if ((tmp - tm) // 2) % 2 else 1.0
        return sign * _small_d_twice(tj, tmp, tm, beta)
    # d_{m,m'} = d_{-m',-m}: keep m + m' >= 0
    if tm + tmp < 0:
        return _small_d_twice(tj, -tmp, -tm, beta)
    diff = (tm - tmp) // 2
    summ = (tm + tmp) // 2
    n = (tj - tm) // 2
    norm = sqrt(
        factorial((tj + tm) // 2) * factorial((tj - tm) // 2)
        / (factorial((tj + tmp) // 2) * factorial((tj - tmp) // 2))
    )
    sign = -1.0 if diff % 2 else 1.0
    beta = np.asarray(beta, dtype=float)
    half = 0.5 * beta
    return (
        sign * norm * np.cos(half) ** summ * np.sin(half) ** diff
        * jacobi_polynomial(n, float(diff), float(summ), np.cos(beta))
    )


def wigner_small_d(j, m, mp, beta_t):
    """Wigner small-d function ``d^{(j)}_{m,m'}(beta~)``.

    Uses the Jacobi-polynomial form with the phase ``(-1)^{m-m'}`` so that
    ``d^{1/2}_{1/2,-1/2} = -sin(beta~/2)``, plus the symmetries
    ``d_{m,m'} = (-1)^{m-m'} d_{m',m} = d_{-m',-m}`` to keep every exponent
    non-negative.
    """
    tj, tm, tmp = twice(j), twice(m, "m"), twice(mp, "m'")
    _check_numbers(tj, tm, tmp)
    return _small_d_twice(tj, tm, tmp, beta_t)[()]


def wigner_D(j, m, mp, angles: EulerAngles) -> complex:
    """``D^{(j)}_{m,m'} = exp(-i m alpha~) d^{(j)}_{m,m'}(beta~) exp(-i m' gamma~)``."""
    tj, tm, tmp = twice(j), twice(m, "m"), twice(mp, "m'")
    _check_numbers(tj, tm, tmp)
    d = float(_small_d_twice(tj, tm, tmp, angles.beta_t))
    return complex(np.exp(-0.5j * tm * angles.alpha_t) * d * np.exp(-0.5j * tmp * angles.gamma_t))


def small_d_matrix(j, beta_t: float) -> np.ndarray:
    tj = twice(j)
    ms = [tj - 2 * k for k in range(tj + 1)]
    return np.array([[float(_small_d_twice(tj, a, b, beta_t)) for b in ms] for a in ms])


def rotation_matrix(j, angles: EulerAngles) -> np.ndarray:
    """Matrix of ``D^{(j)}_{m1,m1'}`` in storage order (``m = +j`` first)."""
    tj = twice(j)
    ms = np.array([tj - 2 * k for k in range(tj + 1)], dtype=float) / 2.0
    left = np.exp(-1j * ms * angles.alpha_t)
    right = np.exp(-1j * ms * angles.gamma_t)
    return left[:, None] * small_d_matrix(j, angles.beta_t) * right[None, :]


def qubit_unitary(angles: EulerAngles) -> np.ndarray:
    """The explicit 2x2 unitary used for two-qubit tomograms.

    It is not ``rotation_matrix(1/2, angles)``: entrywise it equals
    ``rotation_matrix(1/2, (gamma~, beta~, alpha~))^H``, the inverse rotation
    with the two outer angles exchanged.  Spin tomograms use the D-function
    matrix; this one is kept verbatim for the two-qubit closed forms.
    """
    a, b, g = angles.alpha_t, angles.beta_t, angles.gamma_t
    c, s = np.cos(b / 2.0), np.sin(b / 2.0)
    return np.array(
        [
            [c * np.exp(0.5j * (a + g)), s * np.exp(0.5j * (a - g))],
            [-s * np.exp(-0.5j * (a - g)), c * np.exp(-0.5j * (a + g))],
        ]
    )


def two_qubit_rotation(angles1: EulerAngles, angles2: EulerAngles) -> np.ndarray:
    return np.kron(qubit_unitary(angles1), qubit_unitary(angles2))
