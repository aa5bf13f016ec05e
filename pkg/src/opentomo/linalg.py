"""Small dense complex matrices, density-matrix validation and state factories.

Spin conventions used throughout the package: a spin-j object is stored as a
vector or matrix of size ``2j+1`` whose row 0 is ``m = +j`` and whose last row
is ``m = -j``.  Half-integer quantum numbers are handled internally as
"twice" integers (``2j``, ``2m``) so that no float equality is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np

from .errors import (
    DimMismatchError,
    InvalidSpinError,
    NotHermitianError,
    NotPositiveError,
    NotUnitaryError,
    TraceNotOneError,
)

TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_NORM = 1e-10
TOL_PSD = 1e-9
TOL_UNITARY = 1e-10


def twice(x, what: str = "spin") -> int:
    """Return ``2*x`` as an int, raising if ``x`` is not a half-integer."""
    if isinstance(x, (int, np.integer)):
        return 2 * int(x)
    if isinstance(x, Fraction):
        if (2 * x).denominator != 1:
            raise InvalidSpinError(f"{what}={x} is not a half-integer")
        return int(2 * x)
    value = 2.0 * float(x)
    k = round(value)
    if not np.isfinite(value) or abs(value - k) > 1e-9:
        raise InvalidSpinError(f"{what}={x} is not a half-integer")
    return int(k)


def spin_dim(j) -> int:
    tj = twice(j)
    if tj < 1:
        raise InvalidSpinError(f"spin j={j} must be at least 1/2")
    return tj + 1


def spin_projections(j) -> list[float]:
    """Projection labels ``m`` in storage order ``+j, ..., -j``."""
    tj = twice(j)
    return [(tj - 2 * k) / 2 for k in range(tj + 1)]


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


def hermiticity_deviation(m) -> float:
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T)))


def assert_density_matrix(m, tol: float | None = None) -> np.ndarray:
    """Validate ``m`` as a density matrix and return a read-only copy.

    Parameters
    ----------
    m : array_like
        Square complex matrix.
    tol : float, optional
        Overrides all three tolerances (Hermiticity, trace, positivity) when
        given; otherwise the module defaults are used.

    Raises
    ------
    NotHermitianError, TraceNotOneError, NotPositiveError
        The message names the violated invariant and the measured deviation.
    """
    a = as_matrix(m)
    tol_herm = TOL_HERM if tol is None else tol
    tol_trace = TOL_TRACE if tol is None else tol
    tol_psd = TOL_PSD if tol is None else tol

    dev = hermiticity_deviation(a)
    if dev > tol_herm:
        raise NotHermitianError(f"Hermiticity violated: max|m - m^H| = {dev:.3e} > {tol_herm:.1e}")
    tr = np.trace(a)
    dev = abs(tr - 1.0)
    if dev > tol_trace:
        raise TraceNotOneError(f"trace violated: |tr(m) - 1| = {dev:.3e} > {tol_trace:.1e}")
    lam_min = float(np.min(np.linalg.eigvalsh(0.5 * (a + a.conj().T))))
    if lam_min < -tol_psd:
        raise NotPositiveError(f"positivity violated: min eigenvalue = {lam_min:.3e} < -{tol_psd:.1e}")
    return _frozen(a)


def atomic_coherent_state(j, alpha: float, beta: float) -> np.ndarray:
    """Atomic (SU(2)) coherent state amplitudes over the Dicke states.

    The amplitude of ``|j, m>`` is
    ``sqrt(C(2j, j+m)) sin(alpha/2)**(j+m) cos(alpha/2)**(j-m) exp(-i (j+m) beta)``.
    Returned in storage order (``m = +j`` first).
    """
    tj = twice(j)
    if tj < 1:
        raise InvalidSpinError(f"spin j={j} must be at least 1/2")
    s, c = np.sin(alpha / 2.0), np.cos(alpha / 2.0)
    amps = np.empty(tj + 1, dtype=complex)
    for row in range(tj + 1):
        # row k holds m = j - k, so j+m = 2j - k and j-m = k
        up = tj - row
        amps[row] = np.sqrt(comb(tj, up)) * s**up * c**row * np.exp(-1j * up * beta)
    return amps


def projector(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def unitarity_deviation(u) -> float:
    a = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def sandwich(u, rho, tol: float = TOL_UNITARY) -> np.ndarray:
    """Return ``u @ rho @ u^H`` for a unitary ``u``."""
    u = as_matrix(u)
    rho = as_matrix(rho)
    if u.shape != rho.shape:
        raise DimMismatchError(f"unitary {u.shape} does not match state {rho.shape}")
    dev = unitarity_deviation(u)
    if dev > tol:
        raise NotUnitaryError(f"max|u^H u - I| = {dev:.3e} > {tol:.1e}")
    return u @ rho @ u.conj().T


def max_abs_deviation(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random mixed state from a complex Ginibre matrix (Hilbert-Schmidt measure)."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian_unit_trace(d: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian, trace-one matrix with no positivity guarantee."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = 0.5 * (g + g.conj().T)
    return h - (np.trace(h).real - 1.0) / d * np.eye(d)
