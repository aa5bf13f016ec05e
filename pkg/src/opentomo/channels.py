"""Open-system evolution maps.

* QND (pure dephasing) evolution of an arbitrary spin-j density matrix.
* Squeezed generalized amplitude damping (SGAD) evolution of a qubit.
* Two qubits decaying into a shared vacuum bath, in the dressed basis.
* The qutrit spontaneous-emission (SE) Kraus channel.

Qubit storage order is ``(m=+1/2, m=-1/2) = (|e>, |g>) = (|1>, |0>)``, so that
``sigma_+ = |1><0|`` is the 2x2 matrix with a single 1 in the upper right.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import spherical_jn

from .baths import QndBathSpec, SgadParams, qnd_eta, qnd_gamma
from .errors import DimMismatchError, IncompleteKrausSetError
from .linalg import as_matrix, spin_dim, spin_projections

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_SERIES_CUT = 1e-4


def sinhc(a: complex, t: float) -> complex:
    """``sinh(a t)/a`` with the removable singularity at ``a = 0`` patched."""
    z = a * t
    if abs(z) < _SERIES_CUT:
        return t * (1.0 + z * z / 6.0)
    return cmath.sinh(z) / a


def damped_hyperbolics(a: complex, rate: float, t: float) -> tuple[complex, complex]:
    """``exp(-rate t) cosh(a t)`` and ``exp(-rate t) sinh(a t)/a`` without overflow.

    ``a t`` can be large while the product stays bounded, so the exponentials
    are combined before evaluation.
    """
    z = a * t
    if abs(z) < _SERIES_CUT:
        damp = math.exp(-rate * t)
        return damp * (1.0 + z * z / 2.0), damp * sinhc(a, t)
    up = cmath.exp(z - rate * t)
    down = cmath.exp(-z - rate * t)
    return 0.5 * (up + down), 0.5 * (up - down) / a


def relax(rate: float, t: float) -> float:
    """``(1 - exp(-rate t))/rate``, equal to ``t`` at ``rate = 0``."""
    if rate == 0.0:
        return t
    return -math.expm1(-rate * t) / rate


# --------------------------------------------------------------------- QND


def evolve_qnd_spin(rho0, j, t: float, bath: QndBathSpec) -> np.ndarray:
    """Dephase a spin-j density matrix written over the Dicke states.

    Element (m, n) picks up
    ``exp(-i w (m-n) t) exp(i w^2 (m^2-n^2) eta(t)) exp(-w^2 (m-n)^2 gamma(t))``.
    """
    rho0 = as_matrix(rho0)
    dim = spin_dim(j)
    if rho0.shape[0] != dim:
        raise DimMismatchError(f"spin {j} needs a {dim}x{dim} matrix, got {rho0.shape}")
    if t < 0:
        raise ValueError("time must be non-negative")
    w = bath.omega
    gam = qnd_gamma(t, bath)
    eta = qnd_eta(t, bath)
    m = np.array(spin_projections(j))
    dm = m[:, None] - m[None, :]
    dsq = m[:, None] ** 2 - m[None, :] ** 2
    factor = np.exp(-1j * w * dm * t + 1j * w * w * dsq * eta - w * w * dm * dm * gam)
    return rho0 * factor


# -------------------------------------------------------------------- SGAD


def evolve_sgad_qubit(rho0, t: float, p: SgadParams) -> np.ndarray:
    """Closed-form SGAD evolution of an arbitrary qubit state.

    Implemented term by term as explicit 2x2 products of ``rho0`` with
    ``sigma_z`` and ``sigma_pm``.
    """
    rho0 = as_matrix(rho0)
    if rho0.shape != (2, 2):
        raise DimMismatchError("SGAD evolution acts on 2x2 matrices")
    if t < 0:
        raise ValueError("time must be non-negative")
    gb, ap, w, g0 = p.gamma_beta, p.alpha_prime, p.omega, p.gamma0
    e_full = math.exp(-gb * t)
    # ch, sh carry the exp(-gamma_beta t / 2) envelope
    ch, sh = damped_hyperbolics(ap, 0.5 * gb, t)
    f_plus = 1.0 + e_full + 2.0 * ch
    f_minus = 1.0 + e_full - 2.0 * ch
    pop = g0 * relax(gb, t)
    g_plus = pop + 2j * w * sh
    g_minus = pop - 2j * w * sh

    sz, sp, sm = SIGMA_Z, SIGMA_PLUS, SIGMA_MINUS
    out = 0.25 * rho0 * f_plus
    out = out + 0.25 * (sz @ rho0 @ sz) * f_minus
    out = out - 0.25 * (rho0 @ sz) * g_minus
    out = out - 0.25 * (sz @ rho0) * g_plus
    out = out - g0 * sh * (p.M * (sp @ rho0 @ sp) + np.conj(p.M) * (sm @ rho0 @ sm))
    out = out + relax(gb, t) * (p.gamma_plus * (sm @ rho0 @ sp) + p.gamma_minus * (sp @ rho0 @ sm))
    return out


def sgad_acs_density(alpha: float, beta: float, t: float, p: SgadParams) -> np.ndarray:
    """Element-wise SGAD solution for an initial spin-1/2 atomic coherent state."""
    gb, ap, w = p.gamma_beta, p.alpha_prime, p.omega
    e_full = math.exp(-gb * t)
    ch, sh = damped_hyperbolics(ap, 0.5 * gb, t)
    upper = math.sin(alpha / 2) ** 2 * e_full + p.gamma_minus * relax(gb, t)
    lower = math.cos(alpha / 2) ** 2 * e_full + p.gamma_plus * relax(gb, t)
    eb = cmath.exp(1j * beta)
    ud = 0.5 * math.sin(alpha) * ((ch - 1j * w * sh) / eb - p.gamma0 * p.M * sh * eb)
    du = 0.5 * math.sin(alpha) * ((ch + 1j * w * sh) * eb - p.gamma0 * np.conj(p.M) * sh / eb)
    return np.array([[upper, ud], [du, lower]], dtype=complex)


# --------------------------------------------------------------- two qubits


@dataclass(frozen=True)
class TwoQubitGeometry:
    Gamma: float
    k0: float
    r12: float
    mu_dot_r: float = 0.0
    omega0: float = 1.0

    def __post_init__(self):
        if self.r12 <= 0:
            raise ValueError("inter-qubit distance must be positive")
        if abs(self.mu_dot_r) > 1:
            raise ValueError("mu_dot_r is a cosine and must lie in [-1, 1]")


@dataclass(frozen=True)
class CollectiveRates:
    Gamma12: float
    Omega12: float


def collective_rates(g: TwoQubitGeometry) -> CollectiveRates:
    """Collective decay ``Gamma12 = Gamma F(k0 r12)`` and dipole shift ``Omega12``."""
    x = g.k0 * g.r12
    mu2 = g.mu_dot_r**2
    # sin x/x = j0(x) and cos x/x^2 - sin x/x^3 = -j1(x)/x, stable as x -> 0
    F = 1.5 * ((1.0 - mu2) * spherical_jn(0, x) - (1.0 - 3.0 * mu2) * spherical_jn(1, x) / x)
    omega = 0.75 * g.Gamma * (
        -(1.0 - mu2) * math.cos(x) / x
        + (1.0 - 3.0 * mu2) * (math.sin(x) / x**2 + math.cos(x) / x**3)
    )
    return CollectiveRates(float(g.Gamma * F), float(omega))


DRESSED_LABELS = ("e", "s", "a", "g")
BARE_LABELS = ("ee", "eg", "ge", "gg")  # (m1, m2) = (+,+), (+,-), (-,+), (-,-)

_R2 = 1.0 / math.sqrt(2.0)
# columns: |e>, |s>, |a>, |g> expanded over the bare product basis
DRESSED_TO_BARE = np.array(
    [
        [1, 0, 0, 0],
        [0, _R2, _R2, 0],
        [0, _R2, -_R2, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def dressed_to_bare(rho) -> np.ndarray:
    return DRESSED_TO_BARE @ as_matrix(rho) @ DRESSED_TO_BARE.conj().T


def bare_to_dressed(rho) -> np.ndarray:
    return DRESSED_TO_BARE.conj().T @ as_matrix(rho) @ DRESSED_TO_BARE


def initial_one_excitation_state() -> np.ndarray:
    """``|e1>|g2>`` in the dressed basis: rho_ss = rho_aa = rho_sa = 1/2."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1:3, 1:3] = 0.5
    return rho


def evolve_two_qubit_vacuum(rho0, t: float, g: TwoQubitGeometry) -> np.ndarray:
    """Two identical qubits in a common vacuum bath, dressed basis ``(e, s, a, g)``."""
    rho0 = as_matrix(rho0)
    if rho0.shape != (4, 4):
        raise DimMismatchError("two-qubit states are 4x4")
    if t < 0:
        raise ValueError("time must be non-negative")
    rates = collective_rates(g)
    G, G12, O12, w0 = g.Gamma, rates.Gamma12, rates.Omega12, g.omega0
    gp, gm = G + G12, G - G12
    ee, ss, aa, gg = (rho0[k, k] for k in range(4))
    es, ea, eg = rho0[0, 1], rho0[0, 2], rho0[0, 3]
    sa, sg, ag = rho0[1, 2], rho0[1, 3], rho0[2, 3]

    e_p = math.exp(-gp * t)
    e_m = math.exp(-gm * t)
    e_2 = math.exp(-2.0 * G * t)
    e_1 = math.exp(-G * t)
    # (1 - e^{-x t})/x stays finite as Gamma12 -> +-Gamma
    rel_p, rel_m = relax(gp, t), relax(gm, t)

    n_ee = e_2 * ee
    n_ss = e_p * ss + gp * rel_m * e_p * ee
    n_aa = e_m * aa + gm * rel_p * e_m * ee
    bracket = (
        gp / (2.0 * G) * (1.0 - 2.0 * e_p * (0.5 * gp * rel_m + 0.5))
        + gm / gp * ((1.0 - e_m) - gm / (2.0 * G) * (1.0 - e_2))
    )
    n_gg = gg + (1.0 - e_p) * ss + (1.0 - e_m) * aa + bracket * ee

    n_es = cmath.exp(-1j * (w0 - O12) * t) * math.exp(-0.5 * (3 * G + G12) * t) * es
    n_ea = cmath.exp(-1j * (w0 + O12) * t) * math.exp(-0.5 * (3 * G - G12) * t) * ea
    n_eg = cmath.exp(-2j * w0 * t) * e_1 * eg
    n_sa = cmath.exp(-2j * O12 * t) * e_1 * sa

    s2, c2 = math.sin(2 * O12 * t), math.cos(2 * O12 * t)
    real_part = 2 * O12 * e_1 * s2 + G * (1 - e_1 * c2)
    imag_part = 2 * O12 * (1 - e_1 * c2) - G * e_1 * s2
    denom = G * G + 4 * O12 * O12
    n_sg = cmath.exp(-1j * (w0 + O12) * t) * math.exp(-0.5 * gp * t) * (
        sg + gp / denom * (real_part + 1j * imag_part) * es
    )
    n_ag = cmath.exp(-1j * (w0 - O12) * t) * math.exp(-0.5 * gm * t) * (
        ag - gm / denom * (real_part - 1j * imag_part) * ea
    )

    out = np.diag(np.array([n_ee, n_ss, n_aa, n_gg], dtype=complex))
    upper = {(0, 1): n_es, (0, 2): n_ea, (0, 3): n_eg, (1, 2): n_sa, (1, 3): n_sg, (2, 3): n_ag}
    for (i, k), v in upper.items():
        out[i, k] = v
        out[k, i] = np.conj(v)
    return out


# ------------------------------------------------------------------ qutrit


@dataclass(frozen=True)
class EinsteinCoefficients:
    eta1: float
    eta2: float

    def __post_init__(self):
        if self.eta1 < 0 or self.eta2 < 0:
            raise ValueError("Einstein coefficients must be non-negative")


def se_kraus(t: float, c: EinsteinCoefficients) -> list[np.ndarray]:
    """Kraus operators ``K0, K1, K2`` of the qutrit spontaneous-emission channel."""
    if t < 0:
        raise ValueError("time must be non-negative")
    d1, d2 = math.exp(-c.eta1 * t), math.exp(-c.eta2 * t)
    k0 = np.diag([1.0, math.sqrt(d1), math.sqrt(d2)]).astype(complex)
    k1 = np.zeros((3, 3), dtype=complex)
    k1[0, 1] = math.sqrt(-math.expm1(-c.eta1 * t))
    k2 = np.zeros((3, 3), dtype=complex)
    k2[0, 2] = math.sqrt(-math.expm1(-c.eta2 * t))
    return [k0, k1, k2]


def kraus_completeness_deviation(ks: Sequence[np.ndarray]) -> float:
    d = ks[0].shape[0]
    total = sum(k.conj().T @ k for k in ks)
    return float(np.max(np.abs(total - np.eye(d))))


def kraus_apply(rho0, ks: Sequence[np.ndarray], tol: float = 1e-8) -> np.ndarray:
    """``sum_i K_i rho0 K_i^H`` for a complete Kraus set."""
    rho0 = as_matrix(rho0)
    ks = [as_matrix(k) for k in ks]
    if not ks:
        raise IncompleteKrausSetError("empty Kraus set")
    for k in ks:
        if k.shape != rho0.shape:
            raise DimMismatchError(f"Kraus operator {k.shape} does not match state {rho0.shape}")
    dev = kraus_completeness_deviation(ks)
    if dev > tol:
        raise IncompleteKrausSetError(f"max|sum K^H K - I| = {dev:.3e} > {tol:.1e}")
    return sum(k @ rho0 @ k.conj().T for k in ks)
