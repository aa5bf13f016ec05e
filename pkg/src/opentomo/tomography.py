"""Tomogram evaluators.

Spin tomograms are probability vectors over the spin projection along a
rotated axis; finite-dimensional (phase-state) tomograms are marginals of the
discrete Wigner function along lines of the d x d phase-number grid; the
optical tomogram is the homodyne quadrature density of a damped coherent
state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .baths import OpticalBathSpec, QndBathSpec, SgadParams, qnd_gamma
from .channels import EinsteinCoefficients, damped_hyperbolics, relax
from .errors import (
    DimMismatchError,
    NonHermitianInputError,
    UnphysicalVarianceError,
    ZeroStateError,
)
from .linalg import as_matrix, spin_dim, spin_projections
from .rotations import EulerAngles, rotation_matrix

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class TomogramVector:
    labels: tuple
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float).copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != probs.size:
            raise ValueError("one label per probability is required")

    def __len__(self):
        return self.probs.size

    def __getitem__(self, i):
        return float(self.probs[i])

    def __iter__(self):
        return iter(self.probs.tolist())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def total(self) -> float:
        return float(np.sum(self.probs))

    def normalization_error(self) -> float:
        return abs(self.total() - 1.0)

    def validate(self, tol: float = 1e-10) -> "TomogramVector":
        """Raise ``ValueError`` unless every entry is in [0, 1] and they sum to 1."""
        if np.any(self.probs < -tol) or np.any(self.probs > 1 + tol):
            raise ValueError(f"tomogram entries outside [0, 1]: {self.probs}")
        if self.normalization_error() > tol:
            raise ValueError(f"tomogram sums to {self.total()!r}")
        return self


def _spin_half_labels():
    return (0.5, -0.5)


# ------------------------------------------------------------------- spins


def spin_tomogram(rho, j, angles: EulerAngles) -> TomogramVector:
    """``w(m1) = sum_{m,m'} D_{m1,m} rho_{m,m'} D*_{m1,m'}`` for every ``m1``."""
    rho = as_matrix(rho)
    dim = spin_dim(j)
    if rho.shape[0] != dim:
        raise DimMismatchError(f"spin {j} needs a {dim}x{dim} matrix, got {rho.shape}")
    D = rotation_matrix(j, angles)
    w = np.einsum("am,mn,an->a", D, rho, D.conj())
    return TomogramVector(tuple(spin_projections(j)), w.real)


def acs_qnd_tomogram(alpha: float, beta: float, angles: EulerAngles, t: float,
                     bath: QndBathSpec) -> TomogramVector:
    """Closed-form tomogram of a spin-1/2 atomic coherent state under QND dephasing."""
    b, g = angles.beta_t, angles.gamma_t
    w = bath.omega
    pop = math.cos(b / 2) ** 2 - math.cos(b) * math.cos(alpha / 2) ** 2
    damp = math.exp(-w * w * qnd_gamma(t, bath))
    osc = 0.5 * math.sin(b) * math.sin(alpha) * math.cos(w * t + beta + g) * damp
    w1 = pop - osc
    w2 = math.cos(b / 2) ** 2 - math.cos(b) * math.sin(alpha / 2) ** 2 + osc
    return TomogramVector(_spin_half_labels(), [w1, w2])


def acs_sgad_tomogram(alpha: float, beta: float, angles: EulerAngles, t: float,
                      p: SgadParams) -> TomogramVector:
    """Closed-form tomogram of a spin-1/2 atomic coherent state in the SGAD channel."""
    b, g = angles.beta_t, angles.gamma_t
    gb, ap, w = p.gamma_beta, p.alpha_prime, p.omega
    e_full = math.exp(-gb * t)
    ch, sh = damped_hyperbolics(ap, 0.5 * gb, t)
    lower = math.cos(alpha / 2) ** 2 * e_full + p.gamma_plus * relax(gb, t)
    upper = math.sin(alpha / 2) ** 2 * e_full + p.gamma_minus * relax(gb, t)
    coh = (
        0.5 * math.sin(alpha) * cmath.exp(-1j * beta) * (ch - 1j * w * sh)
        - 0.5 * p.gamma0 * p.M * math.sin(alpha) * sh * cmath.exp(1j * beta)
    )
    cross = 0.5 * math.sin(b) * 2.0 * (cmath.exp(-1j * g) * coh).real
    s2, c2 = math.sin(b / 2) ** 2, math.cos(b / 2) ** 2
    w1 = s2 * lower + c2 * upper - cross
    w2 = c2 * lower + s2 * upper + cross
    return TomogramVector(_spin_half_labels(), [w1, w2])


def spin1_tomogram(a: complex, b: complex, c: complex, angles: EulerAngles) -> TomogramVector:
    """Closed-form tomogram of the pure spin-1 state ``N (a, b, c)``."""
    norm2 = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2
    if norm2 == 0.0:
        raise ZeroStateError("(a, b, c) must not all vanish")
    n2 = 1.0 / norm2
    B, G = angles.beta_t, angles.gamma_t
    C, S = math.cos(B), math.sin(B)
    # phases follow D = exp(-i m alpha~) d exp(-i m' gamma~), hence exp(-i gamma~)
    ph1 = cmath.exp(-1j * G)
    ph2 = cmath.exp(-2j * G)
    ab, ac, bc = a * np.conj(b), a * np.conj(c), b * np.conj(c)
    aa, bb, cc = abs(a) ** 2, abs(b) ** 2, abs(c) ** 2
    k = 2.0 * _SQRT2

    def re2(z):  # z + c.c.
        return 2.0 * z.real

    w_p = n2 * (
        aa / 4 * (1 + C) ** 2 + bb / 2 * S**2 + cc / 4 * (1 - C) ** 2
        + re2(-ab * ph1 / k * S * (1 + C) + ac * ph2 / 4 * S**2 - bc * ph1 / k * S * (1 - C))
    )
    w_0 = n2 * (
        aa / 2 * S**2 + bb * C**2 + cc / 2 * S**2
        + re2(ab * ph1 / k * math.sin(2 * B) - ac * ph2 / 2 * S**2 - bc * ph1 / k * math.sin(2 * B))
    )
    w_m = n2 * (
        aa / 4 * (1 - C) ** 2 + bb / 2 * S**2 + cc / 4 * (1 + C) ** 2
        + re2(ab * ph1 / k * S * (1 - C) + ac * ph2 / 4 * S**2 + bc * ph1 / k * S * (1 + C))
    )
    return TomogramVector((1.0, 0.0, -1.0), [w_p, w_0, w_m])


def spin1_density(a: complex, b: complex, c: complex) -> np.ndarray:
    v = np.array([a, b, c], dtype=complex)
    norm2 = float(np.vdot(v, v).real)
    if norm2 == 0.0:
        raise ZeroStateError("(a, b, c) must not all vanish")
    return np.outer(v, v.conj()) / norm2


def two_qubit_tomogram(rho, angles1: EulerAngles, angles2: EulerAngles) -> TomogramVector:
    """Closed-form two-qubit tomogram from a dressed-basis ``(e, s, a, g)`` state.

    Components are ordered ``(m1, m2) = (+,+), (+,-), (-,+), (-,-)``.
    """
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimMismatchError("two-qubit states are 4x4")
    ee, ss, aa, gg = (rho[k, k].real for k in range(4))
    es, ea, eg = rho[0, 1], rho[0, 2], rho[0, 3]
    sa, sg, ag = rho[1, 2], rho[1, 3], rho[2, 3]

    b1, b2, g1, g2 = angles1.beta_t, angles2.beta_t, angles1.gamma_t, angles2.gamma_t
    c1, s1 = math.cos(b1 / 2) ** 2, math.sin(b1 / 2) ** 2
    c2, s2 = math.cos(b2 / 2) ** 2, math.sin(b2 / 2) ** 2
    C1, S1, C2, S2 = math.cos(b1), math.sin(b1), math.cos(b2), math.sin(b2)
    e1, e2, e12 = cmath.exp(1j * g1), cmath.exp(1j * g2), cmath.exp(1j * (g1 + g2))
    cd, sd = math.cos(g1 - g2), math.sin(g1 - g2)
    pair = S1 * S2

    def assemble(diag, zz):
        return 0.25 * (diag + 2.0 * zz.real)

    w1 = assemble(
        4 * ee * c1 * c2 + 4 * gg * s1 * s2 + (aa + ss) * (1 - C1 * C2) - (aa - ss) * pair * cd,
        sa * (C1 - C2 - 1j * pair * sd)
        + _SQRT2 * (((-ea + es) * c2 + (ag + sg) * s2) * S1 * e1 + S2 * e2 * ((ea + es) * c1 - (ag - sg) * s1))
        + e12 * eg * pair,
    )
    w2 = assemble(
        4 * ee * c1 * s2 + 4 * gg * s1 * c2 + (aa + ss) * (1 + C1 * C2) + (aa - ss) * pair * cd,
        sa * (C1 + C2 + 1j * pair * sd)
        + _SQRT2 * (((ag + sg) * c2 - (ea - es) * s2) * S1 * e1 + S2 * e2 * (-(ea + es) * c1 + (ag - sg) * s1))
        - e12 * eg * pair,
    )
    w3 = assemble(
        4 * ee * s1 * c2 + 4 * gg * c1 * s2 + (aa + ss) * (1 + C1 * C2) + (aa - ss) * pair * cd,
        -sa * (C1 + C2 - 1j * pair * sd)
        + _SQRT2 * ((-(ag + sg) * s2 + (ea - es) * c2) * S1 * e1 + S2 * e2 * ((ea + es) * s1 - (ag - sg) * c1))
        - e12 * eg * pair,
    )
    w4 = assemble(
        4 * ee * s1 * s2 + 4 * gg * c1 * c2 + (aa + ss) * (1 - C1 * C2) - (aa - ss) * pair * cd,
        -sa * (C1 - C2 + 1j * pair * sd)
        + _SQRT2 * ((-(ag + sg) * c2 + (ea - es) * s2) * S1 * e1 + S2 * e2 * (-(ea + es) * s1 + (ag - sg) * c1))
        + e12 * eg * pair,
    )
    return TomogramVector(((0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5)), [w1, w2, w3, w4])


# ---------------------------------------------------------- finite phase grid


@dataclass(frozen=True)
class FinitePhaseIndices:
    """Integers ``(t, q)`` selecting a line family on the ``d x d`` phase grid.

    The map ``(m, chi) -> (t m - q chi, q m + t chi)`` must be a bijection of
    the grid for the tomogram to be a probability vector, which holds exactly
    when ``t^2 + q^2`` is invertible modulo ``d``.
    """

    t: int
    q: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be at least 2")
        if (self.t % self.d, self.q % self.d) == (0, 0):
            raise ValueError("(t, q) must not both vanish mod d")
        if math.gcd(self.t * self.t + self.q * self.q, self.d) != 1:
            raise ValueError(
                f"t^2 + q^2 = {self.t**2 + self.q**2} is not invertible mod {self.d}; "
                "the tomogram would not be normalized"
            )


@dataclass(frozen=True, eq=False)
class DiscreteWigner:
    """Discrete Wigner function on the ``d x d`` grid, ``values[chi, m]``."""

    d: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if v.shape != (self.d, self.d):
            raise DimMismatchError(f"expected a {self.d}x{self.d} grid, got {v.shape}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __call__(self, chi: int, m: int) -> float:
        return float(self.values[chi % self.d, m % self.d])

    def total(self) -> float:
        return float(self.values.sum())


def discrete_wigner(rho, d: int | None = None, tol: float = 1e-10) -> DiscreteWigner:
    """Discrete Wigner function of a state written over the phase states.

    ``W(chi, m) = (1/d) sum_Theta exp(4 pi i m Theta / d) <chi-Theta|rho|chi+Theta>``
    with all indices taken mod ``d``.  Only odd ``d`` is accepted: for even
    ``d`` the factor ``exp(4 pi i m Theta / d)`` does not separate
    ``Theta = 0`` from ``Theta = d/2`` and the grid no longer sums to one.

    Raises
    ------
    NonHermitianInputError
        If the imaginary part of any grid value exceeds ``tol``.
    """
    rho = as_matrix(rho)
    d = rho.shape[0] if d is None else int(d)
    if rho.shape[0] != d:
        raise DimMismatchError(f"state is {rho.shape[0]}-dimensional, expected {d}")
    if d % 2 == 0:
        raise ValueError("the discrete Wigner function here needs odd d")
    idx = np.arange(d)
    chi, theta = idx[:, None], idx[None, :]
    # kernel[chi, theta] = <chi - theta| rho |chi + theta>
    kernel = rho[(chi - theta) % d, (chi + theta) % d]
    phase = np.exp(4j * math.pi * np.outer(idx, idx) / d)  # phase[m, theta]
    w = kernel @ phase.T / d
    residue = float(np.max(np.abs(w.imag)))
    if residue > tol:
        raise NonHermitianInputError(f"Wigner grid has imaginary residue {residue:.3e} > {tol:.1e}")
    return DiscreteWigner(d, w.real)


def discrete_tomogram(w: DiscreteWigner, idx: FinitePhaseIndices) -> TomogramVector:
    """``omega(m) = sum_chi W(t m - q chi, q m + t chi)``, indices mod ``d``."""
    d = w.d
    if idx.d != d:
        raise DimMismatchError(f"indices are for d={idx.d}, Wigner grid has d={d}")
    m = np.arange(d)[:, None]
    chi = np.arange(d)[None, :]
    rows = (idx.t * m - idx.q * chi) % d
    cols = (idx.q * m + idx.t * chi) % d
    return TomogramVector(tuple(range(d)), w.values[rows, cols].sum(axis=1))


def weyl_operator(n: int, m: int, d: int) -> np.ndarray:
    """``U_nm = sum_alpha exp(2 pi i alpha n / d) |alpha><alpha + m|``."""
    if not (0 <= n < d and 0 <= m < d):
        raise ValueError(f"Weyl indices ({n}, {m}) outside [0, {d})")
    u = np.zeros((d, d), dtype=complex)
    for a in range(d):
        u[a, (a + m) % d] = cmath.exp(2j * math.pi * a * n / d)
    return u


def density_from_weyl(b, d: int) -> np.ndarray:
    """``I/d + sum_nm b[n, m] U_nm``; ``b[0, 0]`` must vanish."""
    b = np.asarray(b, dtype=complex)
    if b.shape != (d, d):
        raise DimMismatchError(f"expected {d}x{d} coefficients, got {b.shape}")
    if b[0, 0] != 0:
        raise ValueError("b[0, 0] must be zero (fixed by the trace)")
    rho = np.eye(d, dtype=complex) / d
    for n in range(d):
        for m in range(d):
            if b[n, m] != 0:
                rho = rho + b[n, m] * weyl_operator(n, m, d)
    return rho


def qutrit_se_tomogram(time: float, c: EinsteinCoefficients) -> TomogramVector:
    """Closed-form ``(t, q) = (0, 1)`` tomogram of the reference qutrit state
    under spontaneous emission."""
    if time < 0:
        raise ValueError("time must be non-negative")
    e1 = math.exp(-0.5 * c.eta1 * time)
    e2 = math.exp(-0.5 * c.eta2 * time)
    e12 = math.exp(-0.5 * (c.eta1 + c.eta2) * time)
    w0 = (10.0 + 7.0 * (e1 + e2) + e12) / 30.0
    w1 = (20.0 - (e1 + e2) - 13.0 * e12) / 60.0
    w2 = (20.0 - 13.0 * (e1 + e2) + 11.0 * e12) / 60.0
    return TomogramVector((0, 1, 2), [w0, w1, w2])


def qutrit_reference_coherences() -> np.ndarray:
    """A Hermitian, unit-trace qutrit matrix whose coherences reproduce the
    closed-form SE tomogram.

    For ``(t, q) = (0, 1)`` the tomogram depends on the state only through
    ``rho_10 + rho_02 + rho_21`` and on how each of them decays, so matching
    the closed form fixes ``rho_10 = rho_02 = 0.35 + 0.1 sqrt(3) i`` and
    ``rho_21 = 0.05 - 0.2 sqrt(3) i``.  Populations do not enter and are set
    to 1/3.  The matrix is not positive semidefinite; it is a consistency
    device for the closed form, not a physical state.
    """
    s3 = math.sqrt(3.0)
    r10 = 0.35 + 0.1 * s3 * 1j
    r02 = 0.35 + 0.1 * s3 * 1j
    r21 = 0.05 - 0.2 * s3 * 1j
    rho = np.eye(3, dtype=complex) / 3.0
    rho[1, 0], rho[0, 1] = r10, np.conj(r10)
    rho[0, 2], rho[2, 0] = r02, np.conj(r02)
    rho[2, 1], rho[1, 2] = r21, np.conj(r21)
    return rho


# ----------------------------------------------------------------- optical


def _optical_moments(theta: float, time: float, beta_coh: complex, bath: OpticalBathSpec):
    if time < 0:
        raise ValueError("time must be non-negative")
    M = -math.expm1(-2.0 * bath.k * time)
    var = (2.0 * bath.N * M + 1.0) - 2.0 * bath.r * M * math.cos(2.0 * theta)
    if not var > 0.0:
        raise UnphysicalVarianceError(
            f"quadrature variance term {var:.6g} <= 0 (r={bath.r} too large for N={bath.N})"
        )
    center = (complex(beta_coh) * cmath.exp(1j * theta)).real * math.exp(-bath.k * time)
    return center, var


def optical_center_sigma(theta: float, time: float, beta_coh: complex,
                         bath: OpticalBathSpec) -> tuple[float, float]:
    """Peak position and standard deviation of the homodyne density."""
    center, var = _optical_moments(theta, time, beta_coh, bath)
    return center, 0.5 * math.sqrt(var)


def optical_tomogram(X, theta: float, time: float, beta_coh: complex, bath: OpticalBathSpec):
    """Homodyne quadrature density of an initially coherent state ``|beta>``
    in a damping, squeezed thermal reservoir.

    Parameters
    ----------
    X : float or array_like
        Quadrature value(s).
    theta : float
        Local-oscillator phase.
    time : float
        Evolution time; enters through ``M = 1 - exp(-2 k t)``.
    beta_coh : complex
        Initial coherent amplitude.
    bath : OpticalBathSpec
        ``N``, real squeezing ``r`` and dissipation coefficient ``k``.

    Returns
    -------
    float or ndarray
        ``sqrt(2/pi) / sqrt(V) * exp(-2 (c - X)^2 / V)`` with
        ``V = 2 N M + 1 - 2 r M cos(2 theta)``.
    """
    center, var = _optical_moments(theta, time, beta_coh, bath)
    X = np.asarray(X, dtype=float)
    out = math.sqrt(2.0 / math.pi) / math.sqrt(var) * np.exp(-2.0 * (center - X) ** 2 / var)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class TomogramCurve:
    theta: float
    xs: np.ndarray
    density: np.ndarray

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.xs))


def optical_tomogram_curve(theta: float, time: float, beta_coh: complex, bath: OpticalBathSpec,
                           n_points: int = 801, half_width: float = 8.0) -> TomogramCurve:
    """Sample the density on ``n_points`` over ``center +- half_width * sigma``."""
    if n_points < 2:
        raise ValueError("need at least two grid points")
    center, sigma = optical_center_sigma(theta, time, beta_coh, bath)
    xs = np.linspace(center - half_width * sigma, center + half_width * sigma, n_points)
    return TomogramCurve(float(theta), xs, optical_tomogram(xs, theta, time, beta_coh, bath))
