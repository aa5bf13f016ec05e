"""Closed-form tomograms of open quantum systems, with brute-force oracles.

Units throughout: hbar = k_B = 1.
"""

from .baths import (
    ConstantKernel,
    OpticalBathSpec,
    QndBathSpec,
    SgadParams,
    TabulatedKernel,
    planck_number,
    qnd_eta,
    qnd_gamma,
    sgad_params,
)
from .channels import (
    CollectiveRates,
    EinsteinCoefficients,
    TwoQubitGeometry,
    collective_rates,
    evolve_qnd_spin,
    evolve_sgad_qubit,
    evolve_two_qubit_vacuum,
    kraus_apply,
    se_kraus,
)
from .errors import *  # noqa: F401,F403
from .linalg import assert_density_matrix, atomic_coherent_state, max_abs_deviation, sandwich
from .rotations import (
    EulerAngles,
    jacobi_polynomial,
    rotation_matrix,
    two_qubit_rotation,
    wigner_D,
    wigner_small_d,
)
from .tomography import (
    DiscreteWigner,
    FinitePhaseIndices,
    TomogramCurve,
    TomogramVector,
    acs_qnd_tomogram,
    acs_sgad_tomogram,
    discrete_tomogram,
    discrete_wigner,
    optical_tomogram,
    optical_tomogram_curve,
    qutrit_se_tomogram,
    spin1_tomogram,
    spin_tomogram,
    two_qubit_tomogram,
    weyl_operator,
)

__version__ = "0.1.0"
