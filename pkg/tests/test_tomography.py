import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opentomo.baths import ConstantKernel, OpticalBathSpec, QndBathSpec, sgad_params
from opentomo.channels import (
    DRESSED_TO_BARE,
    EinsteinCoefficients,
    TwoQubitGeometry,
    evolve_qnd_spin,
    evolve_sgad_qubit,
    evolve_two_qubit_vacuum,
    initial_one_excitation_state,
    kraus_apply,
    se_kraus,
)
from opentomo.errors import (
    DimMismatchError,
    NonHermitianInputError,
    UnphysicalVarianceError,
    ZeroStateError,
)
from opentomo.linalg import atomic_coherent_state, projector, random_density_matrix, random_hermitian_unit_trace, sandwich
from opentomo.rotations import EulerAngles, rotation_matrix, two_qubit_rotation
from opentomo.tomography import (
    DiscreteWigner,
    FinitePhaseIndices,
    TomogramVector,
    acs_qnd_tomogram,
    acs_sgad_tomogram,
    density_from_weyl,
    discrete_tomogram,
    discrete_wigner,
    optical_center_sigma,
    optical_tomogram,
    optical_tomogram_curve,
    qutrit_reference_coherences,
    qutrit_se_tomogram,
    spin1_density,
    spin1_tomogram,
    spin_tomogram,
    two_qubit_tomogram,
    weyl_operator,
)

angles_st = st.builds(EulerAngles, st.floats(0, 2 * math.pi), st.floats(0, math.pi), st.floats(0, 2 * math.pi))
REF_ANGLES = EulerAngles(0.0, math.pi / 3, math.pi / 4)


def kernel_bath(gamma=0.0, eta=0.0, omega=1.0):
    return QndBathSpec(T=0.0, gamma0=0.1, omega_c=100.0, omega=omega,
                       gamma_fn=ConstantKernel(gamma), eta_fn=ConstantKernel(eta))


def spin1_reference(beta_t):
    c = math.cos(beta_t)
    return [(1 + c) ** 2 / 4, (1 - c * c) / 2, (1 - c) ** 2 / 4]


class TestTomogramVector:
    def test_validate(self):
        TomogramVector((0, 1), [0.25, 0.75]).validate()
        with pytest.raises(ValueError):
            TomogramVector((0, 1), [0.5, 0.6]).validate()
        with pytest.raises(ValueError):
            TomogramVector((0, 1), [-0.1, 1.1]).validate()

    def test_label_count(self):
        with pytest.raises(ValueError):
            TomogramVector((0,), [0.5, 0.5])

    def test_immutable(self):
        v = TomogramVector((0, 1), [0.5, 0.5])
        with pytest.raises(ValueError):
            v.probs[0] = 1.0


class TestSpinTomogram:
    def test_top_state_zero_angles(self):
        for j in (0.5, 1, 1.5):
            d = int(2 * j + 1)
            rho = np.zeros((d, d))
            rho[0, 0] = 1
            w = spin_tomogram(rho, j, EulerAngles.zero())
            assert list(w) == [1.0] + [0.0] * (d - 1)

    @given(st.floats(0, math.pi))
    def test_spin_one_top_state(self, b):
        w = spin_tomogram(np.diag([1, 0, 0]), 1, EulerAngles(0.3, b, 1.1))
        assert np.allclose(np.array(w), spin1_reference(b), atol=1e-14)

    def test_equals_rotated_diagonal(self, rng):
        for j in (0.5, 1, 1.5, 2):
            d = int(2 * j + 1)
            for _ in range(20):
                rho = random_density_matrix(d, rng)
                a = EulerAngles.random(rng)
                diag = np.diag(sandwich(rotation_matrix(j, a), rho)).real
                assert np.max(np.abs(np.array(spin_tomogram(rho, j, a)) - diag)) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatchError):
            spin_tomogram(np.eye(2) / 2, 1, EulerAngles.zero())

    def test_labels(self):
        assert spin_tomogram(np.eye(3) / 3, 1, EulerAngles.zero()).labels == (1.0, 0.0, -1.0)


class TestAcsQnd:
    def test_reference_point(self):
        w = acs_qnd_tomogram(math.pi / 2, math.pi / 3, REF_ANGLES, 0.0, kernel_bath())
        expected = 0.75 - 0.25 - 0.5 * math.sin(math.pi / 3) * math.cos(7 * math.pi / 12)
        assert w[0] == pytest.approx(expected, abs=1e-15)
        assert w[0] == pytest.approx(0.612072, abs=1e-6)

    def test_untilted_axis(self):
        for t in (0.0, 1.0, 7.0):
            w = acs_qnd_tomogram(1.1, 0.4, EulerAngles(0.2, 0.0, 0.9), t, kernel_bath(0.3))
            assert w[0] == pytest.approx(math.sin(1.1 / 2) ** 2, abs=1e-15)

    def test_fully_dephased(self):
        a = EulerAngles(0, 1.0, 0.5)
        w = acs_qnd_tomogram(1.2, 0.3, a, 4.0, kernel_bath(1e3))
        assert w[0] == pytest.approx(math.cos(0.5) ** 2 - math.cos(1.0) * math.cos(0.6) ** 2, abs=1e-15)

    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi), angles_st, st.floats(0, 20), st.floats(0, 3),
           st.floats(-2, 0))
    def test_matches_pipeline(self, al, be, ang, t, g, e):
        bath = kernel_bath(g, e, omega=1.3)
        rho = evolve_qnd_spin(projector(atomic_coherent_state(0.5, al, be)), 0.5, t, bath)
        closed = np.array(acs_qnd_tomogram(al, be, ang, t, bath))
        assert np.max(np.abs(closed - np.array(spin_tomogram(rho, 0.5, ang)))) < 1e-12
        assert abs(closed.sum() - 1) < 1e-12

    def test_quadrature_bath(self):
        bath = QndBathSpec(T=1.0, gamma0=0.1, omega_c=100.0)
        ang = EulerAngles(0.0, math.pi / 3, math.pi / 4)
        rho = evolve_qnd_spin(projector(atomic_coherent_state(0.5, math.pi / 2, math.pi / 3)), 0.5, 2.0, bath)
        closed = np.array(acs_qnd_tomogram(math.pi / 2, math.pi / 3, ang, 2.0, bath))
        assert np.max(np.abs(closed - np.array(spin_tomogram(rho, 0.5, ang)))) < 1e-12

    def test_decays_with_temperature(self):
        ts = np.linspace(0, 15, 16)
        limit = 0.75 - 0.5 * 0.5
        for T in (1.0, 2.0):
            bath = QndBathSpec(T=T, gamma0=0.1, omega_c=100.0)
            w = [acs_qnd_tomogram(math.pi / 2, math.pi / 3, REF_ANGLES, t, bath)[0] for t in ts]
            assert abs(w[-1] - limit) < abs(w[0] - limit)


class TestAcsSgad:
    def test_zero_time_reference(self):
        p = sgad_params(1.0, 0.0, math.pi, 0.25, 1.0)
        w = acs_sgad_tomogram(math.pi / 2, math.pi / 3, REF_ANGLES, 0.0, p)
        q = acs_qnd_tomogram(math.pi / 2, math.pi / 3, REF_ANGLES, 0.0, kernel_bath())
        assert w[0] == pytest.approx(q[0], abs=1e-15)

    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi), angles_st, st.floats(0, 30),
           st.floats(0, 10), st.floats(0, 2), st.floats(0, 2 * math.pi), st.floats(0.1, 3))
    def test_zero_coupling_equals_qnd(self, al, be, ang, t, T, r, phi, w):
        p = sgad_params(T, r, phi, 0.0, w)
        a = np.array(acs_sgad_tomogram(al, be, ang, t, p))
        b = np.array(acs_qnd_tomogram(al, be, ang, t, kernel_bath(0.0, 0.0, omega=w)))
        assert np.max(np.abs(a - b)) < 1e-12

    def test_ground_state_limit(self):
        p = sgad_params(0.0, 0.0, 0.0, 0.25, 1.0)
        a = EulerAngles(0, 1.1, 0.3)
        w = acs_sgad_tomogram(0.7, 0.2, a, 500.0, p)
        assert w[0] == pytest.approx(math.sin(1.1 / 2) ** 2, abs=1e-12)

    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi), angles_st, st.floats(0, 20),
           st.floats(0, 10), st.floats(0, 1.5), st.floats(0, 2 * math.pi), st.floats(0, 1))
    def test_matches_pipeline(self, al, be, ang, t, T, r, phi, g0):
        p = sgad_params(T, r, phi, g0, 1.0)
        rho = evolve_sgad_qubit(projector(atomic_coherent_state(0.5, al, be)), t, p)
        closed = np.array(acs_sgad_tomogram(al, be, ang, t, p))
        assert np.max(np.abs(closed - np.array(spin_tomogram(rho, 0.5, ang)))) < 1e-12


class TestSpin1:
    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi))
    def test_top_state(self, b, g):
        w = spin1_tomogram(1, 0, 0, EulerAngles(0, b, g))
        assert np.allclose(np.array(w), spin1_reference(b), atol=1e-14)

    def test_identity_rotation(self):
        s = 1 / math.sqrt(3)
        assert np.allclose(np.array(spin1_tomogram(s, s, s, EulerAngles.zero())), [1 / 3] * 3, atol=1e-15)

    def test_zero_state(self):
        with pytest.raises(ZeroStateError):
            spin1_tomogram(0, 0, 0, EulerAngles.zero())
        with pytest.raises(ZeroStateError):
            spin1_density(0, 0, 0)

    def test_normalization_internal(self):
        a = EulerAngles(0, 0.4, 1.0)
        assert np.allclose(np.array(spin1_tomogram(2, 2j, -2, a)), np.array(spin1_tomogram(1, 1j, -1, a)))

    def test_matches_pipeline(self, rng):
        for _ in range(200):
            a, b, c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            ang = EulerAngles.random(rng)
            closed = np.array(spin1_tomogram(a, b, c, ang))
            pipe = np.array(spin_tomogram(spin1_density(a, b, c), 1, ang))
            assert np.max(np.abs(closed - pipe)) < 1e-12


class TestTwoQubitTomogram:
    def test_zero_angles_initial_state(self):
        w = two_qubit_tomogram(initial_one_excitation_state(), EulerAngles.zero(), EulerAngles.zero())
        assert np.allclose(np.array(w), [0, 1, 0, 0], atol=1e-15)

    def test_matches_rotated_diagonal(self, rng):
        for _ in range(200):
            rho = random_density_matrix(4, rng)
            a1, a2 = EulerAngles.random(rng), EulerAngles.random(rng)
            bare = DRESSED_TO_BARE @ rho @ DRESSED_TO_BARE.conj().T
            diag = np.diag(sandwich(two_qubit_rotation(a1, a2), bare)).real
            assert np.max(np.abs(np.array(two_qubit_tomogram(rho, a1, a2)) - diag)) < 1e-12

    def test_normalized_along_evolution(self, rng):
        g = TwoQubitGeometry(0.05, 1.0, 0.05)
        for t in np.linspace(0, 30, 31):
            rho = evolve_two_qubit_vacuum(initial_one_excitation_state(), t, g)
            w = two_qubit_tomogram(rho, EulerAngles.random(rng), EulerAngles.random(rng))
            assert abs(w.total() - 1) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatchError):
            two_qubit_tomogram(np.eye(2) / 2, EulerAngles.zero(), EulerAngles.zero())


class TestDiscreteWigner:
    def test_maximally_mixed(self):
        for d in (3, 5):
            w = discrete_wigner(np.eye(d) / d)
            assert np.allclose(w.values, 1 / d**2)

    def test_sums_to_one(self, rng):
        for d in (3, 5, 7):
            for _ in range(20):
                assert discrete_wigner(random_density_matrix(d, rng)).total() == pytest.approx(1, abs=1e-12)

    def test_phase_state(self):
        for chi0 in range(3):
            rho = np.zeros((3, 3))
            rho[chi0, chi0] = 1
            w = discrete_wigner(rho)
            assert np.allclose(w.values.sum(axis=1), np.eye(3)[chi0])
            assert np.allclose(w.values[chi0], 1 / 3)

    def test_brute_double_loop(self, rng):
        rho = random_density_matrix(3, rng)
        d = 3
        for chi in range(d):
            for m in range(d):
                val = sum(np.exp(4j * math.pi * m * th / d) * rho[(chi - th) % d, (chi + th) % d]
                          for th in range(d)) / d
                assert discrete_wigner(rho)(chi, m) == pytest.approx(val.real, abs=1e-15)

    def test_non_hermitian_input(self):
        rho = np.eye(3) / 3
        rho = rho.astype(complex)
        rho[0, 1] = 0.2j
        with pytest.raises(NonHermitianInputError):
            discrete_wigner(rho)

    def test_even_dimension_rejected(self):
        with pytest.raises(ValueError):
            discrete_wigner(np.eye(4) / 4)

    def test_grid_shape(self):
        with pytest.raises(DimMismatchError):
            DiscreteWigner(3, np.zeros((2, 2)))


class TestDiscreteTomogram:
    def test_number_line_is_reindexing(self, rng):
        rho = random_density_matrix(3, rng)
        w = discrete_wigner(rho)
        tom = np.array(discrete_tomogram(w, FinitePhaseIndices(0, 1, 3)))
        assert np.allclose(tom, w.values.sum(axis=0))

    def test_reference_state_start(self):
        rho = qutrit_reference_coherences()
        tom = discrete_tomogram(discrete_wigner(rho), FinitePhaseIndices(0, 1, 3))
        assert np.allclose(np.array(tom), [5 / 6, 1 / 12, 1 / 12], atol=1e-15)

    def test_normalized_all_lines(self, rng):
        pairs = [(t, q) for t in range(3) for q in range(3) if (t, q) != (0, 0)]
        for _ in range(30):
            w = discrete_wigner(random_hermitian_unit_trace(3, rng))
            for t, q in pairs:
                assert discrete_tomogram(w, FinitePhaseIndices(t, q, 3)).total() == pytest.approx(1, abs=1e-12)

    def test_index_validation(self):
        with pytest.raises(ValueError):
            FinitePhaseIndices(0, 0, 3)
        with pytest.raises(ValueError):
            FinitePhaseIndices(1, 2, 5)  # 1 + 4 = 0 mod 5
        with pytest.raises(DimMismatchError):
            discrete_tomogram(discrete_wigner(np.eye(3) / 3), FinitePhaseIndices(0, 1, 5))


class TestWeyl:
    def test_identity(self):
        assert np.allclose(weyl_operator(0, 0, 3), np.eye(3))

    def test_clock(self):
        w = np.exp(2j * math.pi / 3)
        assert np.allclose(weyl_operator(1, 0, 3), np.diag([1, w, w * w]))

    def test_unitary(self):
        for n in range(3):
            for m in range(3):
                u = weyl_operator(n, m, 3)
                assert np.allclose(u.conj().T @ u, np.eye(3))

    def test_range(self):
        with pytest.raises(ValueError):
            weyl_operator(3, 0, 3)

    def test_expansion_round_trip(self, rng):
        rho = random_density_matrix(3, rng)
        b = np.array([[np.trace(weyl_operator(n, m, 3).conj().T @ rho) / 3 for m in range(3)] for n in range(3)])
        b[0, 0] = 0
        assert np.allclose(density_from_weyl(b, 3), rho)


class TestQutritClosedForm:
    C = EinsteinCoefficients(2.0, 4.0)

    def test_start(self):
        assert list(qutrit_se_tomogram(0.0, self.C)) == [5 / 6, 1 / 12, 1 / 12]

    def test_late(self):
        assert np.allclose(np.array(qutrit_se_tomogram(60.0, self.C)), [1 / 3] * 3, atol=1e-15)

    def test_reference_time(self):
        w0 = (10 + 7 * (math.exp(-1) + math.exp(-2)) + math.exp(-3)) / 30
        assert qutrit_se_tomogram(1.0, self.C)[0] == pytest.approx(w0, abs=1e-15)

    def test_monotone_towards_third(self):
        ws = np.array([list(qutrit_se_tomogram(t, self.C)) for t in np.linspace(0, 5, 101)])
        dist = np.abs(ws - 1 / 3)
        assert np.all(np.diff(dist, axis=0) <= 1e-15)

    @given(st.floats(0, 50), st.floats(0, 10), st.floats(0, 10))
    def test_matches_kraus_pipeline(self, t, e1, e2):
        c = EinsteinCoefficients(e1, e2)
        rho = kraus_apply(qutrit_reference_coherences(), se_kraus(t, c))
        pipe = np.array(discrete_tomogram(discrete_wigner(rho), FinitePhaseIndices(0, 1, 3)))
        assert np.max(np.abs(pipe - np.array(qutrit_se_tomogram(t, c)))) < 1e-12

    def test_reference_matrix_is_not_a_state(self):
        assert np.linalg.eigvalsh(qutrit_reference_coherences())[0] < -0.1

    def test_negative_time(self):
        with pytest.raises(ValueError):
            qutrit_se_tomogram(-1.0, self.C)


class TestOptical:
    def test_initial_gaussian(self):
        bath = OpticalBathSpec(5, 1, 0.5)
        xs = np.linspace(-4, 4, 33)
        beta = 1.5 - 0.5j
        c = (beta * np.exp(1j * 0.7)).real
        assert np.allclose(optical_tomogram(xs, 0.7, 0.0, beta, bath),
                           math.sqrt(2 / math.pi) * np.exp(-2 * (c - xs) ** 2), atol=1e-15)

    def test_stationary_value(self):
        v = optical_tomogram(0.0, math.pi / 3, 1e3, 2.0, OpticalBathSpec(5, 1, 1.0))
        assert v == pytest.approx(math.sqrt(2 / math.pi) / math.sqrt(12), abs=1e-12)
        assert v == pytest.approx(0.23033, abs=1e-5)

    def test_unphysical(self):
        with pytest.raises(UnphysicalVarianceError):
            optical_tomogram(0.0, 0.0, 10.0, 1.0, OpticalBathSpec(0.0, 1.0, 1.0))

    def test_curve_normalized(self, rng):
        for _ in range(50):
            bath = OpticalBathSpec(rng.uniform(0, 10), rng.uniform(0, 1), rng.uniform(0.1, 2))
            cur = optical_tomogram_curve(rng.uniform(0, 2 * math.pi), rng.uniform(0, 5), 2.0, bath)
            assert cur.xs.size == 801
            assert np.all(cur.density >= 0)
            assert cur.integral() == pytest.approx(1.0, abs=1e-6)

    def test_peak_tracks_center(self):
        bath = OpticalBathSpec(5, 1, 0.4)
        for t in (0.0, 0.5, 2.0):
            cur = optical_tomogram_curve(math.pi / 3, t, 2.0, bath, n_points=4001)
            c, s = optical_center_sigma(math.pi / 3, t, 2.0, bath)
            assert abs(cur.xs[np.argmax(cur.density)] - c) <= cur.xs[1] - cur.xs[0]
            assert c == pytest.approx(2.0 * math.cos(math.pi / 3) * math.exp(-0.4 * t))
