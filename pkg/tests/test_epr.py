"""
Tests for the singlet state, binary observables and correlations.
"""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.epr import (
    SWAP,
    binary_observable,
    correlation_analytic,
    correlation_analytic_batch,
    correlation_kernel,
    correlation_oracle,
    correlation_oracle_batch,
    joint_distribution,
    joint_distribution_projective,
    local_unitary,
    singlet_state,
    swap_factors,
)
from src.errors import DegenerateObservable
from src.mathcore import IDENTITY2, PAULI_Z, eig2_hermitian, expectation, kron2
from src.models.schemas import BasisFrame, Direction, X_HAT, Y_HAT, Z_HAT
from src.relspin import alpha_vector, kinematics_from_beta

EQ_BETA_06 = -0.36 / 1.64

unit_vectors = (
    st.tuples(*[st.floats(-1.0, 1.0, allow_nan=False)] * 3)
    .filter(lambda v: 0.1 < math.sqrt(sum(c * c for c in v)))
    .map(Direction.from_vector)
)
open_betas = st.floats(min_value=0.0, max_value=1.0 - 1e-6, allow_nan=False)


class TestSingletState:
    """Test the two-particle singlet."""

    def test_amplitudes(self):
        """Test (0, 1/sqrt2, -1/sqrt2, 0) and normalization."""
        psi = singlet_state().vector
        np.testing.assert_allclose(psi, [0, 1 / math.sqrt(2), -1 / math.sqrt(2), 0])
        assert np.vdot(psi, psi).real == pytest.approx(1.0)

    def test_antisymmetric(self):
        """Test exchange of the particles gives -psi."""
        psi = singlet_state().vector
        np.testing.assert_allclose(swap_factors(psi), -psi)
        np.testing.assert_array_equal(SWAP @ SWAP, np.eye(4))

    def test_sigma_z_correlation(self):
        """Test <sigma_z x sigma_z> = -1."""
        assert expectation(singlet_state(), kron2(PAULI_Z, PAULI_Z)) == pytest.approx(-1.0)

    def test_invariant_under_common_unitary(self):
        """Test U x U leaves the singlet unchanged up to phase."""
        theta = 0.7
        u = np.array(
            [[math.cos(theta), -math.sin(theta) * 1j], [-math.sin(theta) * 1j, math.cos(theta)]]
        ) * np.exp(0.3j)
        psi = singlet_state().vector
        rotated = local_unitary(psi, u)
        overlap = abs(np.vdot(psi, rotated))
        assert overlap == pytest.approx(1.0, abs=1e-12)


class TestBinaryObservable:
    """Test +-1 valued spin observables."""

    def test_along_momentum(self, kin_06):
        """Test a = n gives the helicity sign operator."""
        obs = binary_observable(Z_HAT, kin_06)
        np.testing.assert_allclose(obs.matrix, PAULI_Z, atol=1e-15)

    def test_transverse(self, kin_06):
        """Test a perpendicular to n keeps its direction."""
        obs = binary_observable(X_HAT, kin_06, BasisFrame.LAB)
        assert obs.unit_alpha.as_tuple() == pytest.approx((1.0, 0.0, 0.0))

    def test_degenerate_at_light_speed(self, kin_ultra):
        """Test a perpendicular to n at beta = 1 is rejected."""
        with pytest.raises(DegenerateObservable) as excinfo:
            binary_observable(X_HAT, kin_ultra)
        assert "collapse" in str(excinfo.value)

    @given(unit_vectors, unit_vectors, open_betas)
    def test_involutive_and_traceless(self, a, n, beta):
        """Test M^2 = 1, tr M = 0 and eigenvalues -1, +1."""
        kin = kinematics_from_beta(n, beta)
        for frame in BasisFrame:
            m = binary_observable(a, kin, frame).matrix
            np.testing.assert_allclose(m @ m, IDENTITY2, atol=1e-12)
            assert abs(np.trace(m)) <= 1e-12
            low, high = eig2_hermitian(m)
            assert low == pytest.approx(-1.0, abs=1e-12)
            assert high == pytest.approx(1.0, abs=1e-12)


class TestCorrelationAnalytic:
    """Test the closed-form correlation."""

    def test_orthogonal_axes_at_06(self, orthogonal_axes, kin_06):
        """Test -beta^2/(2 - beta^2) at beta = 0.6."""
        a, b = orthogonal_axes
        assert correlation_analytic(a, b, kin_06) == pytest.approx(EQ_BETA_06, abs=1e-12)

    @pytest.mark.parametrize("beta", [0.0, 0.3, 0.9, 1.0 - 1e-9])
    def test_perpendicular_is_nonrelativistic(self, beta):
        """Test E = -a.b for a, b perpendicular to n."""
        kin = kinematics_from_beta(Z_HAT, beta)
        a = Direction.from_vector([1.0, 0.0, 0.0])
        b = Direction.from_vector([math.cos(1.1), math.sin(1.1), 0.0])
        assert correlation_analytic(a, b, kin) == pytest.approx(-math.cos(1.1), abs=1e-12)
        assert correlation_analytic(a, a, kin) == pytest.approx(-1.0, abs=1e-15)

    def test_ultrarelativistic_signs(self, kin_ultra):
        """Test E = -sign(n.a) sign(n.b) exactly at beta = 1."""
        a = Direction.from_vector([0.9, 0.1, 0.3])
        b = Direction.from_vector([-0.2, 0.5, 0.4])
        b_down = Direction.from_vector([-0.2, 0.5, -0.4])
        assert correlation_analytic(a, b, kin_ultra) == -1.0
        assert correlation_analytic(a, b_down, kin_ultra) == 1.0

    def test_degenerate_propagates(self, kin_ultra):
        """Test perpendicular directions at beta = 1 raise."""
        with pytest.raises(DegenerateObservable):
            correlation_analytic(X_HAT, Z_HAT, kin_ultra)

    @given(unit_vectors, unit_vectors, unit_vectors, open_betas)
    def test_bounds_and_symmetry(self, a, b, n, beta):
        """Test E in [-1, 1], E(a,b) = E(b,a) and E(a,a) = -1."""
        kin = kinematics_from_beta(n, beta)
        e = correlation_analytic(a, b, kin)
        assert -1.0 <= e <= 1.0
        assert e == pytest.approx(correlation_analytic(b, a, kin), abs=1e-15)
        assert correlation_analytic(a, a, kin) == pytest.approx(-1.0, abs=1e-12)

    @given(unit_vectors, unit_vectors, unit_vectors, open_betas)
    def test_n_parity_exact(self, a, b, n, beta):
        """Test E is bit-identical under n -> -n."""
        kin = kinematics_from_beta(n, beta)
        assert correlation_analytic(a, b, kin) == correlation_analytic(a, b, kin.reversed())

    @given(unit_vectors, unit_vectors, unit_vectors, open_betas)
    def test_reduces_to_unit_alpha_product(self, a, b, n, beta):
        """Test E = -alpha^_a . alpha^_b."""
        kin = kinematics_from_beta(n, beta)
        ua = alpha_vector(a, kin)
        ub = alpha_vector(b, kin)
        expected = -float(ua @ ub) / (np.linalg.norm(ua) * np.linalg.norm(ub))
        assert correlation_analytic(a, b, kin) == pytest.approx(expected, abs=1e-12)

    def test_kernel_eps_override(self):
        """Test a custom degeneracy threshold."""
        with pytest.raises(DegenerateObservable):
            correlation_kernel((1.0, 0.0, 0.0), (0.0, 0.0, 1.0), (0.0, 0.0, 1.0), 1e-4, eps=0.1)


class TestCorrelationOracle:
    """Test the explicit 4x4 matrix route."""

    def test_textbook_values(self, kin_rest):
        """Test -a.b at rest."""
        assert correlation_oracle(X_HAT, Y_HAT, kin_rest) == pytest.approx(0.0, abs=1e-15)
        assert correlation_oracle(X_HAT, X_HAT, kin_rest) == pytest.approx(-1.0, abs=1e-15)

    def test_orthogonal_axes_at_06(self, orthogonal_axes, kin_06):
        """Test oracle and closed form agree on the 45 degree axes."""
        a, b = orthogonal_axes
        assert correlation_oracle(a, b, kin_06) == pytest.approx(EQ_BETA_06, abs=1e-12)

    def test_grazing_momentum(self, grazing_n, orthogonal_axes):
        """Test both frames stay finite when the transverse part of n underflows."""
        kin = kinematics_from_beta(grazing_n, 0.6)
        a, b = orthogonal_axes
        for frame in BasisFrame:
            assert correlation_oracle(X_HAT, X_HAT, kin, frame=frame) == pytest.approx(-1.0, abs=1e-12)
            assert correlation_oracle(a, b, kin, frame=frame) == pytest.approx(EQ_BETA_06, abs=1e-12)

    @given(unit_vectors, unit_vectors, unit_vectors, open_betas)
    def test_frames_agree_with_closed_form(self, a, b, n, beta):
        """Test helicity and lab frame oracles match the closed form."""
        kin = kinematics_from_beta(n, beta)
        expected = correlation_analytic(a, b, kin)
        for frame in BasisFrame:
            assert correlation_oracle(a, b, kin, frame=frame) == pytest.approx(expected, abs=1e-12)

    @given(unit_vectors, unit_vectors, unit_vectors, open_betas)
    def test_antiparallel_matches(self, a, b, n, beta):
        """Test particle 2 along -n gives the same correlation."""
        kin = kinematics_from_beta(n, beta)
        expected = correlation_analytic(a, b, kin)
        assert correlation_analytic(a, b, kin, kin.reversed()) == pytest.approx(expected, abs=1e-12)
        assert correlation_oracle(a, b, kin, kin.reversed()) == pytest.approx(expected, abs=1e-12)


class TestBatchKernels:
    """Test vectorised correlation kernels."""

    def test_batch_matches_scalar(self, oblique_n):
        """Test batch closed form and oracle against the scalar path."""
        rng = np.random.default_rng(3)
        a = rng.normal(size=(50, 3))
        b = rng.normal(size=(50, 3))
        a /= np.linalg.norm(a, axis=1, keepdims=True)
        b /= np.linalg.norm(b, axis=1, keepdims=True)
        n = np.tile(oblique_n.as_array(), (50, 1))
        beta = np.linspace(0.0, 0.999, 50)

        analytic = correlation_analytic_batch(a, b, n, beta)
        oracle = correlation_oracle_batch(a, b, n, beta)
        for i in range(50):
            kin = kinematics_from_beta(oblique_n, float(beta[i]))
            scalar = correlation_analytic(Direction.from_vector(a[i]), Direction.from_vector(b[i]), kin)
            assert analytic[i] == pytest.approx(scalar, abs=1e-12)
            assert oracle[i] == pytest.approx(scalar, abs=1e-12)

    def test_batch_flags_degenerate(self):
        """Test degenerate rows become NaN."""
        a = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        b = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]])
        n = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]])
        values = correlation_analytic_batch(a, b, n, np.array([1.0, 1.0]))
        assert math.isnan(values[0])
        assert values[1] == -1.0


class TestJointDistribution:
    """Test outcome probabilities."""

    def test_perfect_anticorrelation(self, kin_rest):
        """Test E = -1 puts all weight on r != s."""
        dist = joint_distribution(Z_HAT, Z_HAT, kin_rest)
        assert dist.p_pm == pytest.approx(0.5)
        assert dist.p_mp == pytest.approx(0.5)
        assert dist.p_pp == 0.0
        assert dist.p_mm == 0.0

    def test_independence(self, kin_rest):
        """Test E = 0 gives a uniform distribution."""
        dist = joint_distribution(X_HAT, Y_HAT, kin_rest)
        for p in dist.as_dict().values():
            assert p == pytest.approx(0.25)

    def test_orthogonal_axes_at_06(self, orthogonal_axes, kin_06):
        """Test P(+,+) = (1 + E)/4 and matches the projector computation."""
        a, b = orthogonal_axes
        dist = joint_distribution(a, b, kin_06)
        assert dist.p_pp == pytest.approx((1 + EQ_BETA_06) / 4, abs=1e-12)
        projective = joint_distribution_projective(a, b, kin_06)
        for key, value in dist.as_dict().items():
            assert projective.prob(*key) == pytest.approx(value, abs=1e-12)
        assert projective.marginal_a(1) == pytest.approx(0.5, abs=1e-12)
        assert projective.marginal_b(-1) == pytest.approx(0.5, abs=1e-12)
