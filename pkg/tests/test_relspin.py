"""
Tests for kinematics and the center-of-mass spin observable.
"""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import InvalidKinematics, InvalidMass, InvalidSpin
from src.mathcore import eig2_hermitian, hermitian_defect, pauli_vector
from src.models.schemas import BasisFrame, Direction, X_HAT, Y_HAT, Z_HAT
from src.relspin import (
    adapted_triad,
    alpha_norm,
    alpha_vector,
    alpha_vector_batch,
    beta_from_momentum,
    commutator_defect,
    helicity_components,
    kinematics_from_beta,
    kinematics_from_momentum,
    spin_component_matrices,
    spin_eigenvalues,
    spin_projection_matrix,
)

unit_vectors = (
    st.tuples(*[st.floats(-1.0, 1.0, allow_nan=False)] * 3)
    .filter(lambda v: 0.1 < math.sqrt(sum(c * c for c in v)))
    .map(Direction.from_vector)
)
betas = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


class TestKinematics:
    """Test beta from mass and momentum."""

    def test_beta_from_momentum(self):
        """Test beta = p / sqrt(p^2 + m^2)."""
        assert beta_from_momentum(1.0, 0.75) == pytest.approx(0.6)
        assert beta_from_momentum(1.0, 0.0) == 0.0

    def test_ultrarelativistic_limit(self):
        """Test beta stays within [0, 1] for huge momenta."""
        beta = beta_from_momentum(1.0, 1e20)
        assert 0.0 < beta <= 1.0

    @pytest.mark.parametrize("mass", [0.0, -1.0, math.inf, math.nan])
    def test_invalid_mass(self, mass):
        """Test non-positive or non-finite masses raise."""
        with pytest.raises(InvalidMass):
            beta_from_momentum(mass, 1.0)

    def test_invalid_momentum(self):
        """Test negative momentum magnitude raises."""
        with pytest.raises(InvalidKinematics):
            beta_from_momentum(1.0, -0.5)

    def test_provenance_recorded(self):
        """Test kinematics keep their mass and momentum."""
        kin = kinematics_from_momentum(Z_HAT, 2.0, 1.5)
        assert kin.provenance.mass == 2.0
        assert kin.beta == pytest.approx(0.6)

    def test_beta_out_of_range(self):
        """Test bare beta validation."""
        with pytest.raises(InvalidKinematics):
            kinematics_from_beta(Z_HAT, 1.2)


class TestAdaptedTriad:
    """Test the helicity frame triad."""

    @given(unit_vectors)
    def test_right_handed_orthonormal(self, n):
        """Test e1' x e2' = n and orthonormality."""
        e1, e2, e3 = adapted_triad(n)
        frame = np.array([e1, e2, e3])
        np.testing.assert_allclose(frame @ frame.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.cross(e1, e2), e3, atol=1e-12)

    @pytest.mark.parametrize(
        "n",
        [
            Direction(x=0.0, y=1e-200, z=1.0),
            Direction(x=1e-300, y=-1e-300, z=-1.0),
            Direction(x=5e-324, y=0.0, z=1.0),
        ],
    )
    def test_tiny_transverse_part(self, n):
        """Test the triad stays finite and orthonormal when n.x^2 + n.y^2 underflows."""
        e1, e2, e3 = adapted_triad(n)
        frame = np.array([e1, e2, e3])
        assert np.all(np.isfinite(frame))
        np.testing.assert_allclose(frame @ frame.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.cross(e1, e2), e3, atol=1e-12)

    @pytest.mark.parametrize("n", [Z_HAT, -Z_HAT])
    def test_polar_axes(self, n):
        """Test e1' = x along the z axis, both orientations."""
        e1, e2, e3 = adapted_triad(n)
        np.testing.assert_array_equal(e1, [1.0, 0.0, 0.0])
        np.testing.assert_allclose(np.cross(e1, e2), e3)

    def test_helicity_components(self):
        """Test components of n itself."""
        n = Direction.from_vector([1.0, 2.0, 2.0])
        np.testing.assert_allclose(helicity_components(n, n), [0.0, 0.0, 1.0], atol=1e-15)


class TestAlpha:
    """Test the alpha map and its norm."""

    def test_transverse_contraction(self, kin_06):
        """Test a perpendicular to n is scaled by sqrt(1 - beta^2)."""
        np.testing.assert_allclose(alpha_vector(X_HAT, kin_06), [0.8, 0.0, 0.0])

    def test_axial_unchanged(self, kin_06):
        """Test a along n is unchanged."""
        np.testing.assert_allclose(alpha_vector(Z_HAT, kin_06), [0.0, 0.0, 1.0])

    @given(unit_vectors, unit_vectors, betas)
    def test_norm_matches_vector(self, a, n, beta):
        """Test |alpha| from the closed form equals the vector norm."""
        kin = kinematics_from_beta(n, beta)
        assert alpha_norm(a, kin) == pytest.approx(
            float(np.linalg.norm(alpha_vector(a, kin))), abs=1e-12
        )

    @given(unit_vectors, unit_vectors, betas)
    def test_norm_bounds(self, a, n, beta):
        """Test sqrt(1 - beta^2) <= |alpha| <= 1."""
        kin = kinematics_from_beta(n, beta)
        norm = alpha_norm(a, kin)
        assert kin.inv_gamma - 1e-12 <= norm <= 1.0 + 1e-12

    @given(unit_vectors, unit_vectors, betas)
    def test_parity(self, a, n, beta):
        """Test alpha is unchanged by n -> -n."""
        kin = kinematics_from_beta(n, beta)
        np.testing.assert_array_equal(alpha_vector(a, kin), alpha_vector(a, kin.reversed()))

    def test_transverse_norm_strictly_decreasing(self, oblique_n):
        """Test |alpha| flattens monotonically with speed for a perpendicular to n."""
        e1, _, _ = adapted_triad(oblique_n)
        a = Direction.from_vector(e1)
        norms = [alpha_norm(a, kinematics_from_beta(oblique_n, float(b))) for b in np.linspace(0, 1, 51)]
        assert np.all(np.diff(norms) < 0.0)
        assert norms[-1] == pytest.approx(0.0, abs=1e-12)

    def test_batch_matches_scalar(self, oblique_n):
        """Test the vectorised alpha map."""
        a = np.array([[1.0, 0.0, 0.0], [0.0, 0.6, 0.8]])
        n = np.tile(oblique_n.as_array(), (2, 1))
        batch = alpha_vector_batch(a, n, np.array([0.3, 0.9]))
        for row, v, beta in zip(batch, a, (0.3, 0.9)):
            kin = kinematics_from_beta(oblique_n, beta)
            np.testing.assert_allclose(row, alpha_vector(Direction.from_vector(v), kin), atol=1e-15)


class TestSpinProjection:
    """Test a.S matrices and spectra."""

    @given(unit_vectors, unit_vectors, betas)
    def test_hermitian_with_expected_spectrum(self, a, n, beta):
        """Test eigenvalues -+|alpha|/2 in both frames."""
        kin = kinematics_from_beta(n, beta)
        for frame in BasisFrame:
            m = spin_projection_matrix(a, kin, frame).matrix
            assert hermitian_defect(m) == 0.0
            low, high = eig2_hermitian(m)
            norm = alpha_norm(a, kin)
            assert low == pytest.approx(-0.5 * norm, abs=1e-12)
            assert high == pytest.approx(0.5 * norm, abs=1e-12)

    def test_finite_for_grazing_momentum(self, grazing_n):
        """Test the helicity matrix of x.S is finite with spectrum -+|alpha|/2."""
        kin = kinematics_from_beta(grazing_n, 0.6)
        m = spin_projection_matrix(X_HAT, kin).matrix
        assert np.all(np.isfinite(m))
        low, high = eig2_hermitian(m)
        assert high == pytest.approx(0.4, abs=1e-12)
        assert low == pytest.approx(-0.4, abs=1e-12)

    def test_helicity_identity(self, oblique_n):
        """Test p.S = p.s at every speed."""
        for beta in (0.0, 0.5, 1.0):
            kin = kinematics_from_beta(oblique_n, beta)
            m = spin_projection_matrix(oblique_n, kin, BasisFrame.LAB).matrix
            np.testing.assert_allclose(m, 0.5 * pauli_vector(oblique_n.as_array()), atol=1e-15)
            helicity = spin_projection_matrix(oblique_n, kin).matrix
            np.testing.assert_allclose(helicity, 0.5 * pauli_vector((0, 0, 1)), atol=1e-15)

    def test_rest_frame_is_pauli(self, oblique_n):
        """Test S = s at beta = 0."""
        kin = kinematics_from_beta(oblique_n, 0.0)
        a = Direction.from_vector([0.2, 0.4, -0.3])
        m = spin_projection_matrix(a, kin, BasisFrame.LAB).matrix
        np.testing.assert_allclose(m, 0.5 * pauli_vector(a.as_array()), atol=1e-15)

    @pytest.mark.parametrize("j", [0.5, 1, 1.5, 2, Fraction(5, 2)])
    def test_higher_spin_eigenvalues(self, j, kin_06, orthogonal_axes):
        """Test eigenvalues j3 |alpha| for j3 = -j..j."""
        a, _ = orthogonal_axes
        values = spin_eigenvalues(j, a, kin_06)
        norm = alpha_norm(a, kin_06)
        assert len(values) == int(2 * j) + 1
        np.testing.assert_allclose(values, [(k - float(j)) * norm for k in range(len(values))])

    @pytest.mark.parametrize("j", [0, -0.5, 0.3, 1.25])
    def test_invalid_spin(self, j, kin_06):
        """Test 2j must be a positive integer."""
        with pytest.raises(InvalidSpin):
            spin_eigenvalues(j, Z_HAT, kin_06)

    def test_perpendicular_spectrum_collapses(self, kin_ultra):
        """Test the transverse spectrum is zero at beta = 1."""
        for a in (X_HAT, Y_HAT):
            assert spin_eigenvalues(0.5, a, kin_ultra) == [0.0, 0.0]


class TestContraction:
    """Test the deformed so(3) algebra of S components."""

    @pytest.mark.parametrize("beta", [0.0, 0.3, 0.6, 0.99, 1.0])
    @pytest.mark.parametrize("frame", list(BasisFrame))
    def test_defects(self, beta, frame, oblique_n):
        """Test [S1,S2] = i(1-beta^2)S3, [S2,S3] = iS1, [S3,S1] = iS2."""
        kin = kinematics_from_beta(oblique_n, beta)
        assert max(commutator_defect(kin, frame)) <= 1e-13

    def test_helicity_matrices_exact(self, kin_06):
        """Test helicity-frame components are scaled Pauli matrices."""
        s1, s2, s3 = spin_component_matrices(kin_06)
        np.testing.assert_allclose(s1, 0.4 * pauli_vector((1, 0, 0)), atol=1e-15)
        np.testing.assert_allclose(s2, 0.4 * pauli_vector((0, 1, 0)), atol=1e-15)
        np.testing.assert_array_equal(s3, 0.5 * pauli_vector((0, 0, 1)))

    def test_transverse_commutator_vanishes(self, kin_ultra):
        """Test [S1, S2] = 0 at beta = 1."""
        s1, s2, _ = spin_component_matrices(kin_ultra)
        np.testing.assert_array_equal(s1 @ s2 - s2 @ s1, np.zeros((2, 2)))
