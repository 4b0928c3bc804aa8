"""
Tests for the numeric substrate: matrices, PRNG, quadrature, minimization.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from src.errors import MaxIterExceeded, NonHermitianInput, OrderOutOfRange
from src.mathcore import (
    IDENTITY2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    RngStream,
    commutator,
    eig2_hermitian,
    expectation,
    gauss_hermite,
    kron2,
    minimize,
    next_uniform,
    pauli_vector,
    pauli_vector_batch,
)

components = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


class TestPauliAlgebra:
    """Test Pauli matrices and products."""

    def test_squares_are_identity(self):
        """Test sigma_i^2 = 1."""
        for p in (PAULI_X, PAULI_Y, PAULI_Z):
            np.testing.assert_array_equal(p @ p, IDENTITY2)

    def test_commutation(self):
        """Test [sigma_x, sigma_y] = 2i sigma_z."""
        np.testing.assert_allclose(commutator(PAULI_X, PAULI_Y), 2j * PAULI_Z)

    def test_constants_read_only(self):
        """Test that shared constants cannot be mutated."""
        with pytest.raises(ValueError):
            PAULI_X[0, 0] = 5.0

    def test_kron_layout(self):
        """Test Kronecker index order |r, s> -> 2r + s."""
        k = kron2(PAULI_Z, IDENTITY2)
        np.testing.assert_array_equal(np.diag(k).real, [1, 1, -1, -1])
        with pytest.raises(ValueError):
            kron2(np.eye(3), IDENTITY2)

    @given(
        st.tuples(*[st.floats(-1.0, 1.0, allow_nan=False)] * 4),
        st.tuples(*[st.floats(-1.0, 1.0, allow_nan=False)] * 4),
    )
    def test_kron_preserves_hermiticity(self, a, b):
        """Test kron2 of two Hermitian matrices is Hermitian."""
        ma = a[0] * IDENTITY2 + pauli_vector(a[1:])
        mb = b[0] * IDENTITY2 + pauli_vector(b[1:])
        k = kron2(ma, mb)
        assert np.max(np.abs(k - k.conj().T)) <= 1e-13

    def test_batch_matches_scalar(self):
        """Test the vectorised v.sigma."""
        v = np.array([[0.1, -0.2, 0.3], [1.0, 0.0, 0.0]])
        batch = pauli_vector_batch(v)
        for row, m in zip(v, batch):
            np.testing.assert_allclose(m, pauli_vector(row))


class TestExpectation:
    """Test expectation values."""

    def test_singlet_zz(self):
        """Test <singlet| sigma_z x sigma_z |singlet> = -1."""
        psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
        assert expectation(psi, kron2(PAULI_Z, PAULI_Z)) == pytest.approx(-1.0)

    def test_non_hermitian_rejected(self):
        """Test imaginary expectation raises."""
        psi = np.array([1, 1, 0, 0], dtype=complex) / math.sqrt(2)
        m = np.zeros((4, 4), dtype=complex)
        m[0, 1] = 1j
        with pytest.raises(NonHermitianInput):
            expectation(psi, m)

    @given(st.floats(-1.0, 1.0, allow_nan=False), st.floats(-1.0, 1.0, allow_nan=False))
    def test_linear_in_operator(self, x, y):
        """Test <psi|xM + yN|psi> = x<M> + y<N>."""
        psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
        m = kron2(PAULI_Z, PAULI_Z)
        n = kron2(PAULI_X, PAULI_Y) + kron2(PAULI_Y, PAULI_X)
        combined = expectation(psi, x * m + y * n)
        assert combined == pytest.approx(
            x * expectation(psi, m) + y * expectation(psi, n), abs=1e-12
        )

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_non_finite_rejected(self, bad):
        """Test a NaN or infinite operator raises instead of returning NaN."""
        psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
        m = np.array(kron2(PAULI_Z, PAULI_Z))
        m[1, 1] = bad
        with pytest.raises(NonHermitianInput):
            expectation(psi, m)


class TestEig2:
    """Test closed-form 2x2 spectrum."""

    @given(components, components, components, components)
    def test_matches_numpy(self, c, x, y, z):
        """Test agreement with numpy.linalg.eigvalsh."""
        m = c * IDENTITY2 + pauli_vector((x, y, z))
        low, high = eig2_hermitian(m)
        expected = np.linalg.eigvalsh(m)
        assert low <= high
        np.testing.assert_allclose([low, high], expected, rtol=1e-12, atol=1e-12)

    def test_non_hermitian_rejected(self):
        """Test that non-Hermitian input raises."""
        with pytest.raises(NonHermitianInput):
            eig2_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_non_finite_rejected(self):
        """Test NaN entries raise."""
        with pytest.raises(NonHermitianInput):
            eig2_hermitian(np.full((2, 2), np.nan, dtype=complex))


class TestRngStream:
    """Test SplitMix64 stream."""

    def test_golden_outputs(self):
        """Test reference outputs for seed 0."""
        stream = RngStream(0)
        assert stream.next_u64() == 0xE220A8397B1DCDAF
        assert stream.next_u64() == 0x6E789E6AA1B965F4

    def test_uniform_range_and_resolution(self):
        """Test uniforms are 53-bit doubles in [0, 1)."""
        stream = RngStream(123)
        for _ in range(1000):
            u = stream.next_uniform()
            assert 0.0 <= u < 1.0
            assert (u * 2**53).is_integer()

    @given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=0, max_value=50))
    @hyp_settings(max_examples=50)
    def test_block_matches_scalar(self, seed, count):
        """Test the numpy block path is bit-identical to the scalar path."""
        scalar = RngStream(seed)
        block = RngStream(seed)
        expected = [scalar.next_uniform() for _ in range(count)]
        assert block.uniforms(count).tolist() == expected
        assert block.state == scalar.state

    def test_determinism(self):
        """Test same seed gives same sequence."""
        a, b = RngStream(42), RngStream(42)
        assert [next_uniform(a) for _ in range(10)] == [next_uniform(b) for _ in range(10)]

    def test_seeds_differ(self):
        """Test neighbouring seeds start differently."""
        assert RngStream(1).next_uniform() != RngStream(2).next_uniform()

    def test_mean_of_million_draws(self):
        """Test 10^6 uniforms from seed 7 average to 0.5 within 0.002."""
        assert abs(float(RngStream(7).uniforms(10**6).mean()) - 0.5) < 0.002

    def test_spawn_is_deterministic(self):
        """Test child streams derive from the parent sequence."""
        first = RngStream(5).spawn()
        second = RngStream(5).spawn()
        assert first.seed == second.seed
        assert first.next_u64() == second.next_u64()


class TestGaussHermite:
    """Test Gauss-Hermite rules."""

    @pytest.mark.parametrize("order", [1, 2, 5, 16, 33, 64])
    def test_matches_numpy(self, order):
        """Test nodes and weights against numpy.polynomial.hermite."""
        rule = gauss_hermite(order)
        nodes, weights = np.polynomial.hermite.hermgauss(order)
        np.testing.assert_allclose(rule.nodes, nodes, atol=1e-12)
        np.testing.assert_allclose(rule.weights, weights, rtol=1e-9, atol=1e-300)

    @pytest.mark.parametrize("order", [3, 8, 16])
    def test_moments(self, order):
        """Test exactness for monomials up to degree 2n - 1."""
        rule = gauss_hermite(order)
        for k in range(2 * order):
            value = math.fsum(w * x**k for x, w in zip(rule.nodes, rule.weights))
            exact = 0.0 if k % 2 else math.gamma((k + 1) / 2)
            assert value == pytest.approx(exact, rel=1e-10, abs=1e-10)

    def test_odd_order_has_zero_node(self):
        """Test the middle node of odd rules is exactly 0."""
        assert gauss_hermite(7).nodes[3] == 0.0

    @pytest.mark.parametrize("order", [0, 65, 2.5, True])
    def test_order_range(self, order):
        """Test invalid orders raise."""
        with pytest.raises(OrderOutOfRange):
            gauss_hermite(order)


class TestMinimize:
    """Test Nelder-Mead wrapper."""

    def test_quadratic(self):
        """Test convergence on a shifted quadratic."""
        result = minimize(lambda x: float(np.sum((x - 1.5) ** 2)), [0.0, 0.0], tol=1e-14)
        assert result.converged
        np.testing.assert_allclose(result.x, [1.5, 1.5], atol=1e-5)
        assert result.fun < 1e-10

    def test_rosenbrock(self):
        """Test the Rosenbrock valley."""
        def rosen(x):
            return float(100.0 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2)

        result = minimize(rosen, [-1.2, 1.0], tol=1e-14, max_iter=5000)
        assert result.converged
        np.testing.assert_allclose(result.x, [1.0, 1.0], atol=1e-4)

    def test_constant_function(self):
        """Test that a flat function terminates immediately at x0."""
        result = minimize(lambda x: 3.0, [0.5, 0.5, 0.5], step=0.25)
        assert result.converged
        assert result.x == (0.5, 0.5, 0.5)
        assert result.fun == 3.0

    def test_budget_flag_and_strict(self):
        """Test iteration exhaustion is reported, or raised in strict mode."""
        def rosen(x):
            return float(100.0 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2)

        result = minimize(rosen, [-1.2, 1.0], max_iter=5)
        assert not result.converged
        with pytest.raises(MaxIterExceeded) as excinfo:
            minimize(rosen, [-1.2, 1.0], max_iter=5, strict=True)
        assert excinfo.value.value.iterations <= 5

    def test_deterministic(self):
        """Test repeated runs agree exactly."""
        f = lambda x: float(np.sum(np.sin(x) ** 2 + 0.1 * x**2))  # noqa: E731
        assert minimize(f, [1.0, 2.0, -0.5]) == minimize(f, [1.0, 2.0, -0.5])

    def test_dimension_limit(self):
        """Test that more than 8 parameters are rejected."""
        with pytest.raises(ValueError):
            minimize(lambda x: 0.0, np.zeros(9))
