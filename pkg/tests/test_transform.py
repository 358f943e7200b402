import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csrecover import (
    DENSE_CAP,
    DimensionError,
    SizeCapError,
    ThetaOperator,
    dct_forward,
    dct_inverse,
    dense_psi,
    theta_adjoint,
    theta_apply,
)

SQ2 = np.sqrt(2.0)


class TestDctExamples:
    def test_zero_maps_to_zero(self):
        np.testing.assert_array_equal(dct_forward([0.0, 0, 0, 0]), np.zeros(4))

    def test_constant_signal_is_pure_dc(self):
        # DC basis vector is ones/sqrt(4), so the coefficient is 4/sqrt(4) = 2
        np.testing.assert_allclose(dct_forward([1.0, 1, 1, 1]), [2, 0, 0, 0], atol=1e-15)

    def test_two_point_alternating(self):
        # hand evaluation: c1 = sqrt(2/2)*(cos(pi/4) - cos(3pi/4)) = sqrt(2)
        np.testing.assert_allclose(dct_forward([1.0, -1.0]), [0.0, SQ2], atol=1e-15)

    def test_inverse_examples(self):
        np.testing.assert_allclose(dct_inverse([2.0, 0, 0, 0]), np.ones(4), atol=1e-15)
        np.testing.assert_array_equal(dct_inverse([0.0, 0.0]), [0.0, 0.0])
        np.testing.assert_allclose(dct_inverse([0.0, SQ2]), [1.0, -1.0], atol=1e-15)

    def test_empty_input_rejected(self):
        with pytest.raises(DimensionError):
            dct_forward([])
        with pytest.raises(DimensionError):
            dct_inverse(np.empty(0))

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            dct_forward([1.0, np.nan])
        with pytest.raises(ValueError):
            dct_inverse([np.inf, 0.0])


@pytest.mark.parametrize("n", [1, 2, 3, 8, 64, 1000])
def test_parseval_and_round_trip(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        x = rng.standard_normal(n)
        c = dct_forward(x)
        assert abs(np.linalg.norm(c) - np.linalg.norm(x)) <= 1e-10 * max(1.0, np.linalg.norm(x))
        np.testing.assert_allclose(dct_inverse(c), x, rtol=0, atol=1e-12 * max(1.0, np.linalg.norm(x)))
        # other composition order
        np.testing.assert_allclose(dct_forward(dct_inverse(x)), x,
                                   rtol=0, atol=1e-12 * max(1.0, np.linalg.norm(x)))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 300), seed=st.integers(0, 2**31))
def test_round_trip_property(n, seed):
    x = np.random.default_rng(seed).uniform(-5, 5, size=n)
    np.testing.assert_allclose(dct_inverse(dct_forward(x)), x, atol=1e-11 * max(1.0, np.linalg.norm(x)))


class TestDensePsi:
    def test_one_point_is_identity(self):
        np.testing.assert_array_equal(dense_psi(1), [[1.0]])

    def test_two_point_matrix(self):
        expected = np.array([[1 / SQ2, 1 / SQ2], [1 / SQ2, -1 / SQ2]])
        np.testing.assert_allclose(dense_psi(2), expected, atol=1e-15)
        np.testing.assert_allclose(dense_psi(2) @ [0.0, SQ2], [1.0, -1.0], atol=1e-15)

    def test_orthonormal_columns(self):
        for n in (2, 5, 17, 64):
            psi = dense_psi(n)
            np.testing.assert_allclose(psi.T @ psi, np.eye(n), atol=1e-10)

    def test_matches_matrix_free_synthesis(self):
        rng = np.random.default_rng(8)
        psi = dense_psi(8)
        for _ in range(100):
            c = rng.standard_normal(8)
            np.testing.assert_allclose(psi @ c, dct_inverse(c), atol=1e-12)

    def test_cap_refused_with_pointer_to_matrix_free(self):
        with pytest.raises(SizeCapError, match="matrix-free"):
            dense_psi(DENSE_CAP + 1)

    def test_bad_n(self):
        with pytest.raises(DimensionError):
            dense_psi(0)


@pytest.mark.parametrize("n", [3, 5, 129, 1000])
def test_fast_transform_matches_direct_formula(n):
    # the dense construction is the O(n^2) cosine-formula oracle
    psi = dense_psi(n)
    rng = np.random.default_rng(n)
    x = rng.standard_normal(n)
    scale = max(1.0, np.linalg.norm(x))
    np.testing.assert_allclose(dct_forward(x), psi.T @ x, atol=1e-11 * scale)
    np.testing.assert_allclose(dct_inverse(x), psi @ x, atol=1e-11 * scale)


class TestThetaOperator:
    def test_full_sampling_is_synthesis(self):
        op = ThetaOperator(n=16, indices=np.arange(16))
        s = np.random.default_rng(0).standard_normal(16)
        np.testing.assert_allclose(theta_apply(op, s), dct_inverse(s), atol=1e-14)
        x = np.random.default_rng(1).standard_normal(16)
        np.testing.assert_allclose(theta_adjoint(op, x), dct_forward(x), atol=1e-14)

    def test_two_point_row_zero(self):
        op = ThetaOperator(n=2, indices=[0])
        np.testing.assert_allclose(op.apply([1.0, 0.0]), [1 / SQ2], atol=1e-15)
        np.testing.assert_allclose(op.adjoint([1.0]), [1 / SQ2, 1 / SQ2], atol=1e-15)

    def test_zero_maps(self):
        op = ThetaOperator(n=9, indices=[0, 3, 7])
        np.testing.assert_array_equal(op.apply(np.zeros(9)), np.zeros(3))
        np.testing.assert_array_equal(op.adjoint(np.zeros(3)), np.zeros(9))

    @pytest.mark.parametrize("n,p", [(2, 1), (8, 3), (64, 16), (200, 50)])
    def test_adjoint_identity(self, n, p):
        rng = np.random.default_rng(n * 1000 + p)
        idx = np.sort(rng.choice(n, p, replace=False))
        op = ThetaOperator(n=n, indices=idx)
        for _ in range(100):
            s = rng.standard_normal(n)
            y = rng.standard_normal(p)
            lhs = float(op.apply(s) @ y)
            rhs = float(s @ op.adjoint(y))
            assert abs(lhs - rhs) <= 1e-10 * (np.linalg.norm(s) * np.linalg.norm(y))

    @pytest.mark.parametrize("n", [2, 7, 33, 64])
    def test_matches_row_sampled_dense_oracle(self, n):
        rng = np.random.default_rng(n)
        p = max(1, n // 3)
        idx = np.sort(rng.choice(n, p, replace=False))
        op = ThetaOperator(n=n, indices=idx)
        theta = dense_psi(n)[idx]  # the "sample rows of the transformed identity" construction
        np.testing.assert_allclose(op.dense(), theta, atol=1e-12)
        for _ in range(20):
            s = rng.standard_normal(n)
            np.testing.assert_allclose(op.apply(s), theta @ s, atol=1e-12)

    def test_validation(self):
        with pytest.raises(DimensionError):
            ThetaOperator(n=4, indices=[])
        with pytest.raises(DimensionError):
            ThetaOperator(n=4, indices=[1, 1, 2])
        with pytest.raises(DimensionError):
            ThetaOperator(n=4, indices=[3, 1])
        with pytest.raises(DimensionError):
            ThetaOperator(n=4, indices=[0, 4])
        op = ThetaOperator(n=4, indices=[0, 2])
        with pytest.raises(DimensionError):
            op.apply(np.zeros(5))
        with pytest.raises(DimensionError):
            op.adjoint(np.zeros(3))

    def test_dense_cap(self):
        op = ThetaOperator(n=DENSE_CAP + 2, indices=[0, 5])
        with pytest.raises(SizeCapError):
            op.dense()
