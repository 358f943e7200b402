import numpy as np
import pytest

from csrecover import (
    DegenerateColumnError,
    SizeCapError,
    SolverConfig,
    ThetaOperator,
    lasso_cd,
    lasso_kkt_residual,
    owlqn_minimize,
)


def _objective(theta, y, lam, s):
    return 0.5 * float(np.sum((theta @ s - y) ** 2)) + lam * float(np.abs(s).sum())


class TestExamples:
    def test_zero_measurements_give_zero(self):
        theta = np.random.default_rng(0).standard_normal((4, 9))
        res = lasso_cd(theta, np.zeros(4), SolverConfig(lam=0.5, tol=1e-12))
        np.testing.assert_array_equal(res.coeffs, np.zeros(9))
        assert res.converged

    def test_single_unit_column_soft_threshold(self):
        theta = np.array([[1.0], [0.0]])
        res = lasso_cd(theta, np.array([3.0, 0.0]), SolverConfig(lam=1.0, tol=1e-12))
        assert res.coeffs[0] == pytest.approx(2.0, abs=1e-12)

    def test_cross_solver_objective_agreement(self):
        rng = np.random.default_rng(12)
        theta = rng.standard_normal((8, 16))
        theta /= np.linalg.norm(theta, axis=0, keepdims=True)
        y = rng.standard_normal(8)
        lam = 1e-3
        cd = lasso_cd(theta, y, SolverConfig(lam=lam, tol=1e-13, max_iters=100000))

        def g(s):
            return 0.5 * float(np.sum((theta @ s - y) ** 2))

        def grad(s):
            return theta.T @ (theta @ s - y)

        qn = owlqn_minimize(g, grad, np.zeros(16), SolverConfig(lam=lam, tol=1e-14, max_iters=50000))
        fa, fb = cd.objective_final, qn.objective_final
        assert abs(fa - fb) <= 1e-6 * max(abs(fa), abs(fb), 1.0)

    def test_zero_column_rejected(self):
        theta = np.zeros((3, 2))
        theta[:, 0] = [1.0, 2.0, 0.0]
        with pytest.raises(DegenerateColumnError):
            lasso_cd(theta, np.zeros(3), SolverConfig(lam=0.1))


class TestBehavior:
    def test_history_nonincreasing(self):
        rng = np.random.default_rng(44)
        theta = rng.standard_normal((10, 25))
        theta /= np.linalg.norm(theta, axis=0, keepdims=True)
        y = rng.standard_normal(10)
        res = lasso_cd(theta, y, SolverConfig(lam=1e-2, tol=1e-12))
        assert np.all(np.diff(res.objective_history) <= 1e-12)

    def test_kkt_at_convergence(self):
        rng = np.random.default_rng(31)
        theta = rng.standard_normal((16, 48))
        theta /= np.linalg.norm(theta, axis=0, keepdims=True)
        y = rng.standard_normal(16)
        lam = 1e-3
        res = lasso_cd(theta, y, SolverConfig(lam=lam, tol=1e-12, max_iters=200000))
        grad = theta.T @ (theta @ res.coeffs - y)
        assert lasso_kkt_residual(res.coeffs, grad, lam) <= 1e-6

    def test_theta_operator_input_matches_dense(self):
        rng = np.random.default_rng(9)
        idx = np.sort(rng.choice(32, 12, replace=False))
        op = ThetaOperator(n=32, indices=idx)
        y = rng.standard_normal(12)
        cfg = SolverConfig(lam=1e-3, tol=1e-12)
        a = lasso_cd(op, y, cfg)
        b = lasso_cd(op.dense(), y, cfg)
        np.testing.assert_array_equal(a.coeffs, b.coeffs)

    def test_operator_above_cap_refused(self):
        op = ThetaOperator(n=5000, indices=[0, 1, 2])
        with pytest.raises(SizeCapError):
            lasso_cd(op, np.zeros(3), SolverConfig(lam=1e-3))

    def test_warm_start_converges_to_same_solution(self):
        rng = np.random.default_rng(77)
        theta = rng.standard_normal((12, 30))
        theta /= np.linalg.norm(theta, axis=0, keepdims=True)
        y = rng.standard_normal(12)
        cfg = SolverConfig(lam=5e-3, tol=1e-12, max_iters=100000)
        cold = lasso_cd(theta, y, cfg)
        warm = lasso_cd(theta, y, cfg, s0=cold.coeffs)
        np.testing.assert_allclose(warm.coeffs, cold.coeffs, atol=1e-10)
        assert warm.iterations <= cold.iterations

    def test_lambda_zero_solves_least_squares(self):
        rng = np.random.default_rng(15)
        theta = rng.standard_normal((8, 5))  # overdetermined, unique solution
        y = rng.standard_normal(8)
        res = lasso_cd(theta, y, SolverConfig(lam=0.0, tol=1e-14, max_iters=200000))
        expected, *_ = np.linalg.lstsq(theta, y, rcond=None)
        np.testing.assert_allclose(res.coeffs, expected, atol=1e-8)
