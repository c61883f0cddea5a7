import json
import math
import unittest

import numpy as np

from ballsolve import (
    EigenIndex,
    SpectralExpansion,
    basis_fn,
    evaluate_solution,
    project,
    rhs_from_name,
    solve,
    truncate,
    weight,
)
from errors import ConditionViolation, QuadratureFailure, UnsupportedDimension
from fractransform import jacobi_eigenvalue
from oracle import QuadratureConfig, fraclap_singular


class TestEigenIndex(unittest.TestCase):

    def test_make(self):
        idx = EigenIndex.make(0, 1, 1, 1, 1.0)
        self.assertAlmostEqual(idx.lam, 3.0, places=12)
        self.assertEqual(idx.key, (0, 1, 1))
        self.assertEqual(EigenIndex.make(2, 5, 0, 3, 0.5).lam, jacobi_eigenvalue(0, 2, 3, 0.5))

    def test_range(self):
        with self.assertRaises(ConditionViolation):
            EigenIndex.make(2, 1, 0, 1, 1.0)
        with self.assertRaises(ConditionViolation):
            EigenIndex.make(1, 3, 0, 2, 1.0)

    def test_order_ignores_eigenvalue(self):
        a = EigenIndex(1, 1, 0, 2.0)
        b = EigenIndex(0, 1, 5, 9.0)
        self.assertLess(b, a)
        self.assertEqual(EigenIndex(0, 1, 0, 1.0), EigenIndex(0, 1, 0, 7.0))


class TestExpansion(unittest.TestCase):

    def setUp(self):
        self.idx = EigenIndex.make(0, 1, 2, 1, 1.0)
        self.expansion = SpectralExpansion(1, 1.0, {self.idx: 0.5}, (1, 4))

    def test_lookup(self):
        self.assertEqual(len(self.expansion), 1)
        self.assertEqual(self.expansion.coefficient(0, 1, 2), 0.5)
        self.assertEqual(self.expansion.coefficient(1, 1, 0), 0.0)

    def test_truncation_bound(self):
        with self.assertRaises(ConditionViolation):
            SpectralExpansion(1, 1.0, {EigenIndex.make(0, 1, 5, 1, 1.0): 1.0}, (1, 4))

    def test_to_dict(self):
        payload = json.loads(json.dumps(self.expansion.to_dict()))
        self.assertEqual(payload["d"], 1)
        self.assertEqual(payload["terms"], [{"l": 0, "m": 1, "n": 2, "coeff": 0.5, "lambda": self.idx.lam}])

    def test_evaluate(self):
        x = np.array([[0.3], [-0.6]])
        expected = 0.5 * basis_fn(self.idx, x, 1, 1.0)
        np.testing.assert_allclose(evaluate_solution(self.expansion, x), expected, rtol=1e-14)
        weighted = evaluate_solution(self.expansion, x, weighted=True)
        np.testing.assert_allclose(weighted, expected * weight(x, 1.0), rtol=1e-14)
        self.assertEqual(evaluate_solution(self.expansion, [1.5], weighted=True), 0.0)

    def test_truncate(self):
        e = SpectralExpansion(1, 1.0, {self.idx: 0.5, EigenIndex.make(0, 1, 0, 1, 1.0): 1e-14}, (1, 4))
        self.assertEqual(len(truncate(e, 1e-12)), 1)
        self.assertEqual(len(truncate(e)), 2)


class TestBasis(unittest.TestCase):

    def test_line_normalization(self):
        """d = 1, l = 0: V = 1/sqrt(2) and P_0 = 1."""
        idx = EigenIndex.make(0, 1, 0, 1, 1.0)
        self.assertAlmostEqual(basis_fn(idx, [0.4], 1, 1.0), 1 / math.sqrt(2), places=14)
        self.assertAlmostEqual(basis_fn(idx, [0.6], 1, 1.0, weighted=True), 0.8 / math.sqrt(2), places=14)

    def test_weight(self):
        self.assertAlmostEqual(float(weight(np.array([0.5]), 1.0)), math.sqrt(0.75), places=14)
        self.assertEqual(float(weight(np.array([0.6, 0.8]), 1.0)), 0.0)

    def test_orthogonality(self):
        """Projecting a basis function returns a single unit coefficient."""
        for d, alpha, key in [(1, 1.5, (1, 1, 4)), (2, 1.0, (1, 2, 3)), (3, 0.5, (2, 4, 5))]:
            idx = EigenIndex.make(*key, d, alpha)
            e = project(lambda y: basis_fn(idx, y, d, alpha), d, alpha, l_max=2, n_max=8)
            for other, c in e.coefficients.items():
                target = 1.0 if other.key == key else 0.0
                self.assertAlmostEqual(c, target, delta=1e-10, msg=f"d={d} {other.key}")

    def test_unsupported(self):
        with self.assertRaises(UnsupportedDimension):
            project(rhs_from_name("one", 4), 4, 1.0)
        with self.assertRaises(ConditionViolation):
            project(rhs_from_name("one", 2), 2, 0.0)


class TestSolve(unittest.TestCase):

    def test_eigen_pair(self):
        idx = EigenIndex.make(0, 1, 1, 1, 1.0)
        u = solve(lambda y: idx.lam * basis_fn(idx, y, 1, 1.0), 1, 1.0, n_max=6)
        for other, c in u.coefficients.items():
            self.assertAlmostEqual(c, 1.0 if other.key == idx.key else 0.0, delta=1e-10)

    def test_constant_rhs(self):
        """g = 1 in d = 1, alpha = 1 is solved by u = 1."""
        u = truncate(solve(rhs_from_name("one", 1), 1, 1.0), 1e-12)
        self.assertEqual(len(u), 1)
        self.assertAlmostEqual(u.coefficient(0, 1, 0), math.sqrt(2), places=12)
        cfg = QuadratureConfig.for_dimension(1)
        for x in (0.0, 0.5, -0.5):
            self.assertAlmostEqual(evaluate_solution(u, [x]), 1.0, places=12)
            residual = fraclap_singular(u.as_pointwise(), [x], 1.0, cfg).real - 1.0
            self.assertLess(abs(residual), 1e-3)

    def test_division_bound(self):
        g = rhs_from_name("r2", 2)
        rhs = project(g, 2, 1.2, l_max=2, n_max=6)
        u = solve(g, 2, 1.2, l_max=2, n_max=6, workers=2)
        lam_min = min(idx.lam for idx in rhs.coefficients)
        for idx, c in rhs.coefficients.items():
            self.assertAlmostEqual(u.coefficients[idx], c / idx.lam, places=14)
            self.assertLessEqual(abs(u.coefficients[idx]), abs(c) / lam_min + 1e-15)

    def test_odd_rhs(self):
        u = truncate(solve(rhs_from_name("x1", 3), 3, 1.0, l_max=1, n_max=4), 1e-10)
        self.assertTrue(all(idx.l == 1 for idx in u.coefficients))

    def test_rough_rhs_fails(self):
        def step(y):
            return (np.abs(y[..., 0]) < 0.5).astype(float)

        with self.assertRaises(QuadratureFailure):
            project(step, 1, 1.0)

    def test_unknown_rhs(self):
        with self.assertRaises(ConditionViolation):
            rhs_from_name("sin", 1)


class TestEigenRelation(unittest.TestCase):
    """The oracle applied to w P_{l,m,n} gives lambda P_{l,m,n} inside the ball."""

    def test_line(self):
        cfg = QuadratureConfig.for_dimension(1)
        points = (-0.7, -0.3, 0.1, 0.45, 0.8)
        for alpha in (0.5, 1.0, 1.5):
            for l in (0, 1):
                for n in range(4):
                    idx = EigenIndex.make(l, 1, n, 1, alpha)
                    e = SpectralExpansion(1, alpha, {idx: 1.0}, (1, 3))
                    f = e.as_pointwise()
                    for x in points:
                        expected = idx.lam * evaluate_solution(e, [x])
                        res = fraclap_singular(f, [x], alpha, cfg).real
                        self.assertAlmostEqual(
                            res, expected, delta=1e-4 * max(1.0, abs(expected)), msg=f"{idx.key} alpha={alpha} x={x}"
                        )


if __name__ == "__main__":
    unittest.main()
