import math
import unittest

import numpy as np

from errors import (
    ConditionViolation,
    NonSmoothAtPoint,
    NotIntegrable,
    SlowDecay,
    UnsupportedDimension,
    ValidationError,
)
from fractransform import ball_2f1_transform, jacobi_eigenvalue, power_fullspace
from oracle import (
    REPORT_COLUMNS,
    PointwiseFn,
    QuadratureConfig,
    cauchy_fn,
    compare,
    cosine_fn,
    fraclap_hypersingular,
    fraclap_singular,
    gaussian_fn,
    getoor_fn,
    harmonic_ball_fn,
    jacobi_fn,
    power_ball_fn,
    riesz_quadrature,
    semigroup_check,
    smooth_ball_fn,
)
from specfun import harmonic_basis, jacobi_poly


def getoor_constant(d, alpha):
    return 2**alpha * math.gamma(1 + alpha / 2) * math.gamma((d + alpha) / 2) / math.gamma(d / 2)


class TestConfig(unittest.TestCase):

    def test_dimension_defaults(self):
        self.assertEqual(QuadratureConfig.for_dimension(1).rel_tol, 1e-6)
        self.assertEqual(QuadratureConfig.for_dimension(3).rel_tol, 1e-4)
        self.assertAlmostEqual(QuadratureConfig.for_dimension(2, 1e-3).abs_tol, 1e-4)

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            QuadratureConfig(rel_tol=1e-13)
        with self.assertRaises(ValidationError):
            QuadratureConfig(eps_inner=(1e-5, 1e-4))
        with self.assertRaises(UnsupportedDimension):
            QuadratureConfig.for_dimension(4)
        with self.assertRaises(UnsupportedDimension):
            PointwiseFn(lambda y: y[..., 0], 4)

    def test_pointwise_transforms(self):
        f = gaussian_fn(2)
        g = f.translated([1.0, -2.0])
        self.assertEqual(g.center, (1.0, -2.0))
        self.assertAlmostEqual(float(g(np.array([[1.0, -2.0]]))[0]), 1.0)
        s = power_ball_fn(0, 1, 1).scaled(2.0)
        self.assertEqual(s.kinks, (0.5,))
        self.assertEqual(s.support_radius, 0.5)


class TestFractionalLaplacian(unittest.TestCase):

    def test_getoor_line(self):
        for alpha in (0.5, 1.0, 1.5):
            cfg = QuadratureConfig.for_dimension(1)
            for x in (0.0, 0.3, -0.7):
                res = fraclap_singular(getoor_fn(1, alpha), [x], alpha, cfg)
                expected = getoor_constant(1, alpha)
                self.assertLess(abs(res.real - expected), cfg.rel_tol * expected, f"alpha={alpha}, x={x}")
                self.assertEqual(res.route, "quadrature")

    def test_getoor_plane_and_space(self):
        points = {2: [0.3, 0.1], 3: [0.0, 0.2, 0.4]}
        for d in (2, 3):
            cfg = QuadratureConfig.for_dimension(d)
            for alpha in (0.5, 1.0, 1.5):
                res = fraclap_singular(getoor_fn(d, alpha), points[d], alpha, cfg)
                expected = getoor_constant(d, alpha)
                self.assertLess(abs(res.real - expected), cfg.rel_tol * expected, f"d={d}, alpha={alpha}")

    def test_cosine(self):
        cfg = QuadratureConfig.for_dimension(1)
        for alpha in (0.5, 1.0):
            for x in (0.0, 0.3, 1.0):
                res = fraclap_singular(cosine_fn(), [x], alpha, cfg)
                self.assertAlmostEqual(res.real, math.cos(x), delta=1e-5)

    def test_cauchy(self):
        cfg = QuadratureConfig.for_dimension(1)
        for x in (0.0, 0.5, 2.0):
            res = fraclap_singular(cauchy_fn(), [x], 1.0, cfg)
            self.assertAlmostEqual(res.real, (1 - x * x) / (1 + x * x) ** 2, delta=1e-6)

    def test_hypersingular_agrees(self):
        cfg = QuadratureConfig.for_dimension(1)
        for k in (2, 4):
            for x in (0.2, 1.5):
                hyper = fraclap_hypersingular(cauchy_fn(), [x], 1.0, k, cfg)
                self.assertAlmostEqual(hyper.real, (1 - x * x) / (1 + x * x) ** 2, delta=1e-6, msg=f"k={k}")

    def test_eigen_relation(self):
        """(1-x^2)_+^{1/2} P_1(2x^2-1) is mapped to 3 P_1(2x^2-1)."""
        cfg = QuadratureConfig.for_dimension(1)
        x = 0.4
        res = fraclap_singular(jacobi_fn(1, 0, 1, 1.0), [x], 1.0, cfg)
        expected = jacobi_eigenvalue(1, 0, 1, 1.0) * jacobi_poly(1, 0.5, -0.5, 2 * x * x - 1)
        self.assertAlmostEqual(res.real, expected, delta=1e-4 * max(1.0, abs(expected)))

    def test_odd_eigenfunction(self):
        cfg = QuadratureConfig.for_dimension(1)
        v = harmonic_basis(1, 1).polynomials[0]
        f = jacobi_fn(0, 1, 1, 1.5, harmonic=v)
        for x in (-0.5, 0.25):
            res = fraclap_singular(f, [x], 1.5, cfg)
            expected = jacobi_eigenvalue(0, 1, 1, 1.5) * float(v(np.array([x])))
            self.assertAlmostEqual(res.real, expected, delta=1e-4 * max(1.0, abs(expected)))

    def test_harmonic_in_ball(self):
        cfg = QuadratureConfig.for_dimension(1)
        for x in (-0.5, 0.5):
            res = fraclap_singular(harmonic_ball_fn(1, 0.5), [x], 0.5, cfg)
            self.assertLess(abs(res.real), 1e-4)

    def test_translation_and_scaling(self):
        cfg = QuadratureConfig.for_dimension(2)
        f = gaussian_fn(2)
        h = np.array([0.7, -1.1])
        x = np.array([0.2, 0.4])
        base = fraclap_singular(f, x, 1.2, cfg).real
        shifted = fraclap_singular(f.translated(h), x + h, 1.2, cfg).real
        self.assertAlmostEqual(shifted, base, delta=1e-8 * abs(base))
        g = gaussian_fn(1)
        c = 2.0
        lhs = fraclap_singular(g.scaled(c), [0.3], 1.0, QuadratureConfig.for_dimension(1)).real
        rhs = c * fraclap_singular(g, [c * 0.3], 1.0, QuadratureConfig.for_dimension(1)).real
        self.assertAlmostEqual(lhs, rhs, delta=1e-6 * abs(rhs))

    def test_non_smooth_point(self):
        with self.assertRaises(NonSmoothAtPoint):
            fraclap_singular(getoor_fn(1, 1.0), [1.0], 1.0)
        with self.assertRaises(NonSmoothAtPoint):
            fraclap_hypersingular(harmonic_ball_fn(2, 1.0), [0.0, 0.0], 1.0)

    def test_growth(self):
        square = PointwiseFn(lambda y: np.sum(y * y, axis=-1), 1, decay=-2.0, label="square")
        with self.assertRaises(SlowDecay):
            fraclap_singular(square, [0.0], 1.0)

    def test_parameter_ranges(self):
        with self.assertRaises(ConditionViolation):
            fraclap_singular(cauchy_fn(), [0.0], 2.0)
        with self.assertRaises(ConditionViolation):
            fraclap_hypersingular(cauchy_fn(), [0.0], 1.0, k=3)
        with self.assertRaises(ConditionViolation):
            fraclap_hypersingular(cauchy_fn(), [0.0], 2.5, k=2)


class TestRieszPotential(unittest.TestCase):

    def test_gaussian_newtonian(self):
        """(1/4 pi) int exp(-|y|^2) / |y| dy = 1/2."""
        res = riesz_quadrature(gaussian_fn(3), [0.0, 0.0, 0.0], 2.0)
        self.assertAlmostEqual(res.real, 0.5, delta=1e-6)

    def test_ball_indicator(self):
        cfg = QuadratureConfig.for_dimension(3)
        res = riesz_quadrature(power_ball_fn(0, 0, 3), [0.5, 0.0, 0.0], 2.0, cfg)
        self.assertAlmostEqual(res.real, (3 - 0.25) / 6, delta=cfg.rel_tol)

    def test_not_integrable(self):
        with self.assertRaises(NotIntegrable):
            riesz_quadrature(cauchy_fn(3), [0.0, 0.0, 0.0], 2.0)
        with self.assertRaises(ConditionViolation):
            riesz_quadrature(cauchy_fn(1), [0.0], 1.0)

    def test_semigroup(self):
        """I_1 I_1 f = I_2 f for f = (1-|y|^2)_+^4 in R^3; both equal 1/10 at the origin."""
        cfg = QuadratureConfig.for_dimension(3, 1e-5)
        nested, direct = semigroup_check(smooth_ball_fn(3), [0.0, 0.0, 0.0], 1.0, 1.0, cfg)
        self.assertLess(abs(direct.real - 0.1), 1e-5)
        self.assertLess(abs(nested.real - direct.real), 1e-4 * abs(direct.real))

    def test_semigroup_gaussian(self):
        nested, direct = semigroup_check(gaussian_fn(3), [0.0, 0.0, 0.0], 0.5, 1.0)
        self.assertAlmostEqual(nested.real / direct.real, 1.0, delta=1e-3)


class TestReport(unittest.TestCase):

    def test_cauchy_report(self):
        cfg = QuadratureConfig.for_dimension(1)
        symbolic = power_fullspace(0, -1, 1, 0, 1)
        report = compare(
            symbolic,
            lambda x: fraclap_singular(cauchy_fn(), x, 1.0, cfg),
            [[0.5], [2.0]],
            cfg,
            workers=2,
            label="cauchy",
        )
        self.assertTrue(report.all_passed, report.to_text())
        lines = report.to_csv().splitlines()
        self.assertEqual(lines[0], ",".join(REPORT_COLUMNS))
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith("0.5,"))

    def test_outside_validity_fails(self):
        res = ball_2f1_transform("1/4", "1/2", 1, 0, 1)
        cfg = QuadratureConfig.for_dimension(1)
        with self.assertLogs("fractransform", level="WARNING"):
            report = compare(res, res.evaluate, [[0.5], [2.0]], cfg)
        self.assertEqual(list(report.frame["pass"]), [True, False])
        self.assertFalse(report.all_passed)
        self.assertEqual(report.frame["flags"].iloc[1], "outside validity")

    def test_empty(self):
        report = compare(lambda x: 0.0, lambda x: None, [], QuadratureConfig())
        self.assertFalse(report.all_passed)
        self.assertEqual(list(report.frame.columns), REPORT_COLUMNS)


if __name__ == "__main__":
    unittest.main()
