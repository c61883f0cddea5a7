import cmath
import math
import unittest

import mpmath
import numpy as np
from scipy import special

from errors import (
    DivergentSeries,
    NoAdmissibleContour,
    PoleError,
    RegionError,
    SlowDecay,
    UndefinedAtOne,
    UnsupportedDimension,
)
from gammafn import gamma, loggamma, rgamma
from gfun import GSpec, HypSpec, classify, validate
from specfun import (
    gamma_complex,
    harmonic_basis,
    harmonic_dimension,
    hyp_2f1,
    hyp_pfq,
    jacobi_poly,
    meijer_g,
    meijer_g_contour,
    meijer_g_series,
    sphere_rule,
)

SQRT_PI = math.sqrt(math.pi)


class TestGamma(unittest.TestCase):

    def test_standard_values(self):
        self.assertAlmostEqual(gamma_complex(0.5).value.real, SQRT_PI, places=13)
        self.assertAlmostEqual(gamma_complex(1.5).value.real, SQRT_PI / 2, places=13)
        self.assertAlmostEqual(gamma_complex(-0.5).value.real, -2 * SQRT_PI, places=12)

    def test_poles(self):
        with self.assertRaises(PoleError):
            gamma_complex(-3)
        self.assertEqual(rgamma(0.0), 0.0)
        self.assertEqual(rgamma(-2.0), 0.0)

    def test_against_mpmath(self):
        """Relative accuracy 1e-13 on |Re z|, |Im z| <= 50."""
        rng = np.random.default_rng(11)
        z = rng.uniform(-50, 50, size=600) + 1j * rng.uniform(-50, 50, size=600)
        ours = gamma(z)
        with mpmath.workdps(30):
            ref = np.array([complex(mpmath.gamma(mpmath.mpc(v.real, v.imag))) for v in z])
        rel = np.abs(ours - ref) / np.abs(ref)
        self.assertLess(float(np.max(rel)), 1e-13)
        self.assertLess(abs(gamma_complex(50 + 50j).value / complex(mpmath.gamma(mpmath.mpc(50, 50))) - 1), 1e-13)

    def test_reflection_and_recursion(self):
        rng = np.random.default_rng(5)
        for z in rng.uniform(-3, 3, size=20) + 1j * rng.uniform(-2, 2, size=20):
            lhs = gamma(z) * gamma(1 - z)
            rhs = math.pi / cmath.sin(math.pi * z)
            self.assertAlmostEqual(abs(lhs - rhs) / abs(rhs), 0.0, delta=1e-12)
            self.assertAlmostEqual(abs(gamma(z + 1) - z * gamma(z)) / abs(gamma(z + 1)), 0.0, delta=1e-12)

    def test_large_imaginary_part(self):
        """loggamma stays finite where Gamma itself underflows."""
        z = 0.3 + 400j
        self.assertAlmostEqual(abs(loggamma(z) - complex(special.loggamma(z))), 0.0, delta=1e-9)


class TestHypergeometric(unittest.TestCase):

    def test_log_identity(self):
        """2F1(1, 1; 2; 1/2) = 2 ln 2."""
        res = hyp_pfq(HypSpec((1, 1), (2,), regularized=False), 0.5)
        self.assertAlmostEqual(res.value.real, 2 * math.log(2), places=13)
        self.assertEqual(res.route, "series")

    def test_cosine_identity(self):
        """0F~1(1/2 | -1) = cos(2)/sqrt(pi)."""
        res = hyp_pfq(HypSpec((), ("1/2",), True, 1.0, -1), 1.0)
        self.assertAlmostEqual(res.value.real, math.cos(2) / SQRT_PI, places=13)

    def test_zero_argument(self):
        h = HypSpec(("1/3", 2), ("5/2",), regularized=False)
        self.assertEqual(hyp_pfq(h, 0.0).value, 1.0)
        h = HypSpec(("1/3", 2), ("5/2",), regularized=True)
        self.assertAlmostEqual(hyp_pfq(h, 0.0).value.real, 1 / math.gamma(2.5), places=14)

    def test_regularized_nonpositive_lower(self):
        """2F~1(a, b; -1 | z) = a(a+1) b(b+1) z^2 2F1(a+2, b+2; 3 | z) / 2."""
        a, b, z = 0.5, 0.25, 0.3
        res = hyp_pfq(HypSpec((a, b), (-1,), True), z)
        expected = a * (a + 1) * b * (b + 1) * z**2 * special.hyp2f1(a + 2, b + 2, 3, z) / 2
        self.assertAlmostEqual(res.value.real, expected, places=13)

    def test_errors(self):
        with self.assertRaises(DivergentSeries):
            hyp_pfq(HypSpec((1, 1), (2,), regularized=False), 1.0)
        with self.assertRaises(RegionError):
            hyp_2f1(1, 1, 2, 1.0)

    def test_2f1_regions(self):
        """Series, Pfaff and connection branches agree with scipy."""
        cases = [
            (0.3, 0.7, 1.9, 0.4),
            (0.3, 0.7, 1.9, -3.0),
            (0.3, 0.7, 1.9, 0.9),
            (1.5, -0.25, 2.5, 0.95),
            (1.0, 1.0, 2.0, 0.8),
            (0.5, 0.5, 1.0, 0.75),
        ]
        for a, b, c, r in cases:
            ours = hyp_2f1(a, b, c, r).value.real
            ref = special.hyp2f1(a, b, c, r)
            self.assertAlmostEqual(abs(ours - ref) / abs(ref), 0.0, delta=1e-9, msg=str((a, b, c, r)))

    def test_2f1_truncating(self):
        """A zero upper parameter leaves 1/Gamma(c) in the regularized form."""
        res = hyp_2f1(2, 0, "3/4", 0.9, regularized=True)
        self.assertAlmostEqual(res.value.real, 1 / math.gamma(0.75), places=13)


class TestMeijerSeries(unittest.TestCase):

    def test_ball_kernel(self):
        res = meijer_g_series(GSpec.make(1, 0, ["3/2"], [0]), 0.25)
        self.assertAlmostEqual(res.value.real, 0.97720502, places=8)

    def test_getoor_output(self):
        res = meijer_g_series(GSpec.make(1, 1, [0, 1], [0, "1/2"]), 0.5)
        self.assertAlmostEqual(res.value.real, 1 / SQRT_PI, places=13)

    def test_complement_vanishes(self):
        res = meijer_g_series(GSpec.make(0, 1, ["3/2"], [0]), 0.4)
        self.assertEqual(res.value, 0)

    def test_cosine(self):
        """G^{10}_{02}(-; 0, 1/2 | 1) = cos(2)/sqrt(pi) on the series route."""
        g = GSpec.make(1, 0, [], [0, "1/2"])
        self.assertAlmostEqual(SQRT_PI * meijer_g(g, 1.0).value.real, math.cos(2), places=12)
        with self.assertRaises(NoAdmissibleContour):
            meijer_g_contour(g, 1.0)

    def test_perturbed_route(self):
        """G^{20}_{02}(-; 0, 0 | r) = 2 K_0(2 sqrt r)."""
        g = GSpec.make(2, 0, [], [0, 0])
        res = meijer_g_series(g, 0.49)
        self.assertEqual(res.route, "perturbed-series")
        self.assertAlmostEqual(res.value.real, 2 * special.k0(1.4), delta=1e-8)

    def test_perturbed_integer_gap(self):
        """G^{20}_{02}(-; 1/2, -1/2 | r) = 2 K_1(2 sqrt r)."""
        res = meijer_g_series(GSpec.make(2, 0, [], ["1/2", "-1/2"]), 0.25)
        self.assertAlmostEqual(res.value.real, 2 * special.k1(1.0), delta=1e-8)

    def test_at_one(self):
        with self.assertRaises(UndefinedAtOne):
            meijer_g_series(GSpec.make(1, 1, [0, 1], [0, "1/2"]), 1.0)
        with self.assertRaises(RegionError):
            meijer_g_series(GSpec.make(1, 0, ["3/2"], [0]), 1.0)

    def test_class_a_at_one(self):
        """G^{11}_{11}(0; 0 | 1) = 1/2 is defined; only the series route is unavailable there."""
        g = GSpec.make(1, 1, [0], [0])
        self.assertEqual(classify(g).condition, "A")
        with self.assertRaises(RegionError) as cm:
            meijer_g_series(g, 1.0)
        self.assertNotIsInstance(cm.exception, UndefinedAtOne)
        res = meijer_g(g, 1.0)
        self.assertEqual(res.route, "contour")
        self.assertAlmostEqual(res.value.real, 0.5, delta=1e-12)

    def test_near_one_growth(self):
        """Class B with nu = 1/2: |G(r)| |r-1|^{1-nu+eps} stays bounded near r = 1."""
        g = GSpec.make(1, 1, [0, 1], [0, "1/2"], SQRT_PI)
        for r in (0.99, 0.999, 1.001, 1.01):
            value = abs(meijer_g_series(g, r).value)
            self.assertLess(value * abs(r - 1) ** 0.55, 10.0)


class TestMeijerContour(unittest.TestCase):

    def test_getoor_cross_route(self):
        g = GSpec.make(1, 0, ["3/2"], [0])
        contour = meijer_g_contour(g, 0.25, lam=0.4)
        self.assertEqual(contour.route, "contour")
        self.assertAlmostEqual(contour.value.real, 0.97720502, delta=1e-7)
        self.assertLess(abs(contour.value.imag), 1e-10)

    def test_class_a(self):
        """G^{10}_{01}(-; 1/2 | r) = r^{1/2} e^{-r} and G^{11}_{11}(0; 0 | r) = 1/(1+r)."""
        res = meijer_g_contour(GSpec.make(1, 0, [], ["1/2"]), 2.0)
        self.assertAlmostEqual(res.value.real, math.sqrt(2) * math.exp(-2), delta=1e-12)
        res = meijer_g_contour(GSpec.make(1, 1, [0], [0]), 3.0)
        self.assertAlmostEqual(res.value.real, 0.25, delta=1e-12)
        self.assertLess(abs(res.value.imag), 1e-12)

    def test_lambda_outside_strip(self):
        with self.assertRaises(NoAdmissibleContour):
            meijer_g_contour(GSpec.make(1, 1, [0], [0]), 0.5, lam=1.5)

    def test_slow_decay(self):
        with self.assertRaises(SlowDecay):
            meijer_g_contour(GSpec.make(1, 1, [0, 1], [0, "1/2"]), 0.5)

    def test_random_class_a(self):
        """Series and contour agree on 100 random G^{11}_{11} and G^{20}_{02} records."""
        rng = np.random.default_rng(2024)
        done = 0
        while done < 100:
            a, b1, b2 = rng.uniform(-2, 3, size=3)
            g = GSpec.make(1, 1, [a], [b1]) if done % 2 else GSpec.make(2, 0, [], [b1, b2])
            if not validate(g):
                continue
            report = classify(g)
            if not report.has_contour or report.lambda_over - report.lambda_under < 0.05:
                continue
            if g.m == 2 and abs((b1 - b2) - round(b1 - b2)) < 0.05:
                continue
            for r in (0.3, 0.8):
                series = meijer_g_series(g, r).value
                contour = meijer_g_contour(g, r).value
                self.assertLess(abs(series - contour), 1e-8 * (1 + abs(series)), f"{g} at {r}")
            done += 1

    def test_random_class_b(self):
        """Series (with inversion above 1) and contour agree on 100 random G^{11}_{22} records."""
        rng = np.random.default_rng(99)
        for _ in range(100):
            b1 = rng.uniform(-1, 1)
            a1 = b1 + rng.uniform(-1.5, 0.9)
            a2 = rng.uniform(-2, 3)
            nu = rng.uniform(1.5, 3.0)
            b2 = a1 + a2 - b1 - nu
            g = GSpec.make(1, 1, [a1, a2], [b1, b2])
            self.assertEqual(classify(g).condition, "B")
            for r in (0.3, 0.8, 1.5, 3.0):
                series = meijer_g_series(g, r).value
                contour = meijer_g_contour(g, r).value
                self.assertLess(abs(series - contour), 1e-8 * (1 + abs(series)), f"{g} at {r}")

    def assert_envelope(self, g, radii, exponent, bound):
        scaled = [abs(meijer_g(g, r).value) * r**exponent for r in radii]
        for value in scaled:
            self.assertLess(value, bound, f"{g}: {scaled}")
        for outer, inner in zip(scaled, scaled[1:]):
            self.assertLessEqual(inner, outer * (1 + 1e-9), f"{g}: {scaled}")

    def test_envelope(self):
        """|G| r^{lambda_under + eps} bounded at 0 and |G| r^{lambda_over - eps} bounded at infinity."""
        eps = 0.05
        at_zero = (1e-2, 1e-3, 1e-4)
        at_infinity = (1e2, 1e3, 1e4)
        cases = [
            # 1/(1+r)
            (GSpec.make(1, 1, [0], [0]), 1.0),
            # Gamma(1/4) r^{-1/4} (1+r)^{-1/4}
            (GSpec.make(1, 1, ["1/2"], ["-1/4"]), math.gamma(0.25)),
            # 2 K_1(2 sqrt r); lambda_over is infinite
            (GSpec.make(2, 0, [], ["1/2", "-1/2"]), 1.0),
            # 1 in the ball, 1 - sqrt(r / (r-1)) outside
            (GSpec.make(1, 1, [0, 1], [0, "1/2"], SQRT_PI), 1.0),
        ]
        for g, bound in cases:
            report = classify(g)
            self.assertTrue(report.has_contour or report.condition == "B", str(g))
            self.assert_envelope(g, at_zero, float(report.lambda_under) + eps, bound)
            if math.isfinite(float(report.lambda_over)):
                self.assert_envelope(g, at_infinity, float(report.lambda_over) - eps, bound)
        self.assertEqual({classify(g).condition for g, _ in cases}, {"A", "B"})


class TestJacobi(unittest.TestCase):

    def test_values(self):
        self.assertEqual(jacobi_poly(0, 0.3, 0.7, 0.2), 1.0)
        self.assertAlmostEqual(jacobi_poly(1, 0.5, -0.5, 0.0), 0.5, places=15)
        self.assertAlmostEqual(jacobi_poly(1, 0.5, -0.5, -1.0), -0.5, places=15)

    def test_value_at_one(self):
        """P_n^{(a,b)}(1) = Gamma(a+1+n) / (n! Gamma(a+1))."""
        a, b = 0.5, 1.5
        for n in range(8):
            expected = math.gamma(a + 1 + n) / (math.factorial(n) * math.gamma(a + 1))
            self.assertAlmostEqual(jacobi_poly(n, a, b, 1.0) / expected, 1.0, places=12)

    def test_against_scipy(self):
        z = np.linspace(-1, 1, 41)
        for n in (2, 5, 17, 50):
            ours = jacobi_poly(n, 0.25, -0.5, z)
            ref = special.eval_jacobi(n, 0.25, -0.5, z)
            scale = max(1.0, float(np.max(np.abs(ref))))
            self.assertLess(float(np.max(np.abs(ours - ref))) / scale, 1e-12)

    def test_orthogonality(self):
        a, b = 0.5, 0.5
        t, w = special.roots_jacobi(30, a, b)
        for i in range(6):
            for j in range(i):
                inner = np.sum(w * jacobi_poly(i, a, b, t) * jacobi_poly(j, a, b, t))
                self.assertAlmostEqual(float(inner), 0.0, delta=1e-10)


class TestHarmonics(unittest.TestCase):

    def test_dimensions(self):
        self.assertEqual(harmonic_dimension(3, 2), 5)
        self.assertEqual(harmonic_dimension(2, 3), 2)
        self.assertEqual([harmonic_dimension(1, l) for l in range(3)], [1, 1, 0])
        self.assertEqual(harmonic_dimension(4, 2), 9)

    def test_line(self):
        basis = harmonic_basis(1, 0)
        self.assertAlmostEqual(float(basis.polynomials[0](np.array([0.3]))), 1 / math.sqrt(2), places=14)
        self.assertEqual(harmonic_basis(1, 2).size, 0)

    def test_harmonic_and_homogeneous(self):
        for d in (1, 2, 3):
            for l in range(4):
                basis = harmonic_basis(d, l)
                self.assertEqual(basis.size, harmonic_dimension(d, l))
                for v in basis.polynomials:
                    self.assertEqual(v.laplacian(), {})
                    self.assertTrue(v.is_homogeneous())

    def test_scaling(self):
        v = harmonic_basis(3, 2).polynomials[1]
        x = np.array([0.3, -0.2, 0.5])
        self.assertAlmostEqual(float(v(2.5 * x)), 2.5**2 * float(v(x)), places=12)

    def test_orthonormal(self):
        for d in (2, 3):
            nodes, weights = sphere_rule(d)
            for l in range(4):
                polys = harmonic_basis(d, l).polynomials
                vals = np.array([v(nodes) for v in polys])
                gram = (vals * weights) @ vals.T
                self.assertLess(float(np.max(np.abs(gram - np.eye(len(polys))))), 1e-10)

    def test_unsupported(self):
        with self.assertRaises(UnsupportedDimension):
            harmonic_basis(4, 1)


if __name__ == "__main__":
    unittest.main()
