import math
import unittest
from fractions import Fraction
from itertools import product

import numpy as np

from errors import (
    CoincidentPoints,
    ConditionError,
    ConditionViolation,
    PoleError,
    WrongRegion,
)
from fractransform import (
    RadialHarmonicFn,
    apply_operator,
    ball_2f1_transform,
    bochner_lift,
    chi_dk,
    fourier_fraclap_1d,
    fraclap_transform,
    gamma_d,
    green_function_ball,
    harmonic_ball_function,
    hyp_transform,
    jacobi_eigenvalue,
    jacobi_function,
    mellin_multiplier,
    power_ball,
    power_function,
    power_fullspace,
    riesz_transform,
    semigroup_constant,
    with_delta_half,
)
from gfun import GSpec, HypSpec, mellin_kernel, reduce, to_hyp_expansion
from specfun import jacobi_poly

SQRT_PI = math.sqrt(math.pi)


def getoor_constant(d, alpha):
    return 2**alpha * math.gamma(1 + alpha / 2) * math.gamma((d + alpha) / 2) / math.gamma(d / 2)


def getoor_input(d, alpha):
    alpha = Fraction(alpha)
    return RadialHarmonicFn.make(d, 0, GSpec.make(1, 0, [1 + alpha / 2], [0], math.gamma(1 + alpha / 2)))


class TestConstants(unittest.TestCase):

    def test_gamma_d(self):
        self.assertAlmostEqual(gamma_d(2, 1), 2 * math.pi, places=12)
        self.assertAlmostEqual(gamma_d(3, 2), 4 * math.pi, places=12)
        self.assertAlmostEqual(gamma_d(1, -1), -math.pi, places=12)

    def test_gamma_d_pole(self):
        with self.assertRaises(PoleError):
            gamma_d(2, 2)
        with self.assertRaises(PoleError):
            gamma_d(1, 3)

    def test_chi(self):
        self.assertAlmostEqual(chi_dk(1, 2, 1), 2 * math.pi, places=12)
        self.assertAlmostEqual(chi_dk(1, 4, 1), -4 * math.pi, places=11)
        for d, alpha in [(1, 0.5), (2, 1.3), (3, 1.9)]:
            self.assertAlmostEqual(chi_dk(d, 2, alpha) / (-2 * gamma_d(d, -alpha)), 1.0, places=12)

    def test_chi_even_alpha_is_continuous(self):
        h = 1e-3
        mid = chi_dk(3, 4, 2)
        around = 0.5 * (chi_dk(3, 4, 2 - h) + chi_dk(3, 4, 2 + h))
        self.assertAlmostEqual(mid / around, 1.0, delta=1e-5)

    def test_chi_range(self):
        with self.assertRaises(ConditionViolation):
            chi_dk(1, 3, 1)
        with self.assertRaises(ConditionViolation):
            chi_dk(1, 2, 2)

    def test_semigroup_constant(self):
        expected = gamma_d(3, 0.5) * gamma_d(3, 1.0) / gamma_d(3, 1.5)
        self.assertAlmostEqual(semigroup_constant(3, 0.5, 1.0), expected, places=12)
        with self.assertRaises(ConditionViolation):
            semigroup_constant(1, 0.5, 0.75)


class TestMellinMultiplier(unittest.TestCase):

    def test_identity_at_zero_order(self):
        for s in (0.3 + 1j, 1.7 - 2j, -0.4 + 0.5j):
            self.assertAlmostEqual(abs(mellin_multiplier(s, 0.0, 3.0) - 1), 0.0, delta=1e-13)

    def test_zero_at_half_delta(self):
        self.assertEqual(mellin_multiplier(1.5, 0.5, 3.0), 0)

    def test_conjugate_symmetry(self):
        s = 0.4 + 2.5j
        self.assertAlmostEqual(
            abs(mellin_multiplier(s.conjugate(), 0.7, 2.0) - mellin_multiplier(s, 0.7, 2.0).conjugate()),
            0.0,
            delta=1e-14,
        )

    def test_kernel_consistency(self):
        """The Riesz output kernel is the multiplier times the input kernel shifted by alpha/2."""
        d, alpha = 3, 1.0
        f = getoor_input(d, alpha)
        out = riesz_transform(f, alpha).output.profile
        for t in np.linspace(-5, 5, 20):
            s = 0.3 + 1j * t
            lhs = mellin_kernel(out, s)
            rhs = mellin_multiplier(s, alpha, d) * mellin_kernel(f.profile, s + alpha / 2)
            self.assertLess(abs(lhs - rhs), 1e-11 * abs(rhs))


class TestTransforms(unittest.TestCase):

    def test_getoor_chain(self):
        """(1-|x|^2)_+^{1/2} in R^1 reduces to G^{11}_{22}(0 | 1; 0 | 1/2) with value 1 in the ball."""
        res = fraclap_transform(getoor_input(1, 1), 1)
        unreduced = GSpec.make(2, 1, [0, 1, "-1/2"], [0, "-1/2", "1/2"], SQRT_PI)
        self.assertTrue(res.unreduced.same_record(unreduced))
        expected = GSpec.make(1, 1, [0, 1], [0, "1/2"], SQRT_PI)
        self.assertTrue(res.output.profile.same_record(expected), str(res.output.profile))
        self.assertEqual(res.condition, "B")
        self.assertTrue(res.validity.origin)
        self.assertFalse(res.validity.sphere)
        for x in (0.1, 0.5, -0.8):
            self.assertAlmostEqual(res.evaluate([x]).real, 1.0, places=12)

    def test_getoor_constant(self):
        """(-Delta)^{alpha/2} (1-|x|^2)_+^{alpha/2} is constant in the ball, for all nine (d, alpha)."""
        for d, alpha in product((1, 2, 3), (Fraction(1, 2), Fraction(1), Fraction(3, 2))):
            a = float(alpha)
            expected = getoor_constant(d, a)
            res = power_ball(0, alpha / 2, d, 0, alpha)
            terms = to_hyp_expansion(res.output.profile)
            self.assertEqual(len(terms), 1, f"d={d}, alpha={alpha}")
            power, h = terms[0]
            self.assertTrue(power.matches(0))
            self.assertTrue(any(u.matches(0) for u in h.upper), str(h))
            self.assertEqual(len(h.lower), 1)
            self.assertTrue(h.lower[0].matches(Fraction(d, 2)), str(h))
            symbolic = h.coeff.real / math.gamma(d / 2)
            self.assertLess(abs(symbolic - expected), 1e-12 * expected, f"d={d}, alpha={alpha}")
            for r in (0.2, 0.5, 0.8):
                x = np.zeros(d)
                x[0] = r
                value = res.evaluate(x).real
                self.assertLess(abs(value - expected), 1e-12 * expected, f"d={d}, alpha={alpha}, r={r}")

    def test_riesz_rows(self):
        f = RadialHarmonicFn.make(1, 0, GSpec.make(1, 0, ["5/4"], [0], math.gamma(1.25)))
        res = riesz_transform(f, "1/2")
        expected = GSpec.make(2, 1, ["3/4", "3/2", "1/4"], [0, "1/4", "1/2"], 2**-0.5 * math.gamma(1.25))
        self.assertTrue(res.unreduced.same_record(expected), str(res.unreduced))
        self.assertEqual(res.operator, "riesz")

    def test_newtonian_potential_of_ball(self):
        """Order-2 Riesz potential of the unit ball indicator in R^3: (3-r^2)/6 inside, 1/(3r) outside."""
        res = power_ball(0, 0, 3, 0, -2)
        self.assertEqual(res.operator, "riesz")
        self.assertAlmostEqual(res.evaluate([0.5, 0, 0]).real, (3 - 0.25) / 6, places=12)
        self.assertAlmostEqual(res.evaluate([0, 0, 2.0]).real, 1 / 6, places=12)

    def test_cauchy(self):
        """(1+x^2)^{-1} maps to (1-x^2)/(1+x^2)^2 under the half Laplacian."""
        res = power_fullspace(0, -1, 1, 0, 1)
        self.assertTrue(res.validity.origin)
        self.assertAlmostEqual(res.evaluate([0.5]).real, 0.48, places=12)
        for x in (0.3, 2.0, 5.0):
            self.assertAlmostEqual(res.evaluate([x]).real, (1 - x * x) / (1 + x * x) ** 2, places=11)

    def test_fullspace_origin_clause(self):
        self.assertTrue(power_fullspace(1, -2, 2, 0, "1/2").validity.origin)
        self.assertFalse(power_fullspace("1/4", -2, 2, 0, 1).validity.origin)

    def test_inversion(self):
        """Riesz potential and fractional Laplacian undo each other as parameter records, in both orders."""
        rng = np.random.default_rng(7)
        checked = {"fraclap-riesz": 0, "riesz-fraclap": 0}
        for _ in range(2000):
            if min(checked.values()) >= 30:
                break
            d = int(rng.integers(1, 4))
            alpha = Fraction(int(rng.integers(1, min(4 * d, 8))), 4)
            rho = Fraction(int(rng.integers(-3, 5)), 4)
            if rng.random() < 0.5:
                region, sigma = "ball", Fraction(int(rng.integers(-3, 9)), 4)
            else:
                region, sigma = "full", -Fraction(int(rng.integers(1, 13)), 4)
            f = power_function(rho, sigma, region, d)
            for name, first, second in [
                ("fraclap-riesz", fraclap_transform, riesz_transform),
                ("riesz-fraclap", riesz_transform, fraclap_transform),
            ]:
                try:
                    back = second(first(f, alpha).output, alpha)
                except ConditionError:
                    continue
                msg = f"{name}: {f.profile}, d={d}, alpha={alpha}"
                self.assertTrue(reduce(back.output.profile).same_record(reduce(f.profile)), msg)
                checked[name] += 1
        for name, count in checked.items():
            self.assertGreaterEqual(count, 30, name)

    def test_dispatch(self):
        f = getoor_input(3, 1)
        self.assertEqual(apply_operator(f, 0).output, f)
        self.assertEqual(apply_operator(f, -1).operator, "riesz")
        self.assertEqual(apply_operator(f, "1/2").operator, "fraclap")

    def test_conditions(self):
        f = getoor_input(1, 1)
        with self.assertRaises(ConditionViolation):
            fraclap_transform(f, 0)
        with self.assertRaises(ConditionViolation):
            riesz_transform(f, 1)
        with self.assertRaises(ConditionViolation):
            power_ball(0, -1, 1, 0, 1)
        with self.assertRaises(ConditionViolation):
            power_ball(0, 1, 1, 0, 1, region="shell")
        with self.assertRaisesRegex(ConditionViolation, "2 rho > -d - l"):
            power_fullspace(-1, -2, 1, 0, 1)

    def test_eigenfunction_with_harmonic_factor(self):
        """x (1-x^2)_+^{alpha/2} is mapped to lambda_{0,1} x in the ball."""
        for alpha in (0.5, 1.0, 1.5):
            f = jacobi_function(0, 1, 1, alpha)
            res = fraclap_transform(f, alpha)
            lam = jacobi_eigenvalue(0, 1, 1, alpha)
            for x in (0.2, -0.4, 0.7):
                out = res.evaluate([x])
                self.assertNotIn("outside-validity", out.flags)
                self.assertAlmostEqual(out.real / (lam * f.harmonic_value(np.array([x]))), 1.0, places=9)

    def test_jacobi_eigenfunctions(self):
        alpha = 1.0
        for n in range(4):
            f = jacobi_function(n, 0, 1, alpha)
            res = fraclap_transform(f, alpha)
            lam = jacobi_eigenvalue(n, 0, 1, alpha)
            for x in (0.2, 0.5, 0.7):
                poly = jacobi_poly(n, alpha / 2, -0.5, 2 * x * x - 1)
                self.assertAlmostEqual(f(np.array([x])), (1 - x * x) ** (alpha / 2) * poly, places=10)
                self.assertAlmostEqual(res.evaluate([x]).real, lam * poly, places=9)

    def test_outside_validity_is_flagged(self):
        res = ball_2f1_transform("1/4", "1/2", 1, 0, 1)
        with self.assertLogs("fractransform", level="WARNING"):
            out = res.evaluate([2.0])
        self.assertIn("outside-validity", out.flags)


class TestKernelFamilies(unittest.TestCase):

    def test_ball_2f1_closed_form(self):
        """sigma = alpha/2 leaves 2^alpha Gamma(rho+delta/2)/Gamma(rho+(delta-alpha)/2) |x|^{2rho-alpha}."""
        res = ball_2f1_transform("1/4", "1/2", 1, 0, 1)
        x = 0.5
        expected = 2 * math.gamma(0.75) / math.gamma(0.25) * x ** (0.5 - 1)
        self.assertAlmostEqual(res.evaluate_closed_form([x]).real, expected, places=12)
        self.assertAlmostEqual(res.evaluate([x]).real, expected, places=10)

    def test_harmonic_in_ball(self):
        for d, alpha in [(1, "1/2"), (2, 1), (3, "3/2")]:
            a = Fraction(alpha)
            rho = (a - d) / 2
            res = ball_2f1_transform(rho, a / 2, d, 0, alpha)
            x = np.zeros(d)
            x[-1] = 0.5
            self.assertAlmostEqual(res.evaluate_closed_form(x).real, 0.0, places=12)

    def test_closed_form_missing(self):
        with self.assertRaises(WrongRegion):
            fraclap_transform(getoor_input(1, 1), 1).evaluate_closed_form([0.5])

    def test_cosine(self):
        """cos x = sqrt(pi) 0F~1(1/2 | -x^2/4) is an eigenfunction with eigenvalue 1."""
        h = HypSpec((), ("1/2",), True, SQRT_PI, -1)
        for alpha in ("1/2", 1, "5/2"):
            res = hyp_transform(h, 1, 0, alpha, scale=0.25)
            self.assertEqual(res.output.upper, h.upper)
            self.assertEqual(res.output.lower, h.lower)
            self.assertAlmostEqual(abs(res.output.coeff - SQRT_PI), 0.0, delta=1e-14)
            for x in (0.0, 0.3, 1.0):
                self.assertAlmostEqual(res.evaluate([x]).real, math.cos(x), places=12)

    def test_hyp_coefficient(self):
        res = hyp_transform(HypSpec((1,), (1, "3/2"), True, 1.0, -1), 3, 0, 1)
        self.assertAlmostEqual(res.output.coeff.real, SQRT_PI, places=13)
        self.assertTrue(all(p.matches("3/2") for p in res.output.upper + res.output.lower))

    def test_hyp_zero_order(self):
        h = HypSpec(("3/4",), ("1/3", "3/2"), True, 1.0, -1)
        res = hyp_transform(h, 3, 0, 0)
        self.assertEqual(res.output.upper, h.upper)
        self.assertAlmostEqual(abs(res.output.coeff - 1), 0.0, delta=1e-13)

    def test_hyp_semigroup(self):
        h = HypSpec(("3/4",), ("1/3", "3/2"), True, 1.0, -1)
        once = hyp_transform(h, 3, 0, "3/4").output
        twice = hyp_transform(hyp_transform(h, 3, 0, "1/2").output, 3, 0, "1/4").output
        self.assertEqual(once.upper, twice.upper)
        self.assertEqual(once.lower, twice.lower)
        self.assertAlmostEqual(abs(once.coeff - twice.coeff) / abs(once.coeff), 0.0, delta=1e-13)

    def test_gaussian(self):
        """exp(-|x|^2) in R^3 maps to 2^alpha Gamma((3+alpha)/2)/Gamma(3/2) 1F1((3+alpha)/2; 3/2 | -|x|^2)."""
        h = with_delta_half(HypSpec((), (), False, 1.0, -1), 3)
        self.assertEqual(h.upper, h.lower)
        alpha = 1.0
        res = hyp_transform(h, 3, 0, alpha)
        self.assertAlmostEqual(res.evaluate([0, 0, 0]).real, 2 * math.gamma(2) / math.gamma(1.5), places=12)

    def test_hyp_errors(self):
        with self.assertRaises(WrongRegion):
            hyp_transform(HypSpec((), ("1/2",), True, 1.0, 1), 1, 0, 1)
        with self.assertRaises(ConditionViolation):
            hyp_transform(HypSpec((), ("1/3",), True, 1.0, -1), 1, 0, 1)
        with self.assertRaises(ConditionViolation):
            hyp_transform(HypSpec(("1/4",), ("1/2",), True, 1.0, -1), 1, 0, "-3/4")


class TestEigenvalues(unittest.TestCase):

    def test_values(self):
        self.assertAlmostEqual(jacobi_eigenvalue(0, 0, 1, 1), 1.0, places=12)
        self.assertAlmostEqual(jacobi_eigenvalue(1, 0, 1, 1), 3.0, places=12)
        self.assertAlmostEqual(jacobi_eigenvalue(2, 0, 1, 1), 5.0, places=12)
        self.assertAlmostEqual(jacobi_eigenvalue(0, 1, 2, 1), 3 * math.pi / 4, places=12)

    def test_monotone(self):
        for d, l, alpha in [(1, 0, 0.5), (2, 1, 1.2), (3, 2, 1.9)]:
            delta = d + 2 * l
            for n in range(10):
                lo, hi = jacobi_eigenvalue(n, l, d, alpha), jacobi_eigenvalue(n + 1, l, d, alpha)
                ratio = (1 + alpha / 2 + n) * ((delta + alpha) / 2 + n) / ((n + 1) * (delta / 2 + n))
                self.assertGreater(lo, 0)
                self.assertAlmostEqual(hi / lo, ratio, places=11)
                self.assertGreater(ratio, 1)

    def test_range(self):
        with self.assertRaises(ConditionViolation):
            jacobi_eigenvalue(0, 0, 1, 0)


class TestLift(unittest.TestCase):

    def test_lift(self):
        f = jacobi_function(1, 1, 1, "1/2")
        lifted = bochner_lift(f)
        self.assertEqual((lifted.d, lifted.l, lifted.delta), (3, 0, 3))
        self.assertIs(lifted.profile, f.profile)
        g = getoor_input(2, 1)
        self.assertEqual(bochner_lift(bochner_lift(g)).profile, g.profile)
        self.assertEqual(bochner_lift(g).d, 2)

    def test_lift_commutes(self):
        f = jacobi_function(0, 1, 1, 1)
        direct = fraclap_transform(bochner_lift(f), 1).output.profile
        lifted = bochner_lift(fraclap_transform(f, 1).output).profile
        self.assertTrue(direct.same_record(lifted))


class TestGreenFunction(unittest.TestCase):

    def test_pole_at_origin(self):
        """G(x, 0) = Gamma(d/2) / (2^alpha pi^{d/2} Gamma(alpha/2)) times the harmonic ball function."""
        for d, alpha in [(1, 0.5), (2, 1.0), (3, 1.5)]:
            f = harmonic_ball_function(d, alpha)
            c = math.gamma(d / 2) / (2**alpha * math.pi ** (d / 2) * math.gamma(alpha / 2))
            x = np.zeros(d)
            x[0] = 0.5
            green = green_function_ball(x, np.zeros(d), d, alpha)
            self.assertAlmostEqual(green / (c * f(x)), 1.0, places=9, msg=f"d={d}")

    def test_symmetry(self):
        x, y = np.array([0.2, -0.3]), np.array([-0.5, 0.1])
        self.assertAlmostEqual(green_function_ball(x, y, 2, 1.2), green_function_ball(y, x, 2, 1.2), places=14)
        self.assertGreater(green_function_ball(x, y, 2, 1.2), 0)

    def test_errors(self):
        with self.assertRaises(CoincidentPoints):
            green_function_ball([0.1, 0.2], [0.1, 0.2], 2, 1)
        with self.assertRaises(ConditionViolation):
            green_function_ball([0.1], [0.2], 1, 1)
        with self.assertRaises(ConditionViolation):
            green_function_ball([1.5], [0.2], 1, 0.5)


class TestFourier(unittest.TestCase):

    def test_cauchy_kernel(self):
        """Multiplying pi exp(-|xi|) by |xi| reproduces the symbolic result."""
        symbolic = power_fullspace(0, -1, 1, 0, 1)
        for x in (0.0, 0.5, 2.0):
            res = fourier_fraclap_1d(lambda xi: math.pi * math.exp(-xi), x, 1.0)
            self.assertEqual(res.route, "quadrature")
            self.assertAlmostEqual(res.real, (1 - x * x) / (1 + x * x) ** 2, places=8)
            if x:
                self.assertAlmostEqual(res.real, symbolic.evaluate([x]).real, places=8)


if __name__ == "__main__":
    unittest.main()
