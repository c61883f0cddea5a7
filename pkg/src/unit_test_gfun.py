import cmath
import math
import unittest
from fractions import Fraction

import numpy as np
from scipy.special import loggamma

from errors import (
    ConditionViolation,
    IntegerBDifference,
    NonPositiveIntegerUpper,
    ValidationError,
    WrongRegion,
)
from gfun import (
    GSpec,
    HypSpec,
    classify,
    encode_power_kernel,
    from_hyp,
    invert_argument,
    mellin_kernel,
    reduce,
    shift_power,
    swap_integer_pair,
    to_hyp_expansion,
    validate,
)
from params import Param, strictly_less
from specfun import meijer_g_contour, meijer_g_series


def _rows(params):
    return [p.re for p in params]


class TestParam(unittest.TestCase):

    def test_parse_rational(self):
        """Rational strings stay exact."""
        p = Param.parse("3/2")
        self.assertTrue(p.exact)
        self.assertEqual(p.re, Fraction(3, 2))

    def test_short_decimal_float_is_exact(self):
        """A typed decimal such as 0.25 is kept as the rational 1/4."""
        self.assertEqual(Param.of(0.25).re, Fraction(1, 4))
        self.assertTrue(Param.of(0.25).exact)

    def test_irrational_float_is_inexact(self):
        """math.pi cannot be typed as a short decimal."""
        p = Param.of(math.pi)
        self.assertFalse(p.exact)
        self.assertTrue(p.matches(math.pi + 1e-14))

    def test_arithmetic(self):
        """Sums and halves of exact parameters stay exact."""
        p = Param.of(1) - Param.of("1/2") / 2
        self.assertEqual(p.re, Fraction(3, 4))
        self.assertTrue((p + Fraction(1, 4)).is_integer())

    def test_nonpositive_integer(self):
        self.assertTrue(Param.of(-2).is_nonpositive_integer())
        self.assertTrue(Param.of(0).is_nonpositive_integer())
        self.assertFalse(Param.of("1/2").is_nonpositive_integer())

    def test_strictly_less_tolerance(self):
        """Inexact comparisons must clear the match tolerance."""
        self.assertTrue(strictly_less(Fraction(1, 3), Fraction(1, 2)))
        self.assertFalse(strictly_less(1.0, 1.0 + 1e-14, exact=False))

    def test_bad_input(self):
        with self.assertRaises(ValueError):
            Param.parse("abc")
        with self.assertRaises(TypeError):
            Param.of(True)


class TestValidate(unittest.TestCase):

    def test_legal_class_b(self):
        """G^{10}_{11}(3/2; 0) is legal."""
        self.assertTrue(validate(GSpec.make(1, 0, ["3/2"], [0])))

    def test_forbidden_pair(self):
        """a_1 - b_1 = 1 makes poles of Gamma(b+s) and Gamma(1-a-s) collide."""
        result = validate(GSpec.make(1, 1, [1], [0]))
        self.assertFalse(result)
        self.assertIn("a1-b1 = 1 is a positive integer", result.violations[0])

    def test_mirrored_pair_allowed(self):
        """b_1 - a_1 = 1 leaves the poles separated."""
        self.assertTrue(validate(GSpec.make(1, 1, [0], [1])))

    def test_budget(self):
        result = validate(GSpec.make(0, 0, [1], [0]))
        self.assertFalse(result)
        self.assertTrue(any("p+q > 2m+2n" in v for v in result.violations))

    def test_row_length_mismatch(self):
        with self.assertRaises(ValidationError):
            GSpec(1, 0, 2, 1, (Param.of(1),), (Param.of(0),))


class TestClassify(unittest.TestCase):

    def test_getoor_kernel(self):
        """G^{10}_{11}(1+sigma; 0), sigma = 1/2: class B, nu = 3/2."""
        report = classify(GSpec.make(1, 0, ["3/2"], [0]))
        self.assertEqual(report.condition, "B")
        self.assertEqual(report.nu, Fraction(3, 2))
        self.assertEqual(report.b_under, 0)
        self.assertEqual(report.a_bar, -math.inf)

    def test_reduced_getoor_output(self):
        """G^{11}_{22}((0, 1); (0, 1/2)): class B, nu = 1/2."""
        report = classify(GSpec.make(1, 1, [0, 1], [0, "1/2"]))
        self.assertEqual(report.condition, "B")
        self.assertEqual(report.nu, Fraction(1, 2))

    def test_m_zero(self):
        report = classify(GSpec.make(0, 1, ["3/2"], [0]))
        self.assertEqual(report.b_under, math.inf)

    def test_class_c_has_no_contour(self):
        """G^{10}_{02}(-; 0, 1/2) is class C with an empty strip."""
        report = classify(GSpec.make(1, 0, [], [0, "1/2"]))
        self.assertEqual(report.condition, "C")
        self.assertFalse(report.has_contour)

    def test_random_specs_match_predicates(self):
        """Class assignment follows the arithmetic predicates on random legal specs."""
        rng = np.random.default_rng(1234)
        checked = 0
        while checked < 1000:
            p, q = rng.integers(0, 4, size=2)
            m, n = rng.integers(0, q + 1), rng.integers(0, p + 1)
            a = [Fraction(int(k), 4) for k in rng.integers(-8, 9, size=p)]
            b = [Fraction(int(k), 4) for k in rng.integers(-8, 9, size=q)]
            g = GSpec.make(int(m), int(n), a, b)
            if not validate(g):
                continue
            report = classify(g)
            budget = 2 * m + 2 * n
            if p + q < budget:
                expected = "A"
            elif p == q:
                expected = "B"
            elif p < q:
                expected = "C"
            else:
                expected = "D"
            self.assertEqual(report.condition, expected, str(g))
            self.assertEqual(report.nu, sum(a, Fraction(0)) - sum(b, Fraction(0)))
            checked += 1


class TestIdentities(unittest.TestCase):

    def setUp(self):
        self.getoor = GSpec.make(1, 0, ["3/2"], [0], math.gamma(1.5))

    def test_shift_power(self):
        """Shifting by rho moves both rows."""
        g = shift_power(GSpec.make(1, 0, ["3/2"], [0]), "1/4")
        self.assertEqual(_rows(g.a), [Fraction(7, 4)])
        self.assertEqual(_rows(g.b), [Fraction(1, 4)])
        self.assertTrue(shift_power(g, "-1/4").same_record(GSpec.make(1, 0, ["3/2"], [0])))

    def test_shift_power_value(self):
        """r^c G(a; b | r) = G(a + c; b + c | r)."""
        c = 0.3
        shifted = shift_power(self.getoor, c)
        for r in (0.3, 0.7):
            lhs = r**c * meijer_g_series(self.getoor, r).value
            rhs = meijer_g_series(shifted, r).value
            self.assertAlmostEqual(abs(lhs - rhs) / abs(lhs), 0.0, delta=1e-10)

    def test_invert_argument(self):
        """G^{10}_{11}(a; b | 1/r) = G^{01}_{11}(1-b; 1-a | r); inversion is an involution."""
        inv = invert_argument(self.getoor)
        self.assertEqual((inv.m, inv.n, inv.p, inv.q), (0, 1, 1, 1))
        self.assertEqual(_rows(inv.a), [1])
        self.assertEqual(_rows(inv.b), [Fraction(-1, 2)])
        self.assertTrue(invert_argument(inv).same_record(self.getoor))
        self.assertEqual(classify(inv).nu, classify(self.getoor).nu)

    def test_reduce_example(self):
        """G^{21}_{33}((0 | 1, -1/2); (0, -1/2 | 1/2)) reduces to G^{11}_{22}((0 | 1); (0 | 1/2))."""
        g = GSpec.make(2, 1, [0, 1, "-1/2"], [0, "-1/2", "1/2"])
        out = reduce(g)
        self.assertTrue(out.same_record(GSpec.make(1, 1, [0, 1], [0, "1/2"])))
        self.assertTrue(reduce(out).same_record(out))

    def test_reduce_preserves_value(self):
        """Adding and cancelling a pair leaves the value unchanged."""
        rng = np.random.default_rng(7)
        for c in rng.uniform(-0.9, 0.4, size=5):
            padded = GSpec.make(1, 1, [c, "3/2"], [0, c], self.getoor.coeff)
            reduced = reduce(padded)
            self.assertTrue(reduced.same_record(self.getoor))
            for r in (0.3, 0.7):
                lhs = meijer_g_series(padded, r).value
                rhs = meijer_g_series(self.getoor, r).value
                self.assertAlmostEqual(abs(lhs - rhs) / abs(rhs), 0.0, delta=1e-10)
            self.assertAlmostEqual(abs(meijer_g_series(padded, 1.5).value), 0.0, delta=1e-10)

    def test_swap_jacobi_shape(self):
        """G^{20}_{22}((1+a/2+n, 1-d/2-n); (1-d/2, 0)) -> (-1)^n G^{11}_{22}((1-d/2-n | 1+a/2+n); (0 | 1-d/2))."""
        alpha, delta = Fraction(1), Fraction(3)
        for n in (0, 1, 2):
            g = GSpec.make(2, 0, [1 + alpha / 2 + n, 1 - delta / 2 - n], [1 - delta / 2, 0])
            out = swap_integer_pair(g, 1, 0)
            expected = GSpec.make(
                1, 1, [1 - delta / 2 - n, 1 + alpha / 2 + n], [0, 1 - delta / 2], (-1) ** n
            )
            self.assertTrue(out.same_record(expected), str(out))

    def test_swap_back_restores(self):
        """Swapping a pair with offset k and back restores the record."""
        g = GSpec.make(1, 0, ["1/3"], ["4/3"])
        there = swap_integer_pair(g, 0, 0)
        self.assertEqual(there.coeff, -1)
        self.assertEqual((there.m, there.n), (0, 1))
        self.assertTrue(swap_integer_pair(there, 0, 0).same_record(g))

    def test_swap_zero_offset(self):
        g = GSpec.make(1, 0, ["1/3"], ["1/3"], 2.0)
        self.assertEqual(swap_integer_pair(g, 0, 0).coeff, 2.0)

    def test_swap_preserves_value(self):
        """The swapped Jacobi record evaluates to the same function."""
        g = GSpec.make(2, 0, ["5/2", "-1/2"], [0, "1/2"])
        out = swap_integer_pair(g, 1, 1)
        for r in (0.3, 0.7):
            lhs = meijer_g_series(g, r).value
            rhs = meijer_g_series(out, r).value
            self.assertAlmostEqual(abs(lhs - rhs) / abs(lhs), 0.0, delta=1e-10)

    def test_swap_rejects(self):
        with self.assertRaises(ConditionViolation):
            swap_integer_pair(GSpec.make(1, 0, ["1/3"], ["1/2"]), 0, 0)
        with self.assertRaises(ConditionViolation):
            swap_integer_pair(GSpec.make(1, 1, ["1/3"], ["4/3"]), 0, 0)


class TestHypExpansion(unittest.TestCase):

    def test_getoor_output_constant(self):
        """G^{11}_{22}((0, 1); (0, 1/2)) = 2F~1(1, 0; 1/2 | r) = 1/sqrt(pi)."""
        terms = to_hyp_expansion(GSpec.make(1, 1, [0, 1], [0, "1/2"]))
        self.assertEqual(len(terms), 1)
        power, hyp = terms[0]
        self.assertEqual(power.re, 0)
        self.assertEqual(_rows(hyp.upper), [1, 0])
        self.assertEqual(_rows(hyp.lower), [Fraction(1, 2)])
        value = meijer_g_series(GSpec.make(1, 1, [0, 1], [0, "1/2"]), 0.5).value
        self.assertAlmostEqual(value.real, 1 / math.sqrt(math.pi), places=12)

    def test_ball_kernel(self):
        """G^{10}_{11}(1+sigma; 0 | r) = (1-r)^sigma / Gamma(1+sigma) on (0, 1)."""
        (power, hyp), = to_hyp_expansion(GSpec.make(1, 0, ["3/2"], [0]))
        self.assertEqual(power.re, 0)
        self.assertEqual(hyp.sign, 1)
        value = meijer_g_series(GSpec.make(1, 0, ["3/2"], [0]), 0.25).value
        self.assertAlmostEqual(value.real, 0.75**0.5 / math.gamma(1.5), places=12)

    def test_rejections(self):
        with self.assertRaises(WrongRegion):
            to_hyp_expansion(GSpec.make(0, 1, [0, 1], [0]))
        with self.assertRaises(IntegerBDifference) as ctx:
            to_hyp_expansion(GSpec.make(2, 0, [], [0, 1]))
        self.assertEqual(ctx.exception.pairs, [(0, 1)])

    def test_expansion_matches_contour(self):
        """Series and contour routes agree on class A and class B records."""
        cases = [
            (GSpec.make(1, 0, [], ["1/2"]), 0.5),
            (GSpec.make(1, 1, [0], [0]), 0.4),
            (GSpec.make(1, 0, ["3/2"], [0]), 0.25),
            (GSpec.make(1, 1, ["1/3", "5/2"], ["1/4", "-1/5"]), 0.6),
        ]
        for g, r in cases:
            series = meijer_g_series(g, r).value
            contour = meijer_g_contour(g, r).value
            self.assertAlmostEqual(abs(series - contour) / abs(series), 0.0, delta=1e-7, msg=str(g))


class TestFromHyp(unittest.TestCase):

    def test_cosine_kernel(self):
        """0F~1(1/2 | -r) -> G^{10}_{02}(-; 0, 1/2)."""
        g = from_hyp(HypSpec((), ("1/2",), True, 1.0, -1))
        self.assertTrue(g.same_record(GSpec.make(1, 0, [], [0, "1/2"])))

    def test_two_f_one(self):
        """2F~1(1, delta/2; 1+alpha/2 | -r) -> G^{12}((0, 1-delta/2); (0, -alpha/2)), coeff 1/Gamma(delta/2)."""
        delta, alpha = Fraction(3), Fraction(1)
        g = from_hyp(HypSpec((1, delta / 2), (1 + alpha / 2,), True, 1.0, -1))
        self.assertEqual((g.m, g.n, g.p, g.q), (1, 2, 2, 2))
        self.assertEqual(_rows(g.a), [0, 1 - delta / 2])
        self.assertEqual(_rows(g.b), [0, -alpha / 2])
        self.assertAlmostEqual(g.coeff.real, 1 / math.gamma(1.5), places=13)

    def test_round_trip(self):
        """from_hyp then to_hyp_expansion returns the same hypergeometric record."""
        h = HypSpec(("1/3", "5/4"), ("7/3",), True, 1.5, -1)
        (power, back), = to_hyp_expansion(from_hyp(h))
        self.assertEqual(power.re, 0)
        self.assertEqual(_rows(back.upper), _rows(h.upper))
        self.assertEqual(_rows(back.lower), _rows(h.lower))
        self.assertEqual(back.sign, -1)
        self.assertAlmostEqual(abs(back.coeff - h.coeff), 0.0, places=12)

    def test_delta_half(self):
        g = from_hyp(HypSpec((), ("1/2",), True, 1.0, -1), delta_half="3/2")
        self.assertEqual(_rows(g.b), [0, Fraction(1, 2), Fraction(-1, 2)])

    def test_nonpositive_upper(self):
        with self.assertRaises(NonPositiveIntegerUpper):
            from_hyp(HypSpec((-1,), ("1/2",), True, 1.0, -1))

    def test_hypspec_invariants(self):
        with self.assertRaises(ValidationError):
            HypSpec((1, 2, 3), (1,))
        with self.assertRaises(ValidationError):
            HypSpec((1,), (-2,), regularized=False)


class TestPowerKernels(unittest.TestCase):

    def test_ball(self):
        g = encode_power_kernel(0, "1/2", "ball")
        self.assertTrue(g.same_record(GSpec.make(1, 0, ["3/2"], [0], math.gamma(1.5))))

    def test_full(self):
        """(0, -1, full) -> G^{11}_{11}(0; 0) = (1+r)^{-1}."""
        g = encode_power_kernel(0, -1, "full")
        self.assertTrue(g.same_record(GSpec.make(1, 1, [0], [0], 1.0)))
        self.assertAlmostEqual(meijer_g_series(g, 0.5).value.real, 1 / 1.5, places=12)

    def test_indicator(self):
        g = encode_power_kernel("1/2", 0, "ball")
        self.assertEqual(g.coeff, 1)
        self.assertAlmostEqual(meijer_g_series(g, 0.25).value.real, 0.5, places=12)

    def test_complement(self):
        g = encode_power_kernel(0, "1/2", "complement")
        self.assertEqual((g.m, g.n), (0, 1))
        self.assertAlmostEqual(meijer_g_series(g, 0.5).value.real, 0.0, places=12)
        self.assertAlmostEqual(meijer_g_series(g, 2.0).value.real, 1.0, places=10)

    def test_rejections(self):
        with self.assertRaises(ConditionViolation):
            encode_power_kernel(0, 2, "full")
        with self.assertRaises(ConditionViolation):
            encode_power_kernel(0, -1, "ball")
        with self.assertRaises(ConditionViolation):
            encode_power_kernel(0, 0.5, "annulus")


class TestMellinKernel(unittest.TestCase):

    def test_ball_kernel(self):
        """Mellin kernel of G^{10}_{11}(3/2; 0) is Gamma(s)/Gamma(3/2+s)."""
        g = GSpec.make(1, 0, ["3/2"], [0])
        s = 0.4 + 0.3j
        expected = cmath.exp(loggamma(s) - loggamma(1.5 + s))
        self.assertAlmostEqual(abs(mellin_kernel(g, s) - expected), 0.0, places=12)


if __name__ == "__main__":
    unittest.main()
