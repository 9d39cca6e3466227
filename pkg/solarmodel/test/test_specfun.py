import math
import unittest
from fractions import Fraction

import mpmath
import numpy as np

from solarmodel.specfun import (
    GUARD_DIGITS,
    WORKING,
    DomainError,
    KdFSpec,
    PrecisionError,
    evaluate_with_guard,
    gauss_2f1_at_unity,
    gauss_2f1_terminating,
    gauss_2f1_working,
    kdf_eval,
    kdf_sum,
    ln_gamma_ratio,
    ln_pochhammer,
    lost_digits,
    pochhammer,
    termination_orders,
)


def hyp2f1_reference(neg_a, b, c, z):
    with mpmath.workdps(50):
        return float(mpmath.hyp2f1(neg_a, b, c, z))


class TestPochhammer(unittest.TestCase):
    def test_values(self):
        self.assertEqual(pochhammer(2.34375, 0), 1.0)
        self.assertEqual(pochhammer(3, 4), 360.0)
        self.assertEqual(pochhammer(-10, 3), -720.0)
        self.assertAlmostEqual(pochhammer(0.5, 3), 0.5 * 1.5 * 2.5)

    def test_split(self):
        for x in (0.3, 2.34375, 7.0):
            for m in range(5):
                for n in range(5):
                    expected = pochhammer(x, m) * pochhammer(x + m, n)
                    self.assertAlmostEqual(
                        pochhammer(x, m + n) / expected, 1.0, places=13
                    )
                    self.assertAlmostEqual(
                        ln_pochhammer(x, m + n),
                        ln_pochhammer(x, m) + ln_pochhammer(x + m, n),
                        places=12,
                    )

    def test_errors(self):
        with self.assertRaises(DomainError):
            pochhammer(1.0, -1)
        with self.assertRaises(DomainError):
            pochhammer(1.0, 1.5)


class TestLnGammaRatio(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(ln_gamma_ratio(5, 3), math.log(12), places=14)
        self.assertEqual(ln_gamma_ratio(1, 1), 0.0)
        third = 3 / 1.2814
        product = math.prod(third + j for j in range(1, 11))
        self.assertAlmostEqual(
            ln_gamma_ratio(third + 11, third + 1), math.log(product), places=12
        )

    def test_close_arguments(self):
        with mpmath.workdps(50):
            expected = float(mpmath.loggamma(2.5) - mpmath.loggamma(2.25))
        self.assertAlmostEqual(ln_gamma_ratio(2.5, 2.25), expected, places=15)

    def test_large_gap(self):
        with mpmath.workdps(50):
            expected = float(mpmath.loggamma(300.5) - mpmath.loggamma(0.5))
        self.assertAlmostEqual(
            ln_gamma_ratio(300.5, 0.5) / expected, 1.0, places=13
        )

    def test_errors(self):
        with self.assertRaises(DomainError):
            ln_gamma_ratio(0.0, 1.0)
        with self.assertRaises(DomainError):
            ln_gamma_ratio(1.0, -2.0)


class TestGauss2F1(unittest.TestCase):
    def test_two_terms(self):
        for b, c, z in ((2.0, 3.0, 0.5), (0.3, 7.1, 0.9), (-1.5, 2.5, 0.2)):
            self.assertAlmostEqual(
                gauss_2f1_terminating(-1, b, c, z), 1 - b / c * z, places=15
            )

    def test_table_value(self):
        value = gauss_2f1_terminating(-10, 2.34375, 3.34375, 0.04354)
        self.assertAlmostEqual(value, 0.7368, places=3)
        self.assertAlmostEqual(
            value, hyp2f1_reference(-10, 2.34375, 3.34375, 0.04354), places=14
        )

    def test_zero_argument(self):
        self.assertEqual(gauss_2f1_terminating(-7, 1.3, 2.7, 0.0), 1.0)
        self.assertEqual(gauss_2f1_terminating(0, 1.3, 2.7, 0.6), 1.0)

    def test_against_mpmath(self):
        for order in (1, 5, 10, 15, 30):
            for delta in (0.5, 1.2814, 2.0):
                b = 2 / delta + 3
                for z in (0.01, 0.3, 0.7, 0.99, 1.0):
                    expected = hyp2f1_reference(-order, b, b + 1, z)
                    value = gauss_2f1_terminating(-order, b, b + 1, z)
                    self.assertLessEqual(
                        abs(value - expected), 1e-13 * abs(expected) + 1e-300
                    )

    def test_array(self):
        zs = np.linspace(0, 1, 11)
        values = gauss_2f1_terminating(-10, 2.34375, 3.34375, zs)
        self.assertEqual(values.shape, zs.shape)
        for z, value in zip(zs, values):
            self.assertAlmostEqual(
                value, gauss_2f1_terminating(-10, 2.34375, 3.34375, z), places=15
            )

    def test_working_precision(self):
        value = gauss_2f1_working(-20, 4.5, 5.5, 0.8)
        self.assertAlmostEqual(
            float(value), hyp2f1_reference(-20, 4.5, 5.5, 0.8), places=15
        )

    def test_errors(self):
        with self.assertRaises(DomainError):
            gauss_2f1_terminating(-1.5, 1.0, 2.0, 0.5)
        with self.assertRaises(DomainError):
            gauss_2f1_terminating(2, 1.0, 2.0, 0.5)
        with self.assertRaises(DomainError):
            # (c)_k vanishes for k = 3
            gauss_2f1_terminating(-5, 1.0, -2.0, 0.5)


class TestGauss2F1AtUnity(unittest.TestCase):
    def test_values(self):
        self.assertEqual(gauss_2f1_at_unity(0, 1.3, 2.0), 1.0)
        self.assertAlmostEqual(gauss_2f1_at_unity(-2, 1, 4), 0.6, places=15)
        third = 3 / 1.2814
        value = gauss_2f1_at_unity(-10, third, third + 1)
        self.assertAlmostEqual(value * 112.08, 1.0, delta=5e-3)

    def test_against_series(self):
        for order in (1, 4, 9):
            for b, c in ((1.5, 2.5), (0.7, 3.2), (2.0, 2.5)):
                self.assertAlmostEqual(
                    gauss_2f1_at_unity(-order, b, c),
                    hyp2f1_reference(-order, b, c, 1.0),
                    places=13,
                )


class TestGuardedEvaluation(unittest.TestCase):
    def test_lost_digits(self):
        self.assertAlmostEqual(lost_digits(1.0, 1e5), 5.0, places=12)
        self.assertEqual(lost_digits(2.0, 1.0), 0.0)
        self.assertEqual(lost_digits(0.0, 0.0), 0.0)
        self.assertEqual(lost_digits(0.0, 1.0), math.inf)

    def test_precision_raised(self):
        calls = []

        def func(dps):
            calls.append((dps, WORKING.dps))
            big = WORKING.mpf(10) ** 30
            return [((big + 1) - big, 2 * big + 1)]

        start = WORKING.dps
        (value,) = evaluate_with_guard(func)
        self.assertEqual(value, 1)
        self.assertEqual(calls[0], (start, start))
        self.assertGreater(len(calls), 1)
        dps = calls[-1][0]
        self.assertEqual(calls[-1][1], dps)
        self.assertGreaterEqual(dps, 30 + GUARD_DIGITS)
        self.assertEqual(dps % 40, 0)
        self.assertEqual(WORKING.dps, start)

    def test_no_raise_needed(self):
        calls = []

        def func(dps):
            calls.append(dps)
            return [(WORKING.mpf(3), WORKING.mpf(5))]

        self.assertEqual(evaluate_with_guard(func), [3])
        self.assertEqual(len(calls), 1)

    def test_precision_error(self):
        with self.assertRaises(PrecisionError):
            evaluate_with_guard(lambda dps: [(WORKING.zero, WORKING.one)])
        self.assertTrue(issubclass(PrecisionError, ArithmeticError))


class TestKdF(unittest.TestCase):
    def test_separable(self):
        spec = KdFSpec(
            upper_x=(-2, 1.0),
            lower_x=(4.0,),
            upper_y=(-3, 2.0),
            lower_y=(5.0,),
            x=0.3,
            y=0.7,
        )
        expected = gauss_2f1_terminating(-2, 1, 4, 0.3) * gauss_2f1_terminating(
            -3, 2, 5, 0.7
        )
        self.assertAlmostEqual(kdf_eval(spec), expected, places=14)
        value, magnitude = kdf_sum(spec)
        self.assertGreaterEqual(magnitude, abs(value))
        self.assertEqual(float(value), kdf_eval(spec))

    def test_working_parameters(self):
        # parameters of the working context keep their digits
        third = WORKING.mpf(1) / 3
        spec = KdFSpec(upper_x=(-3, third), lower_x=(third + 1,), upper_y=(0,))
        self.assertIs(spec.upper_x[1], third)
        self.assertEqual(spec.upper_x[0], -3.0)
        expected = gauss_2f1_terminating(-3, 1 / 3, 4 / 3, 0.0)
        self.assertEqual(kdf_eval(spec), expected)

    def test_termination_orders(self):
        spec = KdFSpec(upper_x=(-4, 1.0), upper_y=(-2,), lower_x=(2.0,))
        self.assertEqual(termination_orders(spec), (4, 2))
        spec = KdFSpec(upper_joint=(-3,), upper_x=(-5,), upper_y=(1.0,))
        self.assertEqual(termination_orders(spec), (3, 3))

    def test_larger_truncation(self):
        spec = KdFSpec(
            upper_joint=(0.5,),
            lower_joint=(1.5,),
            upper_x=(-3, 2.0),
            lower_x=(3.0,),
            upper_y=(-3,),
            x=0.4,
            y=0.4,
        )
        self.assertAlmostEqual(kdf_eval(spec), kdf_eval(spec, 6, 8), places=15)

    def test_errors(self):
        spec = KdFSpec(upper_x=(-4,), upper_y=(1.0,))
        with self.assertRaises(DomainError):
            termination_orders(spec)
        spec = KdFSpec(upper_x=(-4,), upper_y=(-4,), x=0.1, y=0.1)
        with self.assertRaises(DomainError):
            kdf_eval(spec, 2, 4)
        spec = KdFSpec(
            upper_x=(-4,), upper_y=(-4,), lower_joint=(-2.0,), x=0.1, y=0.1
        )
        with self.assertRaises(DomainError):
            kdf_eval(spec)


def brute_force_2f1(order, b, c, z):
    """Exact rational sum of the terminating series (float parameters)."""
    b, c, z = Fraction(b), Fraction(c), Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(order):
        term = term * (k - order) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


class TestExactSums(unittest.TestCase):
    def test_gauss_2f1(self):
        for order in (1, 7, 20, 41, 60):
            for b in (0.4, 2.34375, 11.5):
                for z in (-1.0, -0.3, 0.05, 0.5, 0.97, 1.0):
                    expected = brute_force_2f1(order, b, b + 1, z)
                    value = gauss_2f1_terminating(-order, b, b + 1, z)
                    self.assertLessEqual(
                        abs(Fraction(value) - expected), 1e-13 * abs(expected)
                    )

    def test_gauss_2f1_general_lower(self):
        # c < b: no positive reflected form, the terms cancel
        for order, b, c, z in ((60, 7.0, 0.7, 1.0), (60, 2.5, 0.7, 0.6)):
            expected = brute_force_2f1(order, b, c, z)
            value = gauss_2f1_terminating(-order, b, c, z)
            self.assertLessEqual(
                abs(Fraction(value) - expected), 1e-13 * abs(expected)
            )
        self.assertLess(gauss_2f1_terminating(-60, 7.0, 0.7, 1.0), 0.0)
        for order in (5, 20, 41, 60):
            for b, c in ((2.5, 0.7), (7.0, 1.3), (-3.5, 2.25), (0.4, 0.3)):
                for z in (-0.5, 0.3, 0.6, 0.9, 1.0):
                    expected = brute_force_2f1(order, b, c, z)
                    value = gauss_2f1_terminating(-order, b, c, z)
                    self.assertLessEqual(
                        abs(Fraction(value) - expected),
                        1e-12 * abs(expected),
                        (order, b, c, z),
                    )
                    array = gauss_2f1_terminating(-order, b, c, np.array([z]))
                    self.assertEqual(array[0], value)

    def test_unity_paths(self):
        for gamma in (1, 10, 20, 30):
            for b in (0.75, 2.34375, 7.0):
                at_unity = gauss_2f1_at_unity(-gamma, b, b + 1)
                series = gauss_2f1_terminating(-gamma, b, b + 1, 1.0)
                self.assertAlmostEqual(at_unity / series, 1.0, places=12)

    def test_kdf_single_sum(self):
        # second series truncated at order 0
        spec = KdFSpec(
            upper_joint=(1.5625,),
            lower_joint=(2.5625,),
            upper_x=(-10, 2.34375),
            lower_x=(3.34375,),
            upper_y=(-0,),
            x=0.6,
            y=0.9,
        )
        with mpmath.workdps(50):
            expected = float(
                mpmath.hyper([1.5625, -10, 2.34375], [2.5625, 3.34375], 0.6)
            )
        self.assertAlmostEqual(kdf_eval(spec) / expected, 1.0, places=13)
