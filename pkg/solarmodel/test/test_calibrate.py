import unittest

import numpy as np
from numpy.polynomial import polynomial as npoly

from solarmodel.calibrate import (
    PRINTED_MASS_TARGET,
    NoRootError,
    RankDeficiencyError,
    ReferenceTable,
    constraint_value,
    fit_model_params,
    fit_polynomial,
    mass_target_from_constants,
    solve_delta,
    sum_of_squares,
)
from solarmodel.density import CANDIDATE_MODELS, ModelParams, eval_model
from solarmodel.reference import ORDINATES, density_reference, load_table
from solarmodel.specfun import DomainError
from solarmodel.structure import SolarConstants


class TestConstraint(unittest.TestCase):
    def test_values(self):
        self.assertEqual(constraint_value(1.3, 0), 1.0)
        self.assertAlmostEqual(constraint_value(1.0, 1), 4.0, places=14)
        self.assertAlmostEqual(
            constraint_value(1.2814, 10) / PRINTED_MASS_TARGET, 1.0, delta=1e-3
        )
        values = [constraint_value(delta, 10) for delta in (0.5, 1.0, 2.0, 8.0)]
        self.assertEqual(values, sorted(values, reverse=True))

    def test_target_from_constants(self):
        target = mass_target_from_constants(SolarConstants())
        self.assertAlmostEqual(target, 112.07, delta=0.01)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            constraint_value(0.0, 3)
        with self.assertRaises(DomainError):
            constraint_value(1.0, -1)


class TestSolveDelta(unittest.TestCase):
    def test_printed_table(self):
        data = load_table("table2_delta")
        for gamma, printed, decimals in zip(
            data.column("gamma", int),
            data.column("delta"),
            data.column("decimals", int),
        ):
            tolerance = 1e-3 if decimals >= 4 else 5e-3
            self.assertAlmostEqual(
                solve_delta(gamma, PRINTED_MASS_TARGET), printed, delta=tolerance
            )

    def test_inverse(self):
        for gamma in (1, 2, 10, 20):
            for target in (1.5, 112.08, 1e4):
                delta = solve_delta(gamma, target)
                self.assertAlmostEqual(
                    constraint_value(delta, gamma) / target, 1.0, places=9
                )

    def test_no_root(self):
        for target in (1.0, 0.5, -3.0):
            with self.assertRaises(NoRootError):
                solve_delta(10, target)
        with self.assertRaises(NoRootError):
            solve_delta(1, 1e7)
        with self.assertRaises(NoRootError):
            solve_delta(1, 1 + 1e-15)

    def test_invalid_gamma(self):
        for gamma in (0, 1.5, True):
            with self.assertRaises(DomainError):
                solve_delta(gamma, PRINTED_MASS_TARGET)


class TestFitPolynomial(unittest.TestCase):
    def test_exact_cubic(self):
        coefficients = (1.0, -4.94, 6.67, -2.73)
        ys = np.array(ORDINATES)
        data = ReferenceTable(
            tuple(zip(ys, npoly.polyval(ys, coefficients))), ratio=False
        )
        model = fit_polynomial(data, 3)
        self.assertEqual(model.degree, 3)
        np.testing.assert_allclose(model.coefficients, coefficients, atol=1e-8)

    def test_solar_density(self):
        data = density_reference()
        model = fit_polynomial(data, 3)
        expected = npoly.polyfit(data.ys, data.values, 3)
        np.testing.assert_allclose(model.coefficients, expected, rtol=1e-8)
        # the printed cubic (1.1) is not the least square one
        self.assertLessEqual(
            sum_of_squares(model, data), sum_of_squares(CANDIDATE_MODELS["1.1"], data)
        )
        residuals = eval_model(model, data.ys) - data.values
        for k in range(4):
            self.assertLess(abs(np.sum(residuals * data.ys**k)), 1e-9)

    def test_degree_zero(self):
        data = ReferenceTable(((0.1, 0.2), (0.2, 0.4), (0.3, 0.9)))
        model = fit_polynomial(data, 0)
        self.assertAlmostEqual(model.coefficients[0], 0.5, places=15)

    def test_errors(self):
        data = density_reference()
        with self.assertRaises(RankDeficiencyError):
            fit_polynomial(data, len(data))
        duplicated = ReferenceTable(((0.1, 0.5), (0.1, 0.4), (0.2, 0.3)))
        with self.assertRaises(RankDeficiencyError):
            fit_polynomial(duplicated, 2)
        for degree in (-1, 1.5, True):
            with self.assertRaises(ValueError):
                fit_polynomial(data, degree)


class TestFitModelParams(unittest.TestCase):
    def test_solar_density(self):
        report = fit_model_params(density_reference())
        self.assertEqual(len(report.rows), 19)
        self.assertEqual(report.params.gamma, 10)
        self.assertAlmostEqual(report.params.delta, 1.2814, delta=1e-3)
        self.assertEqual(report.best.gamma, 10)
        self.assertLess(report.best.sse, 5e-3)
        self.assertEqual(report.best.sse, min(row.sse for row in report.rows))
        self.assertEqual(report.mass_target, PRINTED_MASS_TARGET)

    def test_self_consistency(self):
        true = ModelParams(1.5, 8)
        ys = np.array(ORDINATES)
        data = ReferenceTable(tuple(zip(ys, eval_model(true, ys))))
        report = fit_model_params(data, mass_target=constraint_value(1.5, 8))
        self.assertEqual(report.params.gamma, 8)
        self.assertAlmostEqual(report.params.delta, 1.5, places=9)
        self.assertLessEqual(report.best.sse, 1e-20)

    def test_ties(self):
        # u(y) rounds to 1 for every candidate
        data = ReferenceTable(((1e-300, 1.0),))
        report = fit_model_params(data, gamma_range=(3, 6))
        self.assertTrue(all(row.sse == 0.0 for row in report.rows))
        self.assertEqual(report.params.gamma, 3)

    def test_errors(self):
        data = density_reference()
        with self.assertRaises(ValueError):
            fit_model_params(data, gamma_range=(0, 5))
        with self.assertRaises(ValueError):
            fit_model_params(data, gamma_range=(5, 4))
        with self.assertRaises(ValueError):
            fit_model_params(ReferenceTable(()))


if __name__ == "__main__":
    unittest.main()
