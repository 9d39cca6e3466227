import json
import unittest

from solarmodel.density import ModelParams
from solarmodel.validation import (
    PARAMS_GRID,
    adjudicate_pressure_tables,
    relative_error,
    run_validation,
)


class TestRelativeError(unittest.TestCase):
    def test_values(self):
        self.assertEqual(relative_error(1.1, 1.0), abs(1.1 - 1.0))
        self.assertEqual(relative_error(3.0, 0.0), 3.0)
        self.assertEqual(relative_error(2.0, -1.0), 3.0)
        self.assertEqual(relative_error(0.0, 0.0), 0.0)
        # no floor: tiny references near the surface keep full weight
        self.assertAlmostEqual(relative_error(2e-22, 1e-22), 1.0)


class TestValidation(unittest.TestCase):
    def test_quick(self):
        report = run_validation(quick=True)
        summary = report["summary"]
        self.assertTrue(summary["passed"], summary)
        self.assertEqual(summary["nb_failures"], 0)
        self.assertGreater(summary["nb_checks"], 30)
        self.assertLessEqual(summary["worst_error_over_tolerance"], 1.0)
        names = {check["name"] for check in report["checks"]}
        self.assertEqual(
            names,
            {
                "mass_ratio",
                "pressure",
                "pressure_kdf",
                "psi_minus_phi",
                "luminosity",
                "mass_ratio_direct",
                "luminosity_direct",
            },
        )
        # the report is meant to be written as json
        json.dumps(report)

    def test_full_grid(self):
        self.assertEqual(len(PARAMS_GRID), 16)
        report = run_validation()
        failures = [check for check in report["checks"] if not check["passed"]]
        self.assertEqual(failures, [])

    def test_custom_grid(self):
        report = run_validation(
            params_grid=(ModelParams(2.0, 3),), n_values=(3,), y_grid=(0.5,)
        )
        ys = {check["y"] for check in report["checks"]}
        self.assertEqual(ys, {0.0, 0.5, 1.0})
        self.assertTrue(report["summary"]["passed"])

    def test_adjudication(self):
        result = adjudicate_pressure_tables()
        self.assertEqual(result["confirmed"], "table4")
        self.assertLessEqual(result["max_deviation"]["table4"], 0.05)
        self.assertGreater(result["max_deviation"]["table6"], 0.05)
        self.assertTrue(
            all(g > result["g_center"] for g in result["table6_g"][:1])
        )
        for oracle, closed in zip(result["oracle_g"], result["closed_form_g"]):
            self.assertAlmostEqual(oracle / closed, 1.0, places=8)
        self.assertIs(
            result["temperature_proxy_within_5_percent"],
            result["confirmed"] == "table4",
        )


if __name__ == "__main__":
    unittest.main()
