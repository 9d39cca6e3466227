import math
import unittest

import numpy as np

from solarmodel.util.summation import two_sum


class TestCase(unittest.TestCase):
    def test_two_sum(self):
        s, t = two_sum(1.0, 1e-17)
        self.assertEqual(s, 1.0)
        self.assertEqual(t, 1e-17)
        s, t = two_sum(0.1, 0.2)
        self.assertEqual(s, 0.1 + 0.2)
        self.assertEqual(math.fsum([s, t]), math.fsum([0.1, 0.2]))

    def test_cancellation(self):
        s, t = two_sum(1e16, 1.0)
        self.assertEqual(s, 1e16)
        self.assertEqual(t, 1.0)
        s, t = two_sum(s, -1e16)
        self.assertEqual(s + t, 0.0)

    def test_arrays(self):
        s, t = two_sum(np.array([1e16, 0.1]), np.array([1.0, 0.2]))
        np.testing.assert_array_equal(s, [1e16, 0.1 + 0.2])
        self.assertEqual(t[0], 1.0)
        self.assertEqual(math.fsum([s[1], t[1]]), math.fsum([0.1, 0.2]))


if __name__ == "__main__":
    unittest.main()
