"""Error-free summation (:mod:`solarmodel.util.summation`)
========================================================

The double precision ascending sums of :mod:`solarmodel.specfun` keep the
low-order bits dropped by ``round(s + v)`` with the error-free
transformation of a sum. :func:`math.fsum` is used when the terms are
known beforehand.

.. autofunction:: two_sum

"""


def two_sum(u, v):
    """Error-free transformation of a sum: ``u + v == s + t`` exactly."""
    s = u + v
    up = s - v
    vpp = s - up
    up = up - u
    vpp = vpp - v
    t = -(up + vpp)
    return s, t
