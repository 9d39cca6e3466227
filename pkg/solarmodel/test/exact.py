"""Exact polynomial integrals of the density law for an integer delta."""

import math
from fractions import Fraction


def _multiply(first, second):
    product = {}
    for d1, c1 in first.items():
        for d2, c2 in second.items():
            product[d1 + d2] = product.get(d1 + d2, 0) + c1 * c2
    return product


def _primitive(poly):
    return {d + 1: c / (d + 1) for d, c in poly.items()}


def _evaluate(poly, y):
    y = Fraction(y)
    return sum(c * y**d for d, c in poly.items())


def exact_polynomials(delta, gamma):
    """Primitives of ``t² u`` and ``m u / t²`` for an integer delta.

    The coefficients are exact fractions.
    """
    u = {
        k * delta: Fraction((-1) ** k * math.comb(gamma, k))
        for k in range(gamma + 1)
    }
    mass = _primitive({d + 2: c for d, c in u.items()})
    integrand = {d - 2: c for d, c in _multiply(mass, u).items()}
    return mass, _primitive(integrand)


def exact_mass_ratio(delta, gamma, y):
    mass = exact_polynomials(delta, gamma)[0]
    return float(_evaluate(mass, y) / _evaluate(mass, 1))


def exact_g(delta, gamma, y):
    primitive = exact_polynomials(delta, gamma)[1]
    return float(_evaluate(primitive, 1) - _evaluate(primitive, y))


def exact_luminosity_integral(delta, gamma, n, y):
    """``∫_0^y t² uⁿ g dt`` (rate linear in the temperature)."""
    primitive = exact_polynomials(delta, gamma)[1]
    head = _evaluate(primitive, 1)
    g = {d: -c for d, c in primitive.items()}
    g[0] = g.get(0, 0) + head
    u = {
        k * delta: Fraction((-1) ** k * math.comb(n * gamma, k))
        for k in range(n * gamma + 1)
    }
    integrand = {d + 2: c for d, c in _multiply(u, g).items()}
    return float(_evaluate(_primitive(integrand), y))
