"""Density models (:mod:`solarmodel.density`)
===========================================

Dimensionless density profiles ``u(y) = ρ(r)/ρ_c`` with ``y = r/R``.

The canonical law is ``u = (1 - y^δ)^γ`` (:class:`ModelParams`). Two wider
families were considered as candidates for the solar density:

- products ``∏ (1 - y^a)^b`` (:class:`ProductDensityModel`),
- polynomials fitted to tabulated solar data
  (:class:`PolynomialDensityModel`).

The polynomial candidates vanish inside the star, which disqualifies them
(:func:`roots_in_open_unit_interval`).

.. autoclass:: ModelParams
   :members:

.. autoclass:: ProductDensityModel
   :members:

.. autoclass:: PolynomialDensityModel
   :members:

.. autodata:: CANDIDATE_MODELS

.. autofunction:: check_radius_fraction

.. autofunction:: eval_density_ratio

.. autofunction:: eval_product_model

.. autofunction:: eval_poly_model

.. autofunction:: eval_model

.. autofunction:: roots_in_open_unit_interval

"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import bisect

from solarmodel.specfun import DomainError

# number of points of the sign scan of the root finder
NB_SCAN_POINTS = 4096


def _check_delta_gamma(delta, gamma, min_gamma):
    if isinstance(gamma, bool) or not float(gamma).is_integer():
        raise DomainError(f"gamma has to be an integer (got {gamma!r})")
    if not delta > 0:
        raise DomainError(f"delta has to be positive (got {delta!r})")
    if gamma < min_gamma:
        raise DomainError(f"gamma has to be >= {min_gamma} (got {gamma!r})")
    return float(delta), int(gamma)


@dataclass(frozen=True)
class ModelParams:
    """The exponents (δ, γ) of the law ``u = (1 - y^δ)^γ``.

    ``delta`` is a positive real and ``gamma`` an integer ``>= 1``.

    """

    delta: float
    gamma: int

    def __post_init__(self):
        delta, gamma = _check_delta_gamma(self.delta, self.gamma, 1)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def unchecked(cls, delta, gamma):
        """Build an instance allowing ``gamma = 0`` (uniform sphere)."""
        delta, gamma = _check_delta_gamma(delta, gamma, 0)
        params = object.__new__(cls)
        object.__setattr__(params, "delta", delta)
        object.__setattr__(params, "gamma", gamma)
        return params

    def as_dict(self):
        return {"delta": self.delta, "gamma": self.gamma}


@dataclass(frozen=True)
class ProductDensityModel:
    """Product ``∏ (1 - y^a_i)^b_i`` of ``(a_i > 0, b_i >= 0)`` factors."""

    factors: Tuple[Tuple[float, int], ...]

    def __post_init__(self):
        factors = []
        for a, b in self.factors:
            a, b = _check_delta_gamma(a, b, 0)
            factors.append((a, b))
        object.__setattr__(self, "factors", tuple(factors))


@dataclass(frozen=True)
class PolynomialDensityModel:
    """Polynomial with coefficients in ascending degree."""

    coefficients: Tuple[float, ...]

    def __post_init__(self):
        coefficients = tuple(float(c) for c in self.coefficients)
        if not coefficients:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def degree(self):
        return len(self.coefficients) - 1


def check_radius_fraction(y):
    """Return ``y`` as an array, raising :class:`DomainError` outside [0, 1]."""
    array = np.asarray(y, dtype=float)
    if np.any(np.isnan(array)) or np.any(array < 0) or np.any(array > 1):
        raise DomainError(f"radius fraction outside [0, 1]: {y!r}")
    return array


def _scalar_or_array(result):
    result = np.asarray(result, dtype=float)
    if result.ndim == 0:
        return float(result)
    return result


def _one_minus_power(y, exponent):
    """``1 - y^exponent``, accurate close to ``y = 1``."""
    with np.errstate(divide="ignore"):
        return -np.expm1(exponent * np.log(y))


def eval_density_ratio(params, y):
    """Return ``u = (1 - y^δ)^γ`` (scalar or array ``y`` in [0, 1])."""
    y = check_radius_fraction(y)
    return _scalar_or_array(
        np.power(_one_minus_power(y, params.delta), params.gamma)
    )


def eval_product_model(model, y):
    """Return ``∏ (1 - y^a)^b`` (scalar or array ``y`` in [0, 1])."""
    y = check_radius_fraction(y)
    result = np.ones_like(y)
    for a, b in model.factors:
        result = result * np.power(_one_minus_power(y, a), b)
    return _scalar_or_array(result)


def eval_poly_model(model, y):
    """Evaluate the polynomial (Horner scheme)."""
    return _scalar_or_array(npoly.polyval(y, model.coefficients))


def eval_model(model, y):
    """Evaluate any of the three kinds of density model."""
    if isinstance(model, ModelParams):
        return eval_density_ratio(model, y)
    if isinstance(model, ProductDensityModel):
        return eval_product_model(model, y)
    if isinstance(model, PolynomialDensityModel):
        return eval_poly_model(model, y)
    raise TypeError(f"unknown density model {model!r}")


def roots_in_open_unit_interval(model, tol=1e-12):
    """Roots of a polynomial model strictly inside ``(0, 1)``.

    The interval is scanned on a regular grid for sign changes and every
    bracket is refined by bisection down to ``tol``. Roots closer than
    ``tol`` to 0 or 1 are boundary roots and are excluded.

    """
    if not tol > 0:
        raise ValueError(f"tol has to be positive (got {tol!r})")

    def func(y):
        return float(npoly.polyval(y, model.coefficients))

    grid = np.linspace(0.0, 1.0, NB_SCAN_POINTS)
    values = npoly.polyval(grid, model.coefficients)
    roots = []
    for index in range(NB_SCAN_POINTS - 1):
        left, right = values[index], values[index + 1]
        if left == 0.0 and 0 < index:
            roots.append(float(grid[index]))
        elif left * right < 0:
            roots.append(
                bisect(func, grid[index], grid[index + 1], xtol=tol, maxiter=200)
            )
    return [root for root in roots if tol < root < 1.0 - tol]


# The models of the solar density compared with the tabulated solar data.
# The first two are least square polynomial fits.
CANDIDATE_MODELS = {
    "1.1": PolynomialDensityModel((1.0, -4.94, 6.67, -2.73)),
    "1.2": PolynomialDensityModel((1.0, -4.0, 2.0, 2.0, -1.0)),
    "1.3": ProductDensityModel(((0.5, 1), (3.0, 64))),
    "1.4": ProductDensityModel(((1.5, 16),)),
    "1.5": ProductDensityModel(((0.5, 1), (3.0, 64), (1.0, 1))),
    "1.6": ProductDensityModel(((1.48, 14),)),
    "1.7": ProductDensityModel(((1.48, 13),)),
    "1.8": ProductDensityModel(((1.28, 10),)),
}
