"""Calibration (:mod:`solarmodel.calibrate`)
=========================================

Determination of the exponents of the density law.

The total mass fixes one relation between δ and γ::

    ∏_{j=1}^{γ} (3/δ + j) / γ! = ρ_c / <ρ> = ρ_c 4πR³ / (3M)

so for every γ there is one δ (:func:`solve_delta`). The remaining freedom
is fixed by the least square agreement with tabulated solar densities
(:func:`fit_model_params`).

.. autoclass:: NoRootError

.. autoclass:: RankDeficiencyError

.. autodata:: PRINTED_MASS_TARGET

.. autofunction:: constraint_value

.. autofunction:: ln_constraint_value

.. autofunction:: mass_target_from_constants

.. autofunction:: solve_delta

.. autofunction:: fit_polynomial

.. autofunction:: sum_of_squares

.. autoclass:: FitRow
   :members:

.. autoclass:: FitReport
   :members:

.. autofunction:: fit_model_params

"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.optimize import brentq

from solarmodel.density import (
    ModelParams,
    PolynomialDensityModel,
    eval_model,
)
from solarmodel.reference import ReferenceTable
from solarmodel.specfun import DomainError
from solarmodel.structure import ln_mass_constant
from solarmodel.util import logger

__all__ = [
    "NoRootError",
    "RankDeficiencyError",
    "PRINTED_MASS_TARGET",
    "ReferenceTable",
    "constraint_value",
    "ln_constraint_value",
    "mass_target_from_constants",
    "solve_delta",
    "fit_polynomial",
    "sum_of_squares",
    "FitRow",
    "FitReport",
    "fit_model_params",
]

#: rounded value of ρ_c/<ρ> for the Sun
PRINTED_MASS_TARGET = 112.08

DELTA_MIN = 1e-6
DELTA_MAX = 64.0
# the upper end of the bracket is doubled at most this number of times
_MAX_EXPANSIONS = 40


class NoRootError(ValueError):
    """The constraint cannot reach the target."""


class RankDeficiencyError(ValueError):
    """The least square problem has no unique solution."""


def _check(delta, gamma):
    if not delta > 0:
        raise DomainError(f"delta has to be positive (got {delta!r})")
    if isinstance(gamma, bool) or not float(gamma).is_integer() or gamma < 0:
        raise DomainError(f"gamma has to be a non-negative integer ({gamma!r})")
    return float(delta), int(gamma)


def ln_constraint_value(delta, gamma):
    """``ln ∏_{j=1}^{γ} (1 + 3/(δ j))``."""
    delta, gamma = _check(delta, gamma)
    return ln_mass_constant(delta, gamma)


def constraint_value(delta, gamma):
    """``∏_{j=1}^{γ} (3/δ + j) / γ!``, strictly decreasing in δ."""
    return math.exp(ln_constraint_value(delta, gamma))


def mass_target_from_constants(constants):
    """Full precision ratio ``ρ_c 4πR³ / (3M)``."""
    return (
        constants.rho_c * 4 * math.pi * constants.R**3 / (3 * constants.M_total)
    )


def solve_delta(gamma, target, xtol=1e-13):
    """δ such that ``constraint_value(δ, γ) == target``.

    The root is bracketed in ``[1e-6, 64]`` (the upper end is doubled while
    the constraint is still above the target) and refined with Brent's
    method.

    Notes
    -----

    The constraint tends to infinity for δ → 0 and to 1 for δ → ∞, so the
    attainable targets are ``(1, ∞)``.

    """
    if isinstance(gamma, bool) or not float(gamma).is_integer() or gamma < 1:
        raise DomainError(f"gamma has to be a positive integer ({gamma!r})")
    gamma = int(gamma)
    if not target > 1:
        raise NoRootError(
            f"target {target!r} not attainable: the constraint is > 1"
        )
    ln_target = math.log(target)

    def func(delta):
        return ln_mass_constant(delta, gamma) - ln_target

    low = DELTA_MIN
    if func(low) < 0:
        raise NoRootError(
            f"target {target!r} too large for gamma={gamma} "
            f"(constraint at delta={low} is {math.exp(func(low) + ln_target):.6g})"
        )
    high = DELTA_MAX
    for _ in range(_MAX_EXPANSIONS):
        if func(high) <= 0:
            break
        high *= 2
    else:
        raise NoRootError(
            f"target {target!r} too close to 1 for gamma={gamma}"
        )
    delta = brentq(func, low, high, xtol=xtol)
    logger.debug(
        "solve_delta(gamma=%d, target=%.17g) -> %.15g (bracket [%g, %g])",
        gamma,
        target,
        delta,
        low,
        high,
    )
    return delta


def sum_of_squares(model, data):
    """Sum of the squared residuals of a density model on a table."""
    residuals = eval_model(model, data.ys) - data.values
    return math.fsum(residuals**2)


def fit_polynomial(data, degree):
    """Least square polynomial of a given degree.

    The normal equations are formed in the variable ``t = (y - c) / h``
    mapping the data range on ``[-1, 1]``, with exactly rounded sums, and
    solved by a Cholesky factorization. The coefficients are converted
    back to the monomial basis in ``y``.

    Returns
    -------

    PolynomialDensityModel

    """
    if isinstance(degree, bool) or not float(degree).is_integer() or degree < 0:
        raise ValueError(f"degree has to be a non-negative integer ({degree!r})")
    degree = int(degree)
    ys = data.ys
    values = data.values
    if np.unique(ys).size < degree + 1:
        raise RankDeficiencyError(
            f"{np.unique(ys).size} distinct ordinates for {degree + 1} "
            "coefficients"
        )
    low = ys.min()
    high = ys.max()
    if degree == 0:
        return PolynomialDensityModel((math.fsum(values) / values.size,))

    center = (high + low) / 2
    half = (high - low) / 2
    ts = (ys - center) / half

    nb_coefs = degree + 1
    moments = [math.fsum(ts**k) for k in range(2 * degree + 1)]
    matrix = np.array(
        [[moments[i + j] for j in range(nb_coefs)] for i in range(nb_coefs)]
    )
    rhs = np.array([math.fsum(ts**i * values) for i in range(nb_coefs)])
    try:
        coefs = cho_solve(cho_factor(matrix), rhs)
    except LinAlgError as error:
        raise RankDeficiencyError(str(error)) from error

    poly = Polynomial(coefs, domain=[low, high], window=[-1, 1])
    monomial = np.zeros(nb_coefs)
    converted = poly.convert().coef
    monomial[: converted.size] = converted
    return PolynomialDensityModel(tuple(monomial))


@dataclass(frozen=True)
class FitRow:
    gamma: int
    delta: float
    sse: float


@dataclass(frozen=True)
class FitReport:
    """Result of :func:`fit_model_params`."""

    params: ModelParams
    rows: Tuple[FitRow, ...]
    mass_target: float

    @property
    def best(self):
        for row in self.rows:
            if row.gamma == self.params.gamma:
                return row


def fit_model_params(data, gamma_range=(2, 20), mass_target=PRINTED_MASS_TARGET):
    """Select (δ, γ) with δ fixed by the mass constraint for every γ.

    Parameters
    ----------

    data : ReferenceTable

    gamma_range : (int, int)

      Inclusive range of γ.

    mass_target : float

    Returns
    -------

    FitReport

      Ties in the sum of squares go to the smallest γ, then the smallest
      δ.

    """
    gamma_min, gamma_max = gamma_range
    if gamma_min < 1 or gamma_max < gamma_min:
        raise ValueError(f"bad gamma range {gamma_range!r}")
    if len(data) == 0:
        raise ValueError("no data to fit")

    rows = []
    for gamma in range(int(gamma_min), int(gamma_max) + 1):
        delta = solve_delta(gamma, mass_target)
        sse = sum_of_squares(ModelParams(delta, gamma), data)
        logger.debug("gamma=%d delta=%.10g sse=%.6g", gamma, delta, sse)
        rows.append(FitRow(gamma, delta, sse))

    best = min(rows, key=lambda row: (row.sse, row.gamma, row.delta))
    logger.info(
        "best fit: gamma=%d, delta=%.6g (sse=%.6g)",
        best.gamma,
        best.delta,
        best.sse,
    )
    return FitReport(
        ModelParams(best.delta, best.gamma), tuple(rows), mass_target
    )
