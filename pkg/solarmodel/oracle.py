"""Quadrature oracle (:mod:`solarmodel.oracle`)
=============================================

Direct numerical integration of the defining integrals, used to check the
closed forms of :mod:`solarmodel.structure` and :mod:`solarmodel.energy`:

- mass: ``M(r) = 4π ∫_0^r t² ρ(t) dt``,
- pressure (hydrostatic equilibrium, ``P(R) = 0``):
  ``P(r) = G ∫_r^R M(t) ρ(t) / t² dt``,
- luminosity: ``L(r) = 4π ∫_0^r t² ρ ε(ρ, T) dt`` for any positive
  integers ``n`` and ``m``.

The integrals are computed with QUADPACK (:func:`scipy.integrate.quad`,
adaptive Gauss-Kronrod). The integrands are smooth on the closed
interval since ``u`` vanishes at the surface with an integer exponent.

.. autoclass:: QuadratureSettings
   :members:

.. autoclass:: QuadratureError
   :members:

.. autofunction:: integrate_adaptive

.. autofunction:: cumulative_integrals

.. autofunction:: mass_ratio_by_quadrature

.. autofunction:: mass_by_quadrature

.. autofunction:: pressure_factor_by_quadrature

.. autofunction:: pressure_by_quadrature

.. autofunction:: luminosity_integral_by_quadrature

.. autofunction:: luminosity_by_quadrature

"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from solarmodel.density import check_radius_fraction, eval_density_ratio
from solarmodel.energy import UnsupportedParameterError
from solarmodel.specfun import gauss_2f1_terminating
from solarmodel.structure import pressure_factor_g
from solarmodel.util import logger


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances of the adaptive quadrature."""

    rel_tol: float = 1e-11
    abs_tol: float = 1e-300
    max_subdivisions: int = 500
    #: a roundoff diagnostic is accepted within this factor of the bound
    roundoff_factor: float = 100.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances have to be positive")
        if not self.roundoff_factor >= 1:
            raise ValueError("roundoff_factor has to be >= 1")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions has to be >= 10")


class QuadratureError(RuntimeError):
    """The quadrature did not reach the requested accuracy.

    The best estimate and its error are kept as attributes.

    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


def integrate_adaptive(func, a, b, settings=None):
    """Integrate ``func`` on ``[a, b]``.

    Returns
    -------

    value, error : float

      The estimate and its absolute error estimate, with
      ``error <= max(abs_tol, rel_tol * |value|)``.

    Raises
    ------

    QuadratureError

      If the error bound is not reached within ``max_subdivisions``.
      When QUADPACK stops on roundoff, the estimate is accepted (with a
      warning) if its error is within ``roundoff_factor`` times the
      bound.

    """
    if settings is None:
        settings = QuadratureSettings()
    if not a <= b:
        raise ValueError(f"integration bounds have to be ordered ({a}, {b})")
    if a == b:
        return 0.0, 0.0

    result = quad(
        func,
        a,
        b,
        epsabs=settings.abs_tol,
        epsrel=settings.rel_tol,
        limit=settings.max_subdivisions,
        full_output=1,
    )
    value, error, infodict = result[:3]
    bound = max(settings.abs_tol, settings.rel_tol * abs(value))
    if len(result) > 3:
        message = result[3]
        if "roundoff" in message:
            bound = settings.roundoff_factor * bound
        if error > bound:
            raise QuadratureError(
                f"quadrature on [{a}, {b}] did not converge: {message}",
                value,
                error,
            )
        logger.warning(
            "quadrature on [%g, %g] converged with a warning: %s", a, b, message
        )
    logger.debug(
        "quadrature on [%g, %g]: %d evaluations, error %.3g",
        a,
        b,
        infodict["neval"],
        error,
    )
    return value, error


def cumulative_integrals(func, nodes, settings=None):
    """Integrals of ``func`` from ``nodes[0]`` to every node.

    The panels between consecutive (increasing) nodes are integrated
    separately and accumulated.

    """
    nodes = np.asarray(nodes, dtype=float)
    if np.any(np.diff(nodes) <= 0):
        raise ValueError("nodes have to be strictly increasing")
    panels = [0.0]
    for left, right in zip(nodes[:-1], nodes[1:]):
        panels.append(integrate_adaptive(func, left, right, settings)[0])
    return np.array([math.fsum(panels[: i + 1]) for i in range(len(panels))])


def mass_integrand(params):
    """``t -> t² u(t)``."""

    def integrand(t):
        return t**2 * eval_density_ratio(params, t)

    return integrand


def mass_ratio_by_quadrature(params, y, settings=None):
    """``∫_0^y t² u dt / ∫_0^1 t² u dt``."""
    y = float(check_radius_fraction(y))
    func = mass_integrand(params)
    total = integrate_adaptive(func, 0.0, 1.0, settings)[0]
    if y == 1.0:
        return 1.0
    return integrate_adaptive(func, 0.0, y, settings)[0] / total


def mass_by_quadrature(params, constants, y, settings=None):
    """Mass ``M(yR)`` (g) for the central density ``constants.rho_c``."""
    y = float(check_radius_fraction(y))
    integral = integrate_adaptive(mass_integrand(params), 0.0, y, settings)[0]
    return 4 * math.pi * constants.rho_c * constants.R**3 * integral


def pressure_integrand(params):
    """``t -> m(t) u(t) / t²``."""
    third = 3.0 / params.delta

    def integrand(t):
        # m(t) u(t) / t², with m(t) = t³/3 2F1(-γ, 3/δ; 3/δ+1; t^δ)
        return (
            t
            / 3
            * gauss_2f1_terminating(-params.gamma, third, third + 1, t**params.delta)
            * eval_density_ratio(params, t)
        )

    return integrand


def pressure_factor_by_quadrature(params, y, settings=None):
    """Dimensionless pressure ``∫_y^1 m(t) u(t) / t² dt``."""
    y = float(check_radius_fraction(y))
    return integrate_adaptive(pressure_integrand(params), y, 1.0, settings)[0]


def pressure_by_quadrature(params, constants, y, settings=None):
    """Pressure ``P(yR)`` (dyn/cm²) from hydrostatic equilibrium."""
    return constants.pressure_scale * pressure_factor_by_quadrature(
        params, y, settings
    )


def luminosity_integrand(params, n, m=1):
    """``t -> t² u^{1+n-m} g^m``."""

    def integrand(t):
        u = eval_density_ratio(params, t)
        if u == 0.0:
            return 0.0
        g = pressure_factor_g(params, t)
        return t**2 * u ** (1 + n) * (g / u) ** m

    return integrand


def luminosity_integral_by_quadrature(params, n, m, y, settings=None):
    """Dimensionless luminosity ``∫_0^y t² u^{1+n-m} g^m dt``."""
    y = float(check_radius_fraction(y))
    func = luminosity_integrand(params, n, m)
    return integrate_adaptive(func, 0.0, y, settings)[0]


def luminosity_by_quadrature(params, constants, eparams, y, settings=None):
    """Luminosity ``L(yR)`` (erg/s) for any positive integers n and m.

    ``L = 4π ε₀ (μ/(k N_A))^m (4πGρ_c²R²)^m ρ_c^{1+n-m} R³ ∫_0^y t² u^{1+n-m}
    g^m dt``

    """
    if constants.mu is None:
        raise UnsupportedParameterError(
            "the luminosity needs the mean molecular weight mu"
        )
    n = eparams.n
    m = eparams.m
    prefactor = (
        4
        * math.pi
        * eparams.epsilon_0
        * (constants.mu / (constants.k_boltzmann * constants.N_A)) ** m
        * constants.pressure_scale**m
        * constants.rho_c ** (1 + n - m)
        * constants.R**3
    )
    return prefactor * luminosity_integral_by_quadrature(
        params, n, m, y, settings
    )
