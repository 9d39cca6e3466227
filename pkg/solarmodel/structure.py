"""Mass, pressure and temperature (:mod:`solarmodel.structure`)
============================================================

Closed forms for a star of radius ``R`` and central density ``ρ_c`` with
density ratio ``u = (1 - y^δ)^γ``, ``y = r/R``.

- mass: ``M(r)/M = C y^3 2F1(-γ, 3/δ; 3/δ+1; y^δ)`` where
  ``C = ∏_{j=1}^{γ} (1 + 3/(δ j))`` (:func:`mass_constant`),
- pressure: ``P = 4πGρ_c²R² g(y)`` with the single sum
  :func:`pressure_factor_g`; the Kampé de Fériet representation
  (:func:`pressure_factor_kdf`) is kept as a cross-check,
- temperature of a perfect gas: ``T = (μ/(k N_A)) P/ρ``.

The pressure factor is ``g(y) = ∫_y^1 m(t) u(t) / t² dt`` with
``m(t) = ∫_0^t s² u(s) ds``, so that ``g(1) = 0`` (no pressure at the
surface).

.. autoclass:: SolarConstants
   :members:

.. autofunction:: mass_constant

.. autofunction:: mass_ratio

.. autofunction:: central_density

.. autofunction:: pressure_coefficients

.. autofunction:: pressure_sums

.. autofunction:: pressure_factor_g

.. autofunction:: pressure_kdf_spec

.. autofunction:: pressure_factor_kdf

.. autofunction:: central_pressure

.. autofunction:: pressure

.. autofunction:: pressure_kdf

.. autofunction:: temperature

.. autoclass:: ProfileRow
   :members:

.. autoclass:: Profile
   :members:

.. autofunction:: compute_profile

"""

import math
from dataclasses import asdict, dataclass, fields, replace as _replace
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy.special import comb

from solarmodel.density import (
    ModelParams,
    check_radius_fraction,
    eval_density_ratio,
)
from solarmodel.specfun import (
    DomainError,
    KdFSpec,
    WORKING,
    evaluate_with_guard,
    gauss_2f1_terminating,
    kdf_sum,
)
from solarmodel.util import logger


@dataclass(frozen=True)
class SolarConstants:
    """Physical constants in CGS units.

    The default values are the ones of the Sun. ``mu`` (mean molecular
    weight) is optional: without it temperatures are given in reduced
    units.

    """

    rho_c: float = 158.0
    M_total: float = 1.991e33
    R: float = 6.96e10
    G: float = 6.674e-8
    k_boltzmann: float = 1.380649e-16
    N_A: float = 6.02214076e23
    mu: Optional[float] = None

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if value is None and field.name == "mu":
                continue
            if isinstance(value, bool) or not isinstance(
                value, (int, float)
            ):
                raise DomainError(
                    f"constant {field.name} has to be a number (got {value!r})"
                )
            if not value > 0 or math.isinf(value):
                raise DomainError(
                    f"constant {field.name} has to be positive and finite "
                    f"(got {value!r})"
                )
            object.__setattr__(self, field.name, float(value))

    @classmethod
    def sun(cls):
        return cls()

    @classmethod
    def field_names(cls):
        return tuple(field.name for field in fields(cls))

    @classmethod
    def from_mapping(cls, mapping, base=None):
        """Build an instance overriding ``base`` with a mapping.

        Unknown keys raise a :class:`ValueError`.

        """
        unknown = sorted(set(mapping) - set(cls.field_names()))
        if unknown:
            raise ValueError(f"unknown constants: {', '.join(unknown)}")
        if base is None:
            base = cls()
        return _replace(base, **mapping)

    def replace(self, **kwargs):
        return _replace(self, **kwargs)

    @property
    def pressure_scale(self):
        """``4πGρ_c²R²`` (dyn/cm²)."""
        return 4 * math.pi * self.G * self.rho_c**2 * self.R**2

    @property
    def temperature_scale(self):
        """``(μ/(k N_A)) 4πGρ_cR²`` (K), ``None`` without ``mu``."""
        if self.mu is None:
            return None
        return (
            self.mu
            / (self.k_boltzmann * self.N_A)
            * 4
            * math.pi
            * self.G
            * self.rho_c
            * self.R**2
        )

    def as_dict(self):
        return asdict(self)


def ln_mass_constant(delta, gamma):
    """Logarithm of ``∏_{j=1}^{γ} (1 + 3/(δ j))``."""
    return math.fsum(math.log1p(3.0 / (delta * j)) for j in range(1, gamma + 1))


def mass_constant(params):
    """``C = ∏_{j=1}^{γ} (3/δ + j) / γ!``, the ratio ``ρ_c / <ρ>``."""
    return math.exp(ln_mass_constant(params.delta, params.gamma))


def mass_ratio(params, y):
    """Relative mass ``M(yR)/M`` inside the radius fraction ``y``.

    Equal to 1 at ``y = 1`` (normalization of the density law).

    """
    y = check_radius_fraction(y)
    third = 3.0 / params.delta
    if y.ndim == 0:
        if y == 1.0:
            return 1.0
        y = float(y)
        return (
            mass_constant(params)
            * y**3
            * gauss_2f1_terminating(
                -params.gamma, third, third + 1, y**params.delta
            )
        )
    values = (
        mass_constant(params)
        * y**3
        * gauss_2f1_terminating(-params.gamma, third, third + 1, y**params.delta)
    )
    return np.where(y == 1.0, 1.0, values)


def central_density(params, M_total, R):
    """Central density ``3M/(4πR³) C`` (g/cm³)."""
    if not (M_total > 0 and R > 0):
        raise DomainError("M_total and R have to be positive")
    return 3 * M_total / (4 * math.pi * R**3) * mass_constant(params)


@lru_cache(maxsize=256)
def _pressure_coefficients(delta, gamma, dps):
    """Coefficients, their sum and the sum of their absolute values."""
    ctx = WORKING
    with ctx.workdps(dps):
        delta = ctx.mpf(delta)
        binomials = [
            (-1) ** m * comb(gamma, m, exact=True) for m in range(gamma + 1)
        ]
        coefs = []
        for s in range(2 * gamma + 1):
            total = ctx.fsum(
                binomials[m] * binomials[s - m] / (3 / delta + m)
                for m in range(max(0, s - gamma), min(s, gamma) + 1)
            )
            coefs.append(total / (2 / delta + s))
        return (
            tuple(coefs),
            ctx.fsum(coefs),
            ctx.fsum(abs(coef) for coef in coefs),
        )


def pressure_coefficients(params, dps=None):
    """Coefficients ``a_s`` of ``φ(y) = y² Σ_{s=0}^{2γ} a_s y^{sδ}``.

    ``a_s = Σ_{m+k=s} (-γ)_m/m! (-γ)_k/k! / ((3/δ+m)(2/δ+s))``, as
    numbers of :data:`~solarmodel.specfun.WORKING` with ``dps`` digits
    (default: the current precision).

    """
    if dps is None:
        dps = WORKING.dps
    return _pressure_coefficients(params.delta, params.gamma, dps)[0]


def _pressure_terms(delta, gamma, y, dps):
    ctx = WORKING
    coefs, head, size = _pressure_coefficients(delta, gamma, dps)
    if y == 1.0:
        return [(head, size), (ctx.zero, ctx.zero), (head, size)]
    y = ctx.mpf(y)
    z = y ** ctx.mpf(delta)
    power = y * y
    terms = []
    for coef in coefs:
        terms.append(coef * power)
        power *= z
    phi = ctx.fsum(terms)
    phi_size = ctx.fsum(abs(term) for term in terms)
    return [(head, size), (head - phi, size), (phi, phi_size)]


def pressure_sums(params, y):
    """Return ``(g(y), φ(y), ψ)`` for a scalar ``y``.

    With ``ψ = Σ_s a_s`` (:func:`pressure_coefficients`)::

        φ(y) = y² Σ_s a_s y^{sδ},    δ² g(y) = ψ - φ(y)

    The sums are done in a working precision raised until 20 digits
    survive the cancellation between ``ψ`` and ``φ`` close to the
    surface, where ``g`` vanishes like ``(1 - y^δ)^{γ+1}``.

    """
    y = float(check_radius_fraction(y))
    delta = params.delta
    head, scaled, phi = evaluate_with_guard(
        lambda dps: _pressure_terms(delta, params.gamma, y, dps)
    )
    g = scaled / WORKING.mpf(delta) ** 2
    return float(g), float(phi), float(head)


def pressure_factor_g(params, y):
    """Dimensionless pressure ``g(y) = P / (4πGρ_c²R²)``.

    Single sum over the powers of ``y^δ``. Expanding the terminating
    ``2F1(-γ, b_m; b_m+1; y^δ)`` of::

        g = (1/δ²) Σ_m (-γ)_m/m! [H_m - y^{mδ+2} 2F1(-γ, b_m; b_m+1; y^δ)]
                                 / ((3/δ+m)(2/δ+m))

    (``b_m = 2/δ + m``, ``H_m`` the series at unity) and grouping the
    terms by power gives ``g = (1/δ²) Σ_s a_s (1 - y^{sδ+2})``. ``g(1)``
    is exactly 0. Arrays are evaluated elementwise (:func:`pressure_sums`).

    """
    y = check_radius_fraction(y)
    if y.ndim == 0:
        return pressure_sums(params, float(y))[0]
    return np.array(
        [pressure_sums(params, value)[0] for value in y.flat], dtype=float
    ).reshape(y.shape)


def pressure_kdf_spec(params, z):
    """Kampé de Fériet series ``F`` with ``g = (F(1, 1) - y² F(z, z)) / 6``.

    Parameters: joint ``(2/δ) : (2/δ + 1)``, first variable
    ``(-γ, 3/δ) : (3/δ + 1)``, second variable ``(-γ) : ()``. They are
    computed at the current working precision.

    """
    gamma = params.gamma
    delta = WORKING.mpf(params.delta)
    return KdFSpec(
        upper_joint=(2 / delta,),
        upper_x=(-gamma, 3 / delta),
        upper_y=(-gamma,),
        lower_joint=(2 / delta + 1,),
        lower_x=(3 / delta + 1,),
        lower_y=(),
        x=z,
        y=z,
    )


@lru_cache(maxsize=256)
def _kdf_at_unity(delta, gamma, dps):
    params = ModelParams.unchecked(delta, gamma)
    with WORKING.workdps(dps):
        return kdf_sum(pressure_kdf_spec(params, WORKING.one))


def _kdf_terms(params, y, dps):
    ctx = WORKING
    head, head_size = _kdf_at_unity(params.delta, params.gamma, dps)
    y = ctx.mpf(y)
    square = y * y
    tail, tail_size = kdf_sum(
        pressure_kdf_spec(params, y ** ctx.mpf(params.delta))
    )
    return [(head - square * tail, head_size + square * tail_size)]


def _kdf_factor_scalar(params, y):
    if y == 1.0:
        return 0.0
    (value,) = evaluate_with_guard(lambda dps: _kdf_terms(params, y, dps))
    return float(value / 6)


def pressure_factor_kdf(params, y):
    """Dimensionless pressure through the Kampé de Fériet representation."""
    y = check_radius_fraction(y)
    if y.ndim == 0:
        return _kdf_factor_scalar(params, float(y))
    return np.array(
        [_kdf_factor_scalar(params, value) for value in y.flat], dtype=float
    ).reshape(y.shape)


def central_pressure(params, constants, cross_check=False):
    """Central pressure ``4πGρ_c²R² g(0)`` (dyn/cm²).

    With ``cross_check=True`` the Kampé de Fériet value is also computed
    and a warning is logged if both routes differ by more than 1e-10.

    """
    factor = pressure_factor_g(params, 0.0)
    if cross_check:
        other = pressure_factor_kdf(params, 0.0)
        difference = abs(factor - other) / abs(factor)
        logger.debug(
            "central pressure factor %.17g (KdF %.17g, relative diff %.3g)",
            factor,
            other,
            difference,
        )
        if difference > 1e-10:
            logger.warning(
                "central pressure: single sum and KdF differ by %.3g",
                difference,
            )
    return constants.pressure_scale * factor


def pressure(params, constants, y):
    """Pressure ``P(yR)`` (dyn/cm²) from the single sum."""
    return constants.pressure_scale * pressure_factor_g(params, y)


def pressure_kdf(params, constants, y):
    """Pressure ``P(yR)`` (dyn/cm²) from the Kampé de Fériet form."""
    return constants.pressure_scale * pressure_factor_kdf(params, y)


def temperature(params, constants, y):
    """Temperature ``(μ/(k N_A)) 4πGρ_cR² g/u`` (K).

    Without ``constants.mu`` the reduced value ``g/u`` is returned. The
    density vanishes at the surface, so ``y = 1`` is rejected.

    """
    y = check_radius_fraction(y)
    if np.any(y == 1.0):
        raise DomainError("temperature is undefined at the surface (y = 1)")
    reduced = pressure_factor_g(params, y) / eval_density_ratio(params, y)
    scale = constants.temperature_scale
    if scale is None:
        return reduced
    return scale * reduced


@dataclass(frozen=True)
class ProfileRow:
    y: float
    u: float
    m_ratio: float
    g: float
    P: float
    T: Optional[float] = None
    L: Optional[float] = None

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Profile:
    """Model quantities tabulated on a grid of radius fractions."""

    params: ModelParams
    constants: SolarConstants
    rows: Tuple[ProfileRow, ...]

    columns = ("y", "u", "m_ratio", "g", "P", "T", "L")

    def as_dict(self):
        return {
            "params": self.params.as_dict(),
            "constants": self.constants.as_dict(),
            "rows": [row.as_dict() for row in self.rows],
        }


def _check_grid(grid):
    grid = check_radius_fraction(grid)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("the grid has to be a non-empty list of values")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("the grid has to be strictly increasing")
    return grid


def compute_profile(params, constants, grid, eparams=None):
    """Tabulate u, mass ratio, g, P, T (and L) on a grid.

    ``T`` is ``None`` at ``y = 1``. ``L`` is computed only when ``eparams``
    is given and ``constants.mu`` is set; the closed form is used for
    ``m = 1`` and the quadrature otherwise.

    """
    grid = _check_grid(grid)
    us = eval_density_ratio(params, grid)
    ratios = mass_ratio(params, grid)
    gs = pressure_factor_g(params, grid)

    luminosities = [None] * grid.size
    if eparams is not None:
        if constants.mu is None:
            logger.info("no mean molecular weight: luminosity not computed")
        elif eparams.m == 1:
            from solarmodel.energy import luminosity_profile

            luminosities = [
                luminosity_profile(params, constants, eparams, float(y))
                for y in grid
            ]
        else:
            from solarmodel.oracle import luminosity_by_quadrature

            luminosities = [
                luminosity_by_quadrature(params, constants, eparams, float(y))
                for y in grid
            ]

    scale = constants.temperature_scale
    rows = []
    for index, y in enumerate(grid):
        g = float(gs[index])
        u = float(us[index])
        if y == 1.0:
            temp = None
        else:
            temp = g / u if scale is None else scale * g / u
        rows.append(
            ProfileRow(
                y=float(y),
                u=u,
                m_ratio=float(ratios[index]),
                g=g,
                P=constants.pressure_scale * g,
                T=temp,
                L=luminosities[index],
            )
        )
    logger.debug("profile computed on %d points", len(rows))
    return Profile(params, constants, tuple(rows))
