"""Energy generation and luminosity (:mod:`solarmodel.energy`)
===========================================================

The thermonuclear rate is the power law ``ε = ε₀ ρⁿ Tᵐ``. For ``m = 1`` and
a perfect gas, ``ρ ε`` is proportional to ``ρ_c^{n+1} uⁿ g`` and the
luminosity has a closed form::

    L(y) = (4π)² ε₀ (μ/(k N_A)) G ρ_c^{n+2} R⁵ / δ² [ψ I₂(y) - I₃(y)]

with ``δ² g(y) = ψ - φ(y)`` (:func:`psi`, :func:`phi`) and

- ``I₂(y) = ∫_0^y t² uⁿ dt``, ``I₀ = I₂(1)``,
- ``I₃(y) = ∫_0^y t² uⁿ φ(t) dt``, ``I₁ = I₃(1)``.

``φ`` is expanded in powers of ``t^δ`` by grouping the two sums by total
order ``s``::

    φ(t) = t² Σ_s a_s t^{sδ},
    a_s = Σ_{m₁+m₂=s} (-γ)_{m₁}/m₁! (-γ)_{m₂}/m₂! / ((3/δ + m₁)(2/δ + s))

(:func:`solarmodel.structure.pressure_coefficients`). The coefficients
alternate and are much larger than the sums, so ``I₁``, ``I₃`` and the
luminosity integral are summed in the working precision of
:data:`solarmodel.specfun.WORKING`, raised until 20 digits are left.

.. autoclass:: EnergyParams
   :members:

.. autoclass:: UnsupportedParameterError

.. autofunction:: epsilon_rate

.. autofunction:: psi

.. autofunction:: phi

.. autofunction:: integral_I0

.. autofunction:: integral_I1

.. autofunction:: integral_I1_kdf

.. autofunction:: integral_I2

.. autofunction:: integral_I3

.. autofunction:: luminosity_integral

.. autofunction:: luminosity_prefactor

.. autofunction:: total_luminosity

.. autofunction:: luminosity_profile

"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from solarmodel.density import check_radius_fraction
from solarmodel.specfun import (
    WORKING,
    DomainError,
    KdFSpec,
    evaluate_with_guard,
    gauss_2f1_terminating,
    gauss_2f1_working,
    kdf_eval,
    ln_gamma_ratio,
)
from solarmodel.structure import pressure_coefficients, pressure_sums


class UnsupportedParameterError(ValueError):
    """No closed form for these parameters (or a constant is missing)."""


@dataclass(frozen=True)
class EnergyParams:
    """Parameters of the rate ``ε = ε₀ ρⁿ Tᵐ``."""

    epsilon_0: float = 1.0
    n: int = 1
    m: int = 1

    def __post_init__(self):
        for name in ("n", "m"):
            value = getattr(self, name)
            if (
                isinstance(value, bool)
                or not float(value).is_integer()
                or value < 1
            ):
                raise DomainError(
                    f"{name} has to be a positive integer (got {value!r})"
                )
            object.__setattr__(self, name, int(value))
        if not self.epsilon_0 > 0:
            raise DomainError(
                f"epsilon_0 has to be positive (got {self.epsilon_0!r})"
            )
        object.__setattr__(self, "epsilon_0", float(self.epsilon_0))

    def as_dict(self):
        return {"epsilon_0": self.epsilon_0, "n": self.n, "m": self.m}


def epsilon_rate(rho, T, eparams):
    """Energy released per gram and per second ``ε₀ ρⁿ Tᵐ``."""
    return eparams.epsilon_0 * rho**eparams.n * T**eparams.m


def _check_n(n):
    if isinstance(n, bool) or not float(n).is_integer() or n < 1:
        raise DomainError(f"n has to be a positive integer (got {n!r})")
    return int(n)


def psi(params):
    """``ψ = δ² g(0)``."""
    return pressure_sums(params, 0.0)[2]


def phi(params, y):
    """``φ(y) = ψ - δ² g(y)``, with ``φ(0) = 0`` and ``φ(1) = ψ``."""
    y = check_radius_fraction(y)
    if y.ndim == 0:
        return pressure_sums(params, float(y))[1]
    return np.array(
        [pressure_sums(params, value)[1] for value in y.flat], dtype=float
    ).reshape(y.shape)


def integral_I0(params, n):
    """``I₀ = ∫_0^1 t² (1 - t^δ)^{nγ} dt = B(3/δ, nγ+1) / δ``."""
    order = _check_n(n) * params.gamma
    third = 3.0 / params.delta
    return (
        math.exp(gammaln(order + 1) + ln_gamma_ratio(third, third + order + 1))
        / params.delta
    )


def _integral_I1_terms(params, order, dps):
    ctx = WORKING
    delta = ctx.mpf(params.delta)
    fifth = 5 / delta
    beta = ctx.exp(
        ctx.loggamma(order + 1)
        + ctx.loggamma(fifth)
        - ctx.loggamma(fifth + order + 1)
    )
    terms = []
    for s, weight in enumerate(pressure_coefficients(params, dps)):
        terms.append(weight * beta)
        beta = beta * (fifth + s) / (fifth + s + order + 1)
    return (
        ctx.fsum(terms) / delta,
        ctx.fsum(abs(term) for term in terms) / delta,
    )


def integral_I1(params, n):
    """``I₁ = ∫_0^1 t² (1 - t^δ)^{nγ} φ(t) dt``.

    Each power of the expansion of ``φ`` (:func:`pressure_coefficients`
    ``a_s``) integrates to a Beta function::

        I₁ = Σ_s a_s (nγ)! Γ(5/δ+s) / (δ Γ(5/δ+s+nγ+1))

    """
    order = _check_n(n) * params.gamma
    (value,) = evaluate_with_guard(
        lambda dps: [_integral_I1_terms(params, order, dps)]
    )
    return float(value)


def integral_I1_kdf_spec(params, n):
    """Kampé de Fériet series of :func:`integral_I1_kdf` (both arguments 1)."""
    order = _check_n(n) * params.gamma
    delta = params.delta
    gamma = params.gamma
    return KdFSpec(
        upper_joint=(2.0 / delta, 5.0 / delta),
        upper_x=(-gamma, 3.0 / delta),
        upper_y=(-gamma,),
        lower_joint=(2.0 / delta + 1, 5.0 / delta + order + 1),
        lower_x=(3.0 / delta + 1,),
        lower_y=(),
        x=1.0,
        y=1.0,
    )


def integral_I1_kdf(params, n):
    """``I₁`` from its Kampé de Fériet representation.

    ``I₁ = (δ/6) (nγ)! Γ(5/δ) / Γ(5/δ+nγ+1) F`` where ``F`` has the joint
    parameters ``(2/δ, 5/δ) : (2/δ+1, 5/δ+nγ+1)``.

    """
    order = _check_n(n) * params.gamma
    fifth = 5.0 / params.delta
    prefactor = (
        params.delta
        / 6
        * math.exp(gammaln(order + 1) + ln_gamma_ratio(fifth, fifth + order + 1))
    )
    return prefactor * kdf_eval(integral_I1_kdf_spec(params, n))


def integral_I2(params, n, y):
    """``I₂(y) = ∫_0^y t² uⁿ dt = y³/3 2F1(-nγ, 3/δ; 3/δ+1; y^δ)`` (R = 1)."""
    order = _check_n(n) * params.gamma
    y = float(check_radius_fraction(y))
    if y == 1.0:
        return integral_I0(params, n)
    third = 3.0 / params.delta
    return y**3 / 3 * gauss_2f1_terminating(
        -order, third, third + 1, y**params.delta
    )


def _integral_I2_terms(params, order, y):
    ctx = WORKING
    third = 3 / ctx.mpf(params.delta)
    y = ctx.mpf(y)
    value, magnitude = gauss_2f1_working(
        -order, third, third + 1, y ** ctx.mpf(params.delta), with_magnitude=True
    )
    return y**3 / 3 * value, y**3 / 3 * magnitude


def _integral_I3_terms(params, order, y, dps):
    ctx = WORKING
    delta = ctx.mpf(params.delta)
    y = ctx.mpf(y)
    z = y**delta
    fifth = 5 / delta
    terms = []
    magnitude = ctx.zero
    for s, weight in enumerate(pressure_coefficients(params, dps)):
        exponent = s * delta + 5
        factor = weight * y**exponent / exponent
        value, size = gauss_2f1_working(
            -order, fifth + s, fifth + s + 1, z, with_magnitude=True
        )
        terms.append(factor * value)
        magnitude += abs(factor) * size
    return ctx.fsum(terms), magnitude


def integral_I3(params, n, y):
    """``I₃(y) = ∫_0^y t² uⁿ φ(t) dt`` (R = 1).

    ``Σ_s a_s y^{sδ+5}/(sδ+5) 2F1(-nγ, 5/δ+s; 5/δ+s+1; y^δ)``

    """
    order = _check_n(n) * params.gamma
    y = float(check_radius_fraction(y))
    if y == 1.0:
        return integral_I1(params, n)
    if y == 0.0:
        return 0.0
    (value,) = evaluate_with_guard(
        lambda dps: [_integral_I3_terms(params, order, y, dps)]
    )
    return float(value)


def _luminosity_terms(params, order, y, dps):
    ctx = WORKING
    coefs = pressure_coefficients(params, dps)
    head = ctx.fsum(coefs)
    head_size = ctx.fsum(abs(coef) for coef in coefs)
    if y == 1.0:
        third = 3 / ctx.mpf(params.delta)
        inner = ctx.exp(
            ctx.loggamma(order + 1)
            + ctx.loggamma(third)
            - ctx.loggamma(third + order + 1)
        ) / ctx.mpf(params.delta)
        inner_size = inner
        tail, tail_size = _integral_I1_terms(params, order, dps)
    else:
        inner, inner_size = _integral_I2_terms(params, order, y)
        tail, tail_size = _integral_I3_terms(params, order, y, dps)
    return [(head * inner - tail, head_size * inner_size + tail_size)]


def luminosity_integral(params, n, y=1.0):
    """``∫_0^y t² uⁿ g dt = (ψ I₂(y) - I₃(y)) / δ²``.

    The difference is taken in the working precision.

    """
    order = _check_n(n) * params.gamma
    y = float(check_radius_fraction(y))
    if y == 0.0:
        return 0.0
    (value,) = evaluate_with_guard(
        lambda dps: _luminosity_terms(params, order, y, dps)
    )
    return float(value / WORKING.mpf(params.delta) ** 2)


def luminosity_prefactor(constants, eparams, params):
    """``(4π)² ε₀ (μ/(k N_A)) G ρ_c^{n+2} R⁵ / δ²`` (erg/s)."""
    if constants.mu is None:
        raise UnsupportedParameterError(
            "the luminosity needs the mean molecular weight mu"
        )
    return (
        (4 * math.pi) ** 2
        * eparams.epsilon_0
        * constants.mu
        / (constants.k_boltzmann * constants.N_A)
        * constants.G
        * constants.rho_c ** (eparams.n + 2)
        * constants.R**5
        / params.delta**2
    )


def _check_closed_form(eparams):
    if eparams.m != 1:
        raise UnsupportedParameterError(
            f"no closed-form luminosity for m = {eparams.m} "
            "(use solarmodel.oracle.luminosity_by_quadrature)"
        )


def total_luminosity(params, constants, eparams):
    """Luminosity of the star ``L(R)`` (erg/s), for ``m = 1``."""
    _check_closed_form(eparams)
    prefactor = luminosity_prefactor(constants, eparams, params)
    n = eparams.n
    return prefactor * (
        psi(params) * integral_I0(params, n) - integral_I1(params, n)
    )


def luminosity_profile(params, constants, eparams, y):
    """Luminosity ``L(yR)`` produced inside the radius fraction ``y``."""
    _check_closed_form(eparams)
    y = float(check_radius_fraction(y))
    if y == 1.0:
        return total_luminosity(params, constants, eparams)
    if y == 0.0:
        return 0.0
    prefactor = luminosity_prefactor(constants, eparams, params)
    n = eparams.n
    return prefactor * (
        psi(params) * integral_I2(params, n, y) - integral_I3(params, n, y)
    )
