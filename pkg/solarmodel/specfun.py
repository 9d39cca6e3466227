"""Special functions (:mod:`solarmodel.specfun`)
==============================================

Building blocks of the closed forms: Pochhammer symbols, ratios of gamma
functions and the terminating hypergeometric series (Gauss and Kampé de
Fériet).

Every series evaluated here terminates: one upper parameter is a
non-positive integer ``-N`` and the series is a polynomial of degree
``N``. Non-terminating specifications are rejected.

.. autoclass:: DomainError

.. autoclass:: PrecisionError

.. autofunction:: evaluate_with_guard

.. autofunction:: lost_digits

.. autofunction:: pochhammer

.. autofunction:: ln_pochhammer

.. autofunction:: ln_gamma_ratio

.. autofunction:: gauss_2f1_terminating

.. autofunction:: gauss_2f1_working

.. autofunction:: gauss_2f1_at_unity

.. autoclass:: KdFSpec
   :members:

.. autofunction:: termination_orders

.. autofunction:: kdf_sum

.. autofunction:: kdf_eval

"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from mpmath.ctx_mp import MPContext
from scipy.special import gammaln

from solarmodel.util.summation import two_sum

# largest integer gap handled by an explicit product of logarithms
_MAX_LOG_PRODUCT = 64

# below this magnitude the two log-gamma values cancel noticeably
_CANCELLATION_THRESHOLD = 10.0

#: working precision (mpmath context) of the double series
WORKING = MPContext()
WORKING.dps = 40

#: significant digits kept by the sums of :func:`evaluate_with_guard`
GUARD_DIGITS = 20
MAX_DPS = 4000

# float sums with larger terms are redone in the working precision
_MAX_FLOAT_CANCELLATION = 10.0


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class PrecisionError(ArithmeticError):
    """A sum kept too few digits even at the largest working precision."""


def _is_integer(value):
    return float(value).is_integer()


def _termination_order(neg_a, name="neg_a"):
    """Return ``N`` for an upper parameter equal to ``-N``."""
    value = float(neg_a)
    if not value.is_integer() or value > 0:
        raise DomainError(
            f"{name} has to be a non-positive integer (got {neg_a!r})"
        )
    return int(-value)


def _check_count(n):
    if isinstance(n, bool) or not _is_integer(n) or n < 0:
        raise DomainError(f"n has to be a non-negative integer (got {n!r})")
    return int(n)


def _check_lower(value, nb_terms, name):
    """Raise if ``(value)_k`` vanishes for some ``k <= nb_terms``."""
    if _is_integer(value) and -nb_terms < value <= 0:
        raise DomainError(
            f"lower parameter {name}={value!r} hits a pole before order "
            f"{nb_terms}"
        )


def pochhammer(x, n):
    """Rising factorial ``x (x+1) ... (x+n-1)``.

    The product is exact when ``x`` is an integer (Python integers) and is
    computed by sequential multiplication otherwise. Overflow gives an
    infinite result.

    """
    n = _check_count(n)
    if _is_integer(x):
        start = int(x)
        product = math.prod(range(start, start + n))
        try:
            return float(product)
        except OverflowError:
            return math.copysign(math.inf, product)
    result = 1.0
    for j in range(n):
        result *= x + j
    return result


def ln_pochhammer(x, n):
    """Logarithm of the rising factorial, for ``x > 0``."""
    n = _check_count(n)
    if n == 0:
        return 0.0
    return ln_gamma_ratio(x + n, x)


def ln_gamma_ratio(a, b):
    """Return ``ln Γ(a) - ln Γ(b)`` for positive ``a`` and ``b``.

    When ``a - b`` is a small integer the ratio is a finite product and is
    summed as logarithms of its factors. Close arguments with a
    non-integer gap are recomputed in extended precision since the two
    log-gamma values cancel.

    """
    if not (a > 0 and b > 0):
        raise DomainError(
            f"ln_gamma_ratio needs positive arguments (got {a!r}, {b!r})"
        )
    gap = a - b
    if _is_integer(gap) and abs(gap) <= _MAX_LOG_PRODUCT:
        gap = int(gap)
        if gap >= 0:
            return math.fsum(math.log(b + j) for j in range(gap))
        return -math.fsum(math.log(a + j) for j in range(-gap))
    result = float(gammaln(a) - gammaln(b))
    if abs(result) < _CANCELLATION_THRESHOLD:
        ctx = WORKING
        result = float(ctx.loggamma(ctx.mpf(a)) - ctx.loggamma(ctx.mpf(b)))
    return result


def lost_digits(value, magnitude):
    """Decimal digits lost when terms of total size ``magnitude`` sum to
    ``value`` (infinite for a vanishing sum of non-zero terms)."""
    if magnitude == 0:
        return 0.0
    if value == 0:
        return math.inf
    return max(0.0, float(WORKING.log10(abs(magnitude) / abs(value))))


def evaluate_with_guard(func, guard=GUARD_DIGITS):
    """Evaluate sums in a working precision high enough for ``guard`` digits.

    ``func(dps)`` is called inside ``WORKING.workdps(dps)`` and returns a
    sequence of ``(value, magnitude)`` pairs, ``magnitude`` bounding the
    sum of the absolute values of the terms of ``value``. The precision is
    raised until every value keeps ``guard`` significant digits.

    Returns the list of values (numbers of :data:`WORKING`).

    """
    dps = WORKING.dps
    while True:
        with WORKING.workdps(dps):
            pairs = list(func(dps))
        lost = max(
            (lost_digits(value, magnitude) for value, magnitude in pairs),
            default=0.0,
        )
        if lost + guard <= dps:
            return [value for value, _ in pairs]
        if dps >= MAX_DPS:
            raise PrecisionError(
                f"{guard} digits not reached with {dps} working digits"
            )
        # steps of 40 digits keep the caches of coefficients small
        needed = lost + guard + 10 if math.isfinite(lost) else 2 * dps
        dps = min(MAX_DPS, 40 * math.ceil(max(needed, 2 * dps) / 40))


def _reflected(order, b, c):
    """True if the ``1 - z`` form has only positive terms."""
    return order > 0 and b > 0 and c - b > 0


def _ascending_sum(order, b, c, z):
    """Compensated ascending sum and the sum of the absolute terms."""
    total = 1.0
    compensation = 0.0
    magnitude = 1.0
    term = 1.0
    for k in range(order):
        term = term * ((k - order) * (b + k) / ((c + k) * (k + 1.0))) * z
        total, error = two_sum(total, term)
        compensation = compensation + error
        magnitude = magnitude + abs(term)
    return total + compensation, magnitude


def _reflected_sum(order, b, c, z):
    # F(-N,b;c;z) = (c-b)_N/(c)_N F(-N,b;b-c-N+1;1-z), exact for polynomials
    w = 1.0 - z
    lower = b - c - order + 1.0
    prefactor = 1.0
    for j in range(order):
        prefactor *= (c - b + j) / (c + j)
    total = 1.0
    compensation = 0.0
    term = 1.0
    for k in range(order):
        term = term * ((k - order) * (b + k) / ((lower + k) * (k + 1.0))) * w
        total, error = two_sum(total, term)
        compensation = compensation + error
    return prefactor * (total + compensation)


def _working_terms(order, b, c, z):
    ctx = WORKING
    b = ctx.mpf(b)
    c = ctx.mpf(c)
    z = ctx.mpf(z)
    term = ctx.one
    terms = [term]
    for k in range(order):
        term = term * (k - order) * (b + k) / ((c + k) * (k + 1)) * z
        terms.append(term)
    return ctx.fsum(terms), ctx.fsum(abs(term) for term in terms)


def _scalar_2f1(order, b, c, z, reflected):
    if reflected and order * z >= 1.0:
        return _reflected_sum(order, b, c, z)
    value, magnitude = _ascending_sum(order, b, c, z)
    if magnitude <= _MAX_FLOAT_CANCELLATION * abs(value):
        return value
    (value,) = evaluate_with_guard(
        lambda dps: [_working_terms(order, b, c, z)]
    )
    return float(value)


def gauss_2f1_terminating(neg_a, b, c, z):
    """Terminating Gauss series ``2F1(-N, b; c; z)``.

    Parameters
    ----------

    neg_a : int

      The non-positive integer upper parameter ``-N``.

    b, c : float

      Other parameters. ``c`` must not be a pole of the truncated series.

    z : float or array_like

      Argument(s). Arrays are evaluated elementwise.

    Notes
    -----

    The polynomial is summed in ascending order with compensated
    summation. For ``b > 0``, ``c > b`` and ``N z >= 1`` the alternating
    terms would cancel, and the identical polynomial in ``1 - z`` (whose
    terms are all positive) is summed instead. Other sums whose terms are
    more than ten times larger than the result are summed again
    with :func:`evaluate_with_guard`.

    """
    order = _termination_order(neg_a)
    _check_lower(c, order, "c")
    reflected = _reflected(order, b, c)
    if np.ndim(z) == 0:
        return _scalar_2f1(order, b, c, float(z), reflected)
    z = np.asarray(z, dtype=float)
    return np.array(
        [_scalar_2f1(order, b, c, value, reflected) for value in z.flat],
        dtype=float,
    ).reshape(z.shape)


def gauss_2f1_working(neg_a, b, c, z, with_magnitude=False):
    """Terminating ``2F1(-N, b; c; z)`` as a number of :data:`WORKING`.

    Used inside alternating sums whose terms are much larger than the
    result. The sum is done at the current precision of the context. With
    ``with_magnitude``, the sum of the absolute values of the terms is
    also returned (see :func:`evaluate_with_guard`).

    """
    order = _termination_order(neg_a)
    _check_lower(c, order, "c")
    value, magnitude = _working_terms(order, b, c, z)
    if with_magnitude:
        return value, magnitude
    return value


def gauss_2f1_at_unity(neg_a, b, c):
    """Value of ``2F1(-γ, b; c; 1) = (c-b)_γ / (c)_γ`` (Gauss summation).

    For ``c = b + 1`` this is the product ``γ! / ((b+1)...(b+γ))``. The
    general case goes through :func:`ln_gamma_ratio`.

    """
    order = _termination_order(neg_a)
    if order == 0:
        return 1.0
    if c == b + 1:
        _check_lower(b + 1, order, "c")
        result = 1.0
        for j in range(1, order + 1):
            result *= j / (b + j)
        return result
    if not (c > 0 and c - b > 0):
        raise DomainError(
            f"Gauss summation needs c > 0 and c - b > 0 (got b={b!r}, c={c!r})"
        )
    return math.exp(
        ln_gamma_ratio(c - b + order, c - b) - ln_gamma_ratio(c + order, c)
    )


def _as_parameter(value):
    # numbers of the working context keep their precision
    if hasattr(value, "_mpf_"):
        return value
    return float(value)


@dataclass(frozen=True)
class KdFSpec:
    """Parameters and arguments of a Kampé de Fériet double series.

    The general term of the series is::

        prod (a_p)_{m+n} prod (b_q)_m prod (c_k)_n   x^m y^n
        ------------------------------------------- ---------
        prod (α_r)_{m+n} prod (β_j)_m prod (γ_l)_n   m! n!

    with ``upper_joint = (a_p)``, ``upper_x = (b_q)``, ``upper_y = (c_k)``
    and the lower lists in the same order.

    """

    upper_joint: Tuple[float, ...] = ()
    upper_x: Tuple[float, ...] = ()
    upper_y: Tuple[float, ...] = ()
    lower_joint: Tuple[float, ...] = ()
    lower_x: Tuple[float, ...] = ()
    lower_y: Tuple[float, ...] = ()
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self):
        for name in (
            "upper_joint",
            "upper_x",
            "upper_y",
            "lower_joint",
            "lower_x",
            "lower_y",
        ):
            object.__setattr__(
                self, name, tuple(_as_parameter(v) for v in getattr(self, name))
            )


def _smallest_termination(parameters):
    orders = [
        int(-p) for p in parameters if float(p).is_integer() and p <= 0
    ]
    return min(orders) if orders else None


def termination_orders(spec):
    """Return the largest orders ``(M_x, M_y)`` with non-zero terms.

    A non-positive integer in ``upper_x`` (``upper_y``) bounds the order in
    ``x`` (``y``). A non-positive integer joint parameter bounds both.

    """
    joint = _smallest_termination(spec.upper_joint)
    order_x = _smallest_termination(spec.upper_x)
    order_y = _smallest_termination(spec.upper_y)
    if joint is not None:
        order_x = joint if order_x is None else min(order_x, joint)
        order_y = joint if order_y is None else min(order_y, joint)
    if order_x is None or order_y is None:
        raise DomainError("non-terminating Kampé de Fériet series")
    return order_x, order_y


def _separate_factors(ctx, upper, lower, argument, order):
    """``prod (b)_m / prod (β)_m * argument^m / m!`` for m = 0..order."""
    factors = [ctx.one]
    for m in range(order):
        ratio = ctx.one
        for p in upper:
            ratio *= p + m
        for p in lower:
            ratio /= p + m
        factors.append(factors[-1] * ratio * argument / (m + 1))
    return factors


def kdf_sum(spec, max_x_order=None, max_y_order=None):
    """Sum a terminating Kampé de Fériet series at the current precision.

    Returns the sum and the sum of the absolute values of its terms, as
    numbers of :data:`WORKING`.

    Parameters
    ----------

    spec : KdFSpec

    max_x_order, max_y_order : int, optional

      Truncation orders. They default to the termination bounds and may
      not be smaller than them.

    """
    order_x, order_y = termination_orders(spec)
    if max_x_order is None:
        max_x_order = order_x
    if max_y_order is None:
        max_y_order = order_y
    if max_x_order < order_x or max_y_order < order_y:
        raise DomainError(
            f"truncation ({max_x_order}, {max_y_order}) drops non-zero terms "
            f"of a series terminating at ({order_x}, {order_y})"
        )

    nb_joint = max_x_order + max_y_order
    for p in spec.lower_joint:
        _check_lower(p, nb_joint, "lower_joint")
    for p in spec.lower_x:
        _check_lower(p, max_x_order, "lower_x")
    for p in spec.lower_y:
        _check_lower(p, max_y_order, "lower_y")

    ctx = WORKING
    upper_joint = [ctx.mpf(p) for p in spec.upper_joint]
    lower_joint = [ctx.mpf(p) for p in spec.lower_joint]
    joint = [ctx.one]
    for s in range(nb_joint):
        ratio = ctx.one
        for p in upper_joint:
            ratio *= p + s
        for p in lower_joint:
            ratio /= p + s
        joint.append(joint[-1] * ratio)

    factors_x = _separate_factors(
        ctx,
        [ctx.mpf(p) for p in spec.upper_x],
        [ctx.mpf(p) for p in spec.lower_x],
        ctx.mpf(spec.x),
        max_x_order,
    )
    factors_y = _separate_factors(
        ctx,
        [ctx.mpf(p) for p in spec.upper_y],
        [ctx.mpf(p) for p in spec.lower_y],
        ctx.mpf(spec.y),
        max_y_order,
    )
    terms = [
        joint[m + n] * factors_x[m] * factors_y[n]
        for m in range(max_x_order + 1)
        for n in range(max_y_order + 1)
    ]
    return ctx.fsum(terms), ctx.fsum(abs(term) for term in terms)


def kdf_eval(spec, max_x_order=None, max_y_order=None):
    """Sum a terminating Kampé de Fériet series, rounded once to a float.

    The grid of ``(M_x + 1) x (M_y + 1)`` terms is summed in the working
    precision (:func:`kdf_sum`), raised until :data:`GUARD_DIGITS` digits
    survive the cancellations.

    """
    (total,) = evaluate_with_guard(
        lambda dps: [kdf_sum(spec, max_x_order, max_y_order)]
    )
    return float(total)
