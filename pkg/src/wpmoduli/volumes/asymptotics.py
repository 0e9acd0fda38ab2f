"""Large-genus volume estimates.

The leading term ``alpha * g**-0.5 * (2g-3+n)! * (4 pi^2)**(2g-3+n)`` is used
in log form so that genera like 10**8 do not overflow anything.  In a ratio
with one numerator factor and one denominator factor the unknown constant
``alpha`` cancels; that is how every asymptotic expectation uses it.
"""

from __future__ import annotations

import threading

import mpmath

from ..errors import DomainError
from ..exactring import DEFAULT_PRECISION, GUARD_DIGITS, qpi_eval
from ._common import degree, is_stable
from .core import default_cache, volume_value

CONJECTURED_ALPHA_TEXT = "1/sqrt(pi)"


def conjectured_alpha(precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """1/sqrt(pi): the conjectured constant, for comparison only."""
    with mpmath.workdps(precision):
        return 1 / mpmath.sqrt(mpmath.pi)


def log_mz(g, n, log_alpha=0) -> mpmath.mpf:
    """log of the leading-term estimate of V_{g,n} (g may be a large mpf)."""
    g = mpmath.mpf(g)
    e = 2 * g - 3 + n
    return log_alpha - mpmath.log(g) / 2 + mpmath.loggamma(e + 1) + e * mpmath.log(4 * mpmath.pi**2)


def mz_estimate(g, n: int, alpha, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """alpha / sqrt(g) * (2g-3+n)! * (4 pi^2)^(2g-3+n)."""
    if g < 2:
        raise DomainError("the large-genus estimate is stated for g >= 2")
    with mpmath.workdps(precision + GUARD_DIGITS):
        alpha = mpmath.mpf(alpha)
        if alpha == 0:
            return mpmath.mpf(0)
        value = alpha * mpmath.exp(log_mz(g, n))
    with mpmath.workdps(precision):
        return +value


def estimate_alpha(g_max: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """sqrt(g) V_g / ((2g-3)! (4 pi^2)^(2g-3)) at g = g_max, from exact V_g."""
    if g_max < 2:
        raise DomainError("need g_max >= 2")
    with mpmath.workdps(precision + GUARD_DIGITS):
        v = qpi_eval(volume_value(g_max, 0), precision + GUARD_DIGITS)
        e = 2 * g_max - 3
        value = mpmath.sqrt(g_max) * v / (mpmath.factorial(e) * (4 * mpmath.pi**2) ** e)
    with mpmath.workdps(precision):
        return +value


def alpha_sequence(g_max: int, precision: int = DEFAULT_PRECISION) -> list[mpmath.mpf]:
    return [estimate_alpha(g, precision) for g in range(2, g_max + 1)]


_alpha_lock = threading.Lock()
_alpha_default: dict[int, mpmath.mpf] = {}


def default_alpha() -> mpmath.mpf:
    """alpha estimated at the largest closed genus inside the default budget.

    Only enters estimates whose ratio keeps a net power of alpha, i.e. two or
    more large pieces against one ambient surface.
    """
    budget = default_cache().budget
    g_max = budget // 3 + 1
    with _alpha_lock:
        if g_max not in _alpha_default:
            _alpha_default[g_max] = estimate_alpha(g_max, DEFAULT_PRECISION + GUARD_DIGITS)
        return _alpha_default[g_max]


def log_volume(g, n: int, budget: int | None = None) -> mpmath.mpf:
    """log V_{g,n}: exact when inside the budget, leading-term estimate otherwise.

    Estimates for pieces with g = 0 or 1 outside the budget are first pushed
    up in genus with V_{g,n} <= V_{g+1,n-2}, which keeps them bounds.
    """
    if not is_stable(g, n):
        raise DomainError(f"(g, n) = ({g}, {n}) is not hyperbolic")
    limit = budget if budget is not None else default_cache().budget
    if isinstance(g, int) and degree(g, n) <= limit:
        return mpmath.log(qpi_eval(volume_value(g, n, budget), mpmath.mp.dps))
    while g < 2 and n >= 4:
        g, n = g + 1, n - 2
    if g < 2:
        raise DomainError(f"no estimate for ({g}, {n})")
    return log_mz(g, n, mpmath.log(default_alpha()))


def volume_ratio(numerator, denominator, budget: int | None = None, reduce: bool = False) -> mpmath.mpf:
    """prod V(numerator pieces) / prod V(denominator pieces).

    Large pieces use the leading-term estimate with alpha; when the numbers
    of estimated pieces on both sides agree, alpha drops out exactly.
    With ``reduce`` a large numerator piece is first moved to n <= 3 through
    V_{g,n} <= V_{g+1,n-2}, which is how the bounds use it.
    """
    limit = budget if budget is not None else default_cache().budget
    total = mpmath.mpf(0)
    big = 0
    for g, n in numerator:
        if not (isinstance(g, int) and degree(g, n) <= limit):
            big += 1
            total += _log_mz_no_alpha(g, n, reduce)
        else:
            total += log_volume(g, n, budget)
    for g, n in denominator:
        if not (isinstance(g, int) and degree(g, n) <= limit):
            big -= 1
            total -= _log_mz_no_alpha(g, n)
        else:
            total -= log_volume(g, n, budget)
    if big:
        total += big * mpmath.log(default_alpha())
    return mpmath.exp(total)


def _log_mz_no_alpha(g, n, reduce: bool = False):
    while (g < 2 or (reduce and n > 3)) and n >= 4:
        g, n = g + 1, n - 2
    if g < 2:
        raise DomainError(f"no estimate for ({g}, {n})")
    return log_mz(g, n)


def asymptotic_ratio(numerator, denominator) -> mpmath.mpf:
    """Like :func:`volume_ratio` but with every factor estimated (none exact)."""
    total = mpmath.mpf(0)
    big = 0
    for g, n in numerator:
        total += _log_mz_no_alpha(g, n)
        big += 1
    for g, n in denominator:
        total -= _log_mz_no_alpha(g, n)
        big -= 1
    if big:
        total += big * mpmath.log(default_alpha())
    return mpmath.exp(total)
