"""The McShane kernel functions D and R and the bounds built on them.

Both kernels are evaluated in a cancellation-free form (a log1p of a
positive quantity); the displayed log-ratio forms are kept as
:func:`d_func_direct` / :func:`r_func_direct` and serve as the second route
in the tests.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .errors import DomainError
from .exactring import DEFAULT_PRECISION, GUARD_DIGITS

FIRST_BOUND_CONSTANT = 100
SECOND_BOUND_CONSTANT = 500
Z2_BRANCH_CONSTANT = 2000
Z_SPLIT = Fraction(19, 10)

# x -> 0+ limit of D and z -> 0+ limit of R / x
D_LIMIT_X0 = 0
R_LIMIT_Z0_OVER_X = 1


def _positive(*args):
    out = []
    for a in args:
        a = mpmath.mpf(a)
        if not a > 0:
            raise DomainError("arguments must be positive")
        out.append(a)
    return out


def d_func(x, y, z, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """D(x,y,z) = 2 log((e^{x/2} + e^{(y+z)/2}) / (e^{-x/2} + e^{(y+z)/2}))."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        x, y, z = _positive(x, y, z)
        v = 2 * mpmath.log1p(2 * mpmath.sinh(x / 2) / (mpmath.exp(-x / 2) + mpmath.exp((y + z) / 2)))
    with mpmath.workdps(precision):
        return +v


def d_func_direct(x, y, z, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    with mpmath.workdps(precision + GUARD_DIGITS):
        x, y, z = _positive(x, y, z)
        e = mpmath.exp((y + z) / 2)
        v = 2 * mpmath.log((mpmath.exp(x / 2) + e) / (mpmath.exp(-x / 2) + e))
    with mpmath.workdps(precision):
        return +v


def r_func(x, y, z, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """R(x,y,z) = x - log((cosh(y/2) + cosh((x+z)/2)) / (cosh(y/2) + cosh((x-z)/2))).

    Computed as log1p of ((e^x - 1) cosh(y/2) + e^{(x-z)/2} sinh x) over
    cosh(y/2) + cosh((x+z)/2), which has no cancellation for large z.
    """
    with mpmath.workdps(precision + GUARD_DIGITS):
        x, y, z = _positive(x, y, z)
        cy = mpmath.cosh(y / 2)
        num = mpmath.expm1(x) * cy + mpmath.exp((x - z) / 2) * mpmath.sinh(x)
        v = mpmath.log1p(num / (cy + mpmath.cosh((x + z) / 2)))
    with mpmath.workdps(precision):
        return +v


def r_func_direct(x, y, z, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    with mpmath.workdps(precision + GUARD_DIGITS):
        x, y, z = _positive(x, y, z)
        cy = mpmath.cosh(y / 2)
        v = x - mpmath.log((cy + mpmath.cosh((x + z) / 2)) / (cy + mpmath.cosh((x - z) / 2)))
    with mpmath.workdps(precision):
        return +v


def first_bound(x, y, z) -> mpmath.mpf:
    """100 (1 + x)(1 + e^{z/2} e^{-(x+y)/2})."""
    x, y, z = (mpmath.mpf(t) for t in (x, y, z))
    return FIRST_BOUND_CONSTANT * (1 + x) * (1 + mpmath.exp((z - x - y) / 2))


def second_bound(x, y, z) -> mpmath.mpf | None:
    """500 + 500 x / (x + y - z), only when x + y > z."""
    x, y, z = (mpmath.mpf(t) for t in (x, y, z))
    if not x + y > z:
        return None
    return SECOND_BOUND_CONSTANT + SECOND_BOUND_CONSTANT * x / (x + y - z)


def x_over_r_bound(x, y, z, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Upper bound on x / R(x,y,z): the smaller of the applicable bounds."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        x, y, z = _positive(x, y, z)
        b = first_bound(x, y, z)
        s = second_bound(x, y, z)
        if s is not None and s < b:
            b = s
    with mpmath.workdps(precision):
        return +b


def x_over_d_bound(x, y, z, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """100 (1 + x)(1 + e^{(y+z)/2} e^{-x/2})."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        x, y, z = _positive(x, y, z)
        b = FIRST_BOUND_CONSTANT * (1 + x) * (1 + mpmath.exp((y + z - x) / 2))
    with mpmath.workdps(precision):
        return +b


def count_bound_pants_neighbors(L1, L2, L, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """L1 / R(L1, L2, L): bounds the number of geodesics of length <= L that
    cut a pair of pants off together with two boundary curves of lengths L1, L2."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        L1, L2, L = _positive(L1, L2, L)
        v = L1 / r_func(L1, L2, L, precision + GUARD_DIGITS)
    with mpmath.workdps(precision):
        return +v


def z2_branch_bound(x, L) -> mpmath.mpf:
    """500 + 500 x / (0.9 L): the x/R bound on the branch 1.9L < x + y <= 2L, z = L."""
    x, L = mpmath.mpf(x), mpmath.mpf(L)
    return SECOND_BOUND_CONSTANT + SECOND_BOUND_CONSTANT * x / (mpmath.mpf(9) / 10 * L)


# monotonicity claims: (function, argument index, +1 increasing / -1 decreasing)
MONOTONICITY = (
    ("R", 2, -1),
    ("R", 1, +1),
    ("D", 1, -1),
    ("D", 2, -1),
    ("D", 0, +1),
)


# identities that the R bounds lean on; each returns lhs - rhs


def sinh_addition_residual(a, b) -> mpmath.mpf:
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    return mpmath.sinh(a + b) - (mpmath.sinh(a) * mpmath.cosh(b) + mpmath.cosh(a) * mpmath.sinh(b))


def sinh_sum_residual(a, b) -> mpmath.mpf:
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    return mpmath.sinh(a) + mpmath.sinh(b) - 2 * mpmath.sinh((a + b) / 2) * mpmath.cosh((a - b) / 2)


def r_derivative_numerator_residual(x, y, z) -> mpmath.mpf:
    """The z-derivative numerator of the R log-argument, before and after simplifying."""
    x, y, z = (mpmath.mpf(t) for t in (x, y, z))
    cy = mpmath.cosh(y / 2)
    raw = (mpmath.sinh((x + z) / 2) * (cy + mpmath.cosh((x - z) / 2)) + mpmath.sinh((x - z) / 2) * (cy + mpmath.cosh((x + z) / 2))) / 2
    simple = mpmath.sinh(x / 2) * mpmath.cosh(z / 2) * cy + mpmath.sinh(x) / 2
    return raw - simple


def r_log1p_residual(x, y, z) -> mpmath.mpf:
    """R against log(1 + ((e^x-1)(e^y+1)e^{(x+z)/2} + (e^{2x}-1)e^{y/2}) / denominator)."""
    x, y, z = (mpmath.mpf(t) for t in (x, y, z))
    ex, ey, exz, ey2 = mpmath.exp(x), mpmath.exp(y), mpmath.exp((x + z) / 2), mpmath.exp(y / 2)
    num = (ex - 1) * (ey + 1) * exz + (ex**2 - 1) * ey2
    den = ey * exz + exz + mpmath.exp(x + z) * ey2 + ey2
    return r_func_direct(x, y, z, mpmath.mp.dps) - mpmath.log1p(num / den)


def log1p_half_gap(t) -> mpmath.mpf:
    """log(1 + t) - t/2, nonnegative on (0, 1]."""
    t = mpmath.mpf(t)
    return mpmath.log1p(t) - t / 2
