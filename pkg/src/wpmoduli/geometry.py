"""Half-collars, cylinders, extremal-length brackets and the large-genus windows."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import DomainError
from .exactring import DEFAULT_PRECISION, GUARD_DIGITS

# The universal constant in sup L1 <= C log g is not known; 8 is a placeholder.
DEFAULT_SUP_CONSTANT = 8


@dataclass(frozen=True)
class Window:
    lower: object
    upper: object
    description: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError(f"inverted window [{self.lower}, {self.upper}]")

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def ratio(self):
        return self.upper / self.lower if self.lower else mpmath.inf

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class Cylinder:
    """Collar around a geodesic of length l, out to distance w."""

    l: object
    w: object = 0

    def __post_init__(self):
        if not self.l > 0:
            raise DomainError("core length must be positive")
        if self.w < 0:
            raise DomainError("width must be nonnegative")

    @property
    def outer_length(self) -> mpmath.mpf:
        return cylinder_outer_length(self)

    @property
    def area(self) -> mpmath.mpf:
        return cylinder_area(self)


def cylinder_outer_length(c: Cylinder) -> mpmath.mpf:
    return mpmath.mpf(c.l) * mpmath.cosh(c.w)


def cylinder_area(c: Cylinder) -> mpmath.mpf:
    return mpmath.mpf(c.l) * mpmath.sinh(c.w)


def collar_theta(w, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """theta with 2(arctan(e^w) - pi/4) = theta."""
    if w < 0:
        raise DomainError("width must be nonnegative")
    with mpmath.workdps(precision + GUARD_DIGITS):
        v = 2 * (mpmath.atan(mpmath.exp(w)) - mpmath.pi / 4)
    with mpmath.workdps(precision):
        return +v


def collar_theta_secant(w, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """theta with cosh(w) = 1 / cos(theta); the other description of the same angle."""
    if w < 0:
        raise DomainError("width must be nonnegative")
    # arccos near 1 loses about half the digits, hence the doubled precision
    with mpmath.workdps(2 * precision + GUARD_DIGITS):
        v = mpmath.acos(1 / mpmath.cosh(w))
    with mpmath.workdps(precision):
        return +v


def collar_width(theta, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Inverse of :func:`collar_theta` on [0, pi/2)."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        theta = mpmath.mpf(theta)
        if theta < 0 or theta >= mpmath.pi / 2:
            raise DomainError("theta must lie in [0, pi/2)")
        v = mpmath.log(mpmath.tan(theta / 2 + mpmath.pi / 4))
    with mpmath.workdps(precision):
        return +v


def half_collar_arc(w) -> mpmath.mpf:
    """Length 2w of the shortest arc ruling out a half-collar of width w."""
    if w < 0:
        raise DomainError("width must be nonnegative")
    return 2 * mpmath.mpf(w)


def maskit_window(ext, w, precision: int = DEFAULT_PRECISION) -> Window:
    """[2(arctan(e^w) - pi/4) Ext, pi Ext] for the hyperbolic length."""
    if not ext > 0:
        raise DomainError("extremal length must be positive")
    with mpmath.workdps(precision + GUARD_DIGITS):
        ext = mpmath.mpf(ext)
        lo, hi = collar_theta(w, precision + GUARD_DIGITS) * ext, mpmath.pi * ext
    with mpmath.workdps(precision):
        return Window(+lo, +hi, "hyperbolic length from extremal length")


def chi_union_bounds(chi1: int, chi2: int, l1, l2) -> Window:
    """Integer window for |chi| of the union of two subsurfaces."""
    if int(chi1) != chi1 or int(chi2) != chi2 or chi1 < 1 or chi2 < 1:
        raise DomainError("|chi| values must be integers >= 1")
    if l1 < 0 or l2 < 0:
        raise DomainError("boundary lengths must be nonnegative")
    lower = 1 + max(int(chi1), int(chi2))
    upper = int(mpmath.floor(int(chi1) + int(chi2) + (mpmath.mpf(l1) + mpmath.mpf(l2)) / (2 * mpmath.pi)))
    return Window(lower, upper, "|chi| of the union")


def _check_g(g, low: int = 3):
    if g < low:
        raise DomainError(f"need g >= {low}")
    return mpmath.mpf(g)


def half_collar_width_threshold(g, eps) -> mpmath.mpf:
    """(1/2) log g - (3/2 + eps) log log g."""
    g = _check_g(g)
    if not eps > 0:
        raise DomainError("need eps > 0")
    return mpmath.log(g) / 2 - (mpmath.mpf(3) / 2 + eps) * mpmath.log(mpmath.log(g))


def ext_systole_window(g, eps) -> Window:
    """((2 - eps)/pi log g, (4 + eps)/pi log g) for the separating extremal systole."""
    g = _check_g(g)
    if not 0 < eps < 2:
        raise DomainError("need 0 < eps < 2")
    lg = mpmath.log(g)
    return Window((2 - mpmath.mpf(eps)) / mpmath.pi * lg, (4 + mpmath.mpf(eps)) / mpmath.pi * lg, "separating extremal systole")


def cheeger_h1_window(g, eps) -> Window:
    """((1 - eps) log g / pi, log g / pi) for H_1."""
    g = _check_g(g)
    if not eps > 0:
        raise DomainError("need eps > 0")
    lg = mpmath.log(g)
    return Window((1 - mpmath.mpf(eps)) * lg / mpmath.pi, lg / mpmath.pi, "geometric Cheeger constant H_1")


def lambda1_ratio_window(g, eps) -> Window:
    """(0.001 / log g, (1 + eps) 0.125 / log g) for lambda_1 / L1."""
    g = _check_g(g)
    if not eps > 0:
        raise DomainError("need eps > 0")
    lg = mpmath.log(g)
    return Window(mpmath.mpf("0.001") / lg, (1 + mpmath.mpf(eps)) * mpmath.mpf("0.125") / lg, "lambda_1 / L1")


def l1_sup_bound(g, C=DEFAULT_SUP_CONSTANT) -> mpmath.mpf:
    """C log g, with C a configured stand-in for an unknown universal constant."""
    g = _check_g(g, 2)
    if not C > 0:
        raise DomainError("need C > 0")
    return mpmath.mpf(C) * mpmath.log(g)


def expected_l1_window(g, good_fraction, omega_value, C=DEFAULT_SUP_CONSTANT) -> Window:
    """Window for E[L1] / log g given the mass of the set |L1 - (2 log g - 4 log log g)| <= omega.

    Lower: (2 log g - 4 log log g - omega)/log g * p.  Upper: the same with
    +omega, plus C (1 - p) from the sup bound on the rest.
    """
    g = _check_g(g)
    p = mpmath.mpf(good_fraction)
    if not 0 <= p <= 1:
        raise DomainError("good_fraction must lie in [0, 1]")
    lg = mpmath.log(g)
    centre = 2 * lg - 4 * mpmath.log(lg)
    lower = (centre - omega_value) / lg * p
    upper = (centre + omega_value) / lg * p + mpmath.mpf(C) * (1 - p)
    return Window(lower, upper, "E[L1] / log g")


def threshold_windows(g, eps, omega_choice: str = "sqrtloglog") -> list[tuple[str, Window]]:
    """Every large-genus window at one genus, in a fixed order."""
    from .expectations import ThresholdProfile, threshold_L

    lo = threshold_L(ThresholdProfile(g, -1, omega_choice))
    hi = threshold_L(ThresholdProfile(g, 1, omega_choice))
    return [
        ("separating systole", Window(lo, hi, "2 log g - 4 log log g -/+ omega")),
        ("L1", Window(lo, hi, "2 log g - 4 log log g -/+ omega")),
        ("half-collar width", Window(half_collar_width_threshold(g, eps), half_collar_width_threshold(g, eps), "(1/2) log g - (3/2 + eps) log log g")),
        ("extremal systole", ext_systole_window(g, eps)),
        ("Cheeger H_1", cheeger_h1_window(g, eps)),
        ("lambda_1 / L1", lambda1_ratio_window(g, eps)),
        ("sup L1", Window(0, l1_sup_bound(g), f"C log g with C = {DEFAULT_SUP_CONSTANT} (placeholder)")),
    ]
