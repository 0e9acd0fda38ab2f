"""Pieces shared by the pure-Python and compiled recursion engines.

Both engines work with pi stripped out.  The coefficient of
``prod L_i**(2*alpha_i)`` in V_{g,n} is ``r_alpha * pi**(2*(d - |alpha|))``
with ``d = 3g - 3 + n``, and the recursion is homogeneous in that grading,
so only the rationals ``r_alpha`` are ever stored.

Convention: the (1,1) table seeded here is (L^2 + 4 pi^2)/48, the value
that makes the recursion and the dilaton/string equations consistent (it
accounts for the elliptic involution).  The public API doubles it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from ..exactring import zeta_even_over_pi


def degree(g: int, n: int) -> int:
    return 3 * g - 3 + n


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


@lru_cache(maxsize=None)
def kernel_coefficient(k: int, m: int) -> Fraction:
    """Coefficient of t^(2m) (pi stripped) in the integral of x^(2k+1) H(x, t).

    The integral over x in (0, inf) equals
    ``(2k+1)! * sum_i zeta(2i) (2^(2i+1) - 4) t^(2k+2-2i) / (2k+2-2i)!``
    with ``zeta(0) = -1/2``.
    """
    i = k + 1 - m
    if m < 0 or i < 0:
        return Fraction(0)
    return factorial(2 * k + 1) * zeta_even_over_pi(i) * (2 ** (2 * i + 1) - 4) / factorial(2 * m)


@lru_cache(maxsize=None)
def pair_kernel(a: int, b: int, m: int) -> Fraction:
    """Coefficient of t^(2m) in the double integral of x^(2a+1) y^(2b+1) H(x+y, t)."""
    k = a + b + 1
    return Fraction(factorial(2 * a + 1) * factorial(2 * b + 1), factorial(2 * k + 1)) * kernel_coefficient(k, m)


def partitions(total_max: int, parts: int) -> list[tuple[int, ...]]:
    """Non-increasing tuples of length ``parts`` with sum at most ``total_max``."""
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(remaining: int, cap: int, left: int) -> None:
        if left == 0:
            out.append(tuple(prefix))
            return
        for v in range(min(cap, remaining), -1, -1):
            prefix.append(v)
            rec(remaining - v, v, left - 1)
            prefix.pop()

    rec(total_max, total_max, parts)
    return out


def base_table(g: int, n: int) -> dict[tuple[int, ...], Fraction] | None:
    if (g, n) == (0, 3):
        return {(0, 0, 0): Fraction(1)}
    if (g, n) == (1, 1):
        return {(1,): Fraction(1, 48), (0,): Fraction(1, 12)}
    return None


def dependencies(g: int, n: int) -> list[tuple[int, int]]:
    """Tables the recursion step for (g, n) reads, in a safe build order."""
    deps = []
    if g >= 1 and is_stable(g - 1, n + 1):
        deps.append((g - 1, n + 1))
    if n >= 2 and is_stable(g, n - 1):
        deps.append((g, n - 1))
    for g1 in range(g + 1):
        for n1 in range(1, n + 1):
            if (g1, n1) != (g, n) and is_stable(g1, n1) and degree(g1, n1) < degree(g, n):
                deps.append((g1, n1))
    return deps
