"""Exact volume polynomials and the aggregates built from them."""

from __future__ import annotations

import threading
from fractions import Fraction

from ..errors import DomainError
from ..exactring import QPiNumber
from ._common import degree, is_stable
from .cache import DEFAULT_BUDGET, VolumeCache
from .polynomial import VolumePoly

ORBIFOLD_ONE_ONE = Fraction(1, 2)
"""V_{1,1} used inside the recursion is half the public (x^2 + 4 pi^2)/24."""


def solve(engine, g: int, n: int) -> VolumePoly:
    """Public-normalised V_{g,n} from a recursion engine."""
    if not is_stable(g, n):
        raise DomainError(f"(g, n) = ({g}, {n}) needs 2g - 2 + n >= 1")
    if n == 0:
        return VolumePoly(g, 0, {(): closed_volume(engine.table(g, 1), g)})
    table = engine.table(g, n)
    if (g, n) == (1, 1):
        table = {a: q / ORBIFOLD_ONE_ONE for a, q in table.items()}
    return VolumePoly(g, n, table)


def closed_volume(one_boundary: dict[tuple[int, ...], Fraction], g: int) -> Fraction:
    """V_g (pi stripped) from V_{g,1} by the dilaton equation.

    Writing V_{g,1}(L) = P(L^2), the equation reads (g - 1) V_g = P'(-4 pi^2).
    """
    if g < 2:
        raise DomainError("closed surfaces need g >= 2")
    total = Fraction(0)
    for (a,), r in one_boundary.items():
        if a >= 1:
            total += r * a * (-4) ** (a - 1)
    return total / (g - 1)


_default_lock = threading.Lock()
_default_cache: VolumeCache | None = None


def default_cache() -> VolumeCache:
    """Process-wide cache, created on first use."""
    global _default_cache
    with _default_lock:
        if _default_cache is None:
            _default_cache = VolumeCache(DEFAULT_BUDGET)
        return _default_cache


def set_default_cache(cache: VolumeCache | None) -> None:
    global _default_cache
    with _default_lock:
        _default_cache = cache


def _cache_for(budget: int | None) -> VolumeCache:
    cache = default_cache()
    if budget is None or budget == cache.budget:
        return cache
    return _budget_caches(budget)


_other: dict[int, VolumeCache] = {}


def _budget_caches(budget: int) -> VolumeCache:
    with _default_lock:
        if budget not in _other:
            _other[budget] = VolumeCache(budget, path=False)
        return _other[budget]


def volume_polynomial(g: int, n: int, budget: int | None = None) -> VolumePoly:
    """Exact V_{g,n}(x_1..x_n); raises BudgetError when 3g-3+n exceeds the budget."""
    return _cache_for(budget).get(g, n)


def volume_value(g: int, n: int, budget: int | None = None) -> QPiNumber:
    """V_{g,n} = V_{g,n}(0, ..., 0) as an exact element of Q[pi]."""
    return volume_polynomial(g, n, budget).value()


def w_r(r: int, budget: int | None = None) -> QPiNumber:
    """W_r: V_{r/2+1} for even r, V_{(r+1)/2,1} for odd r."""
    if r < 1:
        raise DomainError("W_r needs r >= 1")
    if r % 2 == 0:
        return volume_value(r // 2 + 1, 0, budget)
    return volume_value((r + 1) // 2, 1, budget)


def in_budget(g: int, n: int, budget: int | None = None) -> bool:
    return is_stable(g, n) and degree(g, n) <= (budget if budget is not None else default_cache().budget)
