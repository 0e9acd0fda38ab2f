"""Pure-Python recursion engine (fallback when the compiled core is absent).

Tables map a multiset of exponents to its rational coefficient.  A multiset
is keyed by an integer that is *additive* under multiset union: each nonzero
part ``v`` contributes ``1 << (SHIFT * (v - 1))``.  Zero parts contribute
nothing, and the length is fixed per table, so the key is faithful.  This
turns the lookups in the inner loops into integer additions.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from ._common import (
    base_table,
    degree,
    dependencies,
    is_stable,
    kernel_coefficient,
    pair_kernel,
    partitions,
)

SHIFT = 8

BACKEND = "python"


def _unit(v: int) -> int:
    return (1 << (SHIFT * (v - 1))) if v > 0 else 0


def _key(parts) -> int:
    return sum(_unit(v) for v in parts)


def _sub_multisets(groups):
    """All sub-multisets of ``groups`` = [(value, count)] as (weight, key, sum, size)."""
    out = [(1, 0, 0, 0)]
    for v, c in groups:
        nxt = []
        u = _unit(v)
        for w, k, s, size in out:
            for ci in range(c + 1):
                nxt.append((w * comb(c, ci), k + ci * u, s + ci * v, size + ci))
        out = nxt
    return out


class RecursionEngine:
    """Memoised solver for the pi-stripped coefficient tables."""

    backend = BACKEND

    def __init__(self):
        self._tables: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._lists: dict[tuple[int, int], dict[tuple[int, ...], Fraction]] = {}
        self._lock = threading.RLock()

    def table(self, g: int, n: int) -> dict[tuple[int, ...], Fraction]:
        """Coefficients of V_{g,n} keyed by non-increasing exponent tuples."""
        if n < 1 or not is_stable(g, n):
            raise ValueError(f"no recursion table for (g, n) = ({g}, {n})")
        with self._lock:
            self._build(g, n)
            return dict(self._lists[(g, n)])

    def _build(self, g: int, n: int) -> None:
        if (g, n) in self._tables:
            return
        seed = base_table(g, n)
        if seed is None:
            for dep in dependencies(g, n):
                self._build(*dep)
            seed = self._solve(g, n)
        self._lists[(g, n)] = seed
        self._tables[(g, n)] = {_key(a): c for a, c in seed.items()}

    def _solve(self, g: int, n: int) -> dict[tuple[int, ...], Fraction]:
        d = degree(g, n)
        tables = self._tables
        half = Fraction(1, 2)
        out: dict[tuple[int, ...], Fraction] = {}
        con = tables.get((g - 1, n + 1)) if g >= 1 else None
        prev = tables.get((g, n - 1)) if n >= 2 else None
        for alpha in partitions(d, n):
            a1 = alpha[0]
            rest = alpha[1:]
            krest = _key(rest)
            srest = sum(rest)
            acc = Fraction(0)

            if con is not None:
                room = d - 2 - srest
                for a in range(room + 1):
                    ka = krest + _unit(a)
                    for b in range(a, room - a + 1):
                        if a + b + 2 < a1:
                            continue
                        c = con.get(ka + _unit(b))
                        if c:
                            w = pair_kernel(a, b, a1)
                            acc += c * w if a != b else half * c * w

            groups: dict[int, int] = {}
            for v in rest:
                groups[v] = groups.get(v, 0) + 1
            glist = sorted(groups.items())

            for w, kI, sI, nI in _sub_multisets(glist):
                kJ = krest - kI
                sJ = srest - sI
                nJ = n - 1 - nI
                for g1 in range(g + 1):
                    g2 = g - g1
                    n1, n2 = nI + 1, nJ + 1
                    if not (is_stable(g1, n1) and is_stable(g2, n2)):
                        continue
                    d1 = degree(g1, n1) - sI
                    d2 = degree(g2, n2) - sJ
                    if d1 < 0 or d2 < 0:
                        continue
                    t1 = tables[(g1, n1)]
                    t2 = tables[(g2, n2)]
                    part = Fraction(0)
                    for a in range(d1 + 1):
                        c1 = t1.get(kI + _unit(a))
                        if not c1:
                            continue
                        for b in range(max(0, a1 - a - 2), d2 + 1):
                            c2 = t2.get(kJ + _unit(b))
                            if c2:
                                part += c1 * c2 * pair_kernel(a, b, a1)
                    if part:
                        acc += half * w * part

            if prev is not None:
                for v, c in glist:
                    kr = krest - _unit(v)
                    top = d - 1 - (srest - v)
                    p0 = a1 + v
                    binom = comb(2 * p0, 2 * a1)
                    for a in range(max(0, p0 - 1), top + 1):
                        cc = prev.get(kr + _unit(a))
                        if cc:
                            acc += c * cc * binom * kernel_coefficient(a, p0)

            if acc:
                out[alpha] = acc / (2 * a1 + 1)
        return out
