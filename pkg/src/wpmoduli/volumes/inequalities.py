"""Inequalities between volumes, checked on exact data.

Rows whose inequality has explicit constants (the sandwich, the sinh upper
bound, V_{g-1,n+4} <= V_{g,n+2}) get ``pass``/``fail``.  Everything that
hides a universal constant only gets ``trend`` rows plus a trend verdict.
"""

from __future__ import annotations

import random
from itertools import product

import mpmath

from ..errors import DomainError
from ..exactring import DEFAULT_PRECISION, GUARD_DIGITS, ZERO, QPiNumber, qpi_eval
from ..reports import FAIL, PASS, TREND, VerifierReport, monotone
from ._common import is_stable
from .core import default_cache, in_budget, volume_polynomial, volume_value, w_r


def _tol(precision: int) -> mpmath.mpf:
    return mpmath.mpf(10) ** (5 - precision)


def sinh_factor(x, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """prod sinh(x_i/2)/(x_i/2), with the removable singularity filled in."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        out = mpmath.mpf(1)
        for xi in x:
            h = mpmath.mpf(xi) / 2
            if h != 0:
                out *= mpmath.sinh(h) / h
        return out


def sinh_upper_bound(g: int, n: int, x, precision: int = DEFAULT_PRECISION):
    """(bound, point) for V_{g,n}(x): both equal prod sinh(x_i/2)/(x_i/2) * V_{g,n}.

    The first is a rigorous upper bound, the second the same number read as
    the large-genus point estimate.
    """
    if n < 1:
        raise DomainError("the sinh bound needs n >= 1")
    if len(x) != n:
        raise DomainError(f"expected {n} lengths, got {len(x)}")
    if any(xi < 0 for xi in x):
        raise DomainError("lengths must be nonnegative")
    with mpmath.workdps(precision + GUARD_DIGITS):
        v = qpi_eval(volume_value(g, n), precision + GUARD_DIGITS)
        value = sinh_factor(x, precision) * v
    with mpmath.workdps(precision):
        value = +value
    return value, value


def sandwich(g: int, n: int, x, precision: int = DEFAULT_PRECISION):
    """(V_{g,n}, V_{g,n}(x), e^{sum x / 2} V_{g,n}) at the given precision."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        v = qpi_eval(volume_value(g, n), precision + GUARD_DIGITS)
        vx = volume_polynomial(g, n).evaluate(x, precision + GUARD_DIGITS)
        upper = mpmath.exp(mpmath.fsum(mpmath.mpf(t) for t in x) / 2) * v
    return v, vx, upper


def _random_vectors(n: int, samples: int, seed: int, high: float = 10.0):
    rng = random.Random(seed)
    return [[mpmath.mpf(rng.uniform(0, high)) for _ in range(n)] for _ in range(samples)]


def _bounded_pairs():
    return [(g, n) for g, n in default_cache().all_pairs() if n >= 1]


def verify_sandwich(pairs=None, samples: int = 100, seed: int = 0, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    """V <= V(x) <= e^{sum x/2} V on random x in [0, 10]^n."""
    report = VerifierReport("vol-sandwich")
    tol = _tol(precision)
    for g, n in pairs or _bounded_pairs():
        worst_lo, worst_hi = None, None
        ok = True
        for x in _random_vectors(n, samples, seed + 1000 * g + n):
            v, vx, upper = sandwich(g, n, x, precision)
            lo, hi = vx / v, vx / upper
            ok &= lo >= 1 - tol and hi <= 1 + tol
            worst_lo = lo if worst_lo is None else min(worst_lo, lo)
            worst_hi = hi if worst_hi is None else max(worst_hi, hi)
        report.add(f"g={g} n={n} samples={samples}", worst_lo, worst_hi, worst_hi, PASS if ok else FAIL)
    return report


def verify_sinh_upper(pairs=None, samples: int = 100, seed: int = 0, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    """V(x) <= prod sinh(x_i/2)/(x_i/2) V on random x in [0, 10]^n."""
    report = VerifierReport("sinh-upper")
    tol = _tol(precision)
    for g, n in pairs or _bounded_pairs():
        worst = None
        for x in _random_vectors(n, samples, seed + 7 + 1000 * g + n):
            bound, _ = sinh_upper_bound(g, n, x, precision + GUARD_DIGITS)
            exact = volume_polynomial(g, n).evaluate(x, precision + GUARD_DIGITS)
            ratio = exact / bound
            worst = ratio if worst is None else max(worst, ratio)
        report.add(f"g={g} n={n} samples={samples}", worst, 1, worst, PASS if worst <= 1 + tol else FAIL)
    return report


def _value(g, n, precision):
    return qpi_eval(volume_value(g, n), precision)


def verify_volume_ratios(g_range=None, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    """Three families of volume comparisons over the exact range.

    * ``genus-shift``: V_{g-1,n+4} <= V_{g,n+2} (explicit, pass/fail);
    * ``boundary-ratio``: V_{g,n+1} / ((2g-2+n) V_{g,n}), bounded (trend);
    * ``closed-ratio``: V_{g,1} / (2g V_g) against 4 pi^2, with the relative
      deviation expected to shrink in g (trend).
    """
    cache = default_cache()
    if g_range is None:
        g_range = range(0, cache.budget // 3 + 2)
    g_range = list(g_range)
    report = VerifierReport("vol-ratios")
    dps = precision + GUARD_DIGITS
    with mpmath.workdps(dps):
        for g in g_range:
            if g < 1:
                continue
            for n in range(0, cache.budget):
                if not (is_stable(g - 1, n + 4) and in_budget(g, n + 2)):
                    continue
                lhs, rhs = _value(g - 1, n + 4, dps), _value(g, n + 2, dps)
                report.add(f"genus-shift g={g} n={n}", lhs, rhs, lhs / rhs, PASS if lhs <= rhs else FAIL)
        for g in g_range:
            for n in range(0, cache.budget):
                if not (is_stable(g, n) and in_budget(g, n + 1)) or 2 * g - 2 + n < 1:
                    continue
                lhs = _value(g, n + 1, dps)
                rhs = (2 * g - 2 + n) * _value(g, n, dps)
                report.add(f"boundary-ratio g={g} n={n}", lhs, rhs, lhs / rhs, TREND)
        four_pi2 = 4 * mpmath.pi**2
        deviations = []
        for g in g_range:
            if g < 2 or not in_budget(g, 1):
                continue
            ratio = _value(g, 1, dps) / (2 * g * _value(g, 0, dps))
            dev = abs(ratio / four_pi2 - 1)
            deviations.append(dev)
            report.add(f"closed-ratio g={g}", ratio, four_pi2, ratio / four_pi2, TREND, deviation=dev)
    report.trend_ok = monotone(deviations, decreasing=True, strict=True)
    report.notes.append("closed-ratio deviation " + ("shrinks" if report.trend_ok else "does not shrink") + " in g")
    return report


def admissible_genera(r: int, parts) -> list[tuple[int, ...]]:
    """All ordered (g_1..g_q) with 2g_i-2+n_i >= 1 and sum (2g_i-2+n_i) = r."""
    parts = tuple(parts)
    if not parts:
        return []
    out = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == len(parts):
            if left == 0:
                out.append(tuple(acc))
            return
        n = parts[i]
        # chi_i = 2g - 2 + n must be in [1, left - (remaining pieces)]
        g = 0
        while 2 * g - 2 + n <= left - (len(parts) - i - 1):
            if 2 * g - 2 + n >= 1:
                acc.append(g)
                rec(i + 1, left - (2 * g - 2 + n), acc)
                acc.pop()
            g += 1

    rec(0, r, [])
    return out


def partition_volume_sum(r: int, q: int, parts, budget: int | None = None) -> QPiNumber:
    """sum over admissible genera of V_{g_1,n_1} ... V_{g_q,n_q}, exactly."""
    parts = tuple(parts)
    if len(parts) != q:
        raise DomainError(f"q = {q} but {len(parts)} boundary counts given")
    if q < 1 or r < 1 or any(n < 0 for n in parts):
        raise DomainError("need q >= 1, r >= 1 and n_i >= 0")
    total = ZERO
    for genera in admissible_genera(r, parts):
        term = QPiNumber.rational(1)
        for g, n in zip(genera, parts):
            term = term * volume_value(g, n, budget)
        total = total + term
    return total


def brute_force_partition_sum(r: int, q: int, parts, budget: int | None = None) -> QPiNumber:
    """Same sum by scanning every genus tuple in a box; an oracle for tests."""
    parts = tuple(parts)
    total = ZERO
    for genera in product(range(r // 2 + 2), repeat=q):
        chis = [2 * g - 2 + n for g, n in zip(genera, parts)]
        if all(c >= 1 for c in chis) and sum(chis) == r:
            term = QPiNumber.rational(1)
            for g, n in zip(genera, parts):
                term = term * volume_value(g, n, budget)
            total = total + term
    return total


def wr_pair_sum(r: int, m0: int = 1, budget: int | None = None) -> QPiNumber:
    """sum_{m=m0}^{floor(r/2)} W_m W_{r-m}."""
    total = ZERO
    for m in range(m0, r // 2 + 1):
        total = total + w_r(m, budget) * w_r(r - m, budget)
    return total


def verify_sum_vol_bound(
    r_range, q: int, parts, m0: int = 1, precision: int = DEFAULT_PRECISION, budget: int | None = None
) -> VerifierReport:
    """Empirical ratios behind the partition-sum bounds (all trend rows).

    * ``sum-vol``: LHS / W_r, with r^{q-1} LHS / W_r in the ``scaled`` field;
    * ``wr-prop``: r^{m0} sum W_m W_{r-m} / W_r;
    * ``one-over-g``: for r = 2g-2-m, g^m LHS / V_g.
    The trend verdict asks LHS / W_r to be non-increasing over the r whose
    sum is not empty (parity can make it empty, e.g. two one-boundary
    pieces never add up to an odd r).
    """
    report = VerifierReport("sum-vol")
    dps = precision + GUARD_DIGITS
    ratios = []
    with mpmath.workdps(dps):
        for r in r_range:
            if not _w_in_budget(r, budget):
                report.notes.append(f"r={r} skipped: W_r outside the exact budget")
                continue
            w = qpi_eval(w_r(r, budget), dps)
            pair = qpi_eval(wr_pair_sum(r, m0, budget), dps)
            report.add(f"wr-prop r={r} m0={m0}", pair, w, pair * mpmath.mpf(r) ** m0 / w, TREND)
            if not admissible_genera(r, parts):
                report.notes.append(f"r={r}: no admissible genera")
                continue
            lhs = qpi_eval(partition_volume_sum(r, q, parts, budget), dps)
            ratios.append(lhs / w)
            scaled = lhs / w * mpmath.mpf(r) ** (q - 1)
            report.add(f"sum-vol r={r} q={q} parts={'/'.join(map(str, parts))}", lhs, w, lhs / w, TREND, scaled=scaled)
            for g in range(2, r + 3):
                m = 2 * g - 2 - r
                if m < 1 or g < m + 1 or not in_budget(g, 0, budget):
                    continue
                vg = qpi_eval(volume_value(g, 0, budget), dps)
                report.add(f"one-over-g g={g} m={m}", lhs, vg, lhs * mpmath.mpf(g) ** m / vg, TREND)
    report.trend_ok = bool(ratios) and monotone(ratios, decreasing=True)
    return report


def _w_in_budget(r: int, budget: int | None = None) -> bool:
    if r % 2 == 0:
        return in_budget(r // 2 + 1, 0, budget)
    return in_budget((r + 1) // 2, 1, budget)
