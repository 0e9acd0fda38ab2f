"""One verifier per lemma id, each returning a :class:`VerifierReport`.

``pass``/``fail`` rows are reserved for inequalities with explicit
constants; rows resting on an unknown constant are ``trend`` rows and feed
the report's ``trend_ok`` flag instead.
"""

from __future__ import annotations

import random

import mpmath

from . import expectations as ex
from . import geometry as geo
from . import mcshane as mc
from .errors import DomainError
from .exactring import DEFAULT_PRECISION, GUARD_DIGITS
from .reports import FAIL, PASS, TREND, VERIFY_COLUMNS, VerifierReport, monotone
from .volumes import default_cache, in_budget, verify_sandwich, verify_sinh_upper, verify_sum_vol_bound, verify_volume_ratios

DEFAULT_SWEEP = (10**2, 10**3, 10**4, 10**5, 10**6)
SCALED_COLUMNS = VERIFY_COLUMNS + ("scaled",)


def _tol(precision: int) -> mpmath.mpf:
    return mpmath.mpf(10) ** (5 - precision)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def bounded_trend(ratios, shapes, share=mpmath.mpf("0.1")) -> bool:
    """True when value/shape grows far less than the shape itself moves.

    Boundedness cannot be decided from finitely many points; this asks the
    growth of the ratio above its first value to stay under ``share`` of the
    spread of log(shape).  A ratio that falls is consistent with an upper
    bound of the given shape.
    """
    ratios = [mpmath.mpf(r) for r in ratios]
    shapes = [mpmath.mpf(s) for s in shapes]
    if len(ratios) < 2 or min(ratios) <= 0:
        return False
    growth = mpmath.log(max(ratios) / ratios[0])
    scale = mpmath.log(max(shapes) / min(shapes))
    return bool(growth <= share * scale)


def parse_sweep(text: str | None, default=DEFAULT_SWEEP) -> list[int]:
    """'100:1e6' gives the powers of ten in range; 'a,b,c' an explicit list."""
    if not text:
        return list(default)
    if "," in text:
        return [int(float(t)) for t in text.split(",")]
    if ":" in text:
        a, b = (int(float(t)) for t in text.split(":"))
        if a < 1 or b < a:
            raise DomainError(f"bad sweep {text!r}")
        out, v = [], 1
        while v <= b:
            if v >= a:
                out.append(v)
            v *= 10
        return out
    return [int(float(text))]


# expectations ---------------------------------------------------------------------


def verify_expected_count(genera=None, omega_choice=ex.DEFAULT_OMEGA, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    """(1,1) and (0,3) counts against their leading terms.

    Asymptotic rows at L = 2 log g - 4 log log g - omega carry the
    e^{-omega/2}-scaled value; exact rows at g = 3..5 and L = 8, 10, 12.
    """
    report = VerifierReport("E[N]", columns=SCALED_COLUMNS)
    devs = []
    for g in genera or DEFAULT_SWEEP:
        prof = ex.ThresholdProfile(g, -1, omega_choice)
        L = ex.threshold_L(prof)
        damp = mpmath.exp(-prof.omega_value() / 2)
        for name, split in (("n11", ex.TopologySplit.one_handle(g)), ("n03", ex.TopologySplit.pants(g))):
            res = ex.expected_count(split, L, ex.ASYMPTOTIC, precision)
            report.add(f"{name} g={g} L={mpmath.nstr(L, 8)} asymptotic", res.value, res.leading_term, res.ratio, TREND, scaled=res.value / damp)
            if name == "n11":
                devs.append(abs(res.ratio - 1))
    for g in range(3, 6):
        if not in_budget(g, 0) or not in_budget(g - 1, 1):
            continue
        for L in (8, 10, 12):
            res = ex.expected_count(ex.TopologySplit.one_handle(g), L, ex.EXACT, precision)
            report.add(f"n11 g={g} L={L} exact", res.value, res.leading_term, res.ratio, TREND)
    report.trend_ok = monotone(devs, decreasing=True, strict=True)
    report.notes.append("trend: |ratio - 1| of the one-handle count should shrink along the sweep")
    return report


def verify_pair_disjoint(genera=None, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("E[Y]")
    devs = []
    for g in genera or (10**4, 10**5, 10**6, 10**7, 10**8):
        L = 2 * mpmath.log(g) - 4 * mpmath.log(mpmath.log(g))
        res = ex.expected_pair_disjoint(g, L, ex.ASYMPTOTIC, precision)
        devs.append(abs(res.ratio - 1))
        report.add(f"g={g} L={mpmath.nstr(L, 8)} asymptotic", res.value, res.leading_term, res.ratio, TREND)
    for g in (3, 4):
        for L in (1, 5, 10):
            res = ex.expected_pair_disjoint(g, L, ex.EXACT, precision)
            report.add(f"g={g} L={L} exact", res.value, res.leading_term, res.ratio, TREND)
    report.trend_ok = monotone(devs, decreasing=True, strict=True)
    report.notes.append("trend: |E[Y] / leading_n11^2 - 1| should shrink in g")
    return report


def _z_shapes(g, L):
    L = mpmath.mpf(L)
    g2 = mpmath.mpf(g) ** 2
    return L**6 * mpmath.exp(mpmath.mpf("0.95") * L) / g2, L**3 * mpmath.exp(L) / g2


def verify_z_star(genera=None, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    """Z1*, Z2* bounds against L^6 e^{0.95L}/g^2 and L^3 e^L/g^2.

    Rows along the sweep at the plus threshold, then two functional-form
    sweeps: g at fixed L, and L at fixed g.
    """
    report = VerifierReport("Z*")
    genera = list(genera or DEFAULT_SWEEP)
    for g in genera:
        L = ex.threshold_L(ex.ThresholdProfile(g, 1))
        z1, z2 = ex.z_star_bounds(g, L, precision)
        s1, s2 = _z_shapes(g, L)
        report.add(f"z1 g={g} L={mpmath.nstr(L, 8)}", z1, s1, z1 / s1, TREND)
        report.add(f"z2 g={g} L={mpmath.nstr(L, 8)}", z2, s2, z2 / s2, TREND)
    ok = True
    sweeps = [("fixed L=20", [(g, 20) for g in genera]), (f"fixed g={genera[-1]}", [(genera[-1], L) for L in (10, 20, 40, 80)])]
    for label, points in sweeps:
        r1, r2, h1, h2 = [], [], [], []
        for g, L in points:
            z1, z2 = ex.z_star_bounds(g, L, precision)
            s1, s2 = _z_shapes(g, L)
            r1.append(z1 / s1)
            r2.append(z2 / s2)
            h1.append(s1)
            h2.append(s2)
            report.add(f"z1 {label} g={g} L={L}", z1, s1, z1 / s1, TREND)
            report.add(f"z2 {label} g={g} L={L}", z2, s2, z2 / s2, TREND)
        ok &= bounded_trend(r1, h1) and bounded_trend(r2, h2)
    for L in (10, 20, 40):
        worst = max(mc.z2_branch_bound(mpmath.mpf(L) * 2 * i / 200, L) for i in range(201))
        report.add(f"z2-branch L={L} x<=2L", worst, mc.Z2_BRANCH_CONSTANT, worst / mc.Z2_BRANCH_CONSTANT, _status(worst < mc.Z2_BRANCH_CONSTANT))
    report.trend_ok = ok
    return report


def verify_chi_eq_m(genera=None, ms=(2, 3, 4), precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("sum-chi-eq-m")
    ok = True
    genera = list(genera or (10**3, 10**4, 10**5, 10**6))
    for m in ms:
        ratios, shapes = [], []
        for g in genera:
            L = mpmath.log(g)
            v = ex.sum_expected_chi_eq_m(g, L, m, ex.ASYMPTOTIC, precision)
            shape = (1 + L ** (3 * m - 1)) * mpmath.exp(L / 2) / mpmath.mpf(g) ** m
            ratios.append(v / shape)
            shapes.append(shape)
            report.add(f"m={m} g={g} L=log g", v, shape, v / shape, TREND)
        ok &= bounded_trend(ratios, shapes)
    # |chi| = 1 is exactly the one-handle and pants splits
    g, L = 4, 5
    with mpmath.workdps(precision + GUARD_DIGITS):
        total = ex.sum_expected_chi_eq_m(g, L, 1, ex.EXACT, precision + GUARD_DIGITS)
        parts = sum(ex.expected_count(s, L, ex.EXACT, precision + GUARD_DIGITS).value for s in (ex.TopologySplit.one_handle(g), ex.TopologySplit.pants(g)))
        rel = total / parts
    report.add("m=1 g=4 L=5 exact split sum", total, parts, rel, _status(abs(rel - 1) <= _tol(precision)))
    report.trend_ok = ok
    return report


def verify_chi_ge_m(genera=None, L=10, ms=(2, 3), precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("sum-chi-ge-m")
    for Lk in (1, 5, 10, 20):
        with mpmath.workdps(precision + GUARD_DIGITS):
            s = mpmath.nsum(lambda k: mpmath.mpf(Lk) ** (2 * k) / (mpmath.factorial(k) * mpmath.factorial(2 * k)), [1, mpmath.inf])
            e = mpmath.exp(Lk)
        report.add(f"k-series L={Lk}", s, e, s / e, _status(s <= e))
    ok = True
    genera = list(genera or (10**2, 10**3, 10**4, 10**5, 10**6))
    for m in ms:
        vals = []
        for g in genera:
            v = ex.sum_expected_chi_ge_m(g, L, m, precision)
            scaled = v * mpmath.mpf(g) ** m
            vals.append(scaled)
            report.add(f"m={m} g={g} L={L}", v, mpmath.mpf(g) ** -m, scaled, TREND)
        ok &= bounded_trend(vals, [mpmath.mpf(g) ** m for g in genera])
    report.trend_ok = ok
    return report


def verify_prob_l1(genera=None, omega_choice=ex.DEFAULT_OMEGA, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("prob-L1", columns=SCALED_COLUMNS)
    totals = []
    for g in genera or DEFAULT_SWEEP:
        prof = ex.ThresholdProfile(g, -1, omega_choice)
        terms = ex.prob_upper_L1_terms(g, prof, precision)
        damp = mpmath.exp(-prof.omega_value() / 2)
        totals.append(terms["total"])
        report.add(f"g={g} total", terms["total"], 1, terms["total"], TREND)
        report.add(f"g={g} m=1", terms["m=1"], terms["total"], terms["m=1"] / terms["total"], TREND, scaled=terms["m=1"] / damp)
    report.trend_ok = monotone(totals, decreasing=True, strict=True)
    report.notes.append("trend: the bound should decrease along the sweep")
    return report


def verify_prob_no_short_handle(genera=None, omega_choice=ex.DEFAULT_OMEGA, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("prob-N*=0")
    totals = []
    for g in genera or (10**3, 10**4, 10**5, 10**6, 10**7, 10**8):
        terms = ex.prob_no_short_handle_terms(g, ex.ThresholdProfile(g, 1, omega_choice), precision)
        totals.append(terms["total"])
        for key in ("term1", "term2", "term3"):
            report.add(f"g={g} {key}", terms[key], terms["total"], terms[key] / terms["total"], TREND)
        report.add(f"g={g} total", terms["total"], 1, terms["total"], TREND)
    report.trend_ok = monotone(totals, decreasing=True, strict=True)
    report.notes.append("trend: the bound should decrease along the sweep")
    return report


# volumes ---------------------------------------------------------------------------


def verify_wr_prop(r_range=range(2, 13), m0: int = 1, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    full = verify_sum_vol_bound(r_range, 1, (1,), m0, precision)
    report = VerifierReport("wr-prop", notes=[n for n in full.notes if "W_r" in n])
    ratios = []
    for row in full.rows:
        if row["inputs"].startswith("wr-prop"):
            report.rows.append(dict(row, lemma="wr-prop"))
            ratios.append(row["ratio"])
    report.trend_ok = bool(ratios) and max(ratios) / min(ratios) < 10
    report.notes.append("trend: r^m0 sum W_m W_(r-m) / W_r should stay bounded")
    return report


# McShane -------------------------------------------------------------------------------


def _octant(rng: random.Random, high: float = 20.0) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    return tuple(mpmath.mpf(rng.uniform(0.01, high)) for _ in range(3))


def verify_mcshane_monotone(points: int = 1000, seed: int = 0, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("mcshane-monotone")
    rng = random.Random(seed)
    tol = _tol(precision)
    funcs = {"R": mc.r_func, "D": mc.d_func}
    sample = [(_octant(rng), rng.uniform(0.01, 5.0)) for _ in range(points)]
    with mpmath.workdps(precision + GUARD_DIGITS):
        pos = all(mc.r_func(*p, precision=precision) > 0 and mc.d_func(*p, precision=precision) > 0 for p, _ in sample)
        report.add(f"positivity points={points}", None, None, None, _status(pos))
        worst = max(mc.d_func(*p, precision=precision) / (2 * p[0]) for p, _ in sample)
        report.add(f"D < 2x points={points}", worst, 1, worst, _status(worst < 1))
        for name, idx, sign in mc.MONOTONICITY:
            f = funcs[name]
            ok = True
            for p, h in sample:
                q = list(p)
                q[idx] += mpmath.mpf(h)
                a, b = f(*p, precision=precision), f(*q, precision=precision)
                ok &= sign * (b - a) >= -tol * abs(a)
            word = "increasing" if sign > 0 else "decreasing"
            report.add(f"{name} {word} in {'xyz'[idx]} points={points}", None, None, None, _status(ok))
    return report


def verify_x_over_r(points: int = 1000, seed: int = 1, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("x-over-r")
    rng = random.Random(seed)
    tol = _tol(precision)
    worst_r = worst_d = worst_2 = mpmath.mpf(0)
    ok_r = ok_d = ok_2 = True
    with mpmath.workdps(precision + GUARD_DIGITS):
        for _ in range(points):
            x, y, z = _octant(rng)
            xr = x / mc.r_func(x, y, z, precision)
            b1 = mc.first_bound(x, y, z)
            worst_r = max(worst_r, xr / b1)
            ok_r &= xr <= b1 * (1 + tol)
            b2 = mc.second_bound(x, y, z)
            if b2 is not None:
                worst_2 = max(worst_2, xr / b2)
                ok_2 &= xr <= b2 * (1 + tol)
            xd = x / mc.d_func(x, y, z, precision)
            bd = mc.x_over_d_bound(x, y, z, precision)
            worst_d = max(worst_d, xd / bd)
            ok_d &= xd <= bd * (1 + tol)
        report.add(f"x/R <= 100(1+x)(1+e^(z/2)e^(-(x+y)/2)) points={points}", worst_r, 1, worst_r, _status(ok_r))
        report.add(f"x/R <= 500+500x/(x+y-z) when x+y>z points={points}", worst_2, 1, worst_2, _status(ok_2))
        report.add(f"x/D <= 100(1+x)(1+e^((y+z)/2)e^(-x/2)) points={points}", worst_d, 1, worst_d, _status(ok_d))
        # the branch used for Z2*: z = L and 1.9L < x + y <= 2L
        ok_b, worst_b = True, mpmath.mpf(0)
        for _ in range(points):
            L = mpmath.mpf(rng.uniform(1.0, 40.0))
            s = L * mpmath.mpf(rng.uniform(1.9, 2.0))
            x = s * mpmath.mpf(rng.uniform(0.0, 1.0))
            if x <= 0:
                continue
            y = s - x
            if y <= 0:
                continue
            xr = x / mc.r_func(x, y, L, precision)
            worst_b = max(worst_b, xr)
            ok_b &= xr < mc.Z2_BRANCH_CONSTANT
        report.add(f"x/R < 2000 on 1.9L < x+y <= 2L points={points}", worst_b, mc.Z2_BRANCH_CONSTANT, worst_b / mc.Z2_BRANCH_CONSTANT, _status(ok_b))
    return report


# geometry --------------------------------------------------------------------------------


def verify_collar_identity(points: int = 1000, high: float = 20.0, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("collar-identity")
    tol = _tol(precision)
    worst_sec = worst_two = worst_trip = mpmath.mpf(0)
    with mpmath.workdps(precision + GUARD_DIGITS):
        for i in range(points):
            w = mpmath.mpf(high) * i / (points - 1)
            # theta near pi/2 amplifies its own rounding by cosh(w), so carry the guard digits
            th = geo.collar_theta(w, precision + GUARD_DIGITS)
            worst_sec = max(worst_sec, abs(mpmath.cosh(w) * mpmath.cos(th) - 1))
            worst_two = max(worst_two, abs(th - geo.collar_theta_secant(w, precision + GUARD_DIGITS)))
            if th < mpmath.pi / 2:
                worst_trip = max(worst_trip, abs(geo.collar_width(th, precision + GUARD_DIGITS) - w) / max(w, 1))
    report.add(f"cosh(w) cos(theta) = 1 points={points}", worst_sec, tol, worst_sec / tol, _status(worst_sec <= tol))
    report.add(f"arctan form = arccos form points={points}", worst_two, tol, worst_two / tol, _status(worst_two <= tol))
    report.add(f"width round trip points={points}", worst_trip, tol, worst_trip / tol, _status(worst_trip <= tol))
    return report


def verify_maskit(precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("maskit")
    ratios = []
    for w in (0, 1, 2, 5, 10, 20, 40):
        win = geo.maskit_window(1, w, precision)
        report.add(f"ext=1 w={w} lower<=upper", win.lower, win.upper, None, _status(win.lower <= win.upper))
        if win.lower > 0:
            ratios.append(win.ratio)
            report.add(f"ext=1 w={w} upper/lower", win.upper, win.lower, win.ratio, TREND)
    report.trend_ok = monotone(ratios, decreasing=True) and abs(ratios[-1] - 2) < mpmath.mpf(10) ** -15
    report.notes.append("trend: upper/lower decreases to 2")
    return report


def verify_chi_union(max_chi: int = 8, precision: int = DEFAULT_PRECISION) -> VerifierReport:
    report = VerifierReport("chi-union")
    ok_low = ok_order = True
    count = 0
    for c1 in range(1, max_chi + 1):
        for c2 in range(1, max_chi + 1):
            for l1, l2 in ((0, 0), (1, 2), (2 * mpmath.pi, 2 * mpmath.pi), (10, 3)):
                win = geo.chi_union_bounds(c1, c2, l1, l2)
                ok_low &= win.lower >= 1 + max(c1, c2)
                ok_order &= win.lower <= win.upper
                count += 1
    report.add(f"lower >= 1 + max cases={count}", None, None, None, _status(ok_low))
    report.add(f"lower <= upper cases={count}", None, None, None, _status(ok_order))
    return report


# registry ----------------------------------------------------------------------------------


def _sandwich(samples: int = 100, precision: int = DEFAULT_PRECISION, **_):
    return verify_sandwich(samples=samples, precision=precision)


def _sinh(samples: int = 100, precision: int = DEFAULT_PRECISION, **_):
    return verify_sinh_upper(samples=samples, precision=precision)


def _vol_ratios(precision: int = DEFAULT_PRECISION, **_):
    return verify_volume_ratios(precision=precision)


def _sum_vol(r_range=None, q: int = 2, parts=None, precision: int = DEFAULT_PRECISION, **_):
    parts = tuple(parts) if parts else (1,) * q
    budget = default_cache().budget
    r_range = r_range or range(2, budget // 3 * 2 + 1)
    return verify_sum_vol_bound(r_range, q, parts, precision=precision)


LEMMAS = {
    "E[N]": lambda genera=None, omega=ex.DEFAULT_OMEGA, precision=DEFAULT_PRECISION, **_: verify_expected_count(genera, omega, precision),
    "E[Y]": lambda genera=None, precision=DEFAULT_PRECISION, **_: verify_pair_disjoint(genera, precision),
    "Z*": lambda genera=None, precision=DEFAULT_PRECISION, **_: verify_z_star(genera, precision),
    "sum-chi-eq-m": lambda genera=None, precision=DEFAULT_PRECISION, **_: verify_chi_eq_m(genera, precision=precision),
    "sum-chi-ge-m": lambda genera=None, precision=DEFAULT_PRECISION, **_: verify_chi_ge_m(genera, precision=precision),
    "prob-L1": lambda genera=None, omega=ex.DEFAULT_OMEGA, precision=DEFAULT_PRECISION, **_: verify_prob_l1(genera, omega, precision),
    "prob-N*=0": lambda genera=None, omega=ex.DEFAULT_OMEGA, precision=DEFAULT_PRECISION, **_: verify_prob_no_short_handle(genera, omega, precision),
    "vol-sandwich": _sandwich,
    "sinh-upper": _sinh,
    "vol-ratios": _vol_ratios,
    "sum-vol": _sum_vol,
    "wr-prop": lambda r_range=None, precision=DEFAULT_PRECISION, **_: verify_wr_prop(r_range or range(2, 13), precision=precision),
    "mcshane-monotone": lambda points=1000, precision=DEFAULT_PRECISION, **_: verify_mcshane_monotone(points, precision=precision),
    "x-over-r": lambda points=1000, precision=DEFAULT_PRECISION, **_: verify_x_over_r(points, precision=precision),
    "collar-identity": lambda points=1000, precision=DEFAULT_PRECISION, **_: verify_collar_identity(points, precision=precision),
    "maskit": lambda precision=DEFAULT_PRECISION, **_: verify_maskit(precision),
    "chi-union": lambda precision=DEFAULT_PRECISION, **_: verify_chi_union(precision=precision),
}


def run(lemma: str, **params) -> VerifierReport:
    if lemma not in LEMMAS:
        raise DomainError(f"unknown lemma id {lemma!r}; known: {', '.join(LEMMAS)}")
    return LEMMAS[lemma](**params)


__all__ = ["LEMMAS", "bounded_trend", "parse_sweep", "run"]
