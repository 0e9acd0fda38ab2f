import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wpmoduli.errors import DomainError
from wpmoduli.expectations import ThresholdProfile, threshold_L
from wpmoduli.geometry import (
    DEFAULT_SUP_CONSTANT,
    Cylinder,
    Window,
    cheeger_h1_window,
    chi_union_bounds,
    collar_theta,
    collar_theta_secant,
    collar_width,
    cylinder_area,
    cylinder_outer_length,
    expected_l1_window,
    ext_systole_window,
    half_collar_arc,
    half_collar_width_threshold,
    l1_sup_bound,
    lambda1_ratio_window,
    maskit_window,
    threshold_windows,
)

P = 40
TOL = mpmath.mpf(10) ** (5 - P)


def test_collar_at_zero():
    assert collar_theta(0) == 0
    assert collar_theta_secant(0) == 0
    assert mpmath.cosh(0) == 1 / mpmath.cos(collar_theta(0))


@pytest.mark.parametrize("w", [0.1, 1, 5])
def test_collar_round_trip(w):
    with mpmath.workdps(P):
        assert abs(collar_width(collar_theta(w, P), P) - w) < TOL


@given(st.floats(0, 20))
def test_collar_identity(w):
    with mpmath.workdps(P):
        assert abs(collar_theta(w, P) - collar_theta_secant(w, P)) < TOL
        assert abs(mpmath.cosh(w) * mpmath.cos(collar_theta(w, P)) - 1) < TOL * mpmath.cosh(w)


def test_collar_domain():
    with pytest.raises(DomainError):
        collar_theta(-1)
    with pytest.raises(DomainError):
        collar_width(2)
    assert half_collar_arc(3) == 6


def test_cylinder():
    c = Cylinder(2, 0)
    assert cylinder_outer_length(c) == 2 and cylinder_area(c) == 0
    areas = [Cylinder(1, w).area for w in (0, 0.5, 1, 2, 4)]
    assert all(b > a for a, b in zip(areas, areas[1:]))
    with mpmath.workdps(30):
        a = Cylinder(2, 1).area, Cylinder(2, 1).outer_length
    with mpmath.workdps(60):
        b = Cylinder(2, 1).area, Cylinder(2, 1).outer_length
        assert abs(b[0] - 2 * mpmath.sinh(1)) < mpmath.mpf(10) ** -55
        assert abs(b[1] - 2 * mpmath.cosh(1)) < mpmath.mpf(10) ** -55
        assert abs(a[0] - b[0]) < mpmath.mpf(10) ** -28 and abs(a[1] - b[1]) < mpmath.mpf(10) ** -28
    with pytest.raises(DomainError):
        Cylinder(0, 1)
    with pytest.raises(DomainError):
        Cylinder(1, -1)


def test_maskit_window():
    assert maskit_window(1, 0).lower == 0
    ratios = [maskit_window(1, w).ratio for w in (1, 5, 10, 20, 40)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 2) < 1e-15
    a = maskit_window(1, 2, 30)
    with mpmath.workdps(60):
        b = maskit_window(1, 2, 60)
        assert abs(b.lower - 2 * (mpmath.atan(mpmath.exp(2)) - mpmath.pi / 4)) < mpmath.mpf(10) ** -55
        assert abs(a.lower - b.lower) < mpmath.mpf(10) ** -28
    with pytest.raises(DomainError):
        maskit_window(0, 1)


def test_chi_union_examples():
    assert (chi_union_bounds(1, 1, 0, 0).lower, chi_union_bounds(1, 1, 0, 0).upper) == (2, 2)
    w = chi_union_bounds(1, 3, 2 * mpmath.pi, 2 * mpmath.pi)
    assert (w.lower, w.upper) == (4, 6)


@given(st.floats(0.1, 50), st.floats(0, 1), st.floats(0, 1))
def test_one_handle_union_window(L, s, t):
    w = chi_union_bounds(1, 1, L * s, L * t)
    assert 2 <= w.lower and w.upper <= L / mpmath.pi + 2


@given(st.integers(1, 30), st.integers(1, 30), st.floats(0, 100), st.floats(0, 100))
def test_chi_union_lower(c1, c2, l1, l2):
    w = chi_union_bounds(c1, c2, l1, l2)
    assert w.lower == 1 + max(c1, c2) and isinstance(w.lower, int)


def test_chi_union_domain():
    with pytest.raises(DomainError):
        chi_union_bounds(0, 1, 0, 0)
    with pytest.raises(DomainError):
        chi_union_bounds(1, 1, -1, 0)


def test_window_rejects_inversion():
    with pytest.raises(DomainError):
        Window(2, 1)
    w = Window(1, 3)
    assert w.width == 2 and w.contains(2) and not w.contains(4)


def test_half_collar_threshold():
    with mpmath.workdps(40):
        g = mpmath.e**mpmath.e
        eps = mpmath.mpf("0.1")
        assert abs(half_collar_width_threshold(g, eps) - (mpmath.e / 2 - (mpmath.mpf(3) / 2 + eps))) < mpmath.mpf(10) ** -35
    for g in (10**4, 10**8):
        a = half_collar_width_threshold(g, 0.1)
        with mpmath.workdps(60):
            b = half_collar_width_threshold(g, mpmath.mpf(0.1))
            assert abs(a - b) < 1e-13
    with pytest.raises(DomainError):
        half_collar_width_threshold(100, 0)


def test_ext_systole_window():
    ratios = [ext_systole_window(100, e).ratio for e in (0.5, 0.1, 0.01, 1e-6)]
    assert all(b < a for a, b in zip(ratios, ratios[1:])) and abs(ratios[-1] - 2) < 1e-5
    with mpmath.workdps(40):
        w = ext_systole_window(10**6, mpmath.mpf("0.1"))
        lg = mpmath.log(10**6)
        assert abs(w.lower - mpmath.mpf("1.9") / mpmath.pi * lg) < mpmath.mpf(10) ** -35
        # L(g) / log g tends to 2, so the lower end is (2 - eps)/pi times L(g)/2 to leading order
        big = 10**400
        lead = threshold_L(ThresholdProfile(big, 1)) / mpmath.log(big)
        assert abs(ext_systole_window(big, mpmath.mpf("0.1")).lower / ((2 - mpmath.mpf("0.1")) / mpmath.pi * lead / 2 * mpmath.log(big)) - 1) < 0.02
    with pytest.raises(DomainError):
        ext_systole_window(100, 0)


def test_cheeger_and_lambda_windows():
    with mpmath.workdps(40):
        for eps in (mpmath.mpf("0.1"), mpmath.mpf("0.001")):
            w = cheeger_h1_window(10**4, eps)
            assert abs(w.width - eps * mpmath.log(10**4) / mpmath.pi) < mpmath.mpf(10) ** -35
        eps = mpmath.mpf("0.1")
        for g in (10**4, 10**9):
            w = lambda1_ratio_window(g, eps)
            assert abs(w.lower / w.upper - mpmath.mpf("0.001") / ((1 + eps) * mpmath.mpf("0.125"))) < mpmath.mpf(10) ** -35
    with pytest.raises(DomainError):
        cheeger_h1_window(100, 0)
    with pytest.raises(DomainError):
        lambda1_ratio_window(2, 0.1)


def test_sup_bound():
    assert DEFAULT_SUP_CONSTANT == 8
    with mpmath.workdps(30):
        assert abs(l1_sup_bound(100, 6) - 3 * l1_sup_bound(100, 2)) < mpmath.mpf(10) ** -25
        assert abs(l1_sup_bound(10**6) - 8 * mpmath.log(10**6)) < mpmath.mpf(10) ** -25
    with pytest.raises(DomainError):
        l1_sup_bound(100, 0)


def test_expected_l1_window():
    with mpmath.workdps(30):
        g = 10**6
        lg = mpmath.log(g)
        w = expected_l1_window(g, 1, mpmath.mpf(1))
        assert abs(w.lower - (2 * lg - 4 * mpmath.log(lg) - 1) / lg) < mpmath.mpf(10) ** -25
        half = expected_l1_window(g, mpmath.mpf("0.5"), mpmath.mpf(1))
        assert abs(half.upper - ((2 * lg - 4 * mpmath.log(lg) + 1) / lg / 2 + 4)) < mpmath.mpf(10) ** -25
    with pytest.raises(DomainError):
        expected_l1_window(100, 2, 1)


def test_threshold_windows_table():
    names = [n for n, _ in threshold_windows(10**6, 0.1)]
    assert len(names) == len(set(names)) == 7
    for _, w in threshold_windows(10**6, 0.1):
        assert w.lower <= w.upper
