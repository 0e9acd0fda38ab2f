import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from wpmoduli.errors import DomainError
from wpmoduli.mcshane import (
    D_LIMIT_X0,
    MONOTONICITY,
    R_LIMIT_Z0_OVER_X,
    count_bound_pants_neighbors,
    d_func,
    d_func_direct,
    first_bound,
    log1p_half_gap,
    r_derivative_numerator_residual,
    r_func,
    r_func_direct,
    r_log1p_residual,
    second_bound,
    sinh_addition_residual,
    sinh_sum_residual,
    x_over_r_bound,
    z2_branch_bound,
)

P = 50
TOL = mpmath.mpf(10) ** (5 - P)
FUNCS = {"D": d_func, "R": r_func}

pos = st.floats(1e-3, 30, allow_nan=False)


def test_limits():
    tiny = mpmath.mpf(10) ** -30
    assert abs(d_func(tiny, 2, 3, P) - D_LIMIT_X0) < mpmath.mpf(10) ** -29
    with mpmath.workdps(P):
        assert abs(r_func(2, 1, tiny, P) / 2 - R_LIMIT_Z0_OVER_X) < mpmath.mpf(10) ** -29
        assert abs(count_bound_pants_neighbors(3, 2, tiny, P) - 1) < mpmath.mpf(10) ** -29


def test_d_symmetric_in_last_two():
    assert d_func(1, 2, 3, P) == d_func(1, 3, 2, P)


def test_d_at_doubled_precision():
    a = d_func(2, 1, 1, 30)
    with mpmath.workdps(60):
        b = d_func(2, 1, 1, 60)
        # cross-check against the raw formula as well
        e = mpmath.exp(1)
        raw = 2 * mpmath.log((e + e) / (mpmath.exp(-1) + e))
        assert abs(a - b) < mpmath.mpf(10) ** -29
        assert abs(b - raw) < mpmath.mpf(10) ** -55


def test_r_monotone_examples():
    assert r_func(1, 1, 2) > r_func(1, 1, 3)
    assert r_func(1, 2, 1) < r_func(1, 3, 1)


def test_bound_branches():
    assert second_bound(1, 1, 3) is None
    with mpmath.workdps(40):
        assert abs(x_over_r_bound(1, 1, 3, 40) - first_bound(1, 1, 3)) < mpmath.mpf(10) ** -35
    with mpmath.workdps(40):
        ref = min(100 * 2 * (1 + mpmath.exp(-0.5)), mpmath.mpf(1000))
        assert abs(x_over_r_bound(1, 1, 1, 40) - ref) < mpmath.mpf(10) ** -35


def test_count_bound_examples():
    a = count_bound_pants_neighbors(10, 10, 10, 30)
    with mpmath.workdps(60):
        b = count_bound_pants_neighbors(10, 10, 10, 60)
        assert a > 0 and abs(a - b) < mpmath.mpf(10) ** -28
    vals = [count_bound_pants_neighbors(4, 3, L) for L in (0.5, 1, 2, 5, 10, 20, 40)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_nonpositive_rejected(bad):
    with pytest.raises(DomainError):
        d_func(*bad)
    with pytest.raises(DomainError):
        r_func(*bad)
    with pytest.raises(DomainError):
        x_over_r_bound(*bad)


@given(pos, pos, pos)
def test_stable_forms_match_displayed_forms(x, y, z):
    with mpmath.workdps(P):
        d1, d2 = d_func(x, y, z, P), d_func_direct(x, y, z, P + 40)
        r1, r2 = r_func(x, y, z, P), r_func_direct(x, y, z, P + 40)
        assert abs(d1 - d2) <= TOL * abs(d2)
        assert abs(r1 - r2) <= TOL * abs(r2)


@given(pos, pos, pos)
def test_positive_and_d_below_2x(x, y, z):
    with mpmath.workdps(P):
        d = d_func(x, y, z, P)
        assert d > 0 and r_func(x, y, z, P) > 0
        assert d < 2 * mpmath.mpf(x)


@given(pos, pos, pos, st.floats(1e-3, 5), st.sampled_from(MONOTONICITY))
def test_monotonicity_claims(x, y, z, step, claim):
    name, idx, sign = claim
    args = [x, y, z]
    moved = list(args)
    moved[idx] += step
    with mpmath.workdps(P):
        a, b = FUNCS[name](*args, P), FUNCS[name](*moved, P)
        assert sign * (b - a) >= -TOL * abs(a)


@given(pos, pos, pos)
def test_x_over_r_bound_holds(x, y, z):
    with mpmath.workdps(P):
        assert mpmath.mpf(x) / r_func(x, y, z, P) <= x_over_r_bound(x, y, z, P) * (1 + TOL)


@given(st.floats(0.1, 50), st.floats(0, 1))
def test_z2_branch_below_2000(L, t):
    assert z2_branch_bound(2 * L * t, L) < 2000


@given(st.floats(-20, 20), st.floats(-20, 20))
def test_sinh_identities(a, b):
    with mpmath.workdps(P):
        scale = mpmath.cosh(abs(a) + abs(b))
        assert abs(sinh_addition_residual(a, b)) <= TOL * scale
        assert abs(sinh_sum_residual(a, b)) <= TOL * scale


@given(pos, pos, pos)
def test_r_rewrites(x, y, z):
    assume(x + y + z < 60)
    with mpmath.workdps(P + 20):
        scale = mpmath.cosh((x + y + z) / 2) ** 2
        assert abs(r_derivative_numerator_residual(x, y, z)) <= TOL * scale
        assert abs(r_log1p_residual(x, y, z)) <= TOL * (1 + r_func(x, y, z, P))


@given(st.floats(1e-6, 1))
def test_log1p_half_gap_nonnegative(t):
    assert log1p_half_gap(t) >= 0
