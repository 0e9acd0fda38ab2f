from fractions import Fraction
import math
from math import comb

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cube_quad
from wpmoduli.exactring import QPiNumber
from wpmoduli.integrals import (
    ExpPoly,
    box_exp,
    box_monomial,
    dirichlet,
    inverse_laplace,
    laplace_simplex,
    scale_argument,
    sinh_sign_patterns,
)

rates = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(3, 2)])


def _iterated(exps):
    """int_{x >= 0, sum x <= L} prod x_i^{a_i} dx, peeled one variable at a time.

    Keeps the inner integral as a polynomial in L and expands (L - x)^p
    binomially, so no Beta-function identity is involved.
    """
    f = [Fraction(1)]
    for a in exps:
        new = [Fraction(0)] * (len(f) + a + 1)
        for p, c in enumerate(f):
            for k in range(p + 1):
                new[p + a + 1] += c * comb(p, k) * (-1) ** k / (a + k + 1)
        f = new
    return {i: v for i, v in enumerate(f) if v}


@given(st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_dirichlet_matches_iterated_integration(exps):
    c, p = dirichlet(exps)
    assert _iterated(exps) == {p: c}


def test_dirichlet_small_cases():
    assert dirichlet([0]) == (Fraction(1), 1)
    assert dirichlet([1, 1]) == (Fraction(1, 24), 4)
    assert box_monomial(3) == (Fraction(1, 4), 4)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=3))
def test_laplace_route_reproduces_dirichlet(exps):
    c, p = dirichlet(exps)
    assert laplace_simplex(exps, [0] * len(exps)) == ExpPoly({(0, p): QPiNumber.rational(c)})


@settings(max_examples=25)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=3), st.data(), st.floats(0.1, 12))
def test_laplace_simplex_against_quadrature(exps, data, L):
    mus = [data.draw(rates) for _ in exps]
    got = float(laplace_simplex(exps, mus).evaluate(L, 30))
    q = len(exps)

    def f(*u):
        # map the unit cube onto the simplex of size L
        x, left, jac = [], L, 1.0
        for ui in u:
            xi = left * ui
            jac *= left
            x.append(xi)
            left -= xi
        out = jac
        for xi, a, mu in zip(x, exps, mus):
            out *= xi**a * math.exp(float(mu) * xi)
        return out

    ref, _ = cube_quad(f, q)
    assert got == pytest.approx(ref, rel=1e-9, abs=1e-300)


def test_box_exp_closed_form():
    # int_0^L x e^{x/2} = 2 L e^{L/2} - 4 e^{L/2} + 4
    with mpmath.workdps(40):
        L = mpmath.mpf(3)
        ref = 2 * L * mpmath.exp(L / 2) - 4 * mpmath.exp(L / 2) + 4
        assert abs(box_exp(1, Fraction(1, 2)).evaluate(L, 40) - ref) < mpmath.mpf(10) ** -35


def test_inverse_laplace_simple_poles():
    # 1/((s-1)(s+1)) -> (e^L - e^{-L})/2
    out = dict(inverse_laplace(((Fraction(-1), 1), (Fraction(1), 1))))
    assert out == {(Fraction(-1), 0): Fraction(-1, 2), (Fraction(1), 0): Fraction(1, 2)}
    # 1/s^3 -> L^2/2
    assert dict(inverse_laplace(((Fraction(0), 3),))) == {(Fraction(0), 2): Fraction(1, 2)}


def test_exppoly_algebra():
    a = ExpPoly({(Fraction(1, 2), 1): 2})
    b = ExpPoly({(Fraction(0), 2): 3, (Fraction(1, 2), 1): -2})
    assert (a + b) == ExpPoly({(0, 2): 3})
    assert (a * a) == ExpPoly({(1, 2): 4})
    assert a.scale(0).is_zero()
    assert ExpPoly().evaluate(5) == 0
    with mpmath.workdps(30):
        assert abs(scale_argument(a, 2).evaluate(1) - a.evaluate(2)) < mpmath.mpf(10) ** -25


def test_evaluate_survives_cancellation():
    # e^{L/2} - (1 + L/2 + ... ) leaves a tiny value at small L
    terms = {(Fraction(1, 2), 0): 1}
    for j in range(8):
        terms[(Fraction(0), j)] = -QPiNumber.rational(Fraction(1, 2**j * int(mpmath.factorial(j))))
    f = ExpPoly(terms)
    with mpmath.workdps(60):
        L = mpmath.mpf("0.01")
        ref = mpmath.exp(L / 2) - mpmath.fsum((L / 2) ** j / mpmath.factorial(j) for j in range(8))
        got = f.evaluate(L, 30)
        assert abs(got / ref - 1) < mpmath.mpf(10) ** -28


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_sinh_patterns_expand_the_product(exps):
    # weights are signed binomial counts of prod (e^{x/2} - e^{-x/2}): they sum to
    # zero, there is one pattern per minus-count in each block, 2^q in total
    total = sum(w for _, w in sinh_sign_patterns(exps))
    assert total == 0
    count = sum(1 for _ in sinh_sign_patterns(exps))
    blocks = {}
    for a in exps:
        blocks[a] = blocks.get(a, 0) + 1
    expected = 1
    for c in blocks.values():
        expected *= c + 1
    assert count == expected
    assert sum(abs(w) for _, w in sinh_sign_patterns(exps)) == 2 ** len(exps)
