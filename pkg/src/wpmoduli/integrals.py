"""Closed-form integrals over simplices and boxes.

Two exact routes:

* monomials over ``{x_i >= 0, sum x_i <= L}`` by the Dirichlet formula
  ``L^(sum a + q) prod a_i! / (sum a + q)!``;
* monomials times ``exp(mu_i x_i)`` over the same simplex, through the
  Laplace transform.  The simplex integral is the convolution of the
  one-variable factors with the constant 1, so its transform is
  ``prod a_i! / (s - mu_i)^(a_i + 1) / s``; inverting by residues at the
  finitely many poles gives a finite sum ``sum c_{mu,j} L^j e^{mu L}``
  with rational coefficients.

Both produce :class:`ExpPoly` values, evaluated at any L afterwards.  With
all ``mu = 0`` the second route must reproduce the first, which the tests
use as a cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

import mpmath

from .exactring import DEFAULT_PRECISION, GUARD_DIGITS, QPiNumber, qpi_eval


class ExpPoly:
    """Finite sum ``sum_{(mu, j)} c * L^j * exp(mu L)``, c in Q[pi]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Fraction, int], QPiNumber] | None = None):
        clean: dict[tuple[Fraction, int], QPiNumber] = {}
        for (mu, j), c in (terms or {}).items():
            if not isinstance(c, QPiNumber):
                c = QPiNumber.rational(c)
            if c.is_zero():
                continue
            key = (Fraction(mu), int(j))
            prev = clean.get(key)
            c = c if prev is None else prev + c
            if c.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = c
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[Fraction, int], QPiNumber]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def rates(self) -> list[Fraction]:
        return sorted({mu for mu, _ in self._terms})

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return ExpPoly(terms)

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        terms: dict[tuple[Fraction, int], QPiNumber] = {}
        for (m1, j1), c1 in self._terms.items():
            for (m2, j2), c2 in other._terms.items():
                k = (m1 + m2, j1 + j2)
                terms[k] = terms[k] + c1 * c2 if k in terms else c1 * c2
        return ExpPoly(terms)

    def scale(self, c) -> "ExpPoly":
        if not isinstance(c, QPiNumber):
            c = QPiNumber.rational(c)
        return ExpPoly({k: v * c for k, v in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, ExpPoly) and self._terms == other._terms

    def __repr__(self):
        body = " + ".join(f"({c})*L^{j}*exp({mu}L)" for (mu, j), c in sorted(self._terms.items()))
        return f"ExpPoly({body or '0'})"

    def evaluate(self, L, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        """Value at L, with working precision raised until cancellation is covered."""
        if not self._terms:
            return mpmath.mpf(0)
        extra = 20
        while True:
            dps = precision + GUARD_DIGITS + extra
            with mpmath.workdps(dps):
                Lm = mpmath.mpf(L)
                parts = [qpi_eval(c, dps) * Lm**j * mpmath.exp(mu.numerator * Lm / mu.denominator) for (mu, j), c in self._terms.items()]
                total = mpmath.fsum(parts)
                biggest = max(abs(p) for p in parts)
                if biggest == 0:
                    return mpmath.mpf(0)
                lost = 0 if total == 0 else int(mpmath.log10(biggest / abs(total))) + 1
            if total == 0 or lost <= extra - 5:
                break
            extra = lost + 20
            if extra > 2000:  # pragma: no cover - would need a pathological integrand
                break
        with mpmath.workdps(precision):
            return +total


def polynomial_in_L(coeffs: Mapping[int, QPiNumber]) -> ExpPoly:
    return ExpPoly({(Fraction(0), j): c for j, c in coeffs.items()})


# Dirichlet -----------------------------------------------------------------


def dirichlet(exponents: Sequence[int]) -> tuple[Fraction, int]:
    """(c, p) with  int_{simplex of size L} prod x_i^{a_i} dx = c L^p."""
    q = len(exponents)
    top = sum(exponents) + q
    num = 1
    for a in exponents:
        num *= factorial(a)
    return Fraction(num, factorial(top)), top


def box_monomial(a: int) -> tuple[Fraction, int]:
    """int_0^L x^a dx = L^{a+1}/(a+1)."""
    return Fraction(1, a + 1), a + 1


# Laplace inversion ------------------------------------------------------------


@lru_cache(maxsize=None)
def inverse_laplace(poles: tuple[tuple[Fraction, int], ...]) -> tuple[tuple[tuple[Fraction, int], Fraction], ...]:
    """Inverse Laplace transform of prod (s - mu)^(-K) as ((mu, j), coeff) pairs.

    At each pole mu of order K the residue of e^{sL} F(s) is read off as the
    t^{K-1} coefficient of e^{mu L} e^{tL} prod_{nu != mu} (t + mu - nu)^(-K_nu).
    """
    out: dict[tuple[Fraction, int], Fraction] = {}
    for mu, K in poles:
        # series of the other factors in t, up to t^{K-1}
        series = [Fraction(0)] * K
        series[0] = Fraction(1)
        for nu, Kn in poles:
            if nu == mu:
                continue
            d = mu - nu
            fac = [Fraction((-1) ** r * comb(Kn + r - 1, r), 1) / d ** (Kn + r) for r in range(K)]
            series = [sum(series[i] * fac[r - i] for i in range(r + 1)) for r in range(K)]
        for j in range(K):
            c = series[K - 1 - j] / factorial(j)
            if c:
                out[(mu, j)] = out.get((mu, j), Fraction(0)) + c
    return tuple(sorted(out.items()))


def laplace_simplex(exponents: Sequence[int], rates: Sequence, slack: bool = True) -> ExpPoly:
    """int_{x >= 0, sum x <= L} prod x_i^{a_i} e^{mu_i x_i} dx as an ExpPoly in L.

    ``slack=False`` drops the 1/s factor: the result is then the density of
    sum x_i at L rather than the integral over the solid simplex.
    """
    if len(exponents) != len(rates):
        raise ValueError("one rate per exponent")
    orders: dict[Fraction, int] = {}
    const = 1
    for a, mu in zip(exponents, rates):
        mu = Fraction(mu)
        orders[mu] = orders.get(mu, 0) + a + 1
        const *= factorial(a)
    if slack:
        orders[Fraction(0)] = orders.get(Fraction(0), 0) + 1
    poles = tuple(sorted(orders.items()))
    return ExpPoly({k: QPiNumber.rational(v * const) for k, v in inverse_laplace(poles)})


def box_exp(a: int, mu) -> ExpPoly:
    """int_0^L x^a e^{mu x} dx."""
    return laplace_simplex([a], [mu])


def simplex_dirichlet_poly(terms: Iterable[tuple[Sequence[int], QPiNumber]]) -> ExpPoly:
    """Sum of c * int_simplex x^a by the Dirichlet formula (no exponentials)."""
    acc: dict[int, QPiNumber] = {}
    for a, c in terms:
        q, p = dirichlet(a)
        acc[p] = acc[p] + c.scale(q) if p in acc else c.scale(q)
    return polynomial_in_L(acc)


def sinh_sign_patterns(exponents: Sequence[int]):
    """Expand prod_i (e^{x_i/2} - e^{-x_i/2}) against a symmetric monomial.

    Yields (rates, weight): within each block of equal exponent only the
    number of minus signs matters, so the patterns are grouped with their
    binomial multiplicities and sign.
    """
    blocks: dict[int, int] = {}
    for a in exponents:
        blocks[a] = blocks.get(a, 0) + 1
    items = sorted(blocks.items())

    def rec(i: int, rates_exps: list[tuple[int, Fraction]], weight: int):
        if i == len(items):
            yield list(rates_exps), weight
            return
        a, c = items[i]
        for minus in range(c + 1):
            chunk = [(a, Fraction(1, 2))] * (c - minus) + [(a, Fraction(-1, 2))] * minus
            yield from rec(i + 1, rates_exps + chunk, weight * comb(c, minus) * (-1) ** minus)

    yield from rec(0, [], 1)


def scale_argument(f: ExpPoly, factor: Fraction) -> ExpPoly:
    """f(factor * L) as an ExpPoly in L."""
    factor = Fraction(factor)
    return ExpPoly({(mu * factor, j): c.scale(factor**j) for (mu, j), c in f.terms.items()})


ZERO_EXP = ExpPoly()
