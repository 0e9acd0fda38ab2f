"""Exact arithmetic in Q[pi] and controlled-precision evaluation.

A :class:`QPiNumber` is a finite sum ``sum_k q_k * pi**k`` with rational
``q_k``.  Every coefficient of a Weil-Petersson volume polynomial lives in
this ring, so the whole exact pipeline runs on it and only touches floating
point at the very end, through :func:`qpi_eval`.

Floating point values are :class:`mpmath.mpf` numbers (aliased as
``BigFloat``).  Evaluation at ``precision`` decimal digits works with
``GUARD_DIGITS`` extra digits so the result carries a relative error of at
most ``10**(1 - precision)``.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Union

import mpmath

BigFloat = mpmath.mpf

DEFAULT_PRECISION = 50
GUARD_DIGITS = 10

Rational = Union[int, Fraction]


class QPiNumber:
    """Immutable element of Q[pi] kept in canonical form.

    The term map never stores a zero coefficient, so two values are equal
    exactly when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for k, q in terms.items():
                k = int(k)
                if k < 0:
                    raise ValueError(f"negative pi exponent {k}")
                q = Fraction(q)
                if q:
                    clean[k] = clean.get(k, Fraction(0)) + q
                    if not clean[k]:
                        del clean[k]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "QPiNumber":
        obj = cls.__new__(cls)
        obj._terms = dict(sorted((k, q) for k, q in terms.items() if q))
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q: Rational, k: int = 0) -> "QPiNumber":
        """The monomial ``q * pi**k``."""
        return cls({k: q})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> list[int]:
        return list(self._terms)

    def coefficient(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, q in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + q
        return QPiNumber._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QPiNumber._raw({k: -q for k, q in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for k1, q1 in self._terms.items():
            for k2, q2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, Fraction(0)) + q1 * q2
        return QPiNumber._raw(out)

    __rmul__ = __mul__

    def scale(self, q: Rational, shift: int = 0) -> "QPiNumber":
        """Return ``q * pi**shift * self``."""
        q = Fraction(q)
        return QPiNumber._raw({k + shift: c * q for k, c in self._terms.items()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"QPiNumber({to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    def evaluate(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        return qpi_eval(self, precision)


ZERO = QPiNumber()
ONE = QPiNumber({0: 1})


def _coerce(x):
    if isinstance(x, QPiNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return QPiNumber({0: x})
    return NotImplemented


def qpi_add(a: QPiNumber, b: QPiNumber) -> QPiNumber:
    return a + b


def qpi_mul(a: QPiNumber, b: QPiNumber) -> QPiNumber:
    return a * b


def qpi_sum(values: Iterable[QPiNumber]) -> QPiNumber:
    acc: dict[int, Fraction] = {}
    for v in values:
        for k, q in v._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + q
    return QPiNumber._raw(acc)


def qpi_eval(a: QPiNumber, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Evaluate ``a`` to ``precision`` significant decimal digits."""
    if precision < 10:
        raise ValueError("precision must be at least 10 digits")
    if not a._terms:
        return mpmath.mpf(0)
    with mpmath.workdps(precision + GUARD_DIGITS):
        pi = +mpmath.pi
        total = mpmath.mpf(0)
        for k, q in a._terms.items():
            total += mpmath.mpf(q.numerator) / q.denominator * pi**k
    with mpmath.workdps(precision):
        return +total


# text form ------------------------------------------------------------

_TERM_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\*pi\^(\d+)\s*$")


def to_text(a: QPiNumber) -> str:
    """Serialize as ``num/den*pi^k`` terms joined by ``+``, highest power first."""
    if not a._terms:
        return "0"
    parts = []
    for k in sorted(a._terms, reverse=True):
        q = a._terms[k]
        parts.append(f"{q.numerator}/{q.denominator}*pi^{k}")
    return "+".join(parts)


def from_text(text: str) -> QPiNumber:
    """Parse the output of :func:`to_text`; raises ``ValueError`` on junk."""
    text = text.strip()
    if text == "0":
        return ZERO
    terms: dict[int, Fraction] = {}
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"malformed Q[pi] term {chunk!r}")
        num, den, k = m.groups()
        q = Fraction(int(num), int(den) if den else 1)
        k = int(k)
        if k in terms:
            raise ValueError(f"repeated pi exponent {k} in {text!r}")
        if q == 0:
            raise ValueError(f"zero coefficient in {text!r}")
        terms[k] = q
    return QPiNumber(terms)


# number theory used by the volume recursion ----------------------------

_BERNOULLI = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with the convention B_1 = -1/2."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    table = _BERNOULLI
    if len(table) <= m:
        with _BERNOULLI_LOCK:
            while len(table) <= m:
                j = len(table)
                table.append(-sum(comb(j + 1, i) * table[i] for i in range(j)) / (j + 1))
    return table[m]


@lru_cache(maxsize=None)
def zeta_even_over_pi(i: int) -> Fraction:
    """Rational number zeta(2i) / pi**(2i); equals -1/2 at i = 0."""
    if i == 0:
        return Fraction(-1, 2)
    return (-1) ** (i + 1) * bernoulli(2 * i) * 2 ** (2 * i - 1) / factorial(2 * i)


def zeta_even(i: int) -> QPiNumber:
    """zeta(2i) as an element of Q[pi]."""
    return QPiNumber.rational(zeta_even_over_pi(i), 2 * i)


def to_mpf(x, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Convert ints, Fractions, QPiNumbers, strings and floats to mpf."""
    if isinstance(x, QPiNumber):
        return qpi_eval(x, precision)
    if isinstance(x, Fraction):
        with mpmath.workdps(precision + GUARD_DIGITS):
            return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)
