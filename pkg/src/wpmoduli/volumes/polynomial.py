"""Symmetric volume polynomials with coefficients in Q[pi]."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping, Sequence

import mpmath

from ..errors import DomainError, InvariantError
from ..exactring import DEFAULT_PRECISION, GUARD_DIGITS, QPiNumber
from ._common import degree, is_stable


def canonical(alpha: Sequence[int]) -> tuple[int, ...]:
    """Sorted (non-increasing) form of a multi-index."""
    return tuple(sorted((int(a) for a in alpha), reverse=True))


def arrangements(parts: Sequence[int]) -> int:
    """Number of distinct orderings of the multiset ``parts``."""
    counts: dict[int, int] = {}
    for v in parts:
        counts[v] = counts.get(v, 0) + 1
    out = factorial(len(parts))
    for c in counts.values():
        out //= factorial(c)
    return out


class VolumePoly:
    """V_{g,n}(x_1, ..., x_n) as a symmetric polynomial in the x_i^2.

    Coefficients are stored once per sorted multi-index.  The coefficient of
    ``prod x_i**(2*alpha_i)`` is ``rational[alpha] * pi**(2*(d - |alpha|))``
    where ``d = 3g - 3 + n``.
    """

    __slots__ = ("g", "n", "_rational")

    def __init__(self, g: int, n: int, rational: Mapping[Sequence[int], Fraction]):
        if not is_stable(g, n):
            raise DomainError(f"(g, n) = ({g}, {n}) is not a hyperbolic type")
        self.g = g
        self.n = n
        store: dict[tuple[int, ...], Fraction] = {}
        for alpha, q in rational.items():
            key = canonical(alpha)
            if len(key) != n:
                raise ValueError(f"multi-index {alpha} has wrong length for n={n}")
            q = Fraction(q)
            if key in store and store[key] != q:
                raise InvariantError(f"asymmetric coefficient at {key}")
            if q:
                store[key] = q
        self._rational = dict(sorted(store.items(), reverse=True))

    @classmethod
    def from_coefficients(cls, g: int, n: int, coeffs: Mapping[Sequence[int], QPiNumber]) -> "VolumePoly":
        """Build from Q[pi] coefficients, rejecting any that break the pi grading."""
        d = degree(g, n)
        rational = {}
        for alpha, c in coeffs.items():
            if c.is_zero():
                continue
            want = 2 * (d - sum(alpha))
            if not c.is_monomial() or c.exponents()[0] != want:
                raise InvariantError(f"coefficient {c} at {tuple(alpha)} is not a multiple of pi^{want}")
            rational[alpha] = c.coefficient(want)
        return cls(g, n, rational)

    @property
    def degree(self) -> int:
        return degree(self.g, self.n)

    def rational_items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self._rational.items())

    def pi_power(self, alpha: Sequence[int]) -> int:
        return 2 * (self.degree - sum(alpha))

    def coefficient(self, alpha: Sequence[int]) -> QPiNumber:
        key = canonical(alpha)
        q = self._rational.get(key)
        if q is None:
            return QPiNumber()
        return QPiNumber.rational(q, self.pi_power(key))

    @property
    def coeffs(self) -> dict[tuple[int, ...], QPiNumber]:
        return {a: QPiNumber.rational(q, self.pi_power(a)) for a, q in self._rational.items()}

    def value(self) -> QPiNumber:
        """V_{g,n}, the value at x = 0."""
        return self.coefficient((0,) * self.n)

    def scaled(self, factor: Fraction) -> "VolumePoly":
        return VolumePoly(self.g, self.n, {a: q * factor for a, q in self._rational.items()})

    def monomials(self) -> Iterator[tuple[tuple[int, ...], QPiNumber]]:
        """Every monomial with its coefficient, all orderings spelled out.

        Only sensible for small n; large n should use :meth:`rational_items`
        together with :func:`arrangements`.
        """
        from itertools import permutations

        for alpha, q in self._rational.items():
            c = QPiNumber.rational(q, self.pi_power(alpha))
            for perm in sorted(set(permutations(alpha))):
                yield perm, c

    def split_first(self) -> Iterator[tuple[int, tuple[int, ...], int, QPiNumber]]:
        """Group monomials by the exponent of the first variable.

        Yields ``(a, rest, count, coefficient)``: ``count`` monomials have
        ``x_1**(2a)`` times an ordering of the sorted multiset ``rest``.
        """
        for alpha, q in self._rational.items():
            c = QPiNumber.rational(q, self.pi_power(alpha))
            for a in sorted(set(alpha), reverse=True):
                rest = list(alpha)
                rest.remove(a)
                yield a, tuple(rest), arrangements(rest), c

    def evaluate(self, x: Sequence, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        """Numerical value at boundary lengths ``x``."""
        if len(x) != self.n:
            raise DomainError(f"expected {self.n} lengths, got {len(x)}")
        with mpmath.workdps(precision + GUARD_DIGITS):
            pi2 = mpmath.pi**2
            sym = _all_monomial_symmetric([mpmath.mpf(t) ** 2 for t in x], self.degree)
            total = mpmath.mpf(0)
            for alpha, q in self._rational.items():
                key = tuple(a for a in alpha if a)
                total += (mpmath.mpf(q.numerator) / q.denominator) * pi2 ** (self.degree - sum(alpha)) * sym.get(key, 0)
        with mpmath.workdps(precision):
            return +total

    def check_invariants(self) -> None:
        """Raise :class:`InvariantError` unless degree, grading and sign are right."""
        d = self.degree
        if not self._rational:
            raise InvariantError(f"V_{self.g},{self.n} is identically zero")
        for alpha, q in self._rational.items():
            if len(alpha) != self.n or any(a < 0 for a in alpha):
                raise InvariantError(f"bad multi-index {alpha}")
            if sum(alpha) > d:
                raise InvariantError(f"index {alpha} exceeds degree {d}")
            if q <= 0:
                raise InvariantError(f"nonpositive coefficient {q} at {alpha}")
        if (0,) * self.n not in self._rational:
            raise InvariantError("missing constant term")

    def __eq__(self, other):
        if not isinstance(other, VolumePoly):
            return NotImplemented
        return (self.g, self.n, self._rational) == (other.g, other.n, other._rational)

    def __hash__(self):
        return hash((self.g, self.n, tuple(self._rational.items())))

    def __repr__(self):
        return f"VolumePoly(g={self.g}, n={self.n}, terms={len(self._rational)})"

    def to_text(self, var: str = "x") -> str:
        """Readable form, one symmetric orbit per term, e.g. ``(1/24)*[x1^2] + (1/6)*pi^2``."""
        parts = []
        for alpha, q in self._rational.items():
            mono = "*".join(
                f"{var}{i + 1}^{2 * a}" for i, a in enumerate(alpha) if a
            )
            k = self.pi_power(alpha)
            coef = str(q) if q.denominator == 1 else f"({q})"
            if k:
                coef += f"*pi^{k}"
            if mono:
                orbit = f"[{mono}]" if arrangements(alpha) > 1 else mono
                parts.append(f"{coef}*{orbit}")
            else:
                parts.append(coef)
        return " + ".join(parts)


def _all_monomial_symmetric(y: Sequence, d: int) -> dict[tuple[int, ...], mpmath.mpf]:
    """Every monomial symmetric polynomial m_alpha(y) with |alpha| <= d at once.

    Variables are absorbed one at a time; a state is the partition of
    exponents placed so far, so the work is (number of partitions) * n * d.
    Keys are the nonzero parts of alpha in decreasing order.
    """
    states: dict[tuple[int, ...], mpmath.mpf] = {(): mpmath.mpf(1)}
    for yi in y:
        powers = [mpmath.mpf(1)]
        for _ in range(d):
            powers.append(powers[-1] * yi)
        nxt: dict[tuple[int, ...], mpmath.mpf] = {}
        for state, acc in states.items():
            room = d - sum(state)
            nxt[state] = nxt.get(state, 0) + acc
            for e in range(1, room + 1):
                key = tuple(sorted(state + (e,), reverse=True))
                nxt[key] = nxt.get(key, 0) + acc * powers[e]
        states = nxt
    return states
