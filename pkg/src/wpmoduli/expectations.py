"""Expected numbers of separating multicurves of bounded length.

For a split type Gamma (a piece S_{g0,n0} cut off by n0 curves, complement
pieces S_{g_i,n_i}) the expected count over the Weil-Petersson random
surface of genus g is

    2^{-M} / |Sym| / V_g * int_{sum x <= L} V_{g0,n0}(x) prod V_{g_i,n_i}(x) prod x_i dx.

``exact`` mode integrates the exact polynomial product over the simplex
with the Dirichlet formula.  ``asymptotic`` mode keeps the small piece exact,
replaces every complement piece by its sinh point value and the volume
ratio by the large-genus estimate; the remaining integrals of polynomial
times exponentials are closed forms in e^{L/2} (see :mod:`.integrals`).

Everything that rests on unspecified constants (the O(1/L), O(L^2/g),
O(1/g) corrections, the c(m) of the chi-sums) is evaluated with the
constant set to 1 and labelled as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial

import mpmath

from .errors import BudgetError, DomainError
from .exactring import DEFAULT_PRECISION, GUARD_DIGITS, QPiNumber, qpi_eval
from .integrals import ExpPoly, dirichlet, inverse_laplace, laplace_simplex, polynomial_in_L
from .mcshane import FIRST_BOUND_CONSTANT, Z2_BRANCH_CONSTANT, Z_SPLIT
from .reports import SWEEP_COLUMNS, write_csv, write_json
from .volumes import in_budget, volume_polynomial, volume_ratio, volume_value
from .volumes._common import is_stable
from .volumes.polynomial import arrangements

EXACT, ASYMPTOTIC = "exact", "asymptotic"
MODES = (EXACT, ASYMPTOTIC)
OMEGA_CHOICES = ("sqrtloglog", "logloglog")
DEFAULT_OMEGA = "sqrtloglog"
CHI_CAP = 10

ASYMPTOTIC_NOTE = "point estimate; corrections (1+O(1/L))(1+O(L^2/g))(1+O(1/g)) are not quantified"
EXACT_NOTE = "exact closed form over the simplex"


# types -------------------------------------------------------------------------


@dataclass(frozen=True)
class TopologySplit:
    """Type of a separating multicurve in a closed genus-g surface."""

    g: int
    piece: tuple[int, int]
    complement: tuple[tuple[int, int], ...]
    one_handle_count: int = 0
    sym_order: int = 1

    def __post_init__(self):
        object.__setattr__(self, "piece", tuple(self.piece))
        object.__setattr__(self, "complement", tuple(tuple(p) for p in self.complement))
        g0, n0 = self.piece
        if n0 < 1 or not self.complement:
            raise DomainError("a split needs n0 >= 1 curves and a nonempty complement")
        if sum(n for _, n in self.complement) != n0:
            raise DomainError("complement boundary counts must add up to n0")
        q = len(self.complement)
        if g0 + sum(g for g, _ in self.complement) + n0 - q != self.g:
            raise DomainError(f"pieces do not glue to genus {self.g}")
        for gi, ni in (self.piece,) + self.complement:
            if gi < 0 or ni < 1 or 2 * gi - 2 + ni < 1:
                raise DomainError(f"piece ({gi}, {ni}) is not hyperbolic with boundary")
        if self.one_handle_count < 0 or self.sym_order < 1:
            raise DomainError("need M >= 0 and sym_order >= 1")

    @classmethod
    def two_piece(cls, g: int, g0: int, k: int) -> "TopologySplit":
        """S_{g0,k} and S_{g-g0-k+1,k} glued along k curves; |Sym| = k!."""
        g1 = g - g0 - k + 1
        m = 1 if k == 1 and (g0 == 1 or g1 == 1) else 0
        return cls(g, (g0, k), ((g1, k),), m, factorial(k))

    @classmethod
    def one_handle(cls, g: int) -> "TopologySplit":
        return cls.two_piece(g, 1, 1)

    @classmethod
    def pants(cls, g: int) -> "TopologySplit":
        return cls.two_piece(g, 0, 3)

    @property
    def chi(self) -> int:
        """|chi| of the split piece."""
        return 2 * self.piece[0] - 2 + self.piece[1]

    @property
    def prefactor(self) -> Fraction:
        return Fraction(1, 2**self.one_handle_count * self.sym_order)

    def pieces(self) -> tuple[tuple[int, int], ...]:
        return (self.piece,) + self.complement


@dataclass
class ExpectationResult:
    value: mpmath.mpf
    mode: str
    leading_term: mpmath.mpf
    note: str
    integral: ExpPoly | None = None
    details: dict = field(default_factory=dict)

    @property
    def ratio(self) -> mpmath.mpf:
        return self.value / self.leading_term if self.leading_term else mpmath.mpf(0)


def omega(g, choice: str = DEFAULT_OMEGA) -> mpmath.mpf:
    """Slack function: sqrt(log log g), or log log log g for g > e^{e^e}."""
    g = mpmath.mpf(g)
    if choice == "sqrtloglog":
        if g <= mpmath.e:
            raise DomainError("sqrt(log log g) needs g > e")
        return mpmath.sqrt(mpmath.log(mpmath.log(g)))
    if choice == "logloglog":
        if g <= mpmath.exp(mpmath.e**mpmath.e):
            raise DomainError("log log log g is offered for g > e^(e^e) only")
        return mpmath.log(mpmath.log(mpmath.log(g)))
    raise DomainError(f"unknown omega {choice!r}; choose from {', '.join(OMEGA_CHOICES)}")


@dataclass(frozen=True)
class ThresholdProfile:
    g: object
    sign: int = 1
    omega: str = DEFAULT_OMEGA

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.omega not in OMEGA_CHOICES:
            raise DomainError(f"unknown omega {self.omega!r}")

    def omega_value(self) -> mpmath.mpf:
        return omega(self.g, self.omega)

    @property
    def L(self) -> mpmath.mpf:
        return threshold_L(self)


def threshold_L(profile: ThresholdProfile) -> mpmath.mpf:
    """2 log g - 4 log log g + sign * omega(g)."""
    if profile.g < 3:
        raise DomainError("threshold needs g >= 3")
    g = mpmath.mpf(profile.g)
    return 2 * mpmath.log(g) - 4 * mpmath.log(mpmath.log(g)) + profile.sign * profile.omega_value()


def scaling_diagnostic(g, L) -> mpmath.mpf:
    """L^2 e^{L/2} / g, the size of the expected one-handle count."""
    if g < 2:
        raise DomainError("need g >= 2")
    L = mpmath.mpf(L)
    return L**2 * mpmath.exp(L / 2) / mpmath.mpf(g)


def leading_n11(g, L) -> mpmath.mpf:
    """L^2 e^{L/2} / (192 pi^2 g)."""
    if g < 2:
        raise DomainError("need g >= 2")
    if L < 0:
        raise DomainError("L must be nonnegative")
    L = mpmath.mpf(L)
    return L**2 * mpmath.exp(L / 2) / (192 * mpmath.pi**2 * mpmath.mpf(g))


def leading_n03(g, L) -> mpmath.mpf:
    """L^2 e^{L/2} / (48 pi^2 g)."""
    return 4 * leading_n11(g, L)


def leading_generic(g, L, m: int) -> mpmath.mpf:
    """(1 + L^{3m-1}) e^{L/2} / g^m: the chi = m shape with its constant set to 1."""
    L = mpmath.mpf(L)
    return (1 + L ** (3 * m - 1)) * mpmath.exp(L / 2) / mpmath.mpf(g) ** m


def _leading_for(split: TopologySplit, L) -> mpmath.mpf:
    if split.piece == (1, 1) and len(split.complement) == 1:
        return leading_n11(split.g, L)
    if split.piece == (0, 3) and len(split.complement) == 1:
        return leading_n03(split.g, L)
    return leading_generic(split.g, L, split.chi)


# exact integrals ------------------------------------------------------------------


def _check_L(L) -> None:
    if L < 0:
        raise DomainError("L must be nonnegative")


def _require_budget(pairs, budget) -> None:
    for g, n in pairs:
        if not in_budget(g, n, budget):
            raise BudgetError(f"V_({g},{n}) lies outside the exact budget; use asymptotic mode")


def _offsets(complement):
    start = 0
    for g, n in complement:
        yield g, n, start
        start += n


@lru_cache(maxsize=None)
def exact_integral(split: TopologySplit, budget: int | None = None) -> ExpPoly:
    """int_{sum x <= L} V_piece(x) prod V_complement(x) prod x_i dx, in closed form."""
    _require_budget(split.pieces(), budget)
    p0 = volume_polynomial(*split.piece, budget)
    acc: dict[int, QPiNumber] = {}

    def add(exps, c):
        q, power = dirichlet([2 * e + 1 for e in exps])
        acc[power] = acc[power] + c.scale(q) if power in acc else c.scale(q)

    if len(split.complement) == 1:
        # P0 and the simplex are both symmetric: one representative per orbit
        p1 = list(volume_polynomial(*split.complement[0], budget).monomials())
        for alpha, q0 in p0.rational_items():
            c0 = QPiNumber.rational(q0 * arrangements(alpha), p0.pi_power(alpha))
            for beta, c1 in p1:
                add([a + b for a, b in zip(alpha, beta)], c0 * c1)
    else:
        comps = [(list(volume_polynomial(g, n, budget).monomials()), start, n) for g, n, start in _offsets(split.complement)]
        n0 = split.piece[1]

        def rec(i, exps, c):
            if i == len(comps):
                for alpha, c0 in p0.monomials():
                    add([a + b for a, b in zip(alpha, exps)], c0 * c)
                return
            monos, start, n = comps[i]
            for beta, cb in monos:
                e = list(exps)
                e[start : start + n] = beta
                rec(i + 1, e, c * cb)

        rec(0, [0] * n0, QPiNumber.rational(1))
    return polynomial_in_L(acc)


def _sign_orders(alpha: tuple[int, ...]) -> dict[tuple[int, int], int]:
    """Expand prod_i (e^{x_i/2} - e^{-x_i/2}) against x^{2 alpha}.

    The simplex integral of one sign pattern depends only on the total pole
    orders (K+, K-) at +1/2 and -1/2, so patterns are merged into signed
    multiplicities per (K+, K-).
    """
    weights = {(0, 0): 1}
    blocks: dict[int, int] = {}
    for a in alpha:
        blocks[a] = blocks.get(a, 0) + 1
    for a, c in blocks.items():
        e = 2 * a + 1
        nxt: dict[tuple[int, int], int] = {}
        for (kp, km), w in weights.items():
            for j in range(c + 1):
                key = (kp + (c - j) * e, km + j * e)
                nxt[key] = nxt.get(key, 0) + w * comb(c, j) * (-1) ** j
        weights = {k: w for k, w in nxt.items() if w}
    return weights


def _sinh_poles(kp: int, km: int):
    half = Fraction(1, 2)
    poles = [(Fraction(0), 1)]
    if km:
        poles.insert(0, (-half, km))
    if kp:
        poles.append((half, kp))
    return tuple(poles)


@lru_cache(maxsize=None)
def _exp_bound(k: int) -> ExpPoly:
    """int_simplex prod (e^{x_i} - 1) dx  (= e^{x/2} * 2 sinh(x/2) per variable)."""
    out = ExpPoly()
    for j in range(k + 1):
        sign = (-1) ** (k - j)
        rates = [1] * j + [0] * (k - j)
        out = out + laplace_simplex([0] * k, rates).scale(sign * comb(k, j))
    return out


@lru_cache(maxsize=None)
def asymptotic_integral(piece: tuple[int, int], budget: int | None = None) -> tuple[ExpPoly, bool]:
    """int_simplex V_piece(x) prod 2 sinh(x_i/2) dx, or its e^{sum x/2} bound.

    Returns ``(integral, bounded)``; with ``bounded`` true the piece was out
    of budget and the integrand is prod (e^{x_i} - 1), to be multiplied by
    the scalar V_piece.
    """
    g0, k = piece
    if not in_budget(g0, k, budget):
        return _exp_bound(k), True
    p0 = volume_polynomial(g0, k, budget)
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for alpha, q in p0.rational_items():
        c = q * arrangements(alpha)
        for a in alpha:
            c *= factorial(2 * a)
        power = p0.pi_power(alpha)
        for key, w in _sign_orders(alpha).items():
            slot = acc.setdefault(key, {})
            slot[power] = slot.get(power, Fraction(0)) + c * w
    terms: dict[tuple[Fraction, int], dict[int, Fraction]] = {}
    for (kp, km), coeff in acc.items():
        for rate_j, v in inverse_laplace(_sinh_poles(kp, km)):
            slot = terms.setdefault(rate_j, {})
            for power, c in coeff.items():
                slot[power] = slot.get(power, Fraction(0)) + c * v
    return ExpPoly({k: QPiNumber(v) for k, v in terms.items()}), False


def expected_count(split: TopologySplit, L, mode: str = EXACT, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> ExpectationResult:
    """Expected number of multicurves of type ``split`` with total length <= L."""
    _check_L(L)
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")
    dps = precision + GUARD_DIGITS
    with mpmath.workdps(dps):
        lead = _leading_for(split, L)
        pre = mpmath.mpf(split.prefactor.numerator) / split.prefactor.denominator
        details: dict = {}
        if mode == EXACT:
            _require_budget([(split.g, 0)], budget)
            integral = exact_integral(split, budget)
            vg = qpi_eval(volume_value(split.g, 0, budget), dps)
            value = pre * integral.evaluate(L, dps) / vg if L > 0 else mpmath.mpf(0)
            note = EXACT_NOTE
        else:
            integral, bounded = asymptotic_integral(split.piece, budget)
            numerator = list(split.complement) + ([split.piece] if bounded else [])
            ratio = volume_ratio(numerator, [(split.g, 0)], budget, reduce=bounded)
            value = pre * ratio * integral.evaluate(L, dps) if L > 0 else mpmath.mpf(0)
            details["volume_ratio"] = ratio
            note = ASYMPTOTIC_NOTE
            if bounded:
                note += f"; V_{split.piece} outside budget, bounded by e^(sum x/2) V"
                details["bounded"] = True
    with mpmath.workdps(precision):
        return ExpectationResult(+value, mode, +lead, note, integral, details)


# chi sums --------------------------------------------------------------------------


def splits_with_chi(g: int, m: int) -> list[tuple[int, int]]:
    """(g0, k) with k >= 1, 2g0-2+k = m and a hyperbolic connected complement."""
    if m < 1:
        raise DomainError("need m >= 1")
    out = []
    for k in range(1, m + 3):
        if (m + 2 - k) % 2:
            continue
        g0 = (m + 2 - k) // 2
        g1 = g - g0 - k + 1
        if g0 >= 0 and g1 >= 0 and is_stable(g0, k) and 2 * g1 - 2 + k >= 1:
            out.append((g0, k))
    return out


def _int_genus(g):
    if isinstance(g, int):
        return g
    gi = int(mpmath.nint(g))
    if gi != g:
        raise DomainError("genus must be an integer")
    return gi


def sum_expected_chi_eq_m(g, L, m: int, mode: str = ASYMPTOTIC, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> mpmath.mpf:
    """Sum of expected_count over every two-piece split whose small side has |chi| = m."""
    g = _int_genus(g)
    total = mpmath.mpf(0)
    with mpmath.workdps(precision + GUARD_DIGITS):
        for g0, k in splits_with_chi(g, m):
            total += expected_count(TopologySplit.two_piece(g, g0, k), L, mode, precision + GUARD_DIGITS, budget).value
    with mpmath.workdps(precision):
        return +total


def _k_factor(L, k: int) -> mpmath.mpf:
    return mpmath.mpf(L) ** (2 * k) / (mpmath.factorial(k) * mpmath.factorial(2 * k))


def sum_expected_chi_ge_m(g, L, m: int, precision: int = DEFAULT_PRECISION, budget: int | None = None, cutoff: int = 30) -> mpmath.mpf:
    """Upper bound sum_{k, g0} (1/k!) L^{2k}/(2k)! e^L V_{g0,k} V_{g',k} / V_g.

    Over m <= 2g0-2+k <= g-1, with the constant of the bound set to 1.  The
    double sum is cut once terms fall below 10^(-cutoff) of the running total.
    """
    if m < 1:
        raise DomainError("need m >= 1")
    _check_L(L)
    g = _int_genus(g)
    if L == 0:
        return mpmath.mpf(0)
    tiny = mpmath.mpf(10) ** (-cutoff)
    with mpmath.workdps(precision + GUARD_DIGITS):
        eL = mpmath.exp(mpmath.mpf(L))
        total = mpmath.mpf(0)
        quiet = 0
        k = 1
        while k <= 2 * g and quiet < 3:
            kf = _k_factor(L, k) * eL
            block = mpmath.mpf(0)
            g0 = max(0, -((k - m - 2) // 2))  # smallest g0 with chi >= m
            while True:
                chi = 2 * g0 - 2 + k
                g1 = g - g0 - k + 1
                if chi > g - 1 or g1 < 0 or 2 * g1 - 2 + k < 1:
                    break
                if chi >= max(m, 1) and is_stable(g0, k):
                    term = kf * volume_ratio([(g0, k), (g1, k)], [(g, 0)], budget, reduce=True)
                    block += term
                    if term < tiny * (total + block):
                        break
                g0 += 1
            total += block
            quiet = quiet + 1 if block <= tiny * total else 0
            k += 1
    with mpmath.workdps(precision):
        return +total


def prob_upper_L1_terms(g, profile: ThresholdProfile, precision: int = DEFAULT_PRECISION, chi_cap: int = CHI_CAP) -> dict[str, mpmath.mpf]:
    """The pieces of the bound on Prob(L1 <= L(g)), keyed m=1 .. m=cap and tail."""
    if profile.sign != -1:
        raise DomainError("the lower-bound assembly is for the minus threshold")
    L = threshold_L(ThresholdProfile(g, profile.sign, profile.omega))
    out: dict[str, mpmath.mpf] = {}
    with mpmath.workdps(precision + GUARD_DIGITS):
        out["m=1"] = leading_n11(g, L) + leading_n03(g, L)
        for m in range(2, chi_cap + 1):
            out[f"m={m}"] = sum_expected_chi_eq_m(g, L, m, ASYMPTOTIC, precision)
        out["tail"] = sum_expected_chi_ge_m(g, L, chi_cap + 1, precision)
        out["total"] = mpmath.fsum(out.values())
    return out


def prob_upper_L1(g, profile: ThresholdProfile, precision: int = DEFAULT_PRECISION, chi_cap: int = CHI_CAP) -> mpmath.mpf:
    """Upper bound on Prob(L1(X) <= 2 log g - 4 log log g - omega(g))."""
    with mpmath.workdps(precision):
        return +prob_upper_L1_terms(g, profile, precision, chi_cap)["total"]


# pairs of one-handles ----------------------------------------------------------------


def _handle_moment(b: int, L) -> mpmath.mpf:
    """int_0^L (1/24)(y^2 + 4 pi^2) y^{2b+1} dy."""
    L = mpmath.mpf(L)
    return (L ** (2 * b + 4) / (2 * b + 4) + 4 * mpmath.pi**2 * L ** (2 * b + 2) / (2 * b + 2)) / 24


@lru_cache(maxsize=None)
def handle_sinh_integral() -> ExpPoly:
    """int_0^L (1/24)(y^2 + 4 pi^2) * 2 sinh(y/2) dy."""
    four_pi2 = QPiNumber.rational(4, 2)
    out = ExpPoly()
    for a, c in ((2, QPiNumber.rational(1)), (0, four_pi2)):
        for mu, sign in ((Fraction(1, 2), 1), (Fraction(-1, 2), -1)):
            out = out + laplace_simplex([a], [mu]).scale(c.scale(Fraction(sign, 24)))
    return out


def expected_pair_disjoint(g: int, L, mode: str = EXACT, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> ExpectationResult:
    """E[Y]: pairs of disjoint one-handle curves, both of length <= L."""
    _check_L(L)
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")
    if g < 2:
        raise DomainError("need g >= 2")
    dps = precision + GUARD_DIGITS
    with mpmath.workdps(dps):
        lead = leading_n11(g, L) ** 2
        if g == 2:
            # two disjoint one-handle curves in genus 2 would bound an annulus
            return ExpectationResult(mpmath.mpf(0), mode, lead, "genus 2 has no such pairs", ExpPoly())
        if mode == EXACT:
            _require_budget([(g - 2, 2), (g, 0)], budget)
            integral = _pair_exact(g, budget)
            vg = qpi_eval(volume_value(g, 0, budget), dps)
            value = integral.evaluate(L, dps) / vg if L > 0 else mpmath.mpf(0)
            note = EXACT_NOTE
        else:
            h = handle_sinh_integral()
            integral = (h * h).scale(Fraction(1, 4))
            ratio = volume_ratio([(g - 2, 2)], [(g, 0)], budget)
            value = ratio * integral.evaluate(L, dps) if L > 0 else mpmath.mpf(0)
            note = ASYMPTOTIC_NOTE
    with mpmath.workdps(precision):
        return ExpectationResult(+value, mode, +lead, note, integral)


@lru_cache(maxsize=None)
def _pair_exact(g: int, budget: int | None) -> ExpPoly:
    """1/4 int_{[0,L]^2} V11(x) x V11(y) y V_{g-2,2}(x, y) dx dy."""
    acc: dict[int, QPiNumber] = {}
    four_pi2 = QPiNumber.rational(4, 2)
    for (a, b), c in volume_polynomial(g - 2, 2, budget).monomials():
        # each handle moment is (1/24)[L^{2a+4}/(2a+4) + 4 pi^2 L^{2a+2}/(2a+2)]
        xs = [(2 * a + 4, QPiNumber.rational(Fraction(1, 24 * (2 * a + 4)))), (2 * a + 2, four_pi2.scale(Fraction(1, 24 * (2 * a + 2))))]
        ys = [(2 * b + 4, QPiNumber.rational(Fraction(1, 24 * (2 * b + 4)))), (2 * b + 2, four_pi2.scale(Fraction(1, 24 * (2 * b + 2))))]
        for px, cx in xs:
            for py, cy in ys:
                t = (c * cx * cy).scale(Fraction(1, 4))
                acc[px + py] = acc[px + py] + t if px + py in acc else t
    return polynomial_in_L(acc)


# counts with a handle inside a split piece ------------------------------------------


INNER, OUTER = "inner", "outer"


def _partial_orbits(alpha: tuple[int, ...], h: int):
    """(y exponents, sorted rest, count) for the monomials of one orbit."""
    seen = set()
    for sel in permutations(range(len(alpha)), h):
        ys = tuple(alpha[i] for i in sel)
        rest = list(alpha)
        for v in ys:
            rest.remove(v)
        key = (ys, tuple(rest))
        if key in seen:
            continue
        seen.add(key)
        yield ys, tuple(rest), arrangements(rest)


@lru_cache(maxsize=None)
def _x_part(rest: tuple[int, ...], rate: Fraction) -> ExpPoly:
    return laplace_simplex([2 * b for b in rest], [rate] * len(rest))


@lru_cache(maxsize=None)
def _handle_exp_moment() -> ExpPoly:
    """int_0^L (1/24)(y^2 + 4 pi^2) y e^{y/2} dy."""
    half = Fraction(1, 2)
    return laplace_simplex([3], [half]).scale(Fraction(1, 24)) + laplace_simplex([1], [half]).scale(QPiNumber.rational(Fraction(4, 24), 2))


def expected_hat_count(
    g: int,
    split: TopologySplit,
    L1,
    L2,
    handles: int = 1,
    placement: str = INNER,
    precision: int = DEFAULT_PRECISION,
    budget: int | None = None,
) -> mpmath.mpf:
    """Upper bound on the expected number of (handle curves, split multicurve) tuples.

    ``handles`` one-handle curves of length <= L1 sit in the split piece
    (``inner``), or with ``placement="outer"`` one sits in the piece and one
    in the first complement piece.  The split multicurve has total length
    <= L2.  The complement integrand uses the sinh bound (x sinh(x/2)/(x/2)
    <= e^{x/2}); the inner polynomial is exact when in budget.
    """
    if split.g != g:
        raise DomainError("split was built for another genus")
    if handles not in (1, 2):
        raise DomainError("handles must be 1 or 2")
    if placement not in (INNER, OUTER):
        raise DomainError("placement must be inner or outer")
    _check_L(L1)
    _check_L(L2)
    g0, k = split.piece
    inner_h = handles if placement == INNER else 1
    if placement == OUTER and handles != 2:
        raise DomainError("outer placement is the two-handle case")
    if g0 < inner_h:
        raise DomainError(f"piece of genus {g0} cannot hold {inner_h} handles")
    inner = (g0 - inner_h, k + inner_h)
    if not is_stable(*inner):
        raise DomainError(f"cutting the handles leaves ({inner[0]}, {inner[1]})")
    complement = list(split.complement)
    if placement == OUTER:
        g1, n1 = complement[0]
        if g1 < 1 or not is_stable(g1 - 1, n1 + 1):
            raise DomainError("the first complement piece cannot hold a handle")
        complement[0] = (g1 - 1, n1 + 1)
    if L1 == 0 or L2 == 0:
        return mpmath.mpf(0)
    dps = precision + GUARD_DIGITS
    with mpmath.workdps(dps):
        sym = 1
        for _, n in split.complement:
            sym *= factorial(n)
        half = Fraction(1, 2)
        if in_budget(*inner, budget):
            poly = volume_polynomial(*inner, budget)
            moments: dict[int, mpmath.mpf] = {}
            total = mpmath.mpf(0)
            for alpha, q in poly.rational_items():
                c = qpi_eval(QPiNumber.rational(q, poly.pi_power(alpha)), dps)
                for ys, rest, count in _partial_orbits(alpha, inner_h):
                    y = mpmath.mpf(1)
                    for b in ys:
                        if b not in moments:
                            moments[b] = _handle_moment(b, L1)
                        y *= moments[b]
                    total += c * count * y * _x_part(rest, half).evaluate(L2, dps)
            numerator = complement
        else:
            total = _handle_exp_moment().evaluate(L1, dps) ** inner_h * _x_part((0,) * k, Fraction(1)).evaluate(L2, dps)
            numerator = complement + [inner]
        if placement == OUTER:
            total *= handle_sinh_integral().evaluate(L1, dps)
        value = total * volume_ratio(numerator, [(g, 0)], budget, reduce=True) / sym
    with mpmath.workdps(precision):
        return +value


def hat_sum_chi_eq_m(g: int, L, m: int, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> mpmath.mpf:
    """sum over two-piece splits with |chi| = m and g0 >= 1 of hat-N(L, 2L)."""
    total = mpmath.mpf(0)
    with mpmath.workdps(precision + GUARD_DIGITS):
        for g0, k in splits_with_chi(g, m):
            if g0 >= 1 and is_stable(g0 - 1, k + 1):
                total += expected_hat_count(g, TopologySplit.two_piece(g, g0, k), L, 2 * L, 1, INNER, precision, budget)
    with mpmath.workdps(precision):
        return +total


_Q_SPECS = {
    # kind: (handles, placement, min g0, min chi, boundary multiple, min complement genus)
    "Q1": (2, INNER, 2, 3, 2, 0),
    "Q2": (2, OUTER, 1, 3, 2, 1),
    "Q3": (2, INNER, 2, 4, 3, 0),
}


def q_bound(kind: str, g: int, L, chi_terms: int = 3, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> mpmath.mpf:
    """Q1, Q2 or Q3 restricted to the dominant one-complement splits.

    Sums |chi| from its minimum over ``chi_terms`` values.
    """
    if kind not in _Q_SPECS:
        raise DomainError(f"kind must be one of {sorted(_Q_SPECS)}")
    handles, placement, g0_min, chi_min, mult, g1_min = _Q_SPECS[kind]
    total = mpmath.mpf(0)
    with mpmath.workdps(precision + GUARD_DIGITS):
        for m in range(chi_min, min(chi_min + chi_terms, g)):
            for g0, k in splits_with_chi(g, m):
                g1 = g - g0 - k + 1
                if g0 < g0_min or g1 < g1_min or m > g - 1:
                    continue
                split = TopologySplit.two_piece(g, g0, k)
                try:
                    total += expected_hat_count(g, split, L, mult * L, handles, placement, precision, budget)
                except DomainError:
                    continue
    with mpmath.workdps(precision):
        return +total


Q_SHAPES = {
    "Q1": lambda g, L: L**8 * mpmath.exp(L) / mpmath.mpf(g) ** 3,
    "Q2": lambda g, L: L**10 * mpmath.exp(3 * L / 2) / mpmath.mpf(g) ** 4,
    "Q3": lambda g, L: L**11 * mpmath.exp(3 * L / 2) / mpmath.mpf(g) ** 4,
}


# Z* bounds ---------------------------------------------------------------------------


def z_volume_sum(g, precision: int = DEFAULT_PRECISION, budget: int | None = None, cutoff: int = 30) -> mpmath.mpf:
    """V_{g-2,2}/V_g + sum_{k=1}^{(g-1)/2} V_{k,1} V_{g-k-1,1} / V_g."""
    g = _int_genus(g)
    tiny = mpmath.mpf(10) ** (-cutoff)
    with mpmath.workdps(precision + GUARD_DIGITS):
        total = volume_ratio([(g - 2, 2)], [(g, 0)], budget) if is_stable(g - 2, 2) else mpmath.mpf(0)
        for k in range(1, (g - 1) // 2 + 1):
            term = volume_ratio([(k, 1), (g - k - 1, 1)], [(g, 0)], budget)
            total += term
            if k > 2 and term < tiny * total:
                break
    with mpmath.workdps(precision):
        return +total


@lru_cache(maxsize=None)
def _z_pieces():
    half = Fraction(1, 2)
    a = laplace_simplex([0, 0], [half, half]) + laplace_simplex([1, 0], [half, half])
    f = laplace_simplex([0, 0, 1], [half, half, 0])
    return a, f


def z_star_bounds(g, L, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Upper bounds for E[Z1*] and E[Z2*].

    z1 = (100/24) S (L^4/4 + 2 pi^2 L^2) int_{x+y <= 1.9L} [e^{(x+y)/2} + e^{L/2}] (1 + x),
    z2 = 2000 S (L^2/2) (1/4) [F(2L) - F(1.9L)],  F(T) = int_{x+y+u <= T} u e^{(x+y)/2},
    with S from :func:`z_volume_sum`.
    """
    _check_L(L)
    if L == 0:
        return mpmath.mpf(0), mpmath.mpf(0)
    dps = precision + GUARD_DIGITS
    with mpmath.workdps(dps):
        L = mpmath.mpf(L)
        s = z_volume_sum(g, dps, budget)
        a, f = _z_pieces()
        t = mpmath.mpf(Z_SPLIT.numerator) / Z_SPLIT.denominator * L
        handle = L**4 / 4 + 2 * mpmath.pi**2 * L**2
        box = t**2 / 2 + t**3 / 6
        z1 = mpmath.mpf(FIRST_BOUND_CONSTANT) / 24 * s * handle * (a.evaluate(t, dps) + mpmath.exp(L / 2) * box)
        z2 = Z2_BRANCH_CONSTANT * s * (L**2 / 2) * (f.evaluate(2 * L, dps) - f.evaluate(t, dps)) / 4
    with mpmath.workdps(precision):
        return +z1, +z2


def prob_no_short_handle_terms(g, profile: ThresholdProfile, precision: int = DEFAULT_PRECISION) -> dict[str, mpmath.mpf]:
    """The three parts of the bound on Prob(N*_{1,1} = 0) at L = L(g) with sign +.

    E[N*] and E[Y*] are replaced by leading_n11 and leading_n11^2; the middle
    term is the size of the named corrections with unit constants.
    """
    if profile.sign != 1:
        raise DomainError("the upper-bound assembly is for the plus threshold")
    prof = ThresholdProfile(g, 1, profile.omega)
    with mpmath.workdps(precision + GUARD_DIGITS):
        L = threshold_L(prof)
        w = prof.omega_value()
        gm = mpmath.mpf(g)
        lg = mpmath.log(gm)
        lead = leading_n11(g, L)
        delta_n = lg**4 * mpmath.exp(w) / gm / lead
        delta_y = 1 / L + L**2 / gm + 1 / gm + lg**5 * mpmath.exp(1.5 * w) / gm / lead**2
        z1, z2 = z_star_bounds(_int_genus(g), L, precision + GUARD_DIGITS)
        out = {
            "term1": 1 / lead,
            "term2": delta_y + 2 * delta_n,
            "term3": (z1 + z2) / lead**2,
        }
        out["total"] = out["term1"] + out["term2"] + out["term3"]
    return out


def prob_no_short_handle_bound(g, profile: ThresholdProfile, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    with mpmath.workdps(precision):
        return +prob_no_short_handle_terms(g, profile, precision)["total"]


# sweeps --------------------------------------------------------------------------------


def mode_consistency(split: TopologySplit, L, precision: int = DEFAULT_PRECISION, budget: int | None = None) -> mpmath.mpf:
    """eps-hat with asymptotic/exact in [1/(1+eps), 1+eps]."""
    ex = expected_count(split, L, EXACT, precision, budget).value
    asym = expected_count(split, L, ASYMPTOTIC, precision, budget).value
    r = asym / ex
    return max(r, 1 / r) - 1


def sweep_rows(kind: str, genera, omega_choice: str = DEFAULT_OMEGA, sign: int = -1, mode: str = ASYMPTOTIC, precision: int = DEFAULT_PRECISION):
    """Rows (g, L, mode, value, leading, ratio) for the (1,1) or (0,3) counts or E[Y]."""
    rows = []
    for g in genera:
        L = threshold_L(ThresholdProfile(g, sign, omega_choice))
        if kind == "E[Y]":
            res = expected_pair_disjoint(_int_genus(g), L, mode, precision)
        else:
            split = TopologySplit.one_handle(_int_genus(g)) if kind == "n11" else TopologySplit.pants(_int_genus(g))
            res = expected_count(split, L, mode, precision)
        rows.append({"g": g, "L": L, "mode": mode, "value": res.value, "leading": res.leading_term, "ratio": res.ratio})
    return rows


def sweep_csv(rows, digits: int = 20) -> str:
    return write_csv(rows, SWEEP_COLUMNS, digits)


def sweep_json(rows, digits: int = 20) -> str:
    return write_json(rows, SWEEP_COLUMNS, digits)
