"""Independent numerical oracles shared by the tests.

Nothing here goes through the package's closed-form integrators: volume
polynomials are expanded monomial by monomial into float functions and
integrated by mpmath's adaptive quadrature.
"""

import functools
import itertools
import math

import mpmath

from wpmoduli.volumes import volume_polynomial, volume_value
from wpmoduli.volumes._common import is_stable

fp = mpmath.fp


def _gl_nodes(degree):
    """Gauss-Legendre nodes and weights on [0, 1]; 3 * 2**(degree - 1) of them."""
    rule = mpmath.calculus.quadrature.GaussLegendre(mpmath.mp)
    nodes = rule.calc_nodes(degree, 80)
    return [((float(x) + 1) / 2, float(w) / 2) for x, w in nodes]


def cube_quad(f, dim, degree=3):
    """Tensor Gauss-Legendre on [0,1]^dim at two degrees; returns (value, error estimate)."""
    out = []
    for d in (degree, degree + 1):
        nodes = _gl_nodes(d)
        total = math.fsum(
            math.prod(w for _, w in pts) * f(*(x for x, _ in pts)) for pts in itertools.product(nodes, repeat=dim)
        )
        out.append(total)
    return out[1], abs(out[1] - out[0])


def _checked(f, dim):
    val, err = cube_quad(f, dim)
    assert err <= 1e-13 * abs(val) or val == 0, f"quadrature not converged: {err} vs {val}"
    return val


@functools.lru_cache(maxsize=None)
def float_poly(g, n):
    """V_{g,n} as a plain float function built from the expanded monomials."""
    if n == 0:
        val = float(volume_value(g, 0).evaluate(20))
        return lambda *x: val
    terms = []
    for alpha, c in volume_polynomial(g, n).monomials():
        terms.append((alpha, float(c.evaluate(20))))

    def f(*x):
        sq = [t * t for t in x]
        return math.fsum(c * math.prod(s**a for s, a in zip(sq, alpha)) for alpha, c in terms)

    return f


def vg_float(g):
    return float(volume_value(g, 0).evaluate(20))


def quad_two_piece(g, g0, k, L):
    """Prefactor-free (1/V_g) int_{sum x <= L} V_{g0,k}(x) V_{g1,k}(x) prod x dx, k in {1, 3}."""
    g1 = g - g0 - k + 1
    a, b = float_poly(g0, k), float_poly(g1, k)
    L = float(L)
    if k == 1:
        val = fp.quad(lambda x: a(x) * b(x) * x, [0, L])
    elif k == 3:
        # unit cube: x1 = L u, x2 = (L - x1) v, x3 = (L - x1 - x2) w
        def f(u, v, w):
            x1 = L * u
            x2 = (L - x1) * v
            x3 = (L - x1 - x2) * w
            jac = L * (L - x1) * (L - x1 - x2)
            return a(x1, x2, x3) * b(x1, x2, x3) * x1 * x2 * x3 * jac

        val = _checked(f, 3)
    else:
        raise ValueError(k)
    return val / vg_float(g)


def quad_pair(g, L):
    """(1/4V_g) int_{[0,L]^2} V11(x) x V11(y) y V_{g-2,2}(x, y)."""
    v = float_poly(g - 2, 2)
    v11 = lambda t: (t * t + 4 * math.pi**2) / 24  # noqa: E731
    L = float(L)
    val = L * L * _checked(lambda u, w: v11(L * u) * L * u * v11(L * w) * L * w * v(L * u, L * w), 2)
    return val / 4 / vg_float(g)


# Mirzakhani's recursion, transcribed literally and integrated numerically


def _fermi(t):
    if t > 0:
        e = math.exp(-t)
        return e / (1 + e)
    return 1 / (1 + math.exp(t))


def _H(x, y):
    return _fermi((x + y) / 2) + _fermi((x - y) / 2)


# the kernel decays like e^{-x/2}; past this the tail is far below 1e-20
CUT = [0, 10, 40, 160]


def _V(g, n):
    if not is_stable(g, n):
        return None
    f = float_poly(g, n)
    if (g, n) == (1, 1):
        # the recursion runs with the orbifold normalisation of V_{1,1}
        return lambda *x: f(*x) / 2
    return f


def recursion_sides(g, n, L):
    """(d/dL1 (L1 V(L)), right-hand side of the recursion) at the point L."""
    L = [float(t) for t in L]
    V = float_poly(g, n)
    h = 1e-4
    lhs = ((L[0] + h) * V(L[0] + h, *L[1:]) - (L[0] - h) * V(L[0] - h, *L[1:])) / (2 * h)
    L1, rest = L[0], L[1:]
    total = 0.0
    low = _V(g, n - 1)
    for j in range(len(rest)):
        others = rest[:j] + rest[j + 1 :]
        if low is not None:
            total += fp.quad(lambda x: x * (_H(x, L1 + rest[j]) + _H(x, L1 - rest[j])) * low(x, *others), CUT) / 2
    con = _V(g - 1, n + 1) if g >= 1 else None
    splits = []
    idx = range(len(rest))
    for g1 in range(g + 1):
        for r in range(len(rest) + 1):
            for I in itertools.combinations(idx, r):
                J = [i for i in idx if i not in I]
                A, B = _V(g1, r + 1), _V(g - g1, len(J) + 1)
                if A is not None and B is not None:
                    splits.append((A, [rest[i] for i in I], B, [rest[i] for i in J]))

    def inner(x, y):
        s = con(x, y, *rest) if con is not None else 0.0
        for A, a, B, b in splits:
            s += A(x, *a) * B(y, *b)
        return x * y * _H(x + y, L1) * s

    total += fp.quad(inner, CUT, CUT) / 2
    return lhs, total
