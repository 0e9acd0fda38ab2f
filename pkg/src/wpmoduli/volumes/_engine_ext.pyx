# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
# distutils: libraries = gmp
"""Compiled recursion engine: the same algorithm as ``_engine_py`` with the
inner sums running on GMP rationals.

Multisets are keyed additively in a 64-bit word.  Part value ``v`` gets a
bit field wide enough for its largest possible multiplicity ``MAX_DEGREE // v``
(at most 56 bits in total for degree 30), which caps the supported degree.
"""

from cython.operator cimport dereference as deref
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

import threading
from fractions import Fraction
from math import comb

from ._common import (
    base_table,
    degree,
    dependencies,
    is_stable,
    kernel_coefficient,
    pair_kernel,
    partitions,
)

cdef enum:
    _MAX_DEGREE = 30

BACKEND = "compiled"
MAX_DEGREE = _MAX_DEGREE


cdef extern from "gmp.h":
    ctypedef struct __mpq_struct:
        pass
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpq_struct* mpq_ptr
    ctypedef __mpz_struct* mpz_ptr
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    int mpq_set_str(mpq_ptr, const char*, int)
    void mpq_canonicalize(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    char* mpq_get_str(char*, int, mpq_ptr)


cdef uint64_t UNIT[_MAX_DEGREE + 1]


cdef int _init_units() except -1:
    cdef int v, width, cap, offset = 0
    UNIT[0] = 0
    for v in range(1, _MAX_DEGREE + 1):
        UNIT[v] = (<uint64_t>1) << offset
        cap = _MAX_DEGREE // v
        width = 0
        while cap:
            width += 1
            cap >>= 1
        offset += width
    if offset > 64:
        raise RuntimeError("multiset key layout does not fit in 64 bits")
    return 0


_init_units()


cdef inline uint64_t unit(int v) nogil:
    if v <= 0:
        return 0
    return UNIT[v]


cdef class _Table:
    cdef int size
    cdef __mpq_struct* coef
    cdef unordered_map[uint64_t, int] index
    cdef dict items

    def __cinit__(self):
        self.size = 0
        self.coef = NULL

    def __dealloc__(self):
        cdef int i
        if self.coef != NULL:
            for i in range(self.size):
                mpq_clear(&self.coef[i])
            free(self.coef)

    cdef mpq_ptr get(self, uint64_t key):
        cdef unordered_map[uint64_t, int].iterator it = self.index.find(key)
        if it == self.index.end():
            return NULL
        return &self.coef[deref(it).second]


cdef void set_fraction(mpq_ptr q, object value):
    cdef bytes text = str(Fraction(value)).encode("ascii")
    if mpq_set_str(q, text, 10) != 0:
        raise ValueError("bad rational")
    mpq_canonicalize(q)


cdef object get_fraction(mpq_ptr q):
    cdef size_t size = mpz_sizeinbase(mpq_numref(q), 10) + mpz_sizeinbase(mpq_denref(q), 10) + 3
    cdef char* buf = <char*>malloc(size)
    if buf == NULL:
        raise MemoryError()
    try:
        mpq_get_str(buf, 10, q)
        return Fraction((<bytes>buf).decode("ascii"))
    finally:
        free(buf)


cdef _Table make_table(dict items):
    cdef _Table t = _Table()
    cdef int i = 0
    cdef uint64_t key
    t.items = items
    t.size = len(items)
    t.coef = <__mpq_struct*>malloc(max(t.size, 1) * sizeof(__mpq_struct))
    if t.coef == NULL:
        raise MemoryError()
    for alpha, value in items.items():
        mpq_init(&t.coef[i])
        set_fraction(&t.coef[i], value)
        key = 0
        for v in alpha:
            key += unit(v)
        t.index[key] = i
        i += 1
    return t


cdef class _Constants:
    """Kernel coefficients as GMP rationals, indexed on a dense grid."""
    cdef int dim
    cdef __mpq_struct* pair      # pair_kernel(a, b, m) at (a*dim + b)*(dim+2) + m
    cdef __mpq_struct* single    # kernel_coefficient(k, m) at k*(dim+2) + m

    def __cinit__(self, int dim):
        cdef int a, b, m, k, idx
        self.dim = dim
        self.pair = <__mpq_struct*>malloc(dim * dim * (dim + 2) * sizeof(__mpq_struct))
        self.single = <__mpq_struct*>malloc(dim * (dim + 2) * sizeof(__mpq_struct))
        if self.pair == NULL or self.single == NULL:
            raise MemoryError()
        for a in range(dim):
            for b in range(dim):
                for m in range(dim + 2):
                    idx = (a * dim + b) * (dim + 2) + m
                    mpq_init(&self.pair[idx])
                    if a + b < dim:
                        set_fraction(&self.pair[idx], pair_kernel(a, b, m))
        for k in range(dim):
            for m in range(dim + 2):
                idx = k * (dim + 2) + m
                mpq_init(&self.single[idx])
                set_fraction(&self.single[idx], kernel_coefficient(k, m))

    def __dealloc__(self):
        cdef int i
        if self.pair != NULL:
            for i in range(self.dim * self.dim * (self.dim + 2)):
                mpq_clear(&self.pair[i])
            free(self.pair)
        if self.single != NULL:
            for i in range(self.dim * (self.dim + 2)):
                mpq_clear(&self.single[i])
            free(self.single)


cdef class RecursionEngine:
    """Memoised solver for the pi-stripped coefficient tables."""

    cdef dict _tables
    cdef _Constants _const
    cdef object _lock
    cdef int _max_degree

    backend = BACKEND

    def __init__(self, int max_degree=16):
        if max_degree > MAX_DEGREE:
            raise ValueError(f"compiled engine stops at degree {MAX_DEGREE}")
        self._tables = {}
        self._max_degree = max_degree
        self._const = _Constants(max_degree + 1)
        self._lock = threading.RLock()

    def table(self, int g, int n):
        """Coefficients of V_{g,n} keyed by non-increasing exponent tuples."""
        if n < 1 or not is_stable(g, n):
            raise ValueError(f"no recursion table for (g, n) = ({g}, {n})")
        if degree(g, n) > self._max_degree:
            raise ValueError(f"degree {degree(g, n)} exceeds this engine's limit {self._max_degree}")
        with self._lock:
            self._build(g, n)
            return dict((<_Table>self._tables[(g, n)]).items)

    def _build(self, int g, int n):
        if (g, n) in self._tables:
            return
        seed = base_table(g, n)
        if seed is None:
            for dep in dependencies(g, n):
                self._build(*dep)
            seed = self._solve(g, n)
        self._tables[(g, n)] = make_table(seed)

    cdef dict _solve(self, int g, int n):
        cdef int d = degree(g, n)
        cdef int dim = self._const.dim
        cdef int a1, srest, room, a, b, g1, g2, nI, nJ, n1, n2, sI, sJ, d1, d2
        cdef int v, cnt, top, p0
        cdef long w, binom
        cdef uint64_t krest, kI, kJ, ka, kr
        cdef _Table con = None
        cdef _Table prev = None
        cdef _Table t1, t2
        cdef mpq_ptr c
        cdef mpq_ptr c1
        cdef mpq_ptr c2
        cdef __mpq_struct acc_s, part_s, tmp_s, wq_s
        cdef mpq_ptr acc = &acc_s
        cdef mpq_ptr part = &part_s
        cdef mpq_ptr tmp = &tmp_s
        cdef mpq_ptr wq = &wq_s
        cdef vector[long] sub_w
        cdef vector[uint64_t] sub_k
        cdef vector[int] sub_s
        cdef vector[int] sub_n
        cdef size_t si, sj, nsub
        cdef dict out = {}

        mpq_init(acc)
        mpq_init(part)
        mpq_init(tmp)
        mpq_init(wq)
        try:
            if g >= 1 and (g - 1, n + 1) in self._tables:
                con = self._tables[(g - 1, n + 1)]
            if n >= 2 and (g, n - 1) in self._tables:
                prev = self._tables[(g, n - 1)]

            for alpha in partitions(d, n):
                a1 = alpha[0]
                rest = alpha[1:]
                krest = 0
                srest = 0
                groups = {}
                for v in rest:
                    krest += unit(v)
                    srest += v
                    groups[v] = groups.get(v, 0) + 1
                glist = sorted(groups.items())
                mpq_set_si(acc, 0, 1)

                if con is not None:
                    room = d - 2 - srest
                    for a in range(room + 1):
                        ka = krest + unit(a)
                        for b in range(a, room - a + 1):
                            if a + b + 2 < a1:
                                continue
                            c = con.get(ka + unit(b))
                            if c == NULL:
                                continue
                            mpq_mul(tmp, c, &self._const.pair[(a * dim + b) * (dim + 2) + a1])
                            if a == b:
                                mpq_set_si(wq, 1, 2)
                                mpq_mul(tmp, tmp, wq)
                            mpq_add(acc, acc, tmp)

                sub_w.clear(); sub_k.clear(); sub_s.clear(); sub_n.clear()
                sub_w.push_back(1); sub_k.push_back(0); sub_s.push_back(0); sub_n.push_back(0)
                for v, cnt in glist:
                    nsub = sub_w.size()
                    for si in range(nsub):
                        for sj in range(1, cnt + 1):
                            sub_w.push_back(sub_w[si] * comb(cnt, sj))
                            sub_k.push_back(sub_k[si] + sj * unit(v))
                            sub_s.push_back(sub_s[si] + sj * v)
                            sub_n.push_back(sub_n[si] + sj)

                for si in range(sub_w.size()):
                    w = sub_w[si]
                    kI = sub_k[si]
                    sI = sub_s[si]
                    nI = sub_n[si]
                    kJ = krest - kI
                    sJ = srest - sI
                    nJ = n - 1 - nI
                    n1 = nI + 1
                    n2 = nJ + 1
                    for g1 in range(g + 1):
                        g2 = g - g1
                        if 2 * g1 - 2 + n1 <= 0 or 2 * g2 - 2 + n2 <= 0:
                            continue
                        d1 = 3 * g1 - 3 + n1 - sI
                        d2 = 3 * g2 - 3 + n2 - sJ
                        if d1 < 0 or d2 < 0:
                            continue
                        t1 = self._tables[(g1, n1)]
                        t2 = self._tables[(g2, n2)]
                        mpq_set_si(part, 0, 1)
                        for a in range(d1 + 1):
                            c1 = t1.get(kI + unit(a))
                            if c1 == NULL:
                                continue
                            for b in range(max(0, a1 - a - 2), d2 + 1):
                                c2 = t2.get(kJ + unit(b))
                                if c2 == NULL:
                                    continue
                                mpq_mul(tmp, c1, c2)
                                mpq_mul(tmp, tmp, &self._const.pair[(a * dim + b) * (dim + 2) + a1])
                                mpq_add(part, part, tmp)
                        if mpq_sgn(part) != 0:
                            mpq_set_si(wq, w, 2)
                            mpq_canonicalize(wq)
                            mpq_mul(part, part, wq)
                            mpq_add(acc, acc, part)

                if prev is not None:
                    for v, cnt in glist:
                        kr = krest - unit(v)
                        top = d - 1 - (srest - v)
                        p0 = a1 + v
                        binom = comb(2 * p0, 2 * a1)
                        mpq_set_si(part, 0, 1)
                        for a in range(max(0, p0 - 1), top + 1):
                            c = prev.get(kr + unit(a))
                            if c == NULL:
                                continue
                            mpq_mul(tmp, c, &self._const.single[a * (dim + 2) + p0])
                            mpq_add(part, part, tmp)
                        if mpq_sgn(part) != 0:
                            mpq_set_si(wq, cnt * binom, 1)
                            mpq_mul(part, part, wq)
                            mpq_add(acc, acc, part)

                if mpq_sgn(acc) != 0:
                    mpq_set_si(wq, 1, 2 * a1 + 1)
                    mpq_mul(acc, acc, wq)
                    out[alpha] = get_fraction(acc)
        finally:
            mpq_clear(acc)
            mpq_clear(part)
            mpq_clear(tmp)
            mpq_clear(wq)
        return out
