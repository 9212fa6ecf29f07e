# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled reduction kernel.

Same packed-key layout as :mod:`projram.groebner.monomials`, split into
64-bit limbs (least significant first). No exponent field straddles a limb
and field arithmetic never carries, so every limb is handled on its own.
Reduction merges sorted term arrays into a second buffer and swaps.
"""

from libc.stdint cimport uint64_t, uint32_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

from .monomials import ExponentOverflowError

NAME = "cython"

cdef uint64_t MASK64 = 0xFFFFFFFFFFFFFFFF


cdef class CPoly:
    cdef Py_ssize_t n
    cdef int nl
    cdef uint64_t* mons
    cdef uint32_t* coefs

    def __dealloc__(self):
        free(self.mons)
        free(self.coefs)

    def __len__(self):
        return self.n


cdef CPoly _alloc(Py_ssize_t n, int nl):
    cdef CPoly f = CPoly.__new__(CPoly)
    f.n = n
    f.nl = nl
    cdef Py_ssize_t cap = n if n > 0 else 1
    f.mons = <uint64_t*> malloc(cap * nl * sizeof(uint64_t))
    f.coefs = <uint32_t*> malloc(cap * sizeof(uint32_t))
    if f.mons == NULL or f.coefs == NULL:
        raise MemoryError()
    return f


cdef struct Buf:
    Py_ssize_t n
    Py_ssize_t cap
    uint64_t* mons
    uint32_t* coefs


cdef int buf_init(Buf* b, Py_ssize_t cap, int nl) except -1:
    if cap < 16:
        cap = 16
    b.n = 0
    b.cap = cap
    b.mons = <uint64_t*> malloc(cap * nl * sizeof(uint64_t))
    b.coefs = <uint32_t*> malloc(cap * sizeof(uint32_t))
    if b.mons == NULL or b.coefs == NULL:
        raise MemoryError()
    return 0


cdef int buf_reserve(Buf* b, Py_ssize_t need, int nl) except -1:
    cdef Py_ssize_t cap
    cdef uint64_t* m
    cdef uint32_t* c
    if need <= b.cap:
        return 0
    cap = b.cap * 2
    if cap < need:
        cap = need
    m = <uint64_t*> realloc(b.mons, cap * nl * sizeof(uint64_t))
    if m == NULL:
        raise MemoryError()
    b.mons = m
    c = <uint32_t*> realloc(b.coefs, cap * sizeof(uint32_t))
    if c == NULL:
        raise MemoryError()
    b.coefs = c
    b.cap = cap
    return 0


cdef void buf_free(Buf* b):
    free(b.mons)
    free(b.coefs)
    b.mons = NULL
    b.coefs = NULL


cdef inline int cmp_mon(const uint64_t* a, const uint64_t* b, int nl) nogil:
    cdef int i = nl - 1
    while i >= 0:
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
        i -= 1
    return 0


cdef struct Acc:
    # append-only term arena
    Py_ssize_t n
    Py_ssize_t cap
    uint64_t* mons
    uint64_t* coefs
    # open-addressing index into the arena, -1 for empty slots
    Py_ssize_t* table
    Py_ssize_t tmask
    # max-heap of arena indices
    Py_ssize_t* heap
    Py_ssize_t hn


cdef inline uint64_t mix(const uint64_t* m, int nl) noexcept nogil:
    cdef uint64_t h = <uint64_t> 0x9E3779B97F4A7C15ULL
    cdef int j
    for j in range(nl):
        h = (h ^ m[j]) * <uint64_t> 0xBF58476D1CE4E5B9ULL
        h ^= h >> 31
    return h


cdef int acc_init(Acc* a, Py_ssize_t cap, int nl) except -1:
    cdef Py_ssize_t t = 64, i
    if cap < 16:
        cap = 16
    while t < 2 * cap:
        t *= 2
    a.n = 0
    a.cap = cap
    a.hn = 0
    a.tmask = t - 1
    a.mons = <uint64_t*> malloc(cap * nl * sizeof(uint64_t))
    a.coefs = <uint64_t*> malloc(cap * sizeof(uint64_t))
    a.heap = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    a.table = <Py_ssize_t*> malloc(t * sizeof(Py_ssize_t))
    if a.mons == NULL or a.coefs == NULL or a.heap == NULL or a.table == NULL:
        raise MemoryError()
    for i in range(t):
        a.table[i] = -1
    return 0


cdef void acc_free(Acc* a):
    free(a.mons)
    free(a.coefs)
    free(a.heap)
    free(a.table)
    a.mons = NULL
    a.coefs = NULL
    a.heap = NULL
    a.table = NULL


cdef int acc_grow(Acc* a, int nl) except -1:
    cdef Py_ssize_t cap = 2 * a.cap, t = 2 * (a.tmask + 1), i, s
    cdef uint64_t* m = <uint64_t*> realloc(a.mons, cap * nl * sizeof(uint64_t))
    if m == NULL:
        raise MemoryError()
    a.mons = m
    cdef uint64_t* c = <uint64_t*> realloc(a.coefs, cap * sizeof(uint64_t))
    if c == NULL:
        raise MemoryError()
    a.coefs = c
    cdef Py_ssize_t* h = <Py_ssize_t*> realloc(a.heap, cap * sizeof(Py_ssize_t))
    if h == NULL:
        raise MemoryError()
    a.heap = h
    a.cap = cap
    free(a.table)
    a.table = <Py_ssize_t*> malloc(t * sizeof(Py_ssize_t))
    if a.table == NULL:
        raise MemoryError()
    a.tmask = t - 1
    for i in range(t):
        a.table[i] = -1
    for i in range(a.n):
        s = <Py_ssize_t> (mix(&a.mons[i * nl], nl) & <uint64_t> a.tmask)
        while a.table[s] != -1:
            s = (s + 1) & a.tmask
        a.table[s] = i
    return 0


cdef inline bint mon_eq(const uint64_t* a, const uint64_t* b, int nl) noexcept nogil:
    cdef int j
    for j in range(nl):
        if a[j] != b[j]:
            return False
    return True


cdef void heap_push(Acc* a, Py_ssize_t idx, int nl) noexcept nogil:
    cdef Py_ssize_t pos = a.hn, parent
    a.hn += 1
    while pos > 0:
        parent = (pos - 1) >> 1
        if cmp_mon(&a.mons[a.heap[parent] * nl], &a.mons[idx * nl], nl) >= 0:
            break
        a.heap[pos] = a.heap[parent]
        pos = parent
    a.heap[pos] = idx


cdef Py_ssize_t heap_pop(Acc* a, int nl) noexcept nogil:
    cdef Py_ssize_t top = a.heap[0], last, pos = 0, child, n
    a.hn -= 1
    n = a.hn
    if n == 0:
        return top
    last = a.heap[n]
    while True:
        child = 2 * pos + 1
        if child >= n:
            break
        if child + 1 < n and cmp_mon(&a.mons[a.heap[child + 1] * nl], &a.mons[a.heap[child] * nl], nl) > 0:
            child += 1
        if cmp_mon(&a.mons[a.heap[child] * nl], &a.mons[last * nl], nl) <= 0:
            break
        a.heap[pos] = a.heap[child]
        pos = child
    a.heap[pos] = last
    return top


cdef int acc_add(Acc* a, const uint64_t* m, uint64_t c, uint64_t p, int nl) except -1:
    """Add c * m, creating the term if it is new."""
    cdef Py_ssize_t s, idx
    s = <Py_ssize_t> (mix(m, nl) & <uint64_t> a.tmask)
    while True:
        idx = a.table[s]
        if idx == -1:
            break
        if mon_eq(&a.mons[idx * nl], m, nl):
            a.coefs[idx] = (a.coefs[idx] + c) % p
            return 0
        s = (s + 1) & a.tmask
    if 2 * (a.n + 1) > a.tmask + 1 or a.n == a.cap:
        acc_grow(a, nl)
        s = <Py_ssize_t> (mix(m, nl) & <uint64_t> a.tmask)
        while a.table[s] != -1:
            s = (s + 1) & a.tmask
    idx = a.n
    a.n += 1
    memcpy(&a.mons[idx * nl], m, nl * sizeof(uint64_t))
    a.coefs[idx] = c
    a.table[s] = idx
    heap_push(a, idx, nl)
    return 0


cdef class Kernel:
    cdef public object enc
    cdef public object name
    cdef public long long steps
    cdef uint64_t p
    cdef int nl
    cdef bint drl
    cdef uint64_t fm[8]
    cdef uint64_t guard[8]
    cdef uint64_t off[8]
    cdef int deg_limb
    cdef int deg_shift
    cdef uint64_t ones[8]

    def __init__(self, enc, p):
        cdef int i
        self.enc = enc
        self.name = NAME
        self.steps = 0
        self.p = p
        self.nl = enc.nlimbs
        if self.nl > 8:
            raise ValueError("at most 62 variables are supported by the compiled kernel")
        self.drl = enc.kind == "degrevlex"
        for i in range(self.nl):
            self.fm[i] = (enc.field_mask >> (64 * i)) & MASK64
            self.guard[i] = (enc.guard >> (64 * i)) & MASK64
            self.off[i] = (enc.off >> (64 * i)) & MASK64
            self.ones[i] = (enc.ones >> (64 * i)) & MASK64
        self.deg_limb = enc.deg_shift // 64
        self.deg_shift = enc.deg_shift % 64

    def pair_set(self):
        return PairSet(self)

    # -- conversion -------------------------------------------------------
    def from_terms(self, keys, coeffs):
        cdef Py_ssize_t n = len(keys), i
        cdef int j, nl = self.nl
        cdef CPoly f = _alloc(n, nl)
        for i in range(n):
            k = keys[i]
            for j in range(nl):
                f.mons[i * nl + j] = (k >> (64 * j)) & MASK64
            f.coefs[i] = <uint32_t> (coeffs[i] % self.p)
        return f

    def to_terms(self, CPoly f):
        cdef Py_ssize_t i
        keys = []
        coeffs = []
        for i in range(f.n):
            keys.append(self._key(f, i))
            coeffs.append(f.coefs[i])
        return keys, coeffs

    cdef object _key(self, CPoly f, Py_ssize_t i):
        cdef int j
        k = 0
        for j in range(self.nl - 1, -1, -1):
            k = (k << 64) | f.mons[i * self.nl + j]
        return k

    def nterms(self, CPoly f):
        return f.n

    def lead(self, CPoly f):
        return self._key(f, 0)

    def monic(self, CPoly f):
        if f.n == 0 or f.coefs[0] == 1:
            return f
        cdef uint64_t s = _inv(f.coefs[0], self.p)
        cdef CPoly g = _alloc(f.n, f.nl)
        cdef Py_ssize_t i
        memcpy(g.mons, f.mons, f.n * f.nl * sizeof(uint64_t))
        for i in range(f.n):
            g.coefs[i] = <uint32_t> ((f.coefs[i] * s) % self.p)
        return g

    # -- monomial helpers ---------------------------------------------------
    cdef inline bint divides(self, const uint64_t* a, const uint64_t* b):
        """Whether monomial a divides monomial b."""
        cdef int j
        cdef uint64_t x, y, h
        for j in range(self.nl):
            h = self.guard[j]
            if self.drl:
                x = a[j] & self.fm[j]
                y = b[j] & self.fm[j]
            else:
                x = b[j] & self.fm[j]
                y = a[j] & self.fm[j]
            if (((x | h) - y) & h) != h:
                return False
        return True

    cdef inline uint64_t support(self, const uint64_t* m) noexcept:
        """Bit set per variable with positive exponent (variables wrap mod 64)."""
        cdef int j
        cdef uint64_t e, sup, out = 0
        for j in range(self.nl):
            if self.drl:
                e = self.off[j] - (m[j] & self.fm[j])
            else:
                e = m[j] & self.fm[j]
            sup = ((e | self.guard[j]) - self.ones[j]) & self.guard[j]
            # gather bit 7 of each byte into the top byte
            sup = ((sup >> 7) * <uint64_t> 0x0102040810204080ULL) >> 56
            out |= sup << ((8 * j) & 63)
        return out

    cdef inline int check_deg(self, const uint64_t* m) except -1:
        if ((m[self.deg_limb] >> self.deg_shift) & 0xFFFF) > 127:
            raise ExponentOverflowError("monomial degree overflow")
        return 0

    # -- arithmetic ----------------------------------------------------------
    def spoly(self, CPoly f, CPoly g, lcm):
        """(lcm/lm f) f - (lcm/lm g) g for monic f and g."""
        cdef int nl = self.nl, j
        cdef uint64_t qf[8]
        cdef uint64_t qg[8]
        cdef uint64_t l
        for j in range(nl):
            l = (lcm >> (64 * j)) & MASK64
            qf[j] = l + self.off[j] - f.mons[j]
            qg[j] = l + self.off[j] - g.mons[j]
        cdef Buf out
        buf_init(&out, f.n + g.n, nl)
        try:
            self._merge(&out, f, 1, qf, 1, g, 1, qg, self.p - 1)
            return _from_buf(&out, nl)
        finally:
            buf_free(&out)

    cdef int _merge(self, Buf* out, CPoly a, Py_ssize_t ia, uint64_t* qa, uint64_t ca,
                    CPoly b, Py_ssize_t ib, uint64_t* qb, uint64_t cb) except -1:
        """out = ca * qa * a[ia:] + cb * qb * b[ib:]; qa may be NULL for identity."""
        cdef int nl = self.nl, j, c
        cdef uint64_t p = self.p
        cdef uint64_t ma[8]
        cdef uint64_t mb[8]
        cdef uint64_t v
        cdef Py_ssize_t na = a.n, nb = b.n
        buf_reserve(out, (na - ia) + (nb - ib), nl)
        out.n = 0
        cdef bint have_a = False, have_b = False
        while True:
            if not have_a and ia < na:
                for j in range(nl):
                    ma[j] = a.mons[ia * nl + j] if qa == NULL else a.mons[ia * nl + j] + qa[j] - self.off[j]
                have_a = True
            if not have_b and ib < nb:
                for j in range(nl):
                    mb[j] = b.mons[ib * nl + j] + qb[j] - self.off[j]
                have_b = True
            if not have_a and not have_b:
                break
            if have_a and have_b:
                c = cmp_mon(ma, mb, nl)
            elif have_a:
                c = 1
            else:
                c = -1
            if c > 0:
                v = (a.coefs[ia] * ca) % p
                if qa != NULL:
                    self.check_deg(ma)
                memcpy(&out.mons[out.n * nl], ma, nl * sizeof(uint64_t))
                out.coefs[out.n] = <uint32_t> v
                out.n += 1
                ia += 1
                have_a = False
            elif c < 0:
                v = (b.coefs[ib] * cb) % p
                self.check_deg(mb)
                memcpy(&out.mons[out.n * nl], mb, nl * sizeof(uint64_t))
                out.coefs[out.n] = <uint32_t> v
                out.n += 1
                ib += 1
                have_b = False
            else:
                v = ((a.coefs[ia] * ca) % p + (b.coefs[ib] * cb) % p) % p
                if v:
                    memcpy(&out.mons[out.n * nl], ma, nl * sizeof(uint64_t))
                    out.coefs[out.n] = <uint32_t> v
                    out.n += 1
                ia += 1
                ib += 1
                have_a = False
                have_b = False
        return 0

    def reduce(self, CPoly f, basis, bint full=True, max_steps=None):
        """Normal form of f by monic basis; None if max_steps ran out.

        The remainder-in-progress lives in a hash-indexed max-heap, so a step
        costs O(len(g) log n) instead of a pass over the whole polynomial.
        """
        cdef int nl = self.nl, j
        cdef Py_ssize_t nbasis = len(basis), gi, i, idx
        cdef long long steps = 0
        cdef long long limit = -1 if max_steps is None else max_steps
        cdef uint64_t p = self.p, c, msk
        cdef uint64_t q[8]
        cdef uint64_t t[8]
        cdef uint64_t* m
        cdef CPoly g
        cdef Acc acc
        cdef Buf out
        cdef uint64_t** gm = <uint64_t**> malloc((nbasis + 1) * sizeof(uint64_t*))
        cdef uint32_t** gc = <uint32_t**> malloc((nbasis + 1) * sizeof(uint32_t*))
        cdef Py_ssize_t* gn = <Py_ssize_t*> malloc((nbasis + 1) * sizeof(Py_ssize_t))
        cdef uint64_t* gmask = <uint64_t*> malloc((nbasis + 1) * sizeof(uint64_t))
        if gm == NULL or gc == NULL or gn == NULL or gmask == NULL:
            free(gm); free(gc); free(gn); free(gmask)
            raise MemoryError()
        acc.mons = NULL
        out.mons = NULL
        try:
            for gi in range(nbasis):
                g = <CPoly> basis[gi]
                gm[gi] = g.mons
                gc[gi] = g.coefs
                gn[gi] = g.n
                gmask[gi] = self.support(g.mons)
            acc_init(&acc, 4 * f.n + 16, nl)
            buf_init(&out, f.n, nl)
            for i in range(f.n):
                acc_add(&acc, &f.mons[i * nl], f.coefs[i], p, nl)
            while acc.hn:
                idx = heap_pop(&acc, nl)
                c = acc.coefs[idx]
                if c == 0:
                    continue
                m = &acc.mons[idx * nl]
                msk = self.support(m)
                gi = -1
                for i in range(nbasis):
                    if (gmask[i] & ~msk) == 0 and self.divides(gm[i], m):
                        gi = i
                        break
                if gi < 0:
                    buf_reserve(&out, out.n + 1, nl)
                    memcpy(&out.mons[out.n * nl], m, nl * sizeof(uint64_t))
                    out.coefs[out.n] = <uint32_t> c
                    out.n += 1
                    if not full:
                        while acc.hn:
                            idx = heap_pop(&acc, nl)
                            if acc.coefs[idx]:
                                buf_reserve(&out, out.n + 1, nl)
                                memcpy(&out.mons[out.n * nl], &acc.mons[idx * nl], nl * sizeof(uint64_t))
                                out.coefs[out.n] = <uint32_t> acc.coefs[idx]
                                out.n += 1
                        break
                    continue
                steps += 1
                if limit >= 0 and steps > limit:
                    self.steps += steps
                    return None
                for j in range(nl):
                    q[j] = m[j] - gm[gi][j]
                c = p - c
                for i in range(1, gn[gi]):
                    for j in range(nl):
                        t[j] = gm[gi][i * nl + j] + q[j]
                    self.check_deg(t)
                    acc_add(&acc, t, (c * gc[gi][i]) % p, p, nl)
            self.steps += steps
            return _from_buf(&out, nl)
        finally:
            free(gm); free(gc); free(gn); free(gmask)
            if acc.mons != NULL:
                acc_free(&acc)
            if out.mons != NULL:
                buf_free(&out)

    def reduce_merge(self, CPoly f, basis, bint full=True, max_steps=None):
        """Merge-based normal form; same contract as :meth:`reduce`."""
        cdef int nl = self.nl, j
        cdef Py_ssize_t nbasis = len(basis), gi, pos, rest
        cdef long long steps = 0
        cdef long long limit = -1 if max_steps is None else max_steps
        cdef uint64_t p = self.p
        cdef uint64_t q[8]
        cdef uint64_t c
        cdef CPoly g, hit
        cdef Buf out, work, tmp
        cdef list gl = list(basis)
        cdef const uint64_t* m
        buf_init(&out, f.n, nl)
        buf_init(&work, f.n, nl)
        buf_init(&tmp, f.n, nl)
        cdef CPoly view = CPoly.__new__(CPoly)
        view.nl = nl
        try:
            memcpy(work.mons, f.mons, f.n * nl * sizeof(uint64_t))
            memcpy(work.coefs, f.coefs, f.n * sizeof(uint32_t))
            work.n = f.n
            pos = 0
            while pos < work.n:
                m = &work.mons[pos * nl]
                hit = None
                for gi in range(nbasis):
                    g = <CPoly> gl[gi]
                    if self.divides(g.mons, m):
                        hit = g
                        break
                if hit is None:
                    if not full:
                        rest = work.n - pos
                        buf_reserve(&out, out.n + rest, nl)
                        memcpy(&out.mons[out.n * nl], m, rest * nl * sizeof(uint64_t))
                        memcpy(&out.coefs[out.n], &work.coefs[pos], rest * sizeof(uint32_t))
                        out.n += rest
                        break
                    buf_reserve(&out, out.n + 1, nl)
                    memcpy(&out.mons[out.n * nl], m, nl * sizeof(uint64_t))
                    out.coefs[out.n] = work.coefs[pos]
                    out.n += 1
                    pos += 1
                    continue
                steps += 1
                if limit >= 0 and steps > limit:
                    self.steps += steps
                    return None
                # q = m / lm(hit), as a monomial key
                for j in range(nl):
                    q[j] = m[j] + self.off[j] - hit.mons[j]
                c = work.coefs[pos]
                # work[pos+1:] - c * q * hit[1:]
                view.n = work.n
                view.mons = work.mons
                view.coefs = work.coefs
                try:
                    self._merge(&tmp, view, pos + 1, NULL, 1, hit, 1, q, (p - c) % p)
                finally:
                    view.mons = NULL
                    view.coefs = NULL
                work, tmp = tmp, work
                pos = 0
            self.steps += steps
            return _from_buf(&out, nl)
        finally:
            buf_free(&out)
            buf_free(&work)
            buf_free(&tmp)


cdef CPoly _from_buf(Buf* b, int nl):
    cdef CPoly f = _alloc(b.n, nl)
    memcpy(f.mons, b.mons, b.n * nl * sizeof(uint64_t))
    memcpy(f.coefs, b.coefs, b.n * sizeof(uint32_t))
    return f


cdef uint64_t _inv(uint64_t x, uint64_t p):
    cdef long long r0 = p, r1 = x, s0 = 0, s1 = 1, q, t
    while r1:
        q = r0 // r1
        t = r0 - q * r1
        r0 = r1
        r1 = t
        t = s0 - q * s1
        s0 = s1
        s1 = t
    s0 %= <long long> p
    if s0 < 0:
        s0 += p
    return <uint64_t> s0


cdef struct Pair:
    uint64_t lcm[8]
    Py_ssize_t i
    Py_ssize_t j
    long long seq


cdef inline bint pair_less(Pair* a, Pair* b, int nl):
    cdef int c = cmp_mon(a.lcm, b.lcm, nl)
    if c != 0:
        return c < 0
    return a.seq < b.seq


cdef inline uint64_t byte_sum(uint64_t x) noexcept nogil:
    cdef uint64_t lanes = <uint64_t> 0x00FF00FF00FF00FFULL
    cdef uint64_t spread = <uint64_t> 0x0001000100010001ULL
    x = (x & lanes) + ((x >> 8) & lanes)
    return (x * spread) >> 48


cdef class PairSet:
    """Critical pairs with the Gebauer-Moeller update, smallest lcm first.

    Mirrors :class:`projram.groebner._pykernel.PairSet`.
    """
    cdef Kernel k
    cdef int nl
    cdef int nvars
    cdef uint64_t ones[8]
    cdef uint64_t* leads
    cdef Py_ssize_t nleads
    cdef Py_ssize_t cap_leads
    cdef Pair* heap
    cdef Py_ssize_t nheap
    cdef Py_ssize_t cap_heap
    cdef long long seq
    cdef public long long pruned
    cdef public list active

    def __cinit__(self):
        self.leads = NULL
        self.heap = NULL

    def __init__(self, Kernel k):
        cdef int j
        self.k = k
        self.nl = k.nl
        self.nvars = k.enc.nvars
        for j in range(self.nl):
            self.ones[j] = (k.enc.ones >> (64 * j)) & MASK64
        self.nleads = 0
        self.cap_leads = 64
        self.leads = <uint64_t*> malloc(self.cap_leads * self.nl * sizeof(uint64_t))
        self.nheap = 0
        self.cap_heap = 256
        self.heap = <Pair*> malloc(self.cap_heap * sizeof(Pair))
        if self.leads == NULL or self.heap == NULL:
            raise MemoryError()
        self.seq = 0
        self.pruned = 0
        self.active = []

    def __dealloc__(self):
        free(self.leads)
        free(self.heap)

    def __len__(self):
        return self.nheap

    cdef void lcm(self, const uint64_t* a, const uint64_t* b, uint64_t* out):
        cdef Kernel k = self.k
        cdef int j
        cdef uint64_t x, y, h, ge, sel, deg = 0
        for j in range(self.nl):
            h = k.guard[j]
            x = a[j] & k.fm[j]
            y = b[j] & k.fm[j]
            ge = ((x | h) - y) & h
            sel = (ge >> 7) * 0xFF
            if k.drl:
                out[j] = (y & sel) | (x & ~sel & k.fm[j])
            else:
                out[j] = (x & sel) | (y & ~sel & k.fm[j])
            deg += byte_sum(out[j])
        if k.drl:
            deg = 127 * self.nvars - deg
        out[k.deg_limb] |= deg << k.deg_shift

    cdef bint coprime(self, const uint64_t* a, const uint64_t* b):
        cdef Kernel k = self.k
        cdef int j
        cdef uint64_t ea, eb, h
        for j in range(self.nl):
            h = k.guard[j]
            if k.drl:
                ea = k.off[j] - (a[j] & k.fm[j])
                eb = k.off[j] - (b[j] & k.fm[j])
            else:
                ea = a[j] & k.fm[j]
                eb = b[j] & k.fm[j]
            if (((ea | h) - self.ones[j]) & h) & (((eb | h) - self.ones[j]) & h):
                return False
        return True

    cdef int push_raw(self, Pair* pr) except -1:
        cdef Pair* grown
        if self.nheap == self.cap_heap:
            grown = <Pair*> realloc(self.heap, 2 * self.cap_heap * sizeof(Pair))
            if grown == NULL:
                raise MemoryError()
            self.heap = grown
            self.cap_heap *= 2
        self.heap[self.nheap] = pr[0]
        self.nheap += 1
        return 0

    cdef void sift_down(self, Py_ssize_t pos):
        cdef Py_ssize_t n = self.nheap, child
        cdef Pair tmp = self.heap[pos]
        while True:
            child = 2 * pos + 1
            if child >= n:
                break
            if child + 1 < n and pair_less(&self.heap[child + 1], &self.heap[child], self.nl):
                child += 1
            if pair_less(&self.heap[child], &tmp, self.nl):
                self.heap[pos] = self.heap[child]
                pos = child
            else:
                break
        self.heap[pos] = tmp

    def update(self, hm):
        cdef Kernel k = self.k
        cdef int nl = self.nl, j
        cdef Py_ssize_t hi = self.nleads, n, m, idx, na, w
        cdef uint64_t* grown
        cdef uint64_t* h
        cdef uint64_t tmp[8]
        cdef bint drop, anycop, last
        if self.nleads == self.cap_leads:
            grown = <uint64_t*> realloc(self.leads, 2 * self.cap_leads * nl * sizeof(uint64_t))
            if grown == NULL:
                raise MemoryError()
            self.leads = grown
            self.cap_leads *= 2
        h = &self.leads[hi * nl]
        for j in range(nl):
            h[j] = (hm >> (64 * j)) & MASK64
        self.nleads += 1

        na = len(self.active)
        cdef Pair* cand = <Pair*> malloc((na + 1) * sizeof(Pair))
        cdef char* cop = <char*> malloc(na + 1)
        if cand == NULL or cop == NULL:
            free(cand)
            free(cop)
            raise MemoryError()
        try:
            for n in range(na):
                idx = self.active[n]
                self.lcm(&self.leads[idx * nl], h, cand[n].lcm)
                cand[n].i = idx
                cand[n].j = hi
                cand[n].seq = 0
                cop[n] = self.coprime(&self.leads[idx * nl], h)
            for n in range(na):
                drop = False
                anycop = False
                last = True
                for m in range(na):
                    if m == n:
                        continue
                    if cmp_mon(cand[m].lcm, cand[n].lcm, nl) == 0:
                        if cop[m]:
                            anycop = True
                        if m > n:
                            last = False
                    elif k.divides(cand[m].lcm, cand[n].lcm):
                        drop = True
                        break
                if drop or anycop or cop[n] or not last:
                    self.pruned += 1
                    continue
                cand[n].seq = -1  # marks survivors
            # Gebauer-Moeller filter of the old pairs
            w = 0
            for n in range(self.nheap):
                if k.divides(h, self.heap[n].lcm):
                    self.lcm(&self.leads[self.heap[n].i * nl], h, tmp)
                    if cmp_mon(tmp, self.heap[n].lcm, nl) != 0:
                        self.lcm(&self.leads[self.heap[n].j * nl], h, tmp)
                        if cmp_mon(tmp, self.heap[n].lcm, nl) != 0:
                            self.pruned += 1
                            continue
                self.heap[w] = self.heap[n]
                w += 1
            self.nheap = w
            for n in range(na):
                if cand[n].seq == -1:
                    cand[n].seq = self.seq
                    self.seq += 1
                    self.push_raw(&cand[n])
            n = self.nheap // 2 - 1
            while n >= 0:
                self.sift_down(n)
                n -= 1
        finally:
            free(cand)
            free(cop)
        self.active = [i for i in self.active
                       if not k.divides(h, &self.leads[<Py_ssize_t> i * nl])]
        self.active.append(hi)
        return hi

    def pop(self):
        if self.nheap == 0:
            raise IndexError("pop from empty pair set")
        cdef Pair top = self.heap[0]
        self.nheap -= 1
        if self.nheap:
            self.heap[0] = self.heap[self.nheap]
            self.sift_down(0)
        cdef int j
        key = 0
        for j in range(self.nl - 1, -1, -1):
            key = (key << 64) | top.lcm[j]
        return key, top.i, top.j
