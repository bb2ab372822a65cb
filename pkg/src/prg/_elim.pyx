# cython: language_level=3
# distutils: language = c++
"""Compiled sparse echelon basis; same contract as ``prg._elim_py``.

Reduction first runs on 64-bit keys and values held in C++ hash maps.  Any
overflow, an input outside int64, or a pivot too wide to have a 64-bit copy
abandons that attempt and the row is reduced again on Python integers.  Both paths perform the same exact
integer steps, so they return the same result.
"""
from heapq import heapify, heappop, heappush
from math import gcd

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from cython.operator cimport dereference as deref, preincrement as inc

BACKEND = "cython"

ctypedef long long i64

cdef extern from *:
    """
    static inline int prg_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int prg_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline long long prg_gcd(long long a, long long b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) { long long t = a % b; a = b; b = t; }
        return a;
    }
    """
    int prg_mul(i64 a, i64 b, i64 *r) nogil
    int prg_sub(i64 a, i64 b, i64 *r) nogil
    i64 prg_gcd(i64 a, i64 b) nogil

cdef i64 I64_MIN = -(2 ** 63) + 1
cdef i64 I64_MAX = 2 ** 63 - 1


cdef inline bint _fits(object x):
    return type(x) is int and I64_MIN <= x <= I64_MAX


cdef dict _export(unordered_map[i64, i64] &m):
    cdef dict out = {}
    cdef unordered_map[i64, i64].iterator it = m.begin()
    while it != m.end():
        out[deref(it).first] = deref(it).second
        inc(it)
    return out


cdef class SparseEliminator:
    cdef public bint track
    cdef dict _pivots
    # fast copies of the pivots that fit in 64 bits
    cdef unordered_map[i64, size_t] _fidx
    cdef vector[vector[i64]] _fkeys
    cdef vector[vector[i64]] _fvals
    cdef vector[vector[i64]] _ftags
    cdef vector[vector[i64]] _fhist

    def __init__(self, bint track=True):
        self.track = track
        self._pivots = {}

    def __len__(self):
        return len(self._pivots)

    @property
    def rank(self):
        return len(self._pivots)

    def pivot_keys(self):
        return sorted(self._pivots, reverse=True)

    cpdef tuple reduce(self, dict row, dict hist=None):
        """Top-reduce a copy of ``row``; returns ``(row, hist, lead)``."""
        cdef tuple res = self._reduce_fast(row, hist)
        if res is not None:
            return res
        return self._reduce_slow(row, hist)

    cdef tuple _reduce_fast(self, dict row, dict hist):
        cdef unordered_map[i64, i64] r
        cdef unordered_map[i64, i64] h
        cdef priority_queue[i64] heap
        cdef i64 k, c, p, q, g, mr, v, nv, t, prod
        cdef size_t i, n, pi
        cdef bint track = self.track
        cdef object key, val
        cdef unordered_map[i64, i64].iterator it
        cdef unordered_map[i64, size_t].iterator pit
        for key, val in row.items():
            if not (_fits(key) and _fits(val)):
                return None
            r[<i64>key] = <i64>val
            heap.push(<i64>key)
        if hist:
            for key, val in hist.items():
                if not (_fits(key) and _fits(val)):
                    return None
                h[<i64>key] = <i64>val
        while not heap.empty():
            k = heap.top()
            heap.pop()
            it = r.find(k)
            if it == r.end():
                continue
            c = deref(it).second
            pit = self._fidx.find(k)
            if pit == self._fidx.end():
                if k in self._pivots:
                    # pivot too wide for the fast copy
                    return None
                return _export(r), _export(h), k
            pi = deref(pit).second
            p = self._fvals[pi][0]
            if c % p == 0:
                q = c // p
            else:
                g = prg_gcd(c, p)
                mr = p // g
                q = c // g
                it = r.begin()
                while it != r.end():
                    if prg_mul(deref(it).second, mr, &prod):
                        return None
                    deref(it).second = prod
                    inc(it)
                if track:
                    it = h.begin()
                    while it != h.end():
                        if prg_mul(deref(it).second, mr, &prod):
                            return None
                        deref(it).second = prod
                        inc(it)
            n = self._fkeys[pi].size()
            for i in range(n):
                t = self._fkeys[pi][i]
                if prg_mul(q, self._fvals[pi][i], &prod):
                    return None
                it = r.find(t)
                if it == r.end():
                    if prg_sub(0, prod, &nv):
                        return None
                    r[t] = nv
                    heap.push(t)
                else:
                    if prg_sub(deref(it).second, prod, &nv):
                        return None
                    if nv:
                        deref(it).second = nv
                    else:
                        r.erase(it)
            if track:
                n = self._ftags[pi].size()
                for i in range(n):
                    t = self._ftags[pi][i]
                    if prg_mul(q, self._fhist[pi][i], &prod):
                        return None
                    it = h.find(t)
                    if it == h.end():
                        v = 0
                    else:
                        v = deref(it).second
                    if prg_sub(v, prod, &nv):
                        return None
                    if nv:
                        h[t] = nv
                    elif it != h.end():
                        h.erase(it)
        return _export(r), _export(h), None

    cdef tuple _reduce_slow(self, dict row, dict hist):
        cdef dict r = dict(row)
        cdef dict h = dict(hist) if hist else {}
        cdef dict pivots = self._pivots
        cdef bint track = self.track
        cdef list heap = [-k for k in r]
        cdef list keys, vals
        cdef dict phist
        cdef tuple piv
        cdef Py_ssize_t i, n
        cdef object k, c, p, q, g, mr, kk, v, old, nv, t
        heapify(heap)
        while heap:
            k = -heappop(heap)
            c = r.get(k)
            if c is None:
                continue
            piv = pivots.get(k)
            if piv is None:
                return r, h, k
            keys = <list>piv[0]
            vals = <list>piv[1]
            phist = <dict>piv[2]
            p = vals[0]
            if c % p == 0:
                q = c // p
            else:
                g = gcd(c, p)
                mr = p // g
                q = c // g
                for kk in r:
                    r[kk] = r[kk] * mr
                if track:
                    for t in h:
                        h[t] = h[t] * mr
            n = len(keys)
            for i in range(n):
                kk = keys[i]
                v = vals[i]
                old = r.get(kk)
                if old is None:
                    r[kk] = -q * v
                    heappush(heap, -kk)
                else:
                    nv = old - q * v
                    if nv:
                        r[kk] = nv
                    else:
                        del r[kk]
            if track:
                for t, v in phist.items():
                    nv = h.get(t, 0) - q * v
                    if nv:
                        h[t] = nv
                    else:
                        h.pop(t, None)
        return r, h, None

    cpdef bint insert(self, dict row, object tag):
        cdef tuple res = self.reduce(row, {tag: 1} if self.track else None)
        cdef dict r = <dict>res[0]
        cdef dict h = <dict>res[1]
        cdef object lead = res[2]
        cdef object g = 0
        cdef object v
        if lead is None:
            return False
        for v in r.values():
            g = gcd(g, v)
        for v in h.values():
            g = gcd(g, v)
        if r[lead] < 0:
            g = -g
        keys = sorted(r, reverse=True)
        vals = [r[k] // g for k in keys]
        ph = {t: v // g for t, v in h.items()}
        self._pivots[lead] = (keys, vals, ph)
        self._store_fast(lead, keys, vals, ph)
        return True

    cdef void _store_fast(self, object lead, list keys, list vals, dict ph):
        cdef vector[i64] ks, vs, ts, hs
        cdef object x, y
        # a pivot that does not fit stays slow-only
        if not _fits(lead):
            return
        for x in keys:
            if not _fits(x):
                return
            ks.push_back(<i64>x)
        for x in vals:
            if not _fits(x):
                return
            vs.push_back(<i64>x)
        for x, y in ph.items():
            if not (_fits(x) and _fits(y)):
                return
            ts.push_back(<i64>x)
            hs.push_back(<i64>y)
        self._fidx[<i64>lead] = self._fkeys.size()
        self._fkeys.push_back(ks)
        self._fvals.push_back(vs)
        self._ftags.push_back(ts)
        self._fhist.push_back(hs)


cpdef list scan_word(tuple w, Py_ssize_t L, list term_lengths, dict term_index, list maxlen, set seen):
    """Compiled twin of ``prg._elim_py.scan_word``; same output order."""
    cdef list out = []
    cdef Py_ssize_t n = len(w), s0, e0, p, tl, outer, f
    cdef list lengths, rels
    cdef tuple left, right, ck
    cdef object ri, entry, key
    for entry in term_lengths:
        f = entry[0]
        lengths = <list>entry[1]
        s0 = 0
        while s0 < n and w[s0].factor < f:
            s0 += 1
        e0 = s0
        while e0 < n and w[e0].factor == f:
            e0 += 1
        for p in range(s0, e0 + 1):
            for key in lengths:
                tl = key
                if p + tl > e0:
                    break
                rels = term_index.get((f, w[p:p + tl]))
                if not rels:
                    continue
                left = w[:p]
                right = w[p + tl:]
                outer = n - tl
                for ri in rels:
                    if outer + <Py_ssize_t>maxlen[ri] > L:
                        continue
                    ck = (ri, left, right)
                    if ck in seen:
                        continue
                    seen.add(ck)
                    out.append(ck)
    return out
