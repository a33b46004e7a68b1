# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit kernels; behavioural twin of ``_bits_py``."""

from libc.stdint cimport uint64_t, int64_t


cdef inline int _popcount(uint64_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define SPFR_POPCOUNT(x) __builtin_popcountll(x)
    #define SPFR_CTZ(x) __builtin_ctzll(x)
    #define SPFR_HAVE_BUILTINS 1
    #else
    #define SPFR_HAVE_BUILTINS 0
    static int SPFR_POPCOUNT(unsigned long long x) {
        int c = 0; while (x) { x &= x - 1; c++; } return c;
    }
    static int SPFR_CTZ(unsigned long long x) {
        int c = 0; while (!(x & 1)) { x >>= 1; c++; } return c;
    }
    #endif
    """
    int SPFR_POPCOUNT(uint64_t x) nogil
    int SPFR_CTZ(uint64_t x) nogil


def select_in_word(word, r):
    cdef uint64_t w = word
    cdef int rr = r
    while rr:
        w &= w - 1
        rr -= 1
    return SPFR_CTZ(w)


def scan_ones(const uint64_t[::1] words, long start_bit, long need, long nbits):
    cdef long idx = start_bit >> 6
    cdef long nwords = (nbits + 63) >> 6
    cdef uint64_t cur
    cdef int c
    if idx >= nwords:
        return -1
    cur = words[idx] & ~(((<uint64_t>1) << (start_bit & 63)) - 1) if (start_bit & 63) else words[idx]
    while True:
        c = SPFR_POPCOUNT(cur)
        if c >= need:
            while need > 1:
                cur &= cur - 1
                need -= 1
            return (idx << 6) + SPFR_CTZ(cur)
        need -= c
        idx += 1
        if idx >= nwords:
            return -1
        cur = words[idx]


def scan_zeros(const uint64_t[::1] words, long start_bit, long need, long nbits):
    cdef long idx = start_bit >> 6
    cdef long nwords = (nbits + 63) >> 6
    cdef long base, tail
    cdef uint64_t cur
    cdef int c
    if idx >= nwords:
        return -1
    cur = ~words[idx]
    if start_bit & 63:
        cur &= ~(((<uint64_t>1) << (start_bit & 63)) - 1)
    while True:
        base = idx << 6
        tail = nbits - base
        if tail < 64:
            cur &= ((<uint64_t>1) << tail) - 1
        c = SPFR_POPCOUNT(cur)
        if c >= need:
            while need > 1:
                cur &= cur - 1
                need -= 1
            return base + SPFR_CTZ(cur)
        need -= c
        idx += 1
        if idx >= nwords:
            return -1
        cur = ~words[idx]


def excess_scan_fwd(const uint64_t[::1] words, long lo, long hi, long base, long target):
    cdef long e = base
    cdef long p = lo
    while p < hi:
        if (words[p >> 6] >> (p & 63)) & 1:
            e += 1
        else:
            e -= 1
        if e == target:
            return p
        p += 1
    return -1


def excess_scan_bwd(const uint64_t[::1] words, long lo, long hi, long end_excess, long target):
    cdef long e = end_excess
    cdef long p = hi - 1
    while p >= lo:
        if e == target:
            return p
        if (words[p >> 6] >> (p & 63)) & 1:
            e -= 1
        else:
            e += 1
        p -= 1
    return -1


def popcount_range(const uint64_t[::1] words, long lo, long hi):
    cdef long wlo, whi, w, tail
    cdef long total = 0
    cdef uint64_t mask
    if lo >= hi:
        return 0
    wlo = lo >> 6
    whi = (hi - 1) >> 6
    if wlo == whi:
        mask = (((<uint64_t>1) << (hi - lo)) - 1) if hi - lo < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
        mask <<= (lo & 63)
        return SPFR_POPCOUNT(words[wlo] & mask)
    total = SPFR_POPCOUNT(words[wlo] >> (lo & 63))
    for w in range(wlo + 1, whi):
        total += SPFR_POPCOUNT(words[w])
    tail = hi - (whi << 6)
    mask = (((<uint64_t>1) << tail) - 1) if tail < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    total += SPFR_POPCOUNT(words[whi] & mask)
    return total
