"""Pure-Python bit kernels.

Twin of the compiled module ``_bits_cy``; signatures and results must match
exactly (tests/test_kernels.py enforces parity).  All functions take the
packed word array of a bit sequence (``array('Q')``, little-endian bit order
within each 64-bit word) plus bit positions.
"""

_LOW6 = 63


def select_in_word(word, r):
    """Index of the r-th (0-based) set bit of ``word``.  Caller guarantees it exists."""
    while r:
        word &= word - 1
        r -= 1
    return (word & -word).bit_length() - 1


def scan_ones(words, start_bit, need, nbits):
    """Position of the ``need``-th one (1-based) at or after ``start_bit``, or -1."""
    idx = start_bit >> 6
    nwords = (nbits + 63) >> 6
    if idx >= nwords:
        return -1
    cur = words[idx] & ~((1 << (start_bit & _LOW6)) - 1)
    while True:
        c = cur.bit_count()
        if c >= need:
            return (idx << 6) + select_in_word(cur, need - 1)
        need -= c
        idx += 1
        if idx >= nwords:
            return -1
        cur = words[idx]


def scan_zeros(words, start_bit, need, nbits):
    """Position of the ``need``-th zero (1-based) at or after ``start_bit``, or -1.

    Bits at positions >= nbits do not exist and are never reported.
    """
    idx = start_bit >> 6
    nwords = (nbits + 63) >> 6
    if idx >= nwords:
        return -1
    mask = (1 << 64) - 1
    cur = (~words[idx] & mask) & ~((1 << (start_bit & _LOW6)) - 1)
    while True:
        base = idx << 6
        if base + 64 > nbits:
            cur &= (1 << (nbits - base)) - 1
        c = cur.bit_count()
        if c >= need:
            return base + select_in_word(cur, need - 1)
        need -= c
        idx += 1
        if idx >= nwords:
            return -1
        cur = ~words[idx] & mask


def excess_scan_fwd(words, lo, hi, base, target):
    """Least p in [lo, hi) whose running excess equals ``target``, else -1.

    ``base`` is the excess just before position ``lo``; a one-bit adds +1 and a
    zero-bit -1.
    """
    e = base
    p = lo
    while p < hi:
        if (words[p >> 6] >> (p & _LOW6)) & 1:
            e += 1
        else:
            e -= 1
        if e == target:
            return p
        p += 1
    return -1


def excess_scan_bwd(words, lo, hi, end_excess, target):
    """Greatest p in [lo, hi) with excess(p) == target, else -1.

    ``end_excess`` is the excess at position hi-1 (inclusive).
    """
    e = end_excess
    p = hi - 1
    while p >= lo:
        if e == target:
            return p
        if (words[p >> 6] >> (p & _LOW6)) & 1:
            e -= 1
        else:
            e += 1
        p -= 1
    return -1


def popcount_range(words, lo, hi):
    """Number of set bits in positions [lo, hi)."""
    if lo >= hi:
        return 0
    wlo, whi = lo >> 6, (hi - 1) >> 6
    if wlo == whi:
        mask = ((1 << (hi - lo)) - 1) << (lo & _LOW6)
        return (words[wlo] & mask).bit_count()
    total = (words[wlo] >> (lo & _LOW6)).bit_count()
    for w in range(wlo + 1, whi):
        total += words[w].bit_count()
    tail = hi - (whi << 6)
    total += (words[whi] & ((1 << tail) - 1)).bit_count()
    return total
