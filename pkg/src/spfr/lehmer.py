"""Mixed-radix (Lehmer) codes for small permutations.

A permutation pi on [q] becomes the digit sequence r(0..q-1) with r(0) = 0 and
r(i) = |{j < i : pi(j) < pi(i)}|, packed as the single integer
R = sum_i i! * r(i) in [q!], i.e. exactly ceil(lg q!) bits.  Decoding splits
the digit range in half at each level and divides by the precomputed
factorial-product divisor of the upper half; plain big-integer arithmetic
throughout.
"""

import math
from functools import lru_cache

from .perm import Permutation


class _Fenwick:
    __slots__ = ("n", "tree")

    def __init__(self, n):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i, delta):
        i += 1
        while i <= self.n:
            self.tree[i] += delta
            i += i & -i

    def prefix(self, i):
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s

    def kth(self, k):
        """Index of the (k+1)-st present element (entries are 0/1 counts)."""
        pos = 0
        mask = 1 << (self.n.bit_length())
        while mask:
            nxt = pos + mask
            if nxt <= self.n and self.tree[nxt] <= k:
                pos = nxt
                k -= self.tree[nxt]
            mask >>= 1
        return pos


@lru_cache(maxsize=None)
def _divisor(lo, mid):
    """mid!/lo! = (lo+1)(lo+2)...(mid)."""
    p = 1
    for i in range(lo + 1, mid + 1):
        p *= i
    return p


class MixedRadixCode:
    """An integer R in [q!] standing for a permutation on [q]."""

    __slots__ = ("q", "code")

    def __init__(self, q, code):
        if q < 1:
            raise ValueError("q must be >= 1")
        if not 0 <= code < math.factorial(q):
            raise ValueError(f"code {code} outside [0, {q}!)")
        self.q = q
        self.code = code

    @property
    def code_bits(self):
        return code_bits(self.q)

    def __eq__(self, other):
        return isinstance(other, MixedRadixCode) and (self.q, self.code) == (other.q, other.code)

    def __repr__(self):
        return f"MixedRadixCode(q={self.q}, code={self.code})"


def code_bits(q):
    f = math.factorial(q)
    return (f - 1).bit_length() if f > 1 else 0


def digits_of(perm):
    """r(i) = |{j < i : pi(j) < pi(i)}| via a Fenwick tree, O(q lg q)."""
    q = perm.n
    fw = _Fenwick(q)
    digits = []
    for i in range(q):
        v = perm.image[i]
        digits.append(fw.prefix(v))
        fw.add(v, 1)
    return digits


def lehmer_encode(perm):
    """Pack a permutation on [q] into its mixed-radix integer."""
    digits = digits_of(perm)
    # Horner in mixed radix: R_k = r(k) + (k+1) * R_{k+1}
    r = 0
    for k in range(perm.n - 1, -1, -1):
        r = digits[k] + (k + 1) * r
    return MixedRadixCode(perm.n, r)


def lehmer_decode(code):
    """Digit sequence r(0..q-1) of a code, by recursive halving."""
    q, r = code.q, code.code
    digits = [0] * q
    # stack entries: (lo, hi, value) for digit positions [lo, hi)
    stack = [(0, q, r)]
    while stack:
        lo, hi, val = stack.pop()
        if hi - lo == 1:
            digits[lo] = val
            continue
        mid = (lo + hi) // 2
        d = _divisor(lo, mid)
        upper, lower = divmod(val, d)
        stack.append((lo, mid, lower))
        stack.append((mid, hi, upper))
    for i, d in enumerate(digits):
        if d > i:
            raise ValueError(f"digit r({i}) = {d} exceeds {i}")
    return digits


def _reconstruct_down_to(digits, stop):
    """Yield (i, pi(i)) for i = q-1 down to ``stop``.

    Processing positions high to low over the shrinking set of unassigned
    values, pi(i) is the (r(i)+1)-st smallest value still available.
    """
    q = len(digits)
    avail = _Fenwick(q)
    for v in range(q):
        avail.add(v, 1)
    for i in range(q - 1, stop - 1, -1):
        v = avail.kth(digits[i])
        avail.add(v, -1)
        yield i, v


def small_forward(code, i):
    """pi(i) from the code alone."""
    if not 0 <= i < code.q:
        raise ValueError(f"position {i} outside [0, {code.q})")
    digits = lehmer_decode(code)
    for pos, v in _reconstruct_down_to(digits, i):
        if pos == i:
            return v
    raise AssertionError("unreachable")


def small_inverse(code, x):
    """pi^{-1}(x) from the code alone."""
    if not 0 <= x < code.q:
        raise ValueError(f"value {x} outside [0, {code.q})")
    digits = lehmer_decode(code)
    for pos, v in _reconstruct_down_to(digits, 0):
        if v == x:
            return pos
    raise AssertionError("unreachable")


def decode_perm(code):
    """Full permutation for a code (used by tests and the Benes router)."""
    digits = lehmer_decode(code)
    image = [0] * code.q
    for pos, v in _reconstruct_down_to(digits, 0):
        image[pos] = v
    return Permutation(image, _validated=True)
