"""(q,r)-Benes network representation of a permutation.

The network has q*2^r terminals: 2r outer switch columns (n'/2 bits each,
stored outermost-in, input side then output side per recursion level) and 2^r
central q-permuters, each held as a mixed-radix code of exactly ceil(lg q!)
bits.  Routing uses the standard looping algorithm: pair the terminals of
each switch, walk the constraint cycles alternating upper/lower subnetwork
assignments, recurse until the subnetworks are single q-permuters.

Payload is exactly 2r*(n'/2) + 2^r*ceil(lg q!) bits; for n = 2^r and q = 2
this is n lg n - n/2.
"""

from .bits import BitSeq, SpaceBits, pack_big, unpack_big
from .lehmer import MixedRadixCode, code_bits, lehmer_encode, small_forward, small_inverse
from .perm import PermBackend, Permutation


def choose_qr(n, t):
    """Parameters (q, r, n') with t < q <= 2t, n' = q*2^r >= n, n' < n(1+1/t).

    The corner t >= n admits no q > t; a single q-permuter with q = n is used
    instead (r = 0), which still satisfies the size and space constraints.
    """
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    if n <= t:
        return n, 0, n
    ell = 0
    while n > (2 * t) << ell:
        ell += 1
    q = (n + (1 << ell) - 1) >> ell
    return q, ell, q << ell


def _route_subnet(pi):
    """Switch bits and the two induced half-permutations for one subnetwork.

    Input terminal 2j goes to the top half iff in_bits[j] == 0; output
    terminal 2k is fed from the top half iff out_bits[k] == 0.
    """
    m = len(pi)
    half = m // 2
    inv = [0] * m
    for i, v in enumerate(pi):
        inv[v] = i
    in_bits = [-1] * half
    out_bits = [-1] * half
    for seed in range(half):
        if in_bits[seed] >= 0:
            continue
        in_bits[seed] = 0
        o = pi[2 * seed]
        if out_bits[o >> 1] < 0:
            out_bits[o >> 1] = o & 1
        t, h = 2 * seed + 1, 1
        while True:
            o = pi[t]
            k = o >> 1
            if out_bits[k] < 0:
                out_bits[k] = (o & 1) ^ h
            o2 = o ^ 1
            h2 = 1 - h
            t2 = inv[o2]
            j2 = t2 >> 1
            if in_bits[j2] >= 0:
                assert in_bits[j2] == (t2 & 1) ^ h2, "inconsistent constraint cycle"
                break
            in_bits[j2] = (t2 & 1) ^ h2
            t = t2 ^ 1
            h = 1 - h2
    assert -1 not in in_bits and -1 not in out_bits
    top = [0] * half
    bot = [0] * half
    for j in range(half):
        b = in_bits[j]
        top[j] = pi[2 * j + b] >> 1
        bot[j] = pi[2 * j + 1 - b] >> 1
    return in_bits, out_bits, top, bot


def route_benes(perm, q, r):
    """Switch settings realising ``perm`` on [q*2^r].

    Returns (columns, centrals): 2r bit lists of n'/2 switch bits, and the 2^r
    central codes in top-to-bottom order.
    """
    np_ = q << r
    if perm.n != np_:
        raise ValueError(f"permutation size {perm.n} != q*2^r = {np_}")
    columns = [[] for _ in range(2 * r)]
    centrals = []
    level = [list(perm.image)]
    for d in range(r):
        nxt = []
        for pi in level:
            in_b, out_b, top, bot = _route_subnet(pi)
            columns[2 * d].extend(in_b)
            columns[2 * d + 1].extend(out_b)
            nxt.append(top)
            nxt.append(bot)
        level = nxt
    for pi in level:
        centrals.append(lehmer_encode(Permutation(pi, _validated=True)))
    return columns, centrals


class BenesRep(PermBackend):
    """Routed network plus path-tracing queries; padding beyond n stays hidden."""

    kind = "benes"

    def __init__(self, n, q, r, columns, centrals):
        super().__init__()
        self.n = n
        self.q = q
        self.r = r
        self.np = q << r
        if isinstance(columns, BitSeq):
            self.columns = columns
        else:
            flat = [b for col in columns for b in col]
            self.columns = BitSeq.from_bits(flat)
        self.centrals = centrals

    @property
    def t(self):
        return None

    def _col_bit(self, col, subnet, sw, half):
        pos = col * (self.np >> 1) + subnet * half + sw
        return self.columns.get(pos)

    def forward(self, i):
        self.check_range(i)
        self.evals.bump("forward")
        return self._trace(i, fwd=True)

    def inverse(self, x):
        self.check_range(x)
        self.evals.bump("inverse")
        return self._trace(x, fwd=False)

    def _central(self, b, pos, fwd):
        code = self.centrals[b]
        if self.q == 1:
            return 0
        if self.q == 2:  # crossed iff code 0 (the identity carries the top code)
            return pos ^ (code.code == 0)
        return small_forward(code, pos) if fwd else small_inverse(code, pos)

    def _trace(self, pos, fwd):
        words = self.columns.words
        col_size = self.np >> 1
        in_off, out_off = (0, col_size) if fwd else (col_size, 0)
        b = 0
        for d in range(self.r):
            half = (self.np >> d) >> 1
            p = 2 * d * col_size + in_off + b * half + (pos >> 1)
            bit = (words[p >> 6] >> (p & 63)) & 1
            b = 2 * b + ((pos & 1) ^ bit)
            pos >>= 1
        pos = self._central(b, pos, fwd)
        for d in range(self.r - 1, -1, -1):
            half_idx = b & 1
            b >>= 1
            half = (self.np >> d) >> 1
            p = 2 * d * col_size + out_off + b * half + pos
            bit = (words[p >> 6] >> (p & 63)) & 1
            pos = 2 * pos + (half_idx ^ bit)
        self.evals.bump("bit_reads", 2 * self.r)
        self.evals.bump("central")
        return pos

    def outer_bits(self):
        return 2 * self.r * (self.np >> 1)

    def central_bits(self):
        return (1 << self.r) * code_bits(self.q)

    def space_bits(self):
        return SpaceBits(self.outer_bits() + self.central_bits(), 0)

    # -- serialization (section BNS1) -----------------------------------------

    def to_bytes(self):
        head = b"".join(v.to_bytes(8, "little") for v in (self.n, self.q, self.r))
        cols = self.columns.to_bytes()
        cw = code_bits(self.q)
        cents = pack_big([c.code for c in self.centrals], cw) if cw else b""
        return head + cols + cents

    @classmethod
    def from_bytes(cls, data):
        n = int.from_bytes(data[0:8], "little")
        q = int.from_bytes(data[8:16], "little")
        r = int.from_bytes(data[16:24], "little")
        np_ = q << r
        nbits = 2 * r * (np_ >> 1)
        nbytes = 8 * ((nbits + 63) >> 6)
        columns = BitSeq.from_bytes(nbits, data[24 : 24 + nbytes])
        cw = code_bits(q)
        count = 1 << r
        if cw:
            codes = unpack_big(data[24 + nbytes :], cw, count)
        else:
            codes = [0] * count
        centrals = [MixedRadixCode(q, c) for c in codes]
        return cls(n, q, r, columns, centrals)


def build_benes(perm, t):
    """Route ``perm`` through the (q,r)-network chosen by ``t`` (padding with
    the identity on [n, n') as needed)."""
    n = perm.n
    if not 1 <= t <= n:
        raise ValueError("need 1 <= t <= n")
    q, r, np_ = choose_qr(n, t)
    if np_ == n:
        padded = perm
    else:
        padded = Permutation(list(perm.image) + list(range(n, np_)), _validated=True)
    columns, centrals = route_benes(padded, q, r)
    return BenesRep(n, q, r, columns, centrals)
