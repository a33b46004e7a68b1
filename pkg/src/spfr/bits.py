"""Bit sequences and rank/select dictionaries.

``Fid`` is a fully indexable dictionary over a universe [m]: a plain bitmap
plus a two-level rank directory (superblock counts every 512 bits, word counts
every 64) and sampled select (every 512th one and zero, local scan between
samples).  ``IndexableDict`` is the restricted variant supporting only
partial rank and select on the set itself.

Space is reported exactly: the payload of a structure is its bitmap (m bits),
everything else is index and accounted per array from the declared entry
widths.
"""

from array import array

from . import _kernels as K

_FULL = (1 << 64) - 1


def ceil_lg(n):
    """ceil(log2(n)) for n >= 1; 0 for n <= 1."""
    return (n - 1).bit_length() if n > 1 else 0


class SpaceBits:
    """Exact space of a structure, payload and index separated."""

    __slots__ = ("payload", "index")

    def __init__(self, payload, index=0):
        self.payload = payload
        self.index = index

    @property
    def total(self):
        return self.payload + self.index

    def __add__(self, other):
        return SpaceBits(self.payload + other.payload, self.index + other.index)

    def __eq__(self, other):
        return (self.payload, self.index) == (other.payload, other.index)

    def __repr__(self):
        return f"SpaceBits(payload={self.payload}, index={self.index})"


class BitSeq:
    """Fixed-length bit sequence packed in 64-bit words (LSB-first in a word)."""

    __slots__ = ("length", "words")

    def __init__(self, length, words=None):
        self.length = length
        nwords = (length + 63) >> 6
        if words is None:
            self.words = array("Q", bytes(8 * nwords))
        else:
            if len(words) != nwords:
                raise ValueError("word buffer does not match length")
            self.words = words

    @classmethod
    def from_bits(cls, bits):
        bits = list(bits)
        seq = cls(len(bits))
        w = seq.words
        for i, b in enumerate(bits):
            if b:
                w[i >> 6] |= 1 << (i & 63)
        return seq

    @classmethod
    def from_indices(cls, length, indices):
        seq = cls(length)
        w = seq.words
        for i in indices:
            w[i >> 6] |= 1 << (i & 63)
        return seq

    @classmethod
    def from_paren_string(cls, s):
        """'(' becomes 1, ')' becomes 0; anything else is rejected."""
        if set(s) - {"(", ")"}:
            raise ValueError("parenthesis string may contain only '(' and ')'")
        seq = cls(len(s))
        w = seq.words
        for base in range(0, len(s), 64):
            chunk = s[base : base + 64]
            word = 0
            for off, ch in enumerate(chunk):
                if ch == "(":
                    word |= 1 << off
            w[base >> 6] = word
        return seq

    def get(self, i):
        return (self.words[i >> 6] >> (i & 63)) & 1

    def set_bit(self, i):
        self.words[i >> 6] |= 1 << (i & 63)

    def __len__(self):
        return self.length

    def count_ones(self):
        return sum(w.bit_count() for w in self.words)

    def space_bits(self):
        return SpaceBits(self.length, 0)

    def to_bytes(self):
        return b"".join(w.to_bytes(8, "little") for w in self.words)

    @classmethod
    def from_bytes(cls, length, data):
        nwords = (length + 63) >> 6
        words = array("Q", (int.from_bytes(data[8 * i : 8 * i + 8], "little") for i in range(nwords)))
        return cls(length, words)


def pack_ints(values, width):
    """Pack non-negative ints of the given bit width into a BitSeq."""
    seq = BitSeq(width * len(values))
    w = seq.words
    pos = 0
    for v in values:
        idx, off = pos >> 6, pos & 63
        w[idx] |= (v << off) & _FULL
        if off + width > 64:
            w[idx + 1] |= v >> (64 - off)
        pos += width
    return seq


def unpack_ints(seq, width, count):
    out = []
    w = seq.words
    mask = (1 << width) - 1
    pos = 0
    for _ in range(count):
        idx, off = pos >> 6, pos & 63
        v = w[idx] >> off
        if off + width > 64:
            v |= w[idx + 1] << (64 - off)
        out.append(v & mask)
        pos += width
    return out


def pack_big(values, width):
    """Pack ints of arbitrary bit width (possibly > 64) into bytes."""
    acc = 0
    for i, v in enumerate(values):
        acc |= v << (i * width)
    nbytes = (width * len(values) + 7) // 8
    return acc.to_bytes(nbytes, "little")


def unpack_big(data, width, count):
    acc = int.from_bytes(data, "little")
    mask = (1 << width) - 1
    return [(acc >> (i * width)) & mask for i in range(count)]


_SB_BITS = 512          # superblock size of the rank directory
_SELECT_SAMPLE = 512    # sample every 512th occurrence


class Fid:
    """Fully indexable dictionary for a set S over universe [m].

    fullrank(x) accepts 0 <= x <= m (one-past-the-end queries return |S|),
    which downstream block arithmetic relies on.
    """

    def __init__(self, m, elems=None, *, bitmap=None, complement=True):
        if bitmap is None:
            elems = list(elems or [])
            prev = -1
            for pos, e in enumerate(elems):
                if e <= prev:
                    raise ValueError(f"elements must be strictly increasing (index {pos})")
                prev = e
            if elems and elems[-1] >= m:
                raise ValueError(f"element {elems[-1]} outside universe [{m}]")
            bitmap = BitSeq.from_indices(m, elems)
        elif len(bitmap) != m:
            raise ValueError("bitmap length must equal universe size")
        self.m = m
        self.bits = bitmap
        self._complement = complement
        self._build_index()

    def _build_index(self):
        words = self.bits.words
        m = self.m
        sb_count = (m + _SB_BITS - 1) // _SB_BITS
        sb = array("q", [0] * (sb_count + 1))
        blk = array("H", [0] * len(words))
        ones = 0
        rel = 0
        for wi, w in enumerate(words):
            if (wi << 6) % _SB_BITS == 0:
                sb[(wi << 6) // _SB_BITS] = ones
                rel = 0
            blk[wi] = rel
            c = w.bit_count()
            ones += c
            rel += c
        sb[sb_count] = ones
        self._sb = sb
        self._blk = blk
        self.n = ones
        self._samples1 = self._collect_samples(ones=True)
        if self._complement:
            self._samples0 = self._collect_samples(ones=False)
        else:
            self._samples0 = array("q")

    def _collect_samples(self, ones):
        words = self.bits.words
        m = self.m
        samples = array("q")
        seen = 0
        nxt = 0
        for wi, w in enumerate(words):
            if not ones:
                w = ~w & _FULL
                base = wi << 6
                if base + 64 > m:
                    w &= (1 << (m - base)) - 1
            c = w.bit_count()
            while seen + c > nxt:
                samples.append((wi << 6) + K.select_in_word(w, nxt - seen))
                nxt += _SELECT_SAMPLE
            seen += c
        return samples

    # -- queries ------------------------------------------------------------

    def fullrank(self, x):
        """|{y in S : y < x}| for 0 <= x <= m."""
        if x < 0 or x > self.m:
            raise ValueError(f"rank argument {x} outside [0, {self.m}]")
        if x == self.m:
            return self.n
        if x == 0:
            return 0
        wi = x >> 6
        r = self._sb[x // _SB_BITS] + self._blk[wi]
        off = x & 63
        if off:
            r += (self.bits.words[wi] & ((1 << off) - 1)).bit_count()
        return r

    def fullrank0(self, x):
        if x < 0 or x > self.m:
            raise ValueError(f"rank argument {x} outside [0, {self.m}]")
        return x - self.fullrank(x)

    def select(self, i):
        """The (i+1)-st smallest element of S."""
        if i < 0 or i >= self.n:
            raise ValueError(f"select index {i} outside [0, {self.n})")
        start = self._samples1[i >> 9]
        need = i - ((i >> 9) << 9) + 1
        return K.scan_ones(self.bits.words, start, need, self.m)

    def select0(self, i):
        """The (i+1)-st smallest element of the complement."""
        zeros = self.m - self.n
        if i < 0 or i >= zeros:
            raise ValueError(f"select0 index {i} outside [0, {zeros})")
        if self._complement and len(self._samples0):
            start = self._samples0[i >> 9]
            need = i - ((i >> 9) << 9) + 1
        else:
            start, need = 0, i + 1
        return K.scan_zeros(self.bits.words, start, need, self.m)

    def contains(self, x):
        return 0 <= x < self.m and self.bits.get(x) == 1

    def partial_rank(self, x):
        """fullrank(x) when x is a member, -1 otherwise."""
        if x < 0 or x >= self.m:
            raise ValueError(f"value {x} outside universe [{self.m}]")
        if not self.bits.get(x):
            return -1
        return self.fullrank(x)

    def members(self):
        return [self.select(i) for i in range(self.n)]

    # -- space --------------------------------------------------------------

    def space_bits(self):
        w_sb = ceil_lg(self.n + 1) if self.n else 1
        w_pos = ceil_lg(self.m + 1) if self.m else 1
        index = len(self._sb) * w_sb
        index += len(self._blk) * 10  # counts within a 512-bit superblock
        index += (len(self._samples1) + len(self._samples0)) * w_pos
        return SpaceBits(self.m, index)

    # -- serialization (section FID1) ----------------------------------------

    def to_bytes(self):
        head = self.m.to_bytes(8, "little") + self.n.to_bytes(8, "little")
        head += (1 if self._complement else 0).to_bytes(1, "little")
        return head + self.bits.to_bytes()

    @classmethod
    def from_bytes(cls, data):
        m = int.from_bytes(data[0:8], "little")
        comp = data[16] == 1
        bitmap = BitSeq.from_bytes(m, data[17:])
        return cls(m, bitmap=bitmap, complement=comp)


class IndexableDict(Fid):
    """Dictionary supporting partial_rank and select only (no complement index)."""

    def __init__(self, m, elems=None, *, bitmap=None):
        super().__init__(m, elems, bitmap=bitmap, complement=False)
