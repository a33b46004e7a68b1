"""SPFR container: magic, version, section table, little-endian throughout.

Sections: PERM (raw image), SHC1 (shortcut index), BNS1 (Benes network),
PWR1 (power structure), BPT1 (parenthesis tree), FNC1 (function
representation, any range mode), FID1 (dictionary).  Rank/select and excess
indexes are always rebuilt on load; routed switch bits, shortcut links and
mixed-radix codes are stored verbatim.
"""

from .benes import BenesRep
from .bits import BitSeq, Fid, ceil_lg, pack_ints, unpack_ints
from .bptree import BpTree
from .funcrep import FuncRep, MultisetCounter
from .perm import NaiveBackend, Permutation
from .powers import PowerRep
from .rangefunc import ChunkedSeq, RangeRepLarge, RangeRepSmall
from .shortcut import Corollary1Backend

MAGIC = b"SPFR"
VERSION = 1


class Cursor:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        b = self.data[self.pos : self.pos + n]
        if len(b) != n:
            raise ValueError("truncated container data")
        self.pos += n
        return b

    def u64(self):
        return int.from_bytes(self.take(8), "little")

    def u8(self):
        return self.take(1)[0]

    def blob(self):
        return self.take(self.u64())


def _u64(v):
    return v.to_bytes(8, "little")


def _blob(b):
    return _u64(len(b)) + b


def write_container(sections):
    """Serialize [(tag, bytes), ...] into one self-describing byte string."""
    header = MAGIC + bytes([VERSION, 0, 0, 0]) + len(sections).to_bytes(4, "little")
    table = b""
    body = b""
    offset = len(header) + 20 * len(sections)
    for tag, data in sections:
        tag_b = tag.encode() if isinstance(tag, str) else tag
        if len(tag_b) != 4:
            raise ValueError(f"section tag must be 4 bytes, got {tag_b!r}")
        table += tag_b + _u64(offset) + _u64(len(data))
        body += data
        offset += len(data)
    return header + table + body


def read_container(data):
    if data[:4] != MAGIC:
        raise ValueError("not an SPFR container (bad magic)")
    if data[4] != VERSION:
        raise ValueError(f"unsupported container version {data[4]}")
    count = int.from_bytes(data[8:12], "little")
    sections = []
    for i in range(count):
        base = 12 + 20 * i
        tag = data[base : base + 4].decode()
        off = int.from_bytes(data[base + 4 : base + 12], "little")
        length = int.from_bytes(data[base + 12 : base + 20], "little")
        sections.append((tag, data[off : off + length]))
    return sections


# -- permutation image ---------------------------------------------------------


def perm_to_bytes(image):
    n = len(image)
    width = max(1, ceil_lg(n))
    return _u64(n) + pack_ints(image, width).to_bytes()


def perm_from_bytes(data):
    n = int.from_bytes(data[:8], "little")
    width = max(1, ceil_lg(n))
    seq = BitSeq.from_bytes(n * width, data[8:])
    return Permutation(unpack_ints(seq, width, n))


# -- permutation backends --------------------------------------------------------

_KINDS = {"naive": 0, "shortcut": 1, "benes": 2}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}


def backend_to_bytes(backend):
    if isinstance(backend, NaiveBackend):
        return bytes([0]) + perm_to_bytes(backend._image)
    if isinstance(backend, Corollary1Backend):
        return bytes([1]) + _u64(backend.t) + perm_to_bytes(backend._image)
    if isinstance(backend, BenesRep):
        return bytes([2]) + backend.to_bytes()
    raise TypeError(f"cannot serialize backend {type(backend).__name__}")


def backend_from_bytes(data):
    kind = data[0]
    if kind == 0:
        return NaiveBackend(perm_from_bytes(data[1:]))
    if kind == 1:
        t = int.from_bytes(data[1:9], "little")
        return Corollary1Backend(perm_from_bytes(data[9:]), t)
    if kind == 2:
        return BenesRep.from_bytes(data[1:])
    raise ValueError(f"unknown backend kind byte {kind}")


# -- powers ----------------------------------------------------------------------


def powers_to_bytes(rep):
    out = _u64(rep.n) + _blob(backend_to_bytes(rep.psi))
    width = max(1, ceil_lg(rep.n + 1))
    out += _u64(rep.z) + pack_ints(rep.lengths, width).to_bytes()
    out += _blob(rep.starts.to_bytes())
    return out


def powers_from_bytes(data):
    cur = Cursor(data)
    n = cur.u64()
    psi = backend_from_bytes(cur.blob())
    z = cur.u64()
    width = max(1, ceil_lg(n + 1))
    nbytes = 8 * ((z * width + 63) >> 6)
    lengths = unpack_ints(BitSeq.from_bytes(z * width, cur.take(nbytes)), width, z)
    starts = Fid.from_bytes(cur.blob())
    return PowerRep(psi, lengths, starts, n)


# -- function representations ------------------------------------------------------


def _ints_blob(values, width):
    return _u64(len(values)) + _blob(pack_ints(values, width).to_bytes() if values else b"")


def _ints_unblob(cur, width):
    count = cur.u64()
    raw = cur.blob()
    if not count:
        return []
    return unpack_ints(BitSeq.from_bytes(count * width, raw), width, count)


def funcrep_to_bytes(rep):
    w = max(1, ceil_lg(rep.n + 1))
    out = _u64(rep.n) + _u64(rep.width) + _u64(rep.w_eff) + _u64(rep.narrow_total)
    out += bytes([_KINDS[rep.backend_kind]]) + _u64(rep.backend_t)
    out += _blob(rep.tree.to_bytes())
    out += _blob(backend_to_bytes(rep.pi))
    out += _ints_blob(rep.A, w)
    out += _blob(rep.B.to_bytes())
    out += _u64(rep.C.count) + _blob(rep.C.fid.to_bytes())
    flat = [v for pair in rep.Aprime for v in pair]
    out += _ints_blob(flat, w)
    out += _blob(rep.Bprime.to_bytes())
    return out


def funcrep_from_bytes(data):
    cur = Cursor(data)
    n = cur.u64()
    width = cur.u64()
    w_eff = cur.u64()
    narrow_total = cur.u64()
    kind = _KIND_NAMES[cur.u8()]
    t = cur.u64()
    w = max(1, ceil_lg(n + 1))
    tree = BpTree.from_bytes(cur.blob())
    pi = backend_from_bytes(cur.blob())
    A = _ints_unblob(cur, w)
    B = Fid.from_bytes(cur.blob())
    c_count = cur.u64()
    c_fid = Fid.from_bytes(cur.blob())
    flat = _ints_unblob(cur, w)
    Aprime = [(flat[2 * i], flat[2 * i + 1]) for i in range(len(flat) // 2)]
    Bprime = Fid.from_bytes(cur.blob())

    rep = FuncRep.__new__(FuncRep)
    rep.n = n
    rep.width = width
    rep.w_eff = w_eff
    rep.narrow_total = narrow_total
    rep.backend_kind = kind
    rep.backend_t = t
    rep.tree = tree
    rep.pi = pi
    rep.A = A
    rep.B = B
    counter = MultisetCounter.__new__(MultisetCounter)
    counter.count = c_count
    counter.fid = c_fid
    counter.universe = c_fid.m
    rep.C = counter
    rep.Aprime = Aprime
    rep.Bprime = Bprime
    rep.tree_ops = 0
    rep.image = None  # not retained in serialized form
    return rep


def seq_to_bytes(seq, raw_symbols):
    w = max(1, ceil_lg(seq.m))
    return _u64(seq.m) + _u64(seq.length) + _blob(
        pack_ints(raw_symbols, w).to_bytes() if raw_symbols else b""
    )


def seq_from_bytes(cur, backend, t):
    m = cur.u64()
    length = cur.u64()
    raw = cur.blob()
    w = max(1, ceil_lg(m))
    symbols = unpack_ints(BitSeq.from_bytes(length * w, raw), w, length) if length else []
    return ChunkedSeq(symbols, m, backend=backend, t=t), symbols


def func_to_bytes(rep):
    """FNC1 payload for FuncRep, RangeRepLarge, or RangeRepSmall."""
    if isinstance(rep, FuncRep):
        return bytes([0]) + funcrep_to_bytes(rep)
    if isinstance(rep, RangeRepLarge):
        tail = [rep.seq.access(p) for p in range(rep.seq.length)]
        out = bytes([1]) + _u64(rep.n) + _u64(rep.m)
        out += bytes([_KINDS[rep.core.backend_kind]]) + _u64(rep.core.backend_t)
        out += _blob(funcrep_to_bytes(rep.core))
        out += seq_to_bytes(rep.seq, tail)
        out += _blob(rep.dummies.to_bytes())
        return out
    if isinstance(rep, RangeRepSmall):
        out = bytes([2]) + _u64(rep.n) + _u64(rep.m)
        out += _blob(funcrep_to_bytes(rep.core))
        out += _blob(rep.rdict.to_bytes())
        return out
    raise TypeError(f"cannot serialize {type(rep).__name__}")


def func_from_bytes(data):
    mode = data[0]
    cur = Cursor(data[1:])
    if mode == 0:
        return funcrep_from_bytes(cur.data)
    if mode == 1:
        n, m = cur.u64(), cur.u64()
        kind = _KIND_NAMES[cur.u8()]
        t = cur.u64()
        core = funcrep_from_bytes(cur.blob())
        seq, _ = seq_from_bytes(cur, kind, t)
        dummies = Fid.from_bytes(cur.blob())
        rep = RangeRepLarge.__new__(RangeRepLarge)
        rep.n, rep.m = n, m
        rep.core = core
        rep.seq = seq
        rep.dummies = dummies
        rep.d = dummies.n
        return rep
    if mode == 2:
        n, m = cur.u64(), cur.u64()
        core = funcrep_from_bytes(cur.blob())
        rdict = Fid.from_bytes(cur.blob())
        rep = RangeRepSmall.__new__(RangeRepSmall)
        rep.n, rep.m = n, m
        rep.core = core
        rep.rdict = rdict
        rep.nr = rdict.n
        return rep
    raise ValueError(f"unknown function mode byte {mode}")
