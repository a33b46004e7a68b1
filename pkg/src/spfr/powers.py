"""Arbitrary powers pi^k in one inverse, one forward, and O(1) dictionary ops.

The cycles of pi are concatenated into the permutation psi, sorted by
nondecreasing cycle length (ties by cycle minimum), each cycle written
minimum-first.  An array of the distinct lengths plus a FID over the block
starting offsets recovers, for any position j of psi, the segment [l, l+lambda)
holding j's cycle; pi^k(x) is then psi(l + (j - l + k) mod lambda).
"""

from .benes import BenesRep, build_benes
from .bits import Fid, SpaceBits, ceil_lg
from .perm import NaiveBackend, Permutation, cycle_decompose
from .shortcut import Corollary1Backend


def make_backend(perm, kind, t=2):
    if kind == "naive":
        return NaiveBackend(perm)
    if kind == "shortcut":
        return Corollary1Backend(perm, t)
    if kind == "benes":
        return build_benes(perm, min(t, perm.n))
    raise ValueError(f"unknown backend kind {kind!r}")


class PowerRep:
    """psi backend + distinct cycle lengths + block-start FID."""

    def __init__(self, psi_backend, lengths, starts_fid, n):
        self.psi = psi_backend
        self.lengths = lengths
        self.starts = starts_fid
        self.n = n
        self.z = len(lengths)

    def cycle_info(self, x):
        """(left endpoint l of x's cycle segment in psi, cycle length lambda).

        The block of position j is b = fullrank(j+1, S) - 1, the predecessor
        block, so j = s_b lands in block b.
        """
        if not 0 <= x < self.n:
            raise ValueError(f"element {x} outside [0, {self.n})")
        j = self.psi.inverse(x)
        b = self.starts.fullrank(j + 1) - 1
        lam = self.lengths[b]
        s_b = self.starts.select(b)
        l = s_b + lam * ((j - s_b) // lam)
        return l, lam

    def power(self, x, k):
        """pi^k(x) for any signed k (reduced modulo the cycle length)."""
        if not 0 <= x < self.n:
            raise ValueError(f"element {x} outside [0, {self.n})")
        j = self.psi.inverse(x)
        b = self.starts.fullrank(j + 1) - 1
        lam = self.lengths[b]
        s_b = self.starts.select(b)
        l = s_b + lam * ((j - s_b) // lam)
        s = l + (j - l + k) % lam
        return self.psi.forward(s)

    def space_bits(self):
        aux = SpaceBits(self.z * ceil_lg(self.n + 1), 0)
        return self.psi.space_bits() + aux + self.starts.space_bits()

    def reset_evals(self):
        self.psi.reset_evals()

    @property
    def evals(self):
        return self.psi.evals


def build_powers(perm, backend_kind="naive", t=2):
    """PowerRep over ``perm`` with the requested psi backend."""
    cycles = cycle_decompose(perm)
    cycles.sort(key=lambda c: (len(c), c[0]))
    psi_image = [x for cyc in cycles for x in cyc]
    psi = Permutation(psi_image, _validated=True)

    lengths = []
    starts = []
    off = 0
    for cyc in cycles:
        if not lengths or len(cyc) != lengths[-1]:
            lengths.append(len(cyc))
            starts.append(off)
        off += len(cyc)

    backend = make_backend(psi, backend_kind, t)
    starts_fid = Fid(perm.n, starts)
    return PowerRep(backend, lengths, starts_fid, perm.n)
