"""Succinct ordinal tree over a balanced-parenthesis sequence.

The sequence (1 = open) is indexed two ways:

* a rank/select dictionary giving excess(i) = 2*rank1(i+1) - (i+1) in O(1);
* an excess-search index: the sequence splits into superblocks and blocks,
  each annotated with its excess range (consecutive excesses differ by one,
  so the range is a single interval).  Inside a superblock a complete f-ary
  tree over the block ranges answers nextexcess/prevexcess; across
  superblocks, per-superblock A_B arrays resolve target excesses outside the
  superblock's own range (up to ``delta`` away) and compressed range->link
  tables point to the nearest superblock containing an in-range excess.  The
  link multigraph is the planar visibility graph of the superblock intervals,
  so its size is linear in the superblock count (asserted at build).

Level-ancestor queries climb directly for offsets up to ``delta``; beyond
that they route through marked nodes (depth a multiple of ``stride``, height
at least ``stride``), whose tree carries a ladder decomposition plus jump
pointers for O(1) level-ancestor.

Paper-style parameter formulas degenerate at desk scale, so superblock size,
block size, branching, delta and stride are all build parameters with clamped
defaults; correctness is parameter independent.
"""

import bisect

import numpy as np

from . import _kernels as K
from .bits import BitSeq, Fid, SpaceBits, ceil_lg

_LINK_DENSITY_CAP = 6  # planarity: ranges per superblock graph is O(#superblocks)


def default_params(nbits):
    lg = max(2, ceil_lg(max(nbits, 2)))
    blk = 64  # machine word; the paper's (lg n)/2 assumes lg n-bit words
    sb = min(lg**4, max(64, nbits // 4))
    sb = max(blk, (sb + blk - 1) // blk * blk)
    fanout = max(4, int(lg**0.5))
    delta = max(8, min(lg * lg, 64))
    stride = max(1, min(lg * lg, delta // 2))
    return sb, blk, fanout, delta, stride


class _RangeLookup:
    """Maps an offset within [0, width) to the index of its covering range.

    Superblocks with more than ``threshold`` ranges store a start-marking
    bitmap with rank; smaller ones a sorted offset list with binary search.
    """

    def __init__(self, starts, width, threshold):
        self.width = width
        self.nranges = len(starts)
        if self.nranges > threshold:
            self._fid = Fid(width, starts, complement=False)
            self._starts = None
        else:
            self._fid = None
            self._starts = starts

    def find(self, off):
        if self._fid is not None:
            return self._fid.fullrank(off + 1) - 1
        return bisect.bisect_right(self._starts, off) - 1

    def space_bits(self):
        if self._fid is not None:
            return self._fid.space_bits()
        return SpaceBits(0, self.nranges * ceil_lg(max(self.width, 2)))


class BpTree:
    """Balanced-parenthesis tree; nodes are identified by open positions."""

    def __init__(self, parens, *, sb=None, blk=None, fanout=None, delta=None, stride=None):
        if isinstance(parens, str):
            parens = BitSeq.from_paren_string(parens)
        self.parens = parens
        P = len(parens)
        if P == 0 or P % 2:
            raise ValueError("parenthesis sequence must have positive even length")
        self.P = P
        self.n = P // 2

        d_sb, d_blk, d_f, d_delta, d_stride = default_params(P)
        self.blk = blk or d_blk
        if not 1 <= self.blk <= 64:
            raise ValueError("block size must be in [1, 64]")
        self.sb = sb or d_sb
        self.sb = max(self.blk, (self.sb + self.blk - 1) // self.blk * self.blk)
        self.fanout = fanout or d_f
        if self.fanout < 2:
            raise ValueError("fanout must be >= 2")
        self.delta = delta or d_delta
        self.stride = stride or d_stride
        self.stride = max(1, min(self.stride, self.delta // 2)) if self.delta >= 2 else 1

        self.fid = Fid(P, bitmap=parens)
        self._build_excess_index()
        self._build_marked()

    # -- construction ---------------------------------------------------------

    def _bit_array(self):
        raw = np.frombuffer(self.parens.to_bytes(), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.P]

    def _build_excess_index(self):
        P, blk, sb = self.P, self.blk, self.sb
        bits = self._bit_array()
        if bits[0] != 1:
            raise ValueError("sequence must start with an open parenthesis")
        exc = np.cumsum(bits.astype(np.int64) * 2 - 1)
        if exc[-1] != 0:
            raise ValueError("unbalanced parenthesis sequence")
        if P > 1 and exc[:-1].min() < 1:
            raise ValueError("sequence encodes a forest, not a single tree")

        nblocks = (P + blk - 1) // blk
        pad = nblocks * blk - P
        padded = np.concatenate([exc, np.full(pad, exc[-1], dtype=np.int64)]) if pad else exc
        grid = padded.reshape(nblocks, blk)
        bmin = grid.min(axis=1)
        bmax = grid.max(axis=1)

        spb = sb // blk
        nsb = (nblocks + spb - 1) // spb
        self.nsb = nsb
        self._sbmin = [0] * nsb
        self._sbmax = [0] * nsb
        self._trees = []
        f = self.fanout
        for si in range(nsb):
            lo, hi = si * spb, min((si + 1) * spb, nblocks)
            mins, maxs = bmin[lo:hi], bmax[lo:hi]
            self._sbmin[si] = int(mins.min())
            self._sbmax[si] = int(maxs.max())
            levels = [(mins, maxs)]
            while len(levels[-1][0]) > 1:
                m, M = levels[-1]
                k = len(m)
                padk = (f - k % f) % f
                if padk:
                    m = np.concatenate([m, np.full(padk, np.iinfo(np.int64).max, dtype=np.int64)])
                    M = np.concatenate([M, np.full(padk, np.iinfo(np.int64).min, dtype=np.int64)])
                levels.append((m.reshape(-1, f).min(axis=1), M.reshape(-1, f).max(axis=1)))
            self._trees.append(levels)

        order = np.argsort(exc, kind="stable")
        svals = exc[order]

        def first_after(v, pos):
            lo = np.searchsorted(svals, v, "left")
            hi = np.searchsorted(svals, v, "right")
            if lo == hi:
                return -1
            sl = order[lo:hi]
            j = np.searchsorted(sl, pos, "right")
            return int(sl[j]) if j < hi - lo else -1

        def last_before(v, pos):
            lo = np.searchsorted(svals, v, "left")
            hi = np.searchsorted(svals, v, "right")
            if lo == hi:
                return -1
            sl = order[lo:hi]
            j = np.searchsorted(sl, pos, "left")
            return int(sl[j - 1]) if j > 0 else -1

        delta = self.delta
        threshold = max(1, ceil_lg(max(P, 2)))
        self._ab_fwd = []
        self._ab_bwd = []
        self._links_fwd = []
        self._links_bwd = []
        self.link_ranges = 0
        for si in range(nsb):
            start, end = si * sb, min((si + 1) * sb, P)
            e1, e2 = self._sbmin[si], self._sbmax[si]
            lo_win = [first_after(v, end - 1) for v in range(e1 - delta, e1)]
            hi_win = [first_after(v, end - 1) for v in range(e2 + 1, e2 + delta + 1)]
            self._ab_fwd.append((lo_win, hi_win))
            lo_wb = [last_before(v, start) for v in range(e1 - delta, e1)]
            hi_wb = [last_before(v, start) for v in range(e2 + 1, e2 + delta + 1)]
            self._ab_bwd.append((lo_wb, hi_wb))

            width = e2 - e1 + 1
            tgt_f, tgt_b = [], []
            for v in range(e1, e2 + 1):
                p = first_after(v, end - 1)
                tgt_f.append(-1 if p < 0 else p // sb)
                p = last_before(v, start)
                tgt_b.append(-1 if p < 0 else p // sb)
            self._links_fwd.append(self._compress(tgt_f, width, threshold))
            self._links_bwd.append(self._compress(tgt_b, width, threshold))
        if nsb > 1:
            cap = _LINK_DENSITY_CAP * nsb
            assert self.link_ranges <= 2 * cap, (
                f"link ranges {self.link_ranges} exceed planar bound {2 * cap}"
            )

    def _compress(self, targets, width, threshold):
        starts, tgts = [], []
        for off, t in enumerate(targets):
            if not tgts or t != tgts[-1]:
                starts.append(off)
                tgts.append(t)
        self.link_ranges += sum(1 for t in tgts if t >= 0)
        return _RangeLookup(starts, width, threshold), tgts

    # -- primitive queries ----------------------------------------------------

    def excess(self, i):
        if not 0 <= i < self.P:
            raise ValueError(f"position {i} outside [0, {self.P})")
        return 2 * self.fid.fullrank(i + 1) - (i + 1)

    def is_open(self, i):
        return self.parens.get(i) == 1

    def _block_bounds(self, g):
        lo = g * self.blk
        return lo, min(lo + self.blk, self.P)

    def _scan_block_fwd(self, lo, hi, k):
        base = 0 if lo == 0 else self.excess(lo - 1)
        return K.excess_scan_fwd(self.parens.words, lo, hi, base, k)

    def _scan_block_bwd(self, lo, hi, k):
        if lo >= hi:
            return -1
        end_e = self.excess(hi - 1)
        return K.excess_scan_bwd(self.parens.words, lo, hi, end_e, k)

    def _descend_fwd(self, si, lvl, node, k):
        levels = self._trees[si]
        f = self.fanout
        while lvl > 0:
            mins, maxs = levels[lvl - 1]
            base = node * f
            for c in range(base, min(base + f, len(mins))):
                if mins[c] <= k <= maxs[c]:
                    node = c
                    break
            lvl -= 1
        g = si * (self.sb // self.blk) + node
        lo, hi = self._block_bounds(g)
        pos = self._scan_block_fwd(lo, hi, k)
        assert pos >= 0
        return pos

    def _descend_bwd(self, si, lvl, node, k):
        levels = self._trees[si]
        f = self.fanout
        while lvl > 0:
            mins, maxs = levels[lvl - 1]
            base = node * f
            for c in range(min(base + f, len(mins)) - 1, base - 1, -1):
                if mins[c] <= k <= maxs[c]:
                    node = c
                    break
            lvl -= 1
        g = si * (self.sb // self.blk) + node
        lo, hi = self._block_bounds(g)
        pos = self._scan_block_bwd(lo, hi, k)
        assert pos >= 0
        return pos

    def _sb_search_fwd(self, si, i, k, e):
        g = i // self.blk
        lo, hi = self._block_bounds(g)
        pos = K.excess_scan_fwd(self.parens.words, i + 1, hi, e, k)
        if pos >= 0:
            return pos
        levels = self._trees[si]
        f = self.fanout
        node = g - si * (self.sb // self.blk)
        for lvl in range(len(levels)):
            mins, maxs = levels[lvl]
            parent_end = (node // f + 1) * f
            for c in range(node + 1, min(parent_end, len(mins))):
                if mins[c] <= k <= maxs[c]:
                    return self._descend_fwd(si, lvl, c, k)
            node //= f
        return -1

    def _sb_search_bwd(self, si, i, k, e):
        g = i // self.blk
        lo, hi = self._block_bounds(g)
        if i > lo:
            prev_e = e - (1 if self.parens.get(i) else -1)
            pos = K.excess_scan_bwd(self.parens.words, lo, i, prev_e, k)
            if pos >= 0:
                return pos
        levels = self._trees[si]
        f = self.fanout
        node = g - si * (self.sb // self.blk)
        for lvl in range(len(levels)):
            mins, maxs = levels[lvl]
            parent_base = (node // f) * f
            for c in range(node - 1, parent_base - 1, -1):
                if mins[c] <= k <= maxs[c]:
                    return self._descend_bwd(si, lvl, c, k)
            node //= f
        return -1

    def nextexcess(self, i, k):
        """Least position j > i with excess(j) = k, or None.

        Supported only for |k - excess(i)| <= delta (index contract).
        """
        e = self.excess(i)
        if abs(k - e) > self.delta:
            raise ValueError(f"excess offset |{k} - {e}| exceeds supported bound {self.delta}")
        si = i // self.sb
        pos = self._sb_search_fwd(si, i, k, e)
        if pos >= 0:
            return pos
        e1, e2 = self._sbmin[si], self._sbmax[si]
        if e1 <= k <= e2:
            lookup, tgts = self._links_fwd[si]
            t = tgts[lookup.find(k - e1)]
            if t < 0:
                return None
            levels = self._trees[t]
            return self._descend_fwd(t, len(levels) - 1, 0, k)
        lo_win, hi_win = self._ab_fwd[si]
        p = lo_win[k - (e1 - self.delta)] if k < e1 else hi_win[k - (e2 + 1)]
        return p if p >= 0 else None

    def prevexcess(self, i, k):
        """Greatest position j < i with excess(j) = k, or None (mirror index)."""
        e = self.excess(i)
        if abs(k - e) > self.delta:
            raise ValueError(f"excess offset |{k} - {e}| exceeds supported bound {self.delta}")
        si = i // self.sb
        pos = self._sb_search_bwd(si, i, k, e)
        if pos >= 0:
            return pos
        e1, e2 = self._sbmin[si], self._sbmax[si]
        if e1 <= k <= e2:
            lookup, tgts = self._links_bwd[si]
            t = tgts[lookup.find(k - e1)]
            if t < 0:
                return None
            levels = self._trees[t]
            return self._descend_bwd(t, len(levels) - 1, 0, k)
        lo_win, hi_win = self._ab_bwd[si]
        p = lo_win[k - (e1 - self.delta)] if k < e1 else hi_win[k - (e2 + 1)]
        return p if p >= 0 else None

    # -- matching and navigation ----------------------------------------------

    def findclose(self, i):
        if not self.is_open(i):
            raise ValueError(f"position {i} is not an open parenthesis")
        return self.nextexcess(i, self.excess(i) - 1)

    def findopen(self, j):
        if self.is_open(j):
            raise ValueError(f"position {j} is not a closing parenthesis")
        p = self.prevexcess(j, self.excess(j))
        return 0 if p is None else p + 1

    def depth(self, x):
        self._check_node(x)
        return self.excess(x)

    def _check_node(self, x):
        if not (0 <= x < self.P and self.is_open(x)):
            raise ValueError(f"{x} is not a node (open parenthesis position)")

    def _anc(self, x, k):
        """Ancestor k levels up, for 1 <= k < depth(x) and k < delta.

        The first position after x with excess depth(x)-k-1 is the close of
        the sought ancestor; map it back to its open parenthesis.
        """
        j = self.nextexcess(x, self.excess(x) - k - 1)
        assert j is not None
        if self.is_open(j):
            return j
        return self.findopen(j)

    def levelancestor(self, x, k):
        """Ancestor of x at depth depth(x) - k; None when above the root."""
        self._check_node(x)
        if k < 0:
            raise ValueError("level offset must be >= 0")
        if k == 0:
            return x
        d = self.excess(x)
        dt = d - k
        if dt < 1:
            return None
        if k + 1 <= self.delta:
            return self._anc(x, k)
        L = self.stride
        d1 = L * ((d - L) // L)
        m1 = self._anc(x, d - d1)
        d2 = L * ((dt + L - 1) // L)
        if d2 >= d1:
            return self._anc(m1, d1 - dt)
        m2 = self._marked_levelanc(m1, (d1 - d2) // L)
        if d2 == dt:
            return m2
        return self._anc(m2, d2 - dt)

    def levelsuccessor(self, x):
        """Next node at depth(x) in left-to-right order, or None."""
        self._check_node(x)
        j = self.nextexcess(self.findclose(x), self.excess(x))
        return j

    def levelpredecessor(self, x):
        self._check_node(x)
        e = self.excess(x)
        j = self.prevexcess(x, e)
        if j is None:
            return None
        if self.is_open(j):
            return j
        # j closes a depth-(e+1) node; its enclosing depth-e node is the answer
        jj = self.nextexcess(j, e - 1)
        return self.findopen(jj)

    def isancestor(self, x, y):
        """True iff x is an ancestor of y (reflexively)."""
        self._check_node(x)
        self._check_node(y)
        return x <= y and self.findclose(y) <= self.findclose(x)

    def parent(self, x):
        self._check_node(x)
        if x == 0:
            return None
        return self.levelancestor(x, 1)

    def firstchild(self, x):
        self._check_node(x)
        return x + 1 if self.is_open(x + 1) else None

    def preorder(self, x):
        """0-based preorder number of node x."""
        self._check_node(x)
        return self.fid.fullrank(x + 1) - 1

    def node_of_preorder(self, t):
        return self.fid.select(t)

    def spine_run(self, x):
        """Length of the maximal run of open parentheses starting at x."""
        self._check_node(x)
        z = self.fid.select0(self.fid.fullrank0(x))
        return z - x

    # -- marked level-ancestor scaffold ----------------------------------------

    def _build_marked(self):
        L = self.stride
        bits = self._bit_array()
        exc = np.cumsum(bits.astype(np.int64) * 2 - 1)
        cand = np.nonzero((bits == 1) & (exc % L == 0))[0]
        mpos, mclose = [], []
        stack = []
        mparent = []
        mdepth = []
        for v in map(int, cand):
            ev = int(exc[v])
            deep = self.nextexcess(v, ev + L)
            c = self.findclose(v)
            if deep is None or deep >= c:
                continue
            while stack and mclose[stack[-1]] < v:
                stack.pop()
            par = stack[-1] if stack else -1
            idx = len(mpos)
            mpos.append(v)
            mclose.append(c)
            mparent.append(par)
            mdepth.append(mdepth[par] + 1 if par >= 0 else 0)
            stack.append(idx)
        self._mpos = mpos
        self._mparent = mparent
        nm = len(mpos)

        children = [[] for _ in range(nm)]
        for v, p in enumerate(mparent):
            if p >= 0:
                children[p].append(v)
        height = [0] * nm
        for v in range(nm - 1, -1, -1):
            p = mparent[v]
            if p >= 0 and height[v] + 1 > height[p]:
                height[p] = height[v] + 1
        best = [-1] * nm
        for v in range(nm):
            for c in children[v]:
                if best[v] < 0 or height[c] > height[best[v]]:
                    best[v] = c

        self._ladders = []
        self._node_ladder = [None] * nm
        for v in range(nm):
            p = mparent[v]
            if p >= 0 and best[p] == v:
                continue  # not a path head
            path = [v]
            while best[path[-1]] >= 0:
                path.append(best[path[-1]])
            ladder = list(reversed(path))  # bottom (deepest) to top
            for idx, u in enumerate(ladder):
                self._node_ladder[u] = (len(self._ladders), idx)
            up = mparent[path[0]]
            for _ in range(len(path)):
                if up < 0:
                    break
                ladder.append(up)
                up = mparent[up]
            self._ladders.append(ladder)

        maxd = max(mdepth, default=0)
        logs = max(1, maxd.bit_length())
        up_table = [list(mparent)]
        for j in range(1, logs):
            prev = up_table[-1]
            up_table.append([prev[prev[v]] if prev[v] >= 0 else -1 for v in range(nm)])
        self._mjump = up_table

    def _marked_levelanc(self, pos, steps):
        """Level ancestor inside the marked tree; pos is a marked BP position."""
        mid = bisect.bisect_left(self._mpos, pos)
        assert self._mpos[mid] == pos, "not a marked node"
        if steps == 0:
            return pos
        j = steps.bit_length() - 1
        v = self._mjump[j][mid]
        rem = steps - (1 << j)
        lad, idx = self._node_ladder[v]
        ladder = self._ladders[lad]
        if idx + rem < len(ladder):
            return self._mpos[ladder[idx + rem]]
        while rem:
            v = self._mparent[v]
            rem -= 1
        return self._mpos[v]

    # -- space ------------------------------------------------------------------

    def space_bits(self):
        P = self.P
        w_abs = ceil_lg(P + 1)
        w_rel = ceil_lg(2 * self.sb + 1)
        index = self.fid.space_bits().index
        index += self.nsb * 2 * w_abs  # superblock excess ranges
        for levels in self._trees:
            for mins, _ in levels:
                index += 2 * w_rel * len(mins)
        for lo, hi in self._ab_fwd:
            index += (len(lo) + len(hi)) * (w_abs + 1)
        for lo, hi in self._ab_bwd:
            index += (len(lo) + len(hi)) * (w_abs + 1)
        w_sb = ceil_lg(self.nsb + 1) + 1
        for lookup, tgts in self._links_fwd:
            index += lookup.space_bits().total + len(tgts) * w_sb
        for lookup, tgts in self._links_bwd:
            index += lookup.space_bits().total + len(tgts) * w_sb
        nm = len(self._mpos)
        w_m = ceil_lg(nm + 1)
        index += nm * (w_abs + w_m)  # positions + parents
        index += sum(len(l) for l in self._ladders) * w_m
        index += nm * 2 * w_m  # ladder coordinates
        index += sum(len(t) for t in self._mjump) * w_m
        return SpaceBits(P, index)

    # -- serialization (section BPT1) --------------------------------------------

    def to_bytes(self):
        head = b"".join(
            v.to_bytes(8, "little")
            for v in (self.P, self.sb, self.blk, self.fanout, self.delta, self.stride)
        )
        return head + self.parens.to_bytes()

    @classmethod
    def from_bytes(cls, data):
        P, sb, blk, fanout, delta, stride = (
            int.from_bytes(data[8 * i : 8 * i + 8], "little") for i in range(6)
        )
        parens = BitSeq.from_bytes(P, data[48:])
        return cls(parens, sb=sb, blk=blk, fanout=fanout, delta=delta, stride=stride)


def bp_from_tree(obj, **params):
    """Build a BpTree from a paren string, a BitSeq, or a parent array.

    A parent array lists parent[i] for each node, -1 for the single root;
    children keep index order.
    """
    if isinstance(obj, (str, BitSeq)):
        return BpTree(obj, **params)
    parents = list(obj)
    n = len(parents)
    roots = [i for i, p in enumerate(parents) if p == -1]
    if len(roots) != 1:
        raise ValueError(f"parent array must have exactly one root, found {len(roots)}")
    children = [[] for _ in range(n)]
    for i, p in enumerate(parents):
        if p >= 0:
            if not 0 <= p < n:
                raise ValueError(f"parent[{i}] = {p} out of range")
            children[p].append(i)
    out = []
    stack = [(roots[0], False)]
    emitted = 0
    while stack:
        node, done = stack.pop()
        if done:
            out.append(")")
            continue
        out.append("(")
        emitted += 1
        stack.append((node, True))
        for c in reversed(children[node]):
            stack.append((c, False))
    if emitted != n:
        raise ValueError("parent array contains a cycle")
    return BpTree("".join(out), **params)
