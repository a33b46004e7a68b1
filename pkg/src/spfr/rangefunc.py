"""Functions with arbitrary ranges f: [n] -> [m].

Case n > m stores the restriction of f to [m] as a FuncRep whose graph is
augmented with one dummy node per distinct value of f on [m, n); the tail
f(m..n-1) itself is held as a chunked-permutation sequence answering access
and select with a single forward or inverse query on one chunk permutation.

Case n < m has no cycles through out-of-domain values: every range element
>= n with a preimage roots a terminal tree.  Those roots become self-loops in
an internal FuncRep over n + |R| labels; queries cut the fake loop off, so
powers that leave the domain report the defined-failure marker -1.
"""

from .bits import Fid, IndexableDict, SpaceBits, ceil_lg
from .funcrep import FuncRep
from .perm import Permutation
from .powers import make_backend


class ChunkedSeq:
    """Sequence over alphabet [m] as ceil(len/m) chunk permutations plus
    counting bitmaps; access = one inverse query, select = one forward query."""

    def __init__(self, seq, m, *, backend="shortcut", t=2):
        if m < 1:
            raise ValueError("alphabet size must be >= 1")
        for i, v in enumerate(seq):
            if not 0 <= v < m:
                raise ValueError(f"symbol {v} at {i} outside [0, {m})")
        self.m = m
        self.length = len(seq)
        self.nchunks = (self.length + m - 1) // m
        self.perms = []
        self.bounds = []
        counts_flat = []
        for c in range(self.nchunks):
            chunk = seq[c * m : (c + 1) * m]
            order = sorted(range(len(chunk)), key=lambda p: (chunk[p], p))
            perm = Permutation(order, _validated=True)
            self.perms.append(make_backend(perm, backend, t))
            counts = [0] * m
            for v in chunk:
                counts[v] += 1
            bits = []
            for j in range(m):
                bits.extend([1] * counts[j])
                bits.append(0)
            from .bits import BitSeq

            self.bounds.append(Fid(len(bits), bitmap=BitSeq.from_bits(bits)))
            counts_flat.append(counts)
        gbits = []
        for j in range(m):
            for c in range(self.nchunks):
                gbits.extend([1] * counts_flat[c][j])
                gbits.append(0)
        from .bits import BitSeq

        self.G = Fid(max(len(gbits), 1), bitmap=BitSeq.from_bits(gbits or [0]))

    def _ones_before_zero(self, z):
        """Ones preceding the (z+1)-th zero of the global bitmap."""
        if z < 0:
            return 0
        return self.G.select0(z) - z

    def access(self, p):
        """The p-th symbol."""
        if not 0 <= p < self.length:
            raise ValueError(f"position {p} outside [0, {self.length})")
        c, loc = divmod(p, self.m)
        t = self.perms[c].inverse(loc)
        y = self.bounds[c].select(t)
        return y - t

    def select(self, j, occ):
        """Position of the (occ+1)-th occurrence of symbol j, or None."""
        if not 0 <= j < self.m:
            raise ValueError(f"symbol {j} outside [0, {self.m})")
        if occ < 0:
            raise ValueError("occurrence index must be >= 0")
        C = self.nchunks
        before = self._ones_before_zero(j * C - 1)
        total = self._ones_before_zero((j + 1) * C - 1) - before
        if occ >= total:
            return None
        rank = before + occ
        y = self.G.select(rank)
        zeros = y - rank
        c = zeros - j * C
        ones_chunk = self._ones_before_zero(zeros - 1)
        occ_in_chunk = rank - ones_chunk
        b = self.bounds[c]
        start_j = b.select0(j - 1) - (j - 1) if j > 0 else 0
        return c * self.m + self.perms[c].forward(start_j + occ_in_chunk)

    def space_bits(self):
        total = SpaceBits(0, 0)
        for p in self.perms:
            total = total + p.space_bits()
        for b in self.bounds:
            total = total + b.space_bits()
        return total + self.G.space_bits()


class RangeRepLarge:
    """f: [n] -> [m] with n > m."""

    def __init__(self, image, n, m, *, backend="shortcut", t=2, width=None):
        if n <= m:
            raise ValueError("this representation needs n > m")
        if len(image) != n:
            raise ValueError("image length must be n")
        for i, v in enumerate(image):
            if not 0 <= v < m:
                raise ValueError(f"image[{i}] = {v} outside [0, {m})")
        self.n, self.m = n, m
        tail = image[m:]
        self.seq = ChunkedSeq(tail, m, backend=backend, t=t)
        dv = sorted(set(tail))
        self.dummies = IndexableDict(m, dv)
        self.d = len(dv)
        core_image = list(image[:m]) + dv
        self.core = FuncRep(core_image, backend=backend, t=t, width=width)

    def power(self, i, k):
        """f^k(i) for k >= 0 (dummy-free: values land in [m])."""
        if not 0 <= i < self.n:
            raise ValueError(f"element {i} outside [0, {self.n})")
        if k < 0:
            raise ValueError("k must be >= 0")
        if k == 0:
            return i
        if i < self.m:
            return self.core.f_power(i, k)
        j = self.seq.access(i - self.m)
        return j if k == 1 else self.core.f_power(j, k - 1)

    def inverse_power(self, i, k):
        """{x in [n] : f^k(x) = i} for i in [m], k >= 1; dummies expand to the
        tail positions holding their value."""
        if not 0 <= i < self.m:
            raise ValueError(f"inverse queries are defined for i in [0, {self.m})")
        out = []
        for p in self.core.f_inverse_power(i, k):
            if p < self.m:
                out.append(p)
            else:
                j = self.dummies.select(p - self.m)
                occ = 0
                while (pos := self.seq.select(j, occ)) is not None:
                    out.append(self.m + pos)
                    occ += 1
        return sorted(out)

    def space_bits(self):
        return self.core.space_bits() + self.seq.space_bits() + self.dummies.space_bits()


class RangeRepSmall:
    """f: [n] -> [m] with n < m; powers report -1 once the walk leaves [n]."""

    UNDEFINED = -1

    def __init__(self, image, n, m, *, backend="shortcut", t=2, width=None):
        if n >= m:
            raise ValueError("this representation needs n < m")
        if len(image) != n:
            raise ValueError("image length must be n")
        for i, v in enumerate(image):
            if not 0 <= v < m:
                raise ValueError(f"image[{i}] = {v} outside [0, {m})")
        self.n, self.m = n, m
        R = sorted({v for v in image if v >= n})
        self.rdict = IndexableDict(m, R)
        self.nr = len(R)
        ridx = {v: n + j for j, v in enumerate(R)}
        core_image = [image[i] if image[i] < n else ridx[image[i]] for i in range(n)]
        core_image += [n + j for j in range(self.nr)]  # terminal roots as self-loops
        self.core = FuncRep(core_image, backend=backend, t=t, width=width)

    def _external(self, label):
        return label if label < self.n else self.rdict.select(label - self.n)

    def _gadget_root_label(self, x):
        tree = self.core.tree
        d = tree.depth(x)
        return self.core._label(tree.levelancestor(x, d - 2)), d

    def power(self, i, k):
        """f^k(i), or -1 when an intermediate value falls outside the domain."""
        if not 0 <= i < self.n:
            raise ValueError(f"element {i} outside [0, {self.n})")
        if k < 0:
            raise ValueError("k must be >= 0")
        if k == 0:
            return i
        x = self.core._node(i)
        root_label, d = self._gadget_root_label(x)
        if root_label < self.n:  # genuine cycle component, fully inside [n]
            return self.core.f_power(i, k)
        steps = d - 2  # distance to the terminal root
        if k > steps:
            return self.UNDEFINED
        if k == steps:
            return self.rdict.select(root_label - self.n)
        return self.core._label(self.core.tree.levelancestor(x, k))

    def inverse_power(self, i, k):
        """{x in [n] : f^k(x) = i} for any i in [m], k >= 1."""
        if not 0 <= i < self.m:
            raise ValueError(f"element {i} outside [0, {self.m})")
        if k < 1:
            raise ValueError("inverse power needs k >= 1")
        if i < self.n:
            label = i
        else:
            r = self.rdict.partial_rank(i)
            if r < 0:
                return []
            label = self.n + r
        x = self.core._node(label)
        root_label, d = self._gadget_root_label(x)
        if root_label >= self.n:
            # terminal tree: exactly one level, no cycle periodicity
            nodes = []
            self.core._sweep(x, d + k, nodes)
            return sorted(self.core._label(v) for v in nodes if self.core._label(v) < self.n)
        return self.core.f_inverse_power(label, k)

    def space_bits(self):
        return self.core.space_bits() + self.rdict.space_bits()


def build_range(image, n, m, **kw):
    """Dispatch on the domain/range relation; m == n falls back to FuncRep."""
    if n > m:
        return RangeRepLarge(image, n, m, **kw)
    if n < m:
        return RangeRepSmall(image, n, m, **kw)
    return FuncRep(image, **kw)
