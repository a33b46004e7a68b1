"""Representation of an arbitrary f: [n] -> [n] supporting f^k for every
integer k.

The functional graph splits into gadgets (one directed cycle with trees
hanging off its cycle nodes).  All gadgets are packed, reordered, into one
tree T_f under a synthetic super-root:

  (i)   narrow gadgets (cycle length <= the width threshold) before wide ones;
  (ii)  wide gadgets in a fixed deterministic order (smallest label first);
  (iii) narrow gadgets by nondecreasing size, then cycle length;
  (iv)  within a gadget the cycle is broken at a maximal-height tree (ties:
        smallest root label) and the trees laid out in reverse cycle order, so
        the chain r^1 - r^2 - ... - r^q descends along the first children and
        the maximal tree hangs from the last chain node;
  (v)   within every tree the leftmost path is a longest path.

Rules (iv)+(v) make the leftmost spine of every subtree a maximal run of open
parentheses, so the height of any node is read off the parenthesis sequence
in O(1); forward powers become level-ancestor queries plus cycle arithmetic,
and inverse powers enumerate whole tree levels in time linear in the output.

The label <-> preorder bijection pi is held in any permutation backend; the
auxiliary dictionaries A/B/C (narrow) and A'/B' (wide) recover the cycle
length and size of the gadget owning a preorder number.
"""

import math

from .bits import Fid, SpaceBits, ceil_lg
from .bptree import BpTree
from .perm import Permutation
from .powers import make_backend


def default_width(n):
    """Threshold between narrow and wide cycles: roughly (lg n)^(1/3)."""
    return max(1, math.ceil(math.log2(max(n, 2)) ** (1.0 / 3.0)))


class MultisetCounter:
    """Counts, for a sorted multiset, how many elements are <= p.

    Stored as a FID over {value_t + t}: the flattening keeps duplicates as
    distinct set members, and the count is the number of ones before the
    (p+1)-st zero.
    """

    def __init__(self, values, max_query):
        self.count = len(values)
        top = values[-1] if values else 0
        self.universe = max(top + self.count, max_query + self.count) + 2
        self.fid = Fid(self.universe, [v + t for t, v in enumerate(values)])

    def count_le(self, p):
        z = self.fid.select0(p)
        return self.fid.fullrank(z)

    def space_bits(self):
        return self.fid.space_bits()


def _decompose(image):
    """Component id per node and the cycle node list of each component."""
    n = len(image)
    state = bytearray(n)  # 0 new, 1 on path, 2 done
    comp = [-1] * n
    cycles = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        pos = {}
        x = start
        while state[x] == 0:
            state[x] = 1
            pos[x] = len(path)
            path.append(x)
            x = image[x]
        if state[x] == 1:  # fresh cycle
            cid = len(cycles)
            cycles.append(path[pos[x] :])
        else:
            cid = comp[x]
        for v in path:
            comp[v] = cid
            state[v] = 2
    return comp, cycles


class _Gadget:
    __slots__ = ("cycle", "chain", "size", "q", "minlab", "wide")

    def __init__(self, cycle):
        self.cycle = cycle
        self.q = len(cycle)
        self.minlab = min(cycle)


class FuncRep:
    """Gadget-ordered tree T_f + label<->preorder permutation + dictionaries."""

    def __init__(self, image, *, backend="shortcut", t=2, width=None, bp_params=None):
        n = len(image)
        if n == 0:
            raise ValueError("function must have a nonempty domain")
        for i, v in enumerate(image):
            if not 0 <= v < n:
                raise ValueError(f"image[{i}] = {v} outside [0, {n})")
        self.n = n
        self.image = list(image)
        self.width = width if width is not None else default_width(n)
        self._build(backend, t, bp_params or {})
        self.tree_ops = 0

    # -- construction ---------------------------------------------------------

    def _build(self, backend, t, bp_params):
        n, image = self.n, self.image
        comp, cycles = _decompose(image)
        on_cycle = bytearray(n)
        for cyc in cycles:
            for v in cyc:
                on_cycle[v] = 1

        tree_children = [[] for _ in range(n)]
        for v in range(n):
            if not on_cycle[v]:
                tree_children[image[v]].append(v)

        # bottom-up stats over the hanging forest, ordering children by (v)
        height = [0] * n
        size = [1] * n
        minlab = list(range(n))
        spine = list(range(n))  # label of the deepest leaf on the leftmost path
        pending = [len(tree_children[v]) for v in range(n)]
        queue = [v for v in range(n) if pending[v] == 0]
        while queue:
            v = queue.pop()
            kids = tree_children[v]
            if kids:
                first = max(kids, key=lambda c: (height[c], -spine[c]))
                rest = sorted((c for c in kids if c is not first), key=lambda c: (size[c], minlab[c]))
                kids[:] = [first] + rest
                height[v] = height[first] + 1
                size[v] = 1 + sum(size[c] for c in kids)
                minlab[v] = min(v, min(minlab[c] for c in kids))
                spine[v] = spine[first]
            if not on_cycle[v]:
                p = image[v]
                pending[p] -= 1
                if pending[p] == 0:
                    queue.append(p)

        gadgets = []
        for cyc in cycles:
            g = _Gadget(cyc)
            g.size = sum(size[r] for r in cyc)
            g.wide = g.q > self.width
            # rule (iv): break at a maximal-height tree, smallest root label on ties
            m = min(cyc, key=lambda r: (-height[r], r))
            chain = [0] * g.q
            x = m
            for j in range(g.q - 1, -1, -1):
                chain[j] = x
                x = image[x]
            g.chain = chain
            gadgets.append(g)
        narrow = sorted((g for g in gadgets if not g.wide), key=lambda g: (g.size, g.q, g.minlab))
        wide = sorted((g for g in gadgets if g.wide), key=lambda g: g.minlab)
        self.narrow_total = sum(g.size for g in narrow)

        parens = ["("]
        labels = [-1]  # preorder 0 is the super-root
        for g in narrow + wide:
            self._emit_gadget(g, tree_children, parens, labels)
        parens.append(")")
        self.tree = BpTree("".join(parens), **bp_params)

        pi_image = [0] * n
        for pre, lab in enumerate(labels):
            if lab >= 0:
                pi_image[lab] = pre - 1  # preorders shifted so pi is on [n]
        self.pi = make_backend(Permutation(pi_image, _validated=True), backend, t)
        self.backend_kind = backend
        self.backend_t = t

        # narrow dictionaries A, B, C
        w_eff = 1
        for g in narrow:
            w_eff = max(w_eff, g.q)
        self.w_eff = w_eff
        self.A = []
        b_vals = []
        c_vals = []
        off = 0
        i = 0
        while i < len(narrow):
            s = narrow[i].size
            self.A.append(s)
            b_vals.append(off)
            j = i
            by_len = [0] * (w_eff + 1)
            while j < len(narrow) and narrow[j].size == s:
                by_len[narrow[j].q] += s
                j += 1
            run = 0
            for ell in range(1, w_eff + 1):
                run += by_len[ell]
                c_vals.append(off + run)
            off += run
            i = j
        self.B = Fid(max(self.narrow_total, 1), b_vals)
        self.C = MultisetCounter(c_vals, max_query=self.narrow_total)  # queried only below W

        # wide dictionaries A', B'
        self.Aprime = [(g.size, g.q) for g in wide]
        bp_vals = []
        off = self.narrow_total
        for g in wide:
            bp_vals.append(off)
            off += g.size
        self.Bprime = Fid(max(n, 1), bp_vals)

    def _emit_gadget(self, g, tree_children, parens, labels):
        chain = g.chain
        chain_next = {chain[j]: chain[j + 1] for j in range(g.q - 1)}
        stack = [("down", chain[0])]
        while stack:
            op, node = stack.pop()
            if op == "up":
                parens.append(")")
                continue
            parens.append("(")
            labels.append(node)
            stack.append(("up", node))
            kids = tree_children[node]
            if node in chain_next:
                stack.extend(("down", c) for c in reversed(kids))
                stack.append(("down", chain_next[node]))
            else:
                stack.extend(("down", c) for c in reversed(kids))

    # -- label / node translation ----------------------------------------------

    def _node(self, label):
        return self.tree.node_of_preorder(self.pi.forward(label) + 1)

    def _label(self, node):
        return self.pi.inverse(self.tree.preorder(node) - 1)

    def _op(self, count=1):
        self.tree_ops += count

    # -- gadget dictionaries -----------------------------------------------------

    def gadget_of(self, i):
        """(cycle length, gadget size, is_wide) for the gadget holding label i."""
        if not 0 <= i < self.n:
            raise ValueError(f"label {i} outside [0, {self.n})")
        q, s, wide, _ = self._gadget_of_preorder(self.pi.forward(i))
        return q, s, wide

    def _gadget_of_preorder(self, p):
        if p >= self.narrow_total:
            b = self.Bprime.fullrank(p + 1) - 1
            s, q = self.Aprime[b]
            return q, s, True, self.Bprime.select(b)
        c = self.B.fullrank(p + 1) - 1
        s = self.A[c]
        p_c = self.B.select(c)
        root_pre = p_c + s * ((p - p_c) // s)
        ell = self.C.count_le(p) - c * self.w_eff + 1
        return ell, s, False, root_pre

    # -- queries -------------------------------------------------------------------

    def f_power(self, i, k):
        """f^k(i) for k >= 0: level-ancestor steps inside the tree, cycle
        arithmetic once the gadget root is reached."""
        if not 0 <= i < self.n:
            raise ValueError(f"label {i} outside [0, {self.n})")
        if k < 0:
            raise ValueError("use f_inverse_power for negative powers")
        if k == 0:
            return i
        x = self._node(i)
        d = self.tree.depth(x)
        steps_to_root = d - 2
        if k <= steps_to_root:
            self._op()
            return self._label(self.tree.levelancestor(x, k))
        self._op()
        g = self.tree.levelancestor(x, steps_to_root)
        q, _, _, _ = self._gadget_of_preorder(self.tree.preorder(g) - 1)
        m = (k - steps_to_root) % q
        j = 1 if m == 0 else q - m + 1
        return self._label(g + j - 1)

    def _sweep(self, z, abs_level, out):
        """All nodes of subtree(z) at the given absolute depth, in order.

        The leftmost spine of z is a run of opens whose length is exactly
        height(z)+1, so both the emptiness test and the first node are O(1).
        """
        tree = self.tree
        dz = tree.depth(z)
        rel = abs_level - dz
        if rel < 0:
            return
        self._op()
        if rel >= tree.spine_run(z):
            return
        node = z + rel
        while node is not None:
            self._op(2)
            if not tree.isancestor(z, node):
                break
            out.append(node)
            node = tree.levelsuccessor(node)

    def f_inverse_power(self, i, k):
        """The full preimage set {j : f^k(j) = i} for k >= 1.

        Non-chain nodes have all k-th predecessors exactly k levels below.
        For a chain node r^j the answers are one level set under r^j plus the
        level sets under the gadget root at depths k-(q-j)-1-c*q, stepping the
        cycle period; every such level within the gadget height is nonempty,
        keeping the work linear in the output.
        """
        if not 0 <= i < self.n:
            raise ValueError(f"label {i} outside [0, {self.n})")
        if k < 1:
            raise ValueError("inverse power needs k >= 1")
        x = self._node(i)
        tree = self.tree
        d = tree.depth(x)
        found = []
        self._sweep(x, d + k, found)
        self._op()
        g = tree.levelancestor(x, d - 2)
        if x - g == d - 2:  # on the gadget spine: chain node iff within the cycle prefix
            q, _, _, _ = self._gadget_of_preorder(self.tree.preorder(g) - 1)
            j = d - 1
            if j <= q:
                base = k - (q - j) - 1
                if base >= 0:
                    height = tree.spine_run(g) - 1
                    self._op()
                    c0 = 0 if base <= height else -((height - base) // q)
                    off = base - c0 * q
                    while off >= 0:
                        self._sweep(g, 2 + off, found)
                        off -= q
        return sorted(self._label(v) for v in found)

    # -- space ---------------------------------------------------------------------

    def space_bits(self):
        total = self.pi.space_bits() + self.tree.space_bits()
        total = total + self.B.space_bits() + self.C.space_bits() + self.Bprime.space_bits()
        arrays = len(self.A) * ceil_lg(self.n + 1)
        arrays += len(self.Aprime) * 2 * ceil_lg(self.n + 1)
        return total + SpaceBits(0, arrays)

    def space_report(self):
        return {
            "pi": self.pi.space_bits(),
            "tree": self.tree.space_bits(),
            "dicts": self.B.space_bits() + self.C.space_bits() + self.Bprime.space_bits(),
        }


def build_func(image, *, backend="shortcut", t=2, width=None, bp_params=None):
    """FuncRep for an image sequence over [n]."""
    return FuncRep(image, backend=backend, t=t, width=width, bp_params=bp_params)


def iterate_oracle(image, i, k):
    """k-fold application of f; the independent reference."""
    for _ in range(k):
        i = image[i]
    return i


def quad19_image():
    """f(x) = (x^2 + 2x - 1) mod 19, the worked 19-element instance."""
    return [(x * x + 2 * x - 1) % 19 for x in range(19)]
