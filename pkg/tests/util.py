"""Shared brute-force oracles and instance generators for the test suite.

Everything here is deliberately naive: linear scans, explicit iteration,
dictionary bookkeeping.  Oracles never call into the structures they check.
"""

import random


def rand_tree_parens(n, seed):
    """Random n-node tree as a paren string (shuffled Dyck word under a root)."""
    if n == 1:
        return "()"
    rng = random.Random(seed)
    m = n - 1
    seq = [1] * m + [0] * m
    rng.shuffle(seq)
    exc, low, cut = 0, 1, -1
    for i, b in enumerate(seq):
        exc += 1 if b else -1
        if exc < low:
            low, cut = exc, i
    seq = seq[cut + 1 :] + seq[: cut + 1]
    return "(" + "".join("()"[1 - b] for b in seq) + ")"


def excess_list(parens):
    out = []
    e = 0
    for ch in parens:
        e += 1 if ch == "(" else -1
        out.append(e)
    return out


def nextexcess_naive(excs, i, k):
    for j in range(i + 1, len(excs)):
        if excs[j] == k:
            return j
    return None


def prevexcess_naive(excs, i, k):
    for j in range(i - 1, -1, -1):
        if excs[j] == k:
            return j
    return None


def parent_map(parens):
    """Open position -> parent open position (None for the root)."""
    par = {}
    stack = []
    for j, ch in enumerate(parens):
        if ch == "(":
            par[j] = stack[-1] if stack else None
            stack.append(j)
        else:
            stack.pop()
    return par


def close_map(parens):
    close = {}
    stack = []
    for j, ch in enumerate(parens):
        if ch == "(":
            stack.append(j)
        else:
            close[stack.pop()] = j
    return close


def levels_of(parens):
    """depth -> list of open positions left to right."""
    par = parent_map(parens)
    excs = excess_list(parens)
    by = {}
    for x in sorted(par):
        by.setdefault(excs[x], []).append(x)
    return by


def iterate(image, i, k):
    for _ in range(k):
        i = image[i]
    return i


def preds_naive(image, i, k):
    n = len(image)
    cur = {i}
    for _ in range(k):
        cur = {j for j in range(n) if image[j] in cur}
    return sorted(cur)


def forward_tables(image, kmax):
    """Yield (k, table) with table[i] = f^k(i) for k = 0..kmax."""
    table = list(range(len(image)))
    for k in range(kmax + 1):
        yield k, table
        table = [image[v] for v in table]


def all_paren_trees(max_nodes):
    """Every tree with 1..max_nodes nodes, as paren strings (Catalan families)."""

    def balanced(m):
        if m == 0:
            yield ""
            return
        for first in range(1, m + 1):
            for inner in balanced(first - 1):
                for rest in balanced(m - first):
                    yield "(" + inner + ")" + rest

    for nodes in range(1, max_nodes + 1):
        for body in balanced(nodes - 1):
            yield "(" + body + ")"
