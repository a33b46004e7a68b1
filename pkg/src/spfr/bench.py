"""Micro-benchmark comparing the compiled kernels against the pure-Python twins,
plus end-to-end query rates that exercise them."""

import random
import time
from array import array

from . import _kernels as K
from .benes import build_benes
from .bptree import BpTree
from .cli import random_tree_parens
from .perm import random_perm
from .powers import build_powers


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _kernel_cases(nbits, rng):
    words = array("Q", (rng.getrandbits(64) for _ in range(nbits >> 6)))
    ones = sum(w.bit_count() for w in words)
    starts = [rng.randrange(nbits - 600) for _ in range(2000)]
    excess_starts = [rng.randrange(nbits - 80) for _ in range(2000)]

    def scan(mod):
        for s in starts:
            mod.scan_ones(words, s, 200, nbits)

    def scan0(mod):
        for s in starts:
            mod.scan_zeros(words, s, 200, nbits)

    def exc(mod):
        for s in excess_starts:
            mod.excess_scan_fwd(words, s, s + 64, 0, -100)  # full-window scan

    def pop(mod):
        for s in starts:
            mod.popcount_range(words, s, s + 512)

    return {"scan_ones": scan, "scan_zeros": scan0, "excess_scan": exc, "popcount_range": pop}


def run_bench(nbits, seed, repeat):
    rng = random.Random(seed)
    impls = K.implementations()
    print(f"active kernel backend: {K.BACKEND}")
    print(f"kernel micro-benchmarks on {nbits} random bits (2000 calls each, best of {repeat})")
    cases = _kernel_cases(max(nbits, 1 << 12), rng)
    header = f"{'kernel':>16}" + "".join(f"{name:>14}" for name in impls)
    print(header)
    for case, fn in cases.items():
        row = f"{case:>16}"
        base = None
        for name, mod in impls.items():
            dt = _time(lambda m=mod: fn(m), repeat)
            row += f"{dt * 1e6 / 2000:>11.2f} us"
            if base is None:
                base = dt
        if len(impls) == 2 and base:
            row += f"   ({base / dt:.1f}x)"
        print(row)

    n = 1 << 12
    perm = random_perm(n, seed)
    queries = [rng.randrange(n) for _ in range(4000)]
    rep = build_benes(perm, 1)
    dt = _time(lambda: [rep.forward(x) for x in queries], repeat)
    print(f"benes forward        : {dt * 1e6 / len(queries):8.2f} us/query (n={n})")
    pw = build_powers(perm, "shortcut", t=2)
    dt = _time(lambda: [pw.power(x, 12345) for x in queries], repeat)
    print(f"power query          : {dt * 1e6 / len(queries):8.2f} us/query (n={n})")
    parens = random_tree_parens(1 << 16, seed)
    tree = BpTree(parens)
    P = len(parens)
    tq = [rng.randrange(P) for _ in range(4000)]
    dt = _time(lambda: [tree.nextexcess(i, tree.excess(i) - 1 if tree.is_open(i) else tree.excess(i) + 1) for i in tq], repeat)
    print(f"tree nextexcess      : {dt * 1e6 / len(tq):8.2f} us/query (2n={P})")
