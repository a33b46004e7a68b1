"""Command-line front end: gen, build, query, verify, space, bench.

Exit codes: 0 ok, 1 verification mismatch, 2 usage error (argparse default).
All randomness flows through --seed; runs are reproducible byte for byte.
"""

import argparse
import math
import random
import sys

from . import serialize as ser
from .benes import build_benes
from .bits import ceil_lg
from .bptree import BpTree
from .funcrep import FuncRep, quad19_image
from .perm import Permutation, power_oracle, random_perm
from .powers import PowerRep, build_powers
from .rangefunc import RangeRepLarge, RangeRepSmall, build_range
from .shortcut import Corollary1Backend, build_shortcut


# -- text formats ----------------------------------------------------------------


def write_perm_text(path, perm):
    with open(path, "w") as fh:
        fh.write(f"{perm.n}\n")
        fh.write(" ".join(map(str, perm.image)) + "\n")


def read_perm_text(path):
    with open(path) as fh:
        n = int(fh.readline())
        image = list(map(int, fh.readline().split()))
    if len(image) != n:
        raise ValueError(f"perm file promises {n} values, has {len(image)}")
    return Permutation(image)


def write_func_text(path, image, m):
    with open(path, "w") as fh:
        fh.write(f"{len(image)} {m}\n")
        fh.write(" ".join(map(str, image)) + "\n")


def read_func_text(path):
    with open(path) as fh:
        n, m = map(int, fh.readline().split())
        image = list(map(int, fh.readline().split()))
    if len(image) != n:
        raise ValueError(f"function file promises {n} values, has {len(image)}")
    return image, n, m


def write_tree_text(path, parens):
    with open(path, "w") as fh:
        fh.write(parens + "\n")


def read_tree_text(path):
    with open(path) as fh:
        return fh.readline().strip()


def random_tree_parens(n, seed):
    """Random tree: a shuffled balanced sequence rotated to validity, under a root."""
    if n < 1:
        raise ValueError("tree needs at least one node")
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


# -- space reporting ---------------------------------------------------------------


def lg_factorial_bits(n):
    return math.ceil(math.lgamma(n + 1) / math.log(2)) if n > 1 else 0


def print_space(space, bound, bound_desc):
    print(f"bound      : {bound} bits  ({bound_desc})")
    print(f"payload    : {space.payload} bits  (+ index {space.index} bits)")
    print(f"redundancy : {space.total - bound} bits  (payload + index - bound)")


# -- subcommands ---------------------------------------------------------------------


def cmd_gen(args):
    if args.kind == "perm":
        perm = random_perm(args.n, args.seed)
        write_perm_text(args.out, perm)
    elif args.kind == "func":
        if args.formula == "quad19":
            image, m = quad19_image(), 19
        else:
            m = args.m or args.n
            rng = random.Random(args.seed)
            image = [rng.randrange(m) for _ in range(args.n)]
        write_func_text(args.out, image, m)
    else:
        write_tree_text(args.out, random_tree_parens(args.n, args.seed))
    print(f"wrote {args.kind} to {args.out}")
    return 0


def cmd_build(args):
    sections = []
    if args.kind == "shortcut":
        perm = read_perm_text(args.infile)
        rep = build_shortcut(perm, args.t)
        sections = [("PERM", ser.perm_to_bytes(perm.image)), ("SHC1", rep.to_bytes())]
        space = rep.space_bits()
        extra = perm.n * ceil_lg(perm.n)  # the image array the queries run against
        print(f"shortcut pointers s = {rep.s} (bound 2n/t = {2 * perm.n // args.t})")
        print_space(
            type(space)(space.payload + extra, space.index),
            lg_factorial_bits(perm.n),
            "ceil(lg n!)",
        )
    elif args.kind == "benes":
        perm = read_perm_text(args.infile)
        rep = build_benes(perm, args.t)
        sections = [("BNS1", rep.to_bytes())]
        print(f"(q, r) = ({rep.q}, {rep.r}), padded size {rep.np}")
        print(f"outer switch bits {rep.outer_bits()}, central bits {rep.central_bits()}")
        print_space(rep.space_bits(), lg_factorial_bits(perm.n), "ceil(lg n!)")
    elif args.kind == "powers":
        perm = read_perm_text(args.infile)
        rep = build_powers(perm, args.backend, args.t)
        sections = [("PWR1", ser.powers_to_bytes(rep))]
        print_space(rep.space_bits(), lg_factorial_bits(perm.n), "ceil(lg n!)")
    elif args.kind == "func":
        image, n, m = read_func_text(args.infile)
        rep = build_range(image, n, m, backend=args.backend, t=args.t, width=args.width)
        sections = [("FNC1", ser.func_to_bytes(rep))]
        bound = n * max(1, ceil_lg(m))
        print_space(rep.space_bits(), bound, "n lg m")
    elif args.kind == "tree":
        parens = read_tree_text(args.infile)
        tree = BpTree(parens)
        sections = [("BPT1", tree.to_bytes())]
        print_space(tree.space_bits(), 2 * tree.n, "2n")
    with open(args.out, "wb") as fh:
        fh.write(ser.write_container(sections))
    print(f"wrote container {args.out} [{', '.join(tag for tag, _ in sections)}]")
    return 0


def load_container(path):
    with open(path, "rb") as fh:
        sections = ser.read_container(fh.read())
    by_tag = dict(sections)
    if "FNC1" in by_tag:
        return "func", ser.func_from_bytes(by_tag["FNC1"])
    if "PWR1" in by_tag:
        return "powers", ser.powers_from_bytes(by_tag["PWR1"])
    if "BNS1" in by_tag:
        return "benes", ser.BenesRep.from_bytes(by_tag["BNS1"])
    if "SHC1" in by_tag:
        perm = ser.perm_from_bytes(by_tag["PERM"])
        from .shortcut import ShortcutRep

        rep = ShortcutRep.from_bytes(by_tag["SHC1"], perm.image.__getitem__)
        rep.perm = perm
        return "shortcut", rep
    if "BPT1" in by_tag:
        return "tree", BpTree.from_bytes(by_tag["BPT1"])
    raise ValueError(f"container {path} holds no queryable section")


def cmd_query(args):
    kind, rep = load_container(args.container)
    op = args.op
    counted = None

    def answer(value):
        if counted is not None:
            print(f"{value} evals={counted}")
        else:
            print(value)

    if kind in ("benes", "shortcut"):
        if op == "forward":
            if kind == "shortcut":
                out = rep.perm.image[args.x]
            else:
                rep.reset_evals()
                out = rep.forward(args.x)
                counted = rep.evals.get("bit_reads", 0) if args.count else None
            answer(out)
        elif op == "inverse":
            rep.reset_evals()
            out = rep.inverse(args.x)
            if args.count:
                key = "forward" if kind == "shortcut" else "bit_reads"
                counted = rep.evals.get(key, 0)
            answer(out)
        else:
            raise SystemExit(f"operation {op!r} not available on a {kind} container")
    elif kind == "powers":
        if op != "power":
            raise SystemExit("powers containers answer the 'power' operation")
        rep.reset_evals()
        out = rep.power(args.x, args.k)
        if args.count:
            counted = sum(rep.evals.values())
        answer(out)
    elif kind == "func":
        if op == "fpow":
            answer(rep.power(args.i, args.k) if not isinstance(rep, FuncRep) else rep.f_power(args.i, args.k))
        elif op == "finv":
            if isinstance(rep, FuncRep):
                if args.count:
                    rep.tree_ops = 0
                vals = rep.f_inverse_power(args.i, args.k)
                counted = rep.tree_ops if args.count else None
            else:
                vals = rep.inverse_power(args.i, args.k)
            answer(" ".join(map(str, vals)) if vals else "-")
        else:
            raise SystemExit(f"operation {op!r} not available on a function container")
    elif kind == "tree":
        tree = rep
        if op == "levelancestor":
            answer(tree.levelancestor(args.x, args.k))
        elif op == "levelsuccessor":
            answer(tree.levelsuccessor(args.x))
        elif op == "levelpredecessor":
            answer(tree.levelpredecessor(args.x))
        elif op == "parent":
            answer(tree.parent(args.x))
        elif op == "firstchild":
            answer(tree.firstchild(args.x))
        elif op == "depth":
            answer(tree.depth(args.x))
        elif op == "isancestor":
            answer(tree.isancestor(args.x, args.y))
        elif op == "nextexcess":
            answer(tree.nextexcess(args.i, args.k))
        elif op == "prevexcess":
            answer(tree.prevexcess(args.i, args.k))
        elif op == "findclose":
            answer(tree.findclose(args.x))
        else:
            raise SystemExit(f"operation {op!r} not available on a tree container")
    return 0


def _verify_perm_rep(rep, perm, sample, rng, fail):
    inv = perm.inverse_image()
    n = perm.n
    xs = range(n) if n <= sample else rng.sample(range(n), sample)
    for x in xs:
        if hasattr(rep, "forward"):
            got = rep.forward(x)
            if got != perm.image[x]:
                fail(f"forward({x}) = {got}, expected {perm.image[x]}")
        got = rep.inverse(x)
        if got != inv[x]:
            fail(f"inverse({x}) = {got}, expected {inv[x]}")


def cmd_verify(args):
    kind, rep = load_container(args.container)
    rng = random.Random(args.seed)
    failures = []

    def fail(msg):
        failures.append(msg)

    if kind in ("benes", "shortcut"):
        perm = read_perm_text(args.data)
        if kind == "shortcut" and tuple(rep.perm.image) != tuple(perm.image):
            fail("stored image differs from input file")
        _verify_perm_rep(rep, perm, args.sample, rng, fail)
    elif kind == "powers":
        perm = read_perm_text(args.data)
        n = perm.n
        for _ in range(min(args.sample, 4 * n)):
            x = rng.randrange(n)
            k = rng.randrange(-2 * n, 2 * n + 1)
            got = rep.power(x, k)
            exp = power_oracle(perm, x, k)
            if got != exp:
                fail(f"power({x},{k}) = {got}, expected {exp}")
    elif kind == "func":
        image, n, m = read_func_text(args.data)
        kmax = min(2 * n + 2, 60)
        def iterate(i, k):
            v = i
            for _ in range(k):
                if v >= n:
                    return None
                v = image[v]
            return v
        for _ in range(args.sample):
            i = rng.randrange(n)
            k = rng.randrange(0, kmax)
            exp = iterate(i, k)
            if isinstance(rep, FuncRep):
                got = rep.f_power(i, k)
                if got != exp:
                    fail(f"fpow({i},{k}) = {got}, expected {exp}")
            elif isinstance(rep, RangeRepSmall):
                got = rep.power(i, k)
                if got != (exp if exp is not None else -1):
                    fail(f"fpow({i},{k}) = {got}, expected {exp}")
            else:
                got = rep.power(i, k)
                if got != exp:
                    fail(f"fpow({i},{k}) = {got}, expected {exp}")
        for _ in range(args.sample):
            k = rng.randrange(1, kmax)
            i = rng.randrange(m)
            exp = sorted(j for j in range(n) if iterate(j, k) == i)
            if isinstance(rep, FuncRep):
                got = rep.f_inverse_power(i, k) if i < n else []
            else:
                got = rep.inverse_power(i, k)
            if got != exp:
                fail(f"finv({i},{k}) = {got}, expected {exp}")
    elif kind == "tree":
        parens = read_tree_text(args.data)
        tree = rep
        P = len(parens)
        if P != tree.P:
            fail("tree size differs from input file")
        exc = 0
        excs = []
        for ch in parens:
            exc += 1 if ch == "(" else -1
            excs.append(exc)
        for _ in range(args.sample):
            i = rng.randrange(P)
            k = excs[i] + rng.randrange(-min(tree.delta, 8), min(tree.delta, 8) + 1)
            exp = next((j for j in range(i + 1, P) if excs[j] == k), None)
            got = tree.nextexcess(i, k)
            if got != exp:
                fail(f"nextexcess({i},{k}) = {got}, expected {exp}")
    if failures:
        for msg in failures[:10]:
            print(f"FAIL {msg}")
        print(f"verification failed: {len(failures)} mismatching queries")
        return 1
    print("verification passed")
    return 0


def cmd_space(args):
    kind, rep = load_container(args.container)
    space = rep.space_bits()
    if kind in ("benes", "powers", "shortcut"):
        n = rep.n
        print_space(space, lg_factorial_bits(n), "ceil(lg n!)")
    elif kind == "tree":
        print_space(space, 2 * rep.n, "2n")
    else:
        n = rep.n
        m = getattr(rep, "m", n)
        print_space(space, n * max(1, ceil_lg(m)), "n lg m")
    return 0


def cmd_bench(args):
    from .bench import run_bench

    run_bench(args.n, args.seed, args.repeat)
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="spfr", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("kind", choices=["perm", "func", "tree"])
    g.add_argument("--n", type=int, default=64)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--formula", choices=["quad19"], default=None)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_gen)

    b = sub.add_parser("build", help="build a representation container")
    b.add_argument("kind", choices=["shortcut", "benes", "powers", "func", "tree"])
    b.add_argument("--in", dest="infile", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--t", type=int, default=2)
    b.add_argument("--backend", choices=["naive", "shortcut", "benes"], default="shortcut")
    b.add_argument("--width", type=int, default=None)
    b.set_defaults(fn=cmd_build)

    q = sub.add_parser("query", help="run one query against a container")
    q.add_argument("container")
    q.add_argument(
        "op",
        choices=[
            "forward", "inverse", "power", "fpow", "finv",
            "levelancestor", "levelsuccessor", "levelpredecessor", "parent",
            "firstchild", "depth", "isancestor", "nextexcess", "prevexcess", "findclose",
        ],
    )
    q.add_argument("--x", type=int, default=0)
    q.add_argument("--y", type=int, default=0)
    q.add_argument("--i", type=int, default=0)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--count", action="store_true", help="print evaluation tallies")
    q.set_defaults(fn=cmd_query)

    v = sub.add_parser("verify", help="cross-check a container against oracles")
    v.add_argument("container")
    v.add_argument("--data", required=True, help="the original text input")
    v.add_argument("--sample", type=int, default=512)
    v.add_argument("--seed", type=int, default=7)
    v.set_defaults(fn=cmd_verify)

    s = sub.add_parser("space", help="print the space report of a container")
    s.add_argument("container")
    s.set_defaults(fn=cmd_space)

    be = sub.add_parser("bench", help="compare compiled and pure-Python kernels")
    be.add_argument("--n", type=int, default=1 << 18)
    be.add_argument("--seed", type=int, default=1)
    be.add_argument("--repeat", type=int, default=3)
    be.set_defaults(fn=cmd_bench)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
