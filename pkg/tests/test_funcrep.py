import random

import pytest

from spfr.funcrep import FuncRep, build_func, default_width, quad19_image
from util import forward_tables, iterate, preds_naive

F19 = quad19_image()


def brute_gadgets(image):
    """(cycle length, size, member set) per component, by brute force."""
    n = len(image)
    comp = [-1] * n
    out = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        path, pos = [], {}
        x = start
        while comp[x] < 0 and x not in pos:
            pos[x] = len(path)
            path.append(x)
            x = image[x]
        cid = comp[x] if comp[x] >= 0 else len(out)
        if comp[x] < 0:
            out.append({"cycle": len(path) - pos[x], "members": set()})
        for v in path:
            comp[v] = cid
    for v in range(n):
        out[comp[v]]["members"].add(v)
    for g in out:
        g["size"] = len(g["members"])
    return out


def check_against_oracle(image, kmax, **kw):
    n = len(image)
    rep = build_func(image, **kw)
    for k, table in forward_tables(image, kmax):
        for i in range(n):
            assert rep.f_power(i, k) == table[i], (image, i, k)
    for k in range(1, kmax + 1):
        groups = {}
        for j in range(n):
            groups.setdefault(iterate(image, j, k), []).append(j)
        for i in range(n):
            assert rep.f_inverse_power(i, k) == sorted(groups.get(i, [])), (image, i, k)
    return rep


def test_f19_worked_values():
    rep = build_func(F19)
    assert rep.f_power(0, 1) == 18
    assert rep.f_inverse_power(18, 1) == [0, 17]
    assert rep.f_power(5, 0) == 5


def test_f19_structure_matches_brute_force():
    rep = build_func(F19)
    expected = brute_gadgets(F19)
    for g in expected:
        for v in g["members"]:
            q, size, _ = rep.gadget_of(v)
            assert q == g["cycle"]
            assert size == g["size"]


def test_f19_exhaustive():
    check_against_oracle(F19, kmax=45)


def test_identity_function():
    rep = build_func(list(range(8)))
    for i in range(8):
        assert rep.gadget_of(i) == (1, 1, False)
        assert rep.f_power(i, 12345) == i
        assert rep.f_inverse_power(i, 3) == [i]


def test_default_width():
    assert default_width(19) == 2
    assert default_width(1) >= 1


def test_invalid_image():
    with pytest.raises(ValueError, match=r"image\[1\]"):
        build_func([0, 5])
    with pytest.raises(ValueError):
        build_func([])


def test_random_functions_exhaustive():
    rng = random.Random(71)
    for _ in range(25):
        n = rng.choice([1, 2, 3, 5, 9, 20, 48])
        image = [rng.randrange(n) for _ in range(n)]
        check_against_oracle(image, kmax=min(2 * n + 2, 40))


def test_width_threshold_sweep():
    rng = random.Random(72)
    for _ in range(6):
        n = rng.choice([6, 17, 30])
        image = [rng.randrange(n) for _ in range(n)]
        for w in (1, 2, 4, n):
            rep = check_against_oracle(image, kmax=2 * n, width=w)
            for g in brute_gadgets(image):
                v = next(iter(g["members"]))
                q, size, wide = rep.gadget_of(v)
                assert (q, size) == (g["cycle"], g["size"])
                assert wide == (g["cycle"] > w)


def test_backend_sweep():
    image = [random.Random(4).randrange(30) for _ in range(30)]
    for kind in ("naive", "shortcut", "benes"):
        check_against_oracle(image, kmax=20, backend=kind)


def _subtree_heights(parens):
    """open position -> height, by stack scan."""
    heights = {}
    stack = []
    for j, ch in enumerate(parens):
        if ch == "(":
            stack.append([j, 0])
        else:
            pos, h = stack.pop()
            heights[pos] = h
            if stack:
                stack[-1][1] = max(stack[-1][1], h + 1)
    return heights


def validate_tf_ordering(rep, image):
    """The five layout rules, checked directly on the built tree."""
    tree = rep.tree
    parens = "".join("()"[1 - tree.parens.get(i)] for i in range(tree.P))
    heights = _subtree_heights(parens)
    # spine-run property: leftmost open run length = height + 1 for every real node
    pos = 1
    for x in heights:
        if x == 0:
            continue
        assert tree.spine_run(x) == heights[x] + 1, (parens, x)
    # gadget ordering along the super-root's children
    kids = []
    x = tree.firstchild(0)
    while x is not None:
        kids.append(x)
        x = tree.levelsuccessor(x)
    stats = [rep.gadget_of(rep._label(x)) for x in kids]
    seen_wide = False
    prev = None
    for (q, size, wide) in stats:
        if wide:
            seen_wide = True
        else:
            assert not seen_wide, "narrow gadget after a wide one"
            if prev is not None:
                assert (prev[1], prev[0]) <= (size, q), "narrow gadgets out of order"
            prev = (q, size)
    # within each gadget: chain nodes consecutive, maximal tree last
    for x, (q, size, wide) in zip(kids, stats):
        chain = [x + j for j in range(q)]
        for j, c in enumerate(chain):
            assert tree.depth(c) == 2 + j
        hang_heights = []
        for j, c in enumerate(chain):
            h = heights[c] if j == q - 1 else None
            # height of the hanging tree at c: subtree minus the chain tail
            hang = 0
            y = tree.firstchild(c)
            first = True
            while y is not None and tree.isancestor(c, y):
                if not (j < q - 1 and first):  # skip the chain child
                    hang = max(hang, heights[y] + 1)
                first = False
                y = tree.levelsuccessor(y)
            hang_heights.append(hang)
        assert hang_heights[-1] == max(hang_heights), (parens, x, hang_heights)


def test_ordering_rules():
    rng = random.Random(90)
    validate_tf_ordering(build_func(F19), F19)
    for _ in range(10):
        n = rng.choice([5, 12, 40, 120])
        image = [rng.randrange(n) for _ in range(n)]
        validate_tf_ordering(build_func(image), image)


def test_pi_roundtrip():
    rng = random.Random(17)
    image = [rng.randrange(60) for _ in range(60)]
    rep = build_func(image)
    for v in range(60):
        assert rep._label(rep._node(v)) == v


def test_output_sensitive_counter():
    rng = random.Random(15)
    n = 150
    image = [rng.randrange(n) for _ in range(n)]
    rep = build_func(image)
    worst = 0.0
    for _ in range(400):
        i = rng.randrange(n)
        k = rng.randrange(1, 2 * n)
        rep.tree_ops = 0
        ans = rep.f_inverse_power(i, k)
        ratio = rep.tree_ops / (1 + len(ans))
        worst = max(worst, ratio)
    assert worst <= 10, f"tree-op ratio {worst}"


def test_consistency_fuzz():
    rng = random.Random(16)
    n = 90
    image = [rng.randrange(n) for _ in range(n)]
    rep = build_func(image)
    for _ in range(300):
        i = rng.randrange(n)
        k = rng.randrange(1, 3 * n)
        for j in rep.f_inverse_power(i, k):
            assert rep.f_power(j, k) == i
