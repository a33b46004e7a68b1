import random

import pytest

from spfr.rangefunc import ChunkedSeq, RangeRepLarge, RangeRepSmall, build_range


def test_seq_examples():
    s = ChunkedSeq([1, 0, 0, 1], 2)
    assert s.access(2) == 0
    assert s.select(1, 1) == 3  # second occurrence of symbol 1
    assert s.select(0, 2) is None


def test_seq_random_vs_scan():
    rng = random.Random(40)
    for _ in range(30):
        m = rng.choice([1, 2, 5, 9, 16])
        L = rng.randrange(1, 60)
        seq = [rng.randrange(m) for _ in range(L)]
        cs = ChunkedSeq(seq, m)
        for p in range(L):
            assert cs.access(p) == seq[p]
        for j in range(m):
            occ = [p for p in range(L) if seq[p] == j]
            for t, p in enumerate(occ):
                assert cs.select(j, t) == p
            assert cs.select(j, len(occ)) is None


def test_seq_validation():
    with pytest.raises(ValueError):
        ChunkedSeq([2], 2)
    with pytest.raises(ValueError):
        ChunkedSeq([0], 0)


def iter_or_none(image, n, j, k):
    v = j
    for _ in range(k):
        if v >= n:
            return None
        v = image[v]
    return v


def test_large_worked_example():
    rep = RangeRepLarge([1, 0, 0, 1], 4, 2)
    assert rep.power(2, 2) == 1  # f(f(2)) = f(0) = 1
    assert rep.power(2, 0) == 2
    for i in range(4):
        assert rep.power(i, 1) == [1, 0, 0, 1][i]


def test_large_random_oracle():
    rng = random.Random(41)
    for _ in range(25):
        m = rng.choice([1, 2, 4, 9])
        n = m + rng.randrange(1, 3 * m + 2)
        image = [rng.randrange(m) for _ in range(n)]
        rep = RangeRepLarge(image, n, m)
        kmax = min(2 * n, 24)
        for k in range(kmax + 1):
            for i in range(n):
                v = i
                for _ in range(k):
                    v = image[v]
                assert rep.power(i, k) == v
        for k in range(1, kmax + 1):
            for i in range(m):
                exp = sorted(j for j in range(n) if _iter_total(image, j, k) == i)
                assert rep.inverse_power(i, k) == exp


def _iter_total(image, j, k):
    for _ in range(k):
        j = image[j]
    return j


def test_large_validation():
    with pytest.raises(ValueError):
        RangeRepLarge([0, 0], 2, 2)
    with pytest.raises(ValueError):
        RangeRepLarge([2, 0, 0], 3, 2)


def test_small_worked_example():
    rep = RangeRepSmall([3, 0], 2, 4)
    assert rep.power(0, 2) == -1  # f(0) = 3 leaves the domain
    assert rep.power(0, 1) == 3
    assert rep.power(1, 1) == 0
    assert rep.power(1, 2) == 3
    assert rep.power(1, 3) == -1
    assert rep.inverse_power(3, 1) == [0]
    assert rep.inverse_power(3, 2) == [1]
    assert rep.inverse_power(2, 1) == []


def test_small_first_power_always_defined():
    rng = random.Random(42)
    for _ in range(20):
        n = rng.choice([1, 3, 8])
        m = n + rng.randrange(1, 2 * n + 2)
        image = [rng.randrange(m) for _ in range(n)]
        rep = RangeRepSmall(image, n, m)
        for i in range(n):
            assert rep.power(i, 1) == image[i]


def test_small_random_oracle():
    rng = random.Random(43)
    for _ in range(25):
        n = rng.choice([1, 2, 5, 12, 20])
        m = n + rng.randrange(1, 2 * n + 3)
        image = [rng.randrange(m) for _ in range(n)]
        rep = RangeRepSmall(image, n, m)
        kmax = min(2 * n + 2, 24)
        for k in range(kmax):
            for i in range(n):
                exp = iter_or_none(image, n, i, k)
                assert rep.power(i, k) == (exp if exp is not None else -1)
        for k in range(1, kmax):
            for i in range(m):
                exp = sorted(j for j in range(n) if iter_or_none(image, n, j, k) == i)
                assert rep.inverse_power(i, k) == exp


def test_build_range_dispatch():
    from spfr.funcrep import FuncRep

    assert isinstance(build_range([0, 1], 2, 2), FuncRep)
    assert isinstance(build_range([0, 0, 1], 3, 2), RangeRepLarge)
    assert isinstance(build_range([3, 0], 2, 4), RangeRepSmall)
