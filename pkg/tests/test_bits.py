import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spfr.bits import BitSeq, Fid, IndexableDict, ceil_lg, pack_big, pack_ints, unpack_big, unpack_ints


def test_ceil_lg():
    assert [ceil_lg(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]


def test_fid_small_examples():
    f = Fid(4, [1, 3])
    assert f.n == 2
    assert f.fullrank(3) == 1
    assert f.fullrank(0) == 0
    assert f.fullrank(4) == 2  # one-past-the-end allowed
    assert f.select(0) == 1 and f.select(1) == 3
    assert f.fullrank0(3) == 2
    assert f.select0(0) == 0
    assert f.partial_rank(2) == -1
    assert f.partial_rank(3) == 1


def test_fid_empty_set():
    f = Fid(5, [])
    for x in range(6):
        assert f.fullrank(x) == 0
    assert f.select0(4) == 4
    with pytest.raises(ValueError):
        f.select(0)


def test_fid_construction_errors():
    with pytest.raises(ValueError):
        Fid(4, [2, 1])
    with pytest.raises(ValueError):
        Fid(4, [1, 1])
    with pytest.raises(ValueError):
        Fid(4, [4])
    with pytest.raises(ValueError):
        Fid(4, [1]).fullrank(5)
    with pytest.raises(ValueError):
        Fid(4, [1]).select(1)


def test_fid_random_roundtrip():
    rng = random.Random(17)
    elems = sorted(rng.sample(range(1 << 16), 1000))
    f = Fid(1 << 16, elems)
    assert [f.select(i) for i in range(1000)] == elems
    for x in elems:
        assert f.select(f.fullrank(x)) == x
    for i in range(1000):
        assert f.fullrank(f.select(i)) == i


def test_fid_complement_identity():
    rng = random.Random(3)
    m = 2048
    elems = sorted(rng.sample(range(m), 300))
    f = Fid(m, elems)
    members = set(elems)
    rank = 0
    for x in range(m + 1):
        assert f.fullrank(x) == rank
        assert f.fullrank(x) + f.fullrank0(x) == x
        if x < m:
            exp = rank if x in members else -1
            assert f.partial_rank(x) == exp
            if x in members:
                rank += 1
    zeros = [x for x in range(m) if x not in members]
    for i, z in enumerate(zeros[:200]):
        assert f.select0(i) == z


def test_indexable_dict():
    d = IndexableDict(10, [2, 5, 9])
    assert d.partial_rank(5) == 1
    assert d.partial_rank(4) == -1
    assert d.select(2) == 9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 500), st.randoms(use_true_random=False))
def test_fid_properties(m, rng):
    k = rng.randrange(0, m + 1)
    elems = sorted(rng.sample(range(m), k))
    f = Fid(m, elems)
    naive = [0] * (m + 1)
    for x in range(m):
        naive[x + 1] = naive[x] + (1 if f.contains(x) else 0)
    for x in range(m + 1):
        assert f.fullrank(x) == naive[x]
    for i, e in enumerate(elems):
        assert f.select(i) == e


def test_space_reporting():
    seq = BitSeq(100)
    assert seq.space_bits().payload == 100
    f = Fid(1 << 12, list(range(0, 1 << 12, 7)))
    sp = f.space_bits()
    assert sp.payload == 1 << 12  # plain bitmap layout
    assert sp.index > 0


def test_fid_serialization():
    rng = random.Random(5)
    elems = sorted(rng.sample(range(3000), 120))
    f = Fid(3000, elems)
    g = Fid.from_bytes(f.to_bytes())
    assert g.members() == elems
    assert g.fullrank(1234) == f.fullrank(1234)


def test_pack_roundtrip():
    rng = random.Random(9)
    for width in (1, 3, 7, 13, 31, 63):
        vals = [rng.getrandbits(width) for _ in range(50)]
        assert unpack_ints(pack_ints(vals, width), width, 50) == vals
    for width in (5, 64, 200):
        vals = [rng.getrandbits(width) for _ in range(20)]
        assert unpack_big(pack_big(vals, width), width, 20) == vals


def test_paren_string_parsing():
    seq = BitSeq.from_paren_string("(()())")
    assert [seq.get(i) for i in range(6)] == [1, 1, 0, 1, 0, 0]
    with pytest.raises(ValueError):
        BitSeq.from_paren_string("(a)")
