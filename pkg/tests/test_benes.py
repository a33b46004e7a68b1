import itertools
import random

import pytest

from spfr.benes import BenesRep, build_benes, choose_qr, route_benes
from spfr.lehmer import code_bits
from spfr.perm import Permutation, random_perm


def test_choose_qr_examples():
    assert choose_qr(100, 7) == (13, 3, 104)
    for k in range(1, 14):
        assert choose_qr(1 << k, 1) == (2, k - 1, 1 << k)


def test_choose_qr_bounds():
    rng = random.Random(2)
    for _ in range(10000):
        n = rng.randrange(1, 1 << 16)
        t = rng.randrange(1, n + 1)
        q, r, np_ = choose_qr(n, t)
        assert np_ == q << r and np_ >= n
        assert np_ * t < n * (t + 1)  # n' < n(1 + 1/t)
        assert q <= 2 * t or q == n  # q = n only in the t >= n corner
        if n > t:
            assert q > t


def test_single_switch():
    cols, cents = route_benes(Permutation([1, 0]), 2, 0)
    assert cols == []
    assert cents[0].code_bits == 1
    # the crossed setting differs from the identity's and realizes the swap
    identity = route_benes(Permutation([0, 1]), 2, 0)[1][0]
    assert cents[0].code != identity.code
    rep = BenesRep(2, 2, 0, cols, cents)
    assert rep.forward(0) == 1 and rep.inverse(0) == 1


def test_identity_routes_to_zero():
    cols, cents = route_benes(Permutation(list(range(4))), 2, 1)
    assert all(b == 0 for col in cols for b in col)


def test_exhaustive_tiny():
    for q, r in ((2, 0), (2, 1), (3, 1), (2, 2)):
        np_ = q << r
        for img in itertools.permutations(range(np_)):
            rep = BenesRep(np_, q, r, *route_benes(Permutation(list(img)), q, r))
            for i in range(np_):
                assert rep.forward(i) == img[i]
                assert rep.inverse(img[i]) == i


def test_payload_formula():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(2, 600)
        t = rng.randrange(1, n + 1)
        rep = build_benes(random_perm(n, rng.random()), t)
        assert rep.space_bits().payload == 2 * rep.r * (rep.np // 2) + (1 << rep.r) * code_bits(rep.q)


def test_power_of_two_payload():
    for r in (1, 4, 10):
        n = 1 << r
        rep = build_benes(random_perm(n, r), 1)
        assert rep.space_bits().payload == n * r - n // 2


def test_worked_padded_case():
    n, t = 100, 7
    rep = build_benes(random_perm(n, 1), t)
    assert (rep.q, rep.r, rep.np) == (13, 3, 104)
    assert rep.space_bits().payload == 2 * 3 * 52 + 8 * code_bits(13)


def test_padding_hidden():
    rep = build_benes(random_perm(100, 1), 7)
    with pytest.raises(ValueError):
        rep.forward(100)
    with pytest.raises(ValueError):
        rep.inverse(103)


def test_random_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.choice([2, 3, 5, 17, 64, 104, 200])
        t = rng.randrange(1, n + 1)
        p = random_perm(n, rng.random())
        rep = build_benes(p, t)
        inv = p.inverse_image()
        for i in range(n):
            assert rep.forward(i) == p.image[i]
            assert rep.inverse(i) == inv[i]


def test_bit_read_counter():
    rep = build_benes(random_perm(512, 3), 1)
    for i in (0, 100, 511):
        rep.reset_evals()
        rep.forward(i)
        assert rep.evals["bit_reads"] == 2 * rep.r
        assert rep.evals["central"] == 1


def test_serialization_roundtrip():
    p = random_perm(150, 4)
    rep = build_benes(p, 5)
    rep2 = BenesRep.from_bytes(rep.to_bytes())
    assert (rep2.n, rep2.q, rep2.r) == (rep.n, rep.q, rep.r)
    for i in range(150):
        assert rep2.forward(i) == p.image[i]
        assert rep2.inverse(p.image[i]) == i
