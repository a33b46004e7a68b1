"""Parity between the compiled kernels and their pure-Python twins."""

import random
from array import array

import pytest

from spfr import _kernels as K

impls = K.implementations()
pairwise = pytest.mark.skipif(len(impls) < 2, reason="compiled extension not built")


def random_words(rng, nwords):
    return array("Q", (rng.getrandbits(64) for _ in range(nwords)))


@pairwise
def test_scan_parity():
    rng = random.Random(0)
    py, cy = impls["python"], impls["compiled"]
    for _ in range(300):
        nwords = rng.randrange(1, 20)
        nbits = rng.randrange(1, nwords * 64 + 1)
        words = random_words(rng, nwords)
        start = rng.randrange(nbits)
        need = rng.randrange(1, 130)
        assert py.scan_ones(words, start, need, nbits) == cy.scan_ones(words, start, need, nbits)
        assert py.scan_zeros(words, start, need, nbits) == cy.scan_zeros(words, start, need, nbits)
        lo = rng.randrange(nbits)
        hi = rng.randrange(lo, nbits + 1)
        assert py.popcount_range(words, lo, hi) == cy.popcount_range(words, lo, hi)


@pairwise
def test_excess_scan_parity():
    rng = random.Random(1)
    py, cy = impls["python"], impls["compiled"]
    for _ in range(300):
        nwords = rng.randrange(1, 8)
        nbits = nwords * 64
        words = random_words(rng, nwords)
        lo = rng.randrange(nbits)
        hi = rng.randrange(lo, nbits + 1)
        base = rng.randrange(-5, 200)
        target = base + rng.randrange(-70, 70)
        assert py.excess_scan_fwd(words, lo, hi, base, target) == cy.excess_scan_fwd(
            words, lo, hi, base, target
        )
        end_e = rng.randrange(-5, 200)
        assert py.excess_scan_bwd(words, lo, hi, end_e, target) == cy.excess_scan_bwd(
            words, lo, hi, end_e, target
        )


@pairwise
def test_select_in_word_parity():
    rng = random.Random(2)
    py, cy = impls["python"], impls["compiled"]
    for _ in range(500):
        w = rng.getrandbits(64) | 1
        r = rng.randrange(w.bit_count())
        assert py.select_in_word(w, r) == cy.select_in_word(w, r)


def test_scan_semantics_small():
    words = array("Q", [0b10110])
    assert K.scan_ones(words, 0, 1, 5) == 1
    assert K.scan_ones(words, 2, 2, 5) == 4
    assert K.scan_ones(words, 0, 4, 5) == -1
    assert K.scan_zeros(words, 0, 1, 5) == 0
    assert K.scan_zeros(words, 1, 1, 5) == 3
    assert K.scan_zeros(words, 4, 1, 5) == -1  # bits past nbits do not exist
