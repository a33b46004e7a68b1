"""Validated permutations, canonical cycle decomposition, brute-force oracles,
and the backend interface every representation implements.

A backend answers forward(i) and inverse(x), reports its exact space, and
keeps evaluation counters so query-cost bounds can be checked empirically.
Counters are a per-session tally owned by the caller; the structures
themselves are immutable after construction.
"""

import random

from .bits import SpaceBits, ceil_lg


class Permutation:
    """A bijection on [n], stored as the image sequence image[i] = pi(i)."""

    __slots__ = ("n", "image")

    def __init__(self, image, *, _validated=False):
        image = tuple(image)
        if not _validated:
            _validate(image)
        self.image = image
        self.n = len(image)

    def __call__(self, i):
        return self.image[i]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __repr__(self):
        return f"Permutation({list(self.image)})"

    def inverse_image(self):
        inv = [0] * self.n
        for i, v in enumerate(self.image):
            inv[v] = i
        return inv


def _validate(image):
    n = len(image)
    if n == 0:
        raise ValueError("permutation must have at least one element")
    seen = bytearray(n)
    for i, v in enumerate(image):
        if not isinstance(v, int) or not 0 <= v < n:
            raise ValueError(f"image[{i}] = {v} outside [0, {n})")
        if seen[v]:
            raise ValueError(f"image[{i}] = {v} repeats an earlier value; not a bijection")
        seen[v] = 1


def perm_from_image(values):
    """Validate and wrap an image sequence; errors name the offending index."""
    return Permutation(values)


def random_perm(n, seed):
    """Uniform random permutation via seeded Fisher-Yates; deterministic per seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(image, _validated=True)


def cycle_decompose(perm):
    """Cycles of ``perm``, each rotated to start at its minimum element.

    Cycles are listed in increasing order of their minimum element; within a
    cycle, elements appear in the order the permutation visits them.
    """
    n = perm.n
    image = perm.image
    seen = bytearray(n)
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = 1
            cyc.append(x)
            x = image[x]
        cycles.append(tuple(cyc))
    return cycles


def power_oracle(perm, i, k):
    """pi^k(i) by |k|-fold iteration; the independent reference for all power queries."""
    if not 0 <= i < perm.n:
        raise ValueError(f"element {i} outside [0, {perm.n})")
    if k >= 0:
        image = perm.image
        for _ in range(k):
            i = image[i]
        return i
    inv = perm.inverse_image()
    for _ in range(-k):
        i = inv[i]
    return i


class EvalCounter(dict):
    """Mutable tally of base operations; keys created on demand."""

    def bump(self, key, amount=1):
        self[key] = self.get(key, 0) + amount


class PermBackend:
    """Interface: forward, inverse, space_bits, and an evaluation counter."""

    n = 0

    def __init__(self):
        self.evals = EvalCounter()

    def reset_evals(self):
        self.evals.clear()

    def forward(self, i):
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def space_bits(self):
        raise NotImplementedError

    def check_range(self, i):
        if not 0 <= i < self.n:
            raise ValueError(f"element {i} outside [0, {self.n})")


class NaiveBackend(PermBackend):
    """Image and inverse arrays side by side; O(1) both ways, 2n*ceil(lg n) bits."""

    kind = "naive"

    def __init__(self, perm):
        super().__init__()
        self.n = perm.n
        self._image = list(perm.image)
        self._inv = perm.inverse_image()

    def forward(self, i):
        self.check_range(i)
        self.evals.bump("forward")
        return self._image[i]

    def inverse(self, x):
        self.check_range(x)
        self.evals.bump("inverse")
        return self._inv[x]

    def space_bits(self):
        return SpaceBits(2 * self.n * ceil_lg(self.n), 0)
