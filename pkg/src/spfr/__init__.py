"""Succinct representations of permutations and functions.

Forward, inverse, and arbitrary-power queries over compact encodings: the
shortcut method, (q,r)-Benes networks with mixed-radix central permuters, the
cycle-block power structure, a balanced-parenthesis tree with excess search
and constant-time level ancestors, and function representations for equal and
arbitrary ranges.  Every structure reports its exact space in bits and counts
its base operations.
"""

from ._kernels import BACKEND as kernel_backend
from .benes import BenesRep, build_benes, choose_qr, route_benes
from .bits import BitSeq, Fid, IndexableDict, SpaceBits, ceil_lg
from .bptree import BpTree, bp_from_tree
from .funcrep import FuncRep, build_func, quad19_image
from .lehmer import (
    MixedRadixCode,
    code_bits,
    lehmer_decode,
    lehmer_encode,
    small_forward,
    small_inverse,
)
from .perm import (
    NaiveBackend,
    PermBackend,
    Permutation,
    cycle_decompose,
    perm_from_image,
    power_oracle,
    random_perm,
)
from .powers import PowerRep, build_powers
from .rangefunc import ChunkedSeq, RangeRepLarge, RangeRepSmall, build_range
from .shortcut import Corollary1Backend, ShortcutRep, build_shortcut

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BenesRep",
    "BitSeq",
    "BpTree",
    "ChunkedSeq",
    "Corollary1Backend",
    "Fid",
    "FuncRep",
    "IndexableDict",
    "MixedRadixCode",
    "NaiveBackend",
    "PermBackend",
    "Permutation",
    "PowerRep",
    "RangeRepLarge",
    "RangeRepSmall",
    "ShortcutRep",
    "SpaceBits",
    "bp_from_tree",
    "build_benes",
    "build_func",
    "build_powers",
    "build_range",
    "build_shortcut",
    "ceil_lg",
    "choose_qr",
    "code_bits",
    "cycle_decompose",
    "kernel_backend",
    "lehmer_decode",
    "lehmer_encode",
    "perm_from_image",
    "power_oracle",
    "quad19_image",
    "random_perm",
    "route_benes",
    "small_forward",
    "small_inverse",
]
