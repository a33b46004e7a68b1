"""Kernel selection: compiled extension when available, pure Python otherwise.

Set SPFR_PURE_PYTHON=1 to force the fallback (used by the benchmark to compare
both implementations).
"""

import os

from . import _bits_py

_FORCE_PY = bool(os.environ.get("SPFR_PURE_PYTHON"))

if not _FORCE_PY:
    try:
        from . import _bits_cy as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _bits_py
        BACKEND = "python"
else:
    _impl = _bits_py
    BACKEND = "python"

HAVE_EXT = BACKEND == "compiled"

select_in_word = _impl.select_in_word
scan_ones = _impl.scan_ones
scan_zeros = _impl.scan_zeros
excess_scan_fwd = _impl.excess_scan_fwd
excess_scan_bwd = _impl.excess_scan_bwd
popcount_range = _impl.popcount_range


def implementations():
    """Both kernel modules, keyed by name; the compiled one only if importable."""
    impls = {"python": _bits_py}
    try:
        from . import _bits_cy
        impls["compiled"] = _bits_cy
    except ImportError:
        pass
    return impls
