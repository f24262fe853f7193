"""Backend selection for the hot kernels.

The compiled extension (hyperkernel._ckernels) is used when it imported
cleanly and the carrier fits its mask width; otherwise the pure Python
versions run.  HYPERKERNEL_PURE=1 forces the fallback.
"""

import os

from hyperkernel.kernels import pure as _pure

_compiled = None
if os.environ.get("HYPERKERNEL_PURE") != "1":
    try:
        from hyperkernel import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"

# Mask width limits of the compiled kernels.
_C_MAX_N = 64
_C_SR_MAX_N = 16


def assoc_witness(rows, n):
    if _compiled is not None and n <= _C_MAX_N:
        return _compiled.assoc_witness(rows, n)
    return _pure.assoc_witness(rows, n)


def census(rows, n, cap):
    if _compiled is not None and n <= _C_MAX_N:
        return _compiled.census(rows, n, cap)
    return _pure.census(rows, n, cap)


def sr_check(rows, n, class_of):
    if _compiled is not None and n <= _C_SR_MAX_N:
        return _compiled.sr_check(rows, n, class_of)
    return _pure.sr_check(rows, n, class_of)


def oracle_merge(rows, n, nmax):
    if _compiled is not None and n <= _C_MAX_N:
        return _compiled.oracle_merge(rows, n, nmax)
    return _pure.oracle_merge(rows, n, nmax)


def backends():
    """Name -> module map of the available backends (for benchmarks/tests)."""
    found = {"pure": _pure}
    if _compiled is not None:
        found["compiled"] = _compiled
    return found
