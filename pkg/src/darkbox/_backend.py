"""Select the compiled assembly kernel, falling back to numpy.

Set ``DARKBOX_BACKEND=python`` to force the fallback.
"""

import os

import numpy as np

from darkbox import _fallback
from darkbox._trig import cospi, sinpi

_compiled = None
if os.environ.get("DARKBOX_BACKEND", "").lower() != "python":
    try:
        from darkbox import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def trig_tables(c, j_max):
    j = np.arange(-j_max, j_max + 1)
    return np.ascontiguousarray(sinpi(j * c)), np.ascontiguousarray(cospi(j * c)), j_max


def potential_matrix(ns, ms, sigma, c, backend=None):
    """Dense V/g for the basis given by ``ns``, ``ms`` (both sides of both delta lines)."""
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    ms = np.ascontiguousarray(ms, dtype=np.int64)
    if len(ns) == 0:
        return np.zeros((0, 0))
    j_max = 2 * int(max(ns.max(), ms.max())) + 1
    sn, cs, off = trig_tables(c, j_max)
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled.potential_matrix(ns, ms, int(sigma), float(c), sn, cs, off)
    return _fallback.potential_matrix(ns, ms, int(sigma), float(c), sn, cs, off)


def potential_column(ns, ms, sigma, c, col):
    ns = np.asarray(ns, dtype=np.int64)
    ms = np.asarray(ms, dtype=np.int64)
    j_max = 2 * int(max(ns.max(), ms.max())) + 1
    sn, cs, off = trig_tables(c, j_max)
    return _fallback.potential_column(ns, ms, int(sigma), float(c), sn, cs, off, col)
