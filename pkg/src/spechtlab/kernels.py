"""Backend selection for the elimination kernels.

The compiled extension ``spechtlab._ext`` is used when it imports; otherwise
the numpy versions in ``spechtlab._kernels_py`` are used.  Setting the
environment variable ``SPECHTLAB_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py

_py = _kernels_py
_ext = None
if os.environ.get("SPECHTLAB_PURE_PYTHON", "") != "1":
    try:
        from . import _ext  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _impl(name, backend=None):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not available")
        return getattr(_ext, name)
    if backend == "python":
        return getattr(_py, name)
    raise ValueError(f"unknown backend {backend!r}")


def available_backends():
    return ["python"] + (["cython"] if _ext is not None else [])


def rref_modp(a, p, backend=None):
    """Return ``(R, pivots)`` with ``R`` the RREF of ``a`` over F_p (copy)."""
    work = np.array(a, dtype=np.int64, order="C", copy=True)
    if work.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    if work.size == 0:
        return work, []
    pivots = _impl("rref_modp", backend)(work, int(p))
    return work, list(pivots)


def rank_modp(a, p, backend=None):
    work = np.array(a, dtype=np.int64, order="C", copy=True)
    if work.size == 0:
        return 0
    return int(_impl("rank_modp", backend)(work, int(p)))


def pack_gf2(a):
    """Pack a 0/1 matrix into rows of uint64 words (bit c of word c//64)."""
    a = np.asarray(a, dtype=np.int64) & 1
    rows, cols = a.shape
    nw = max(1, (cols + 63) // 64)
    padded = np.zeros((rows, nw * 64), dtype=np.uint8)
    padded[:, :cols] = a
    bits = np.packbits(padded.reshape(rows, nw, 64), axis=2, bitorder="little")
    return np.ascontiguousarray(bits.view(np.uint64).reshape(rows, nw))


def unpack_gf2(words, ncols):
    rows = words.shape[0]
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(rows, -1)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :ncols].astype(np.int64)


def rref_gf2(a, backend=None):
    """RREF over F_2 via bit-packed rows; returns ``(R, pivots)``."""
    a = np.asarray(a)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=np.int64), []
    words = pack_gf2(a)
    pivots = _impl("rref_gf2", backend)(words, cols)
    return unpack_gf2(words, cols), list(pivots)


def rank_gfq_log(lg, qm1, zech, neg, backend=None):
    work = np.array(lg, dtype=np.int64, order="C", copy=True)
    if work.size == 0:
        return 0
    z = np.ascontiguousarray(zech, dtype=np.int64)
    return int(_impl("rank_gfq_log", backend)(work, int(qm1), z, int(neg)))
