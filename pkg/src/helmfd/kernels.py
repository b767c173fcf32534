"""Backend selection for the hot kernels.

The compiled extension is used when it imports; setting ``HELMFD_PURE=1``
forces the pure-Python fallback. ``BACKEND`` names the active choice.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("HELMFD_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"


def get_backend(name=None):
    """Return the kernel module for ``name`` ('cython' or 'python'), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def tridiag_solve(lower, diag, upper, rhs):
    f = lambda a: np.ascontiguousarray(a, dtype=float)
    return _impl.tridiag_solve(f(lower), f(diag), f(upper), f(rhs))


def dst1_direct(interior):
    return _impl.dst1_direct(np.ascontiguousarray(interior, dtype=float))


def sine_synthesis(modes, coeffs, N):
    return _impl.sine_synthesis(np.ascontiguousarray(modes, dtype=np.int64),
                                np.ascontiguousarray(coeffs, dtype=float), int(N))


def min_discrete_gap(k, N):
    return float(_impl.min_discrete_gap(float(k), int(N)))


def helmholtz_tridiag(N, off, shift, modes, coeffs, scale, g0, g1):
    return _impl.helmholtz_tridiag(int(N), float(off), float(shift),
                                   np.ascontiguousarray(modes, dtype=np.int64),
                                   np.ascontiguousarray(coeffs, dtype=float),
                                   float(scale), float(g0), float(g1))
