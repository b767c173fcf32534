"""Pure-Python/numpy versions of the hot kernels.

These mirror ``_ckernels`` function for function and are used when the
compiled extension is unavailable or disabled.
"""

import numpy as np


def tridiag_solve(lower, diag, upper, rhs):
    """Solve a tridiagonal system by elimination without pivoting.

    ``lower[i]`` multiplies x[i-1] in row i (``lower[0]`` is ignored) and
    ``upper[i]`` multiplies x[i+1] (``upper[-1]`` is ignored).
    """
    n = len(diag)
    cp = np.empty(n)
    dp = np.empty(n)
    cp[0] = upper[0] / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - lower[i] * cp[i - 1]
        cp[i] = upper[i] / m if i < n - 1 else 0.0
        dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / m
    x = np.empty(n)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def _sin_table(N, dtype=float):
    # sin(pi*m/N) for m in [0, 2N), exact zeros at m = 0 and m = N
    pi = np.arccos(np.array(-1.0, dtype=dtype))
    t = np.sin(pi * np.arange(2 * N, dtype=dtype) / N)
    t[0] = t[N] = 0
    return t


def helmholtz_tridiag(N, off, shift, modes, coeffs, scale, g0, g1):
    """Interior solution of the constant-coefficient Helmholtz system.

    Row j reads off*u[j-1] + (shift - 2*off)*u[j] + off*u[j+1] = scale*f(x_j),
    with f the sine series (modes, coeffs) and u[0] = g0, u[N] = g1. The
    source is synthesised and the elimination carried out in extended
    precision, since rounding f(x_j) to double is amplified by the inverse of
    the smallest discrete eigenvalue.
    """
    ld = np.longdouble
    table = _sin_table(N, ld)
    j = np.arange(1, N, dtype=np.int64)
    rhs = np.zeros(N - 1, dtype=ld)
    for n, c in zip(np.asarray(modes, dtype=np.int64) % (2 * N), coeffs):
        rhs += ld(c) * table[(n * j) % (2 * N)]
    rhs *= ld(scale)
    s = ld(off)
    rhs[0] -= s * ld(g0)
    rhs[-1] -= s * ld(g1)
    d = ld(shift) - 2 * s
    n = N - 1
    cp = np.empty(n, dtype=ld)
    dp = np.empty(n, dtype=ld)
    cp[0] = s / d
    dp[0] = rhs[0] / d
    for i in range(1, n):
        m = d - s * cp[i - 1]
        cp[i] = s / m
        dp[i] = (rhs[i] - s * dp[i - 1]) / m
    x = np.empty(n, dtype=ld)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x.astype(float)


def dst1_direct(interior):
    """Unnormalised DST-I by direct summation: y_n = 2 sum_j v_j sin(pi n j / N).

    ``interior`` holds the N-1 interior values; the result has N-1 entries
    for n = 1..N-1.
    """
    v = np.asarray(interior, dtype=float)
    N = len(v) + 1
    table = _sin_table(N)
    j = np.arange(1, N)
    idx = np.outer(j, j) % (2 * N)
    return 2.0 * table[idx] @ v


def sine_synthesis(modes, coeffs, N):
    """Nodal values sum_n c_n sin(n pi j / N) for j = 0..N, with exact index reduction."""
    modes = np.asarray(modes, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=float)
    out = np.zeros(N + 1)
    if modes.size == 0:
        return out
    table = _sin_table(N)
    j = np.arange(N + 1, dtype=np.int64)
    for n, c in zip(modes % (2 * N), coeffs):
        out += c * table[(n * j) % (2 * N)]
    out[0] = 0.0
    out[N] = 0.0
    return out


def min_discrete_gap(k, N):
    """min over n = 1..N-1 of |k - 2N sin(n pi / (2N))|."""
    n = np.arange(1, N)
    return float(np.min(np.abs(k - 2.0 * N * np.sin(n * np.pi / (2.0 * N)))))
