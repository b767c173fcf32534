# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, fabs, M_PI

cnp.import_array()

cdef extern from "math.h":
    long double sinl(long double)
    long double acosl(long double)


def helmholtz_tridiag(Py_ssize_t N, double off, double shift,
                      const long long[::1] modes, const double[::1] coeffs,
                      double scale, double g0, double g1):
    cdef Py_ssize_t n = N - 1, i, j, nm = modes.shape[0]
    cdef long long twoN = 2 * N, r
    cdef long double pi_l = acosl(-1.0)
    cdef long double s = off, d = <long double>shift - 2.0 * s, m
    cdef long double[::1] table = np.empty(2 * N, dtype=np.longdouble)
    cdef long double[::1] rhs = np.zeros(n, dtype=np.longdouble)
    cdef long double[::1] cp = np.empty(n, dtype=np.longdouble)
    cdef long double[::1] dp = np.empty(n, dtype=np.longdouble)
    cdef long double[::1] x = np.empty(n, dtype=np.longdouble)
    for j in range(2 * N):
        table[j] = sinl(pi_l * j / N)
    table[0] = 0.0
    table[N] = 0.0
    for i in range(nm):
        r = modes[i] % twoN
        for j in range(n):
            rhs[j] += coeffs[i] * table[(r * (j + 1)) % twoN]
    for j in range(n):
        rhs[j] *= scale
    rhs[0] -= s * g0
    rhs[n - 1] -= s * g1
    cp[0] = s / d
    dp[0] = rhs[0] / d
    for i in range(1, n):
        m = d - s * cp[i - 1]
        cp[i] = s / m
        dp[i] = (rhs[i] - s * dp[i - 1]) / m
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        o[i] = <double>x[i]
    return out


def tridiag_solve(const double[::1] lower, const double[::1] diag,
                  const double[::1] upper, const double[::1] rhs):
    cdef Py_ssize_t n = diag.shape[0], i
    cdef double m
    cdef double[::1] cp = np.empty(n)
    cdef double[::1] dp = np.empty(n)
    x_arr = np.empty(n)
    cdef double[::1] x = x_arr
    cp[0] = upper[0] / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - lower[i] * cp[i - 1]
        cp[i] = upper[i] / m if i < n - 1 else 0.0
        dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / m
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x_arr


cdef double[::1] _sin_table(Py_ssize_t N):
    cdef double[::1] t = np.empty(2 * N)
    cdef Py_ssize_t m
    for m in range(2 * N):
        t[m] = sin(M_PI * m / N)
    t[0] = 0.0
    t[N] = 0.0
    return t


def dst1_direct(const double[::1] interior):
    cdef Py_ssize_t N = interior.shape[0] + 1, n, j
    cdef double[::1] table = _sin_table(N)
    out_arr = np.empty(N - 1)
    cdef double[::1] out = out_arr
    cdef double acc
    cdef long long twoN = 2 * N
    for n in range(1, N):
        acc = 0.0
        for j in range(1, N):
            acc += table[(<long long>n * j) % twoN] * interior[j - 1]
        out[n - 1] = 2.0 * acc
    return out_arr


def sine_synthesis(const long long[::1] modes, const double[::1] coeffs, Py_ssize_t N):
    cdef Py_ssize_t j, i, nm = modes.shape[0]
    cdef long long twoN = 2 * N, r
    out_arr = np.zeros(N + 1)
    cdef double[::1] out = out_arr
    if nm == 0:
        return out_arr
    cdef double[::1] table = _sin_table(N)
    for i in range(nm):
        r = modes[i] % twoN
        for j in range(1, N):
            out[j] += coeffs[i] * table[(r * j) % twoN]
    return out_arr


def min_discrete_gap(double k, Py_ssize_t N):
    cdef Py_ssize_t n
    cdef double best = float("inf"), g
    for n in range(1, N):
        g = fabs(k - 2.0 * N * sin(n * M_PI / (2.0 * N)))
        if g < best:
            best = g
    return best
