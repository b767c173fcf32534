"""Sine-series representation, DST-I, sampling with exact aliasing, and norms."""

from dataclasses import dataclass

import numpy as np
import scipy.fft

from . import kernels

PRUNE_REL = 1e-15


@dataclass(frozen=True)
class SineSeries:
    """Finite sine series sum_n c_n sin(n pi x) with mode indices n >= 1.

    ``modes`` is a strictly increasing int64 array and ``coeffs`` the matching
    nonzero coefficients. Both arrays are read-only.
    """

    modes: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        modes = np.asarray(self.modes, dtype=np.int64).ravel()
        coeffs = np.asarray(self.coeffs, dtype=float).ravel()
        if modes.shape != coeffs.shape:
            raise ValueError("modes and coeffs must have the same length")
        if modes.size and modes.min() < 1:
            raise ValueError("mode indices must be >= 1")
        order = np.argsort(modes, kind="stable")
        modes, coeffs = modes[order], coeffs[order]
        if modes.size > 1 and np.any(np.diff(modes) == 0):
            raise ValueError("duplicate mode indices")
        keep = coeffs != 0.0
        modes, coeffs = modes[keep].copy(), coeffs[keep].copy()
        modes.flags.writeable = False
        coeffs.flags.writeable = False
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def empty(cls):
        return cls(np.zeros(0, dtype=np.int64), np.zeros(0))

    @classmethod
    def from_dict(cls, d):
        items = sorted(d.items())
        return cls(np.array([n for n, _ in items], dtype=np.int64),
                   np.array([c for _, c in items], dtype=float))

    @classmethod
    def from_dense(cls, coeffs, prune=PRUNE_REL):
        """Build from a dense vector whose entry i is the coefficient of mode i+1.

        Entries below ``prune`` times the largest magnitude are dropped as
        transform round-off.
        """
        coeffs = np.asarray(coeffs, dtype=float)
        mag = np.abs(coeffs)
        keep = mag >= prune * (mag.max() if mag.size else 0.0)
        return cls(np.nonzero(keep)[0] + 1, coeffs[keep])

    def to_dict(self):
        return {int(n): float(c) for n, c in zip(self.modes, self.coeffs)}

    def to_dense(self, n_max):
        """Dense coefficient vector for modes 1..n_max (modes above are dropped)."""
        out = np.zeros(n_max)
        sel = self.modes <= n_max
        out[self.modes[sel] - 1] = self.coeffs[sel]
        return out

    @property
    def xi(self):
        """Frequencies n*pi of the stored modes."""
        return np.pi * self.modes

    def __len__(self):
        return int(self.modes.size)

    def __bool__(self):
        return bool(self.modes.size)

    def __getitem__(self, n):
        i = np.searchsorted(self.modes, n)
        if i < self.modes.size and self.modes[i] == n:
            return float(self.coeffs[i])
        return 0.0

    def __add__(self, other):
        modes = np.union1d(self.modes, other.modes)
        coeffs = np.zeros(modes.size)
        coeffs[np.searchsorted(modes, self.modes)] += self.coeffs
        coeffs[np.searchsorted(modes, other.modes)] += other.coeffs
        return SineSeries(modes, coeffs)

    def __neg__(self):
        return SineSeries(self.modes, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        return SineSeries(self.modes, a * self.coeffs)

    def map(self, fn):
        """Apply ``fn(xi) -> multiplier`` mode by mode."""
        return SineSeries(self.modes, self.coeffs * fn(self.xi))

    def evaluate(self, x):
        """Evaluate the series at points ``x``."""
        x = np.asarray(x, dtype=float)
        return np.sin(np.multiply.outer(x, self.xi)) @ self.coeffs

    def evaluate_derivative(self, x, order=1):
        """Evaluate the ``order``-th derivative at points ``x``."""
        x = np.asarray(x, dtype=float)
        xi = self.xi
        phase = np.multiply.outer(x, xi) + order * np.pi / 2
        return np.sin(phase) @ (self.coeffs * xi**order)


@dataclass(frozen=True)
class GridFunction:
    """Nodal values at x_j = j/N, j = 0..N."""

    N: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).copy()
        if values.shape != (self.N + 1,):
            raise ValueError(f"expected {self.N + 1} values, got {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def h(self):
        return 1.0 / self.N

    @property
    def x(self):
        return np.arange(self.N + 1) / self.N

    @property
    def interior(self):
        return self.values[1:-1]


def _check_N(N):
    if N < 2:
        raise ValueError("N must be >= 2")


def sample(series, N):
    """Evaluate ``series`` at the N+1 grid nodes; endpoints are exactly zero."""
    _check_N(N)
    return GridFunction(N, kernels.sine_synthesis(series.modes, series.coeffs, N))


def _dst_values(interior, method):
    if method == "fast":
        return scipy.fft.dst(np.asarray(interior, dtype=float), type=1)
    if method == "direct":
        return kernels.dst1_direct(interior)
    raise ValueError(f"unknown DST method {method!r}")


def dst_forward(g, method="fast"):
    """Discrete sine coefficients of ``g`` for modes 1..N-1 (weight 2h)."""
    _check_N(g.N)
    if g.N == 2 and method == "fast":
        return SineSeries.from_dense([2.0 * g.h * g.values[1]])
    return SineSeries.from_dense(g.h * _dst_values(g.interior, method))


def dst_inverse(series, N):
    """Nodal values of a series supported on modes 1..N-1 via the fast transform."""
    _check_N(N)
    if len(series) and series.modes[-1] >= N:
        raise ValueError("dst_inverse needs modes in 1..N-1; use sample() instead")
    dense = series.to_dense(N - 1)
    values = np.zeros(N + 1)
    if N == 2:
        values[1] = dense[0]
    else:
        values[1:-1] = 0.5 * scipy.fft.dst(dense, type=1)
    return GridFunction(N, values)


def alias_coefficients(series, N):
    """Coefficients seen by the grid: each mode folded into 1..N-1 with its sign.

    Mode n reduces to r = n mod 2N; r in (0, N) adds to mode r, r in (N, 2N)
    subtracts from mode 2N - r, and r in {0, N} vanishes on the grid.
    """
    _check_N(N)
    r = series.modes % (2 * N)
    dense = np.zeros(N - 1)
    low = (r > 0) & (r < N)
    high = r > N
    np.add.at(dense, r[low] - 1, series.coeffs[low])
    np.add.at(dense, 2 * N - r[high] - 1, -series.coeffs[high])
    return SineSeries.from_dense(dense, prune=0.0)


def split_low_high(series, N):
    """Split into modes n <= N-1 and modes n >= N."""
    _check_N(N)
    low = series.modes < N
    return (SineSeries(series.modes[low], series.coeffs[low]),
            SineSeries(series.modes[~low], series.coeffs[~low]))


def seminorm(series, p):
    """Parseval semi-norm sqrt(1/2 sum (n pi)^(2p) c_n^2); p=0 is the L2 norm."""
    if p < 0:
        raise ValueError("p must be >= 0")
    if not series:
        return 0.0
    w = series.coeffs * series.xi**p
    return float(np.sqrt(0.5 * np.dot(w, w)))


def parse_source(text):
    """Parse 'n:coeff,n:coeff' into a SineSeries; repeated modes are summed."""
    text = text.strip()
    acc = {}
    if not text:
        return SineSeries.empty()
    for i, item in enumerate(text.split(",")):
        try:
            n_str, c_str = item.split(":")
            n, c = int(n_str), float(c_str)
        except ValueError:
            raise ValueError(f"source field {i + 1}: expected 'n:coeff', got {item!r}") from None
        if n < 1:
            raise ValueError(f"source field {i + 1}: mode index must be >= 1, got {n}")
        acc[n] = acc.get(n, 0.0) + c
    return SineSeries.from_dict(acc)
