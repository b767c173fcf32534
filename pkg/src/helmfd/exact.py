"""Continuous Dirichlet Helmholtz problem u'' + k^2 u = f on (0, 1)."""

from dataclasses import dataclass, field

import numpy as np

from ._numerics import cos_minus_sinc
from .exceptions import InvalidCFL, NearResonance, ResonantMode
from .spectral import SineSeries

RESONANCE_MARGIN = 1e-8
SINE_MARGIN = 1e-12
MODE_RESONANCE_REL = 1e-10


def sigma_k(k):
    """Distance from k to the nearest positive integer multiple of pi."""
    n = max(1.0, np.floor(k / np.pi))
    return float(min(abs(k - n * np.pi), abs(k - (n + 1) * np.pi)))


def n_plus(k):
    """The integer n with (n-1) pi < k < n pi."""
    return int(np.floor(k / np.pi)) + 1


@dataclass(frozen=True)
class HelmholtzProblem:
    """Wavenumber, sine-series source and Dirichlet boundary values.

    Either the source is nonzero with homogeneous boundary values, or the
    source is empty and the boundary values carry the data.
    """

    k: float
    source: SineSeries = field(default_factory=SineSeries.empty)
    g0: float = 0.0
    g1: float = 0.0

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("k must be positive")
        if sigma_k(self.k) < RESONANCE_MARGIN:
            raise ResonantMode(f"k={self.k!r} is within {RESONANCE_MARGIN} of a multiple of pi")
        if self.source and (self.g0 != 0.0 or self.g1 != 0.0):
            raise ValueError("a nonzero source requires g0 = g1 = 0")

    @property
    def homogeneous(self):
        return self.g0 == 0.0 and self.g1 == 0.0


def continuous_symbol(xi, k):
    """k^2 - xi^2."""
    return k * k - np.asarray(xi) ** 2 if np.ndim(xi) else k * k - xi * xi


def solve_exact(problem):
    """Sine coefficients of the exact solution for a homogeneous-boundary problem."""
    if not problem.homogeneous:
        raise ValueError("solve_exact handles g0 = g1 = 0 only; use zero_source_exact")
    src = problem.source
    if not src:
        return SineSeries.empty()
    k = problem.k
    lam = continuous_symbol(src.xi, k)
    bad = np.abs(lam) < MODE_RESONANCE_REL * k * k
    if bad.any():
        raise ResonantMode(f"source mode {int(src.modes[bad][0])} is resonant with k={k!r}")
    return SineSeries(src.modes, src.coeffs / lam)


def _check_sine(k, what="sin k"):
    s = np.sin(k)
    if abs(s) <= SINE_MARGIN:
        raise NearResonance(f"|{what}| <= {SINE_MARGIN} at {k!r}")
    return s


def zero_source_exact(k, g0, g1, x):
    """Exact solution of u'' + k^2 u = 0, u(0) = g0, u(1) = g1, at x."""
    s = _check_sine(k)
    x = np.asarray(x, dtype=float)
    out = (g1 - g0 * np.cos(k)) / s * np.sin(k * x) + g0 * np.cos(k * x)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ZeroSourceCoefficients:
    """Error profiles A0, A1 between exact and discrete zero-source solutions.

    With wavenumbers k and kh (the discrete one), the error is
    g0*A0(x) + g1*A1(x) where A1(x) = sin(kx)/sin(k) - sin(kh x)/sin(kh)
    and A0(x) = A1(1 - x).
    """

    k: float
    kh_discrete: float

    def __post_init__(self):
        _check_sine(self.k)
        _check_sine(self.kh_discrete, "sin k^h")

    def A1(self, x):
        x = np.asarray(x, dtype=float)
        k, kh = self.k, self.kh_discrete
        return np.sin(k * x) / np.sin(k) - np.sin(kh * x) / np.sin(kh)

    def A0(self, x):
        x = np.asarray(x, dtype=float)
        k, kh = self.k, self.kh_discrete
        return np.sin(k * (1 - x)) / np.sin(k) - np.sin(kh * (1 - x)) / np.sin(kh)

    def dA1(self, x):
        x = np.asarray(x, dtype=float)
        k, kh = self.k, self.kh_discrete
        return k * np.cos(k * x) / np.sin(k) - kh * np.cos(kh * x) / np.sin(kh)


def _pair(k, d):
    kh = k + d
    sk = _check_sine(k)
    skh = _check_sine(kh, "sin k^h")
    return kh, sk, skh


def _gap(k, h):
    from .schemes import discrete_wavenumber_gap

    if not 0 < k * h / 2 < 1:
        raise InvalidCFL(f"kh/2 = {k * h / 2!r} outside (0, 1)")
    return discrete_wavenumber_gap(k, h)


def s_functions_from_gap(k, d):
    """(S1, S2, S1~, S2~) for wavenumbers k and k + d, stable when d is tiny."""
    kh, sk, skh = _pair(k, d)
    sd, cd = np.sin(d), np.cos(d)
    cot_k, cot_kh = np.cos(k) / sk, np.cos(kh) / skh
    # cot k - cot k^h = sin(d)/(sin k sin k^h)
    s1 = 0.5 * sd * sd / (sk * skh) + cos_minus_sinc(d)
    s2 = -d / (2 * (k + kh)) * (sd / k + d * sk * np.cos(kh) / (k * kh))
    s1t = s1 + d * (-sd * (cot_k / (2 * kh) + cot_kh / (2 * k)) + d * cd / (2 * k * kh))
    s2t = d / (2 * (k + kh)) * (-sd / k + d * skh * np.cos(k) / (k * kh))
    return float(s1), float(s2), float(s1t), float(s2t)


def s_functions(k, h):
    """(S1, S2, S1~, S2~) with k^h the classical discrete wavenumber.

    ||A1||^2 = (S1 + S2)/(sin k sin k^h) and
    |A1|_1^2 = k k^h (S1~ + S2~)/(sin k sin k^h).
    """
    return s_functions_from_gap(k, _gap(k, h))


def a1_norms_from_gap(k, d):
    """(||A1||, |A1|_1) for wavenumbers k and k + d."""
    kh, sk, skh = _pair(k, d)
    s1, s2, s1t, s2t = s_functions_from_gap(k, d)
    l2sq = (s1 + s2) / (sk * skh)
    h1sq = k * kh * (s1t + s2t) / (sk * skh)
    return float(np.sqrt(max(l2sq, 0.0))), float(np.sqrt(max(h1sq, 0.0)))


def a1_norms(k, h):
    """(||A1||, |A1|_1) from the closed forms, k^h classical."""
    return a1_norms_from_gap(k, _gap(k, h))


def a1_profile(k, d, x):
    """A1(x) for wavenumbers k and k + d, free of cancellation when d is small."""
    kh, sk, skh = _pair(k, d)
    x = np.asarray(x, dtype=float)
    kx, dx = k * x, d * x
    half_sum, half_diff = 0.5 * (d + dx), 0.5 * (d - dx)
    # sin(kx) sin(k+d) - sin((k+d)x) sin(k), expanded so each term carries a small factor
    num = (-2.0 * np.sin(kx) * sk * np.sin(half_sum) * np.sin(half_diff)
           + np.sin(d) * np.sin(kx - k)
           + 2.0 * sk * np.cos(kx) * np.cos(half_sum) * np.sin(half_diff))
    return num / (sk * skh)


def a1_derivative_profile(k, d, x):
    """A1'(x) for wavenumbers k and k + d, free of cancellation when d is small."""
    kh, sk, skh = _pair(k, d)
    x = np.asarray(x, dtype=float)
    kx, dx = k * x, d * x
    half_sum, half_diff = 0.5 * (d + dx), 0.5 * (d - dx)
    # k [cos(kx) sin(k+d) - cos((k+d)x) sin k] - d cos((k+d)x) sin k
    bracket = (-2.0 * np.cos(kx) * sk * np.sin(half_sum) * np.sin(half_diff)
               + np.sin(d) * np.cos(kx - k)
               - 2.0 * sk * np.sin(kx) * np.cos(half_sum) * np.sin(half_diff))
    return (k * bracket - d * np.cos(kh * x) * sk) / (sk * skh)


def exact_norms_zero_source(k, g0, g1):
    """(||u||, |u|_1) of the exact zero-source solution, in closed form."""
    s = _check_sine(k)
    # u = a sin(kx) + b cos(kx)
    a = (g1 - g0 * np.cos(k)) / s
    b = g0
    s2k = np.sin(2 * k) / (2 * k)
    sin_sq = 0.5 * (1 - s2k)
    cos_sq = 0.5 * (1 + s2k)
    sin_cos = np.sin(k) ** 2 / (2 * k)
    l2 = a * a * sin_sq + b * b * cos_sq + 2 * a * b * sin_cos
    h1 = k * k * (a * a * cos_sq + b * b * sin_sq - 2 * a * b * sin_cos)
    return float(np.sqrt(l2)), float(np.sqrt(h1))
