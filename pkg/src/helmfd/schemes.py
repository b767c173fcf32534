"""Three-point finite-difference schemes, their symbols and well-posedness checks."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import kernels
from ._numerics import asinm, sq_minus_sinsq, tan_minus_x
from .exact import HelmholtzProblem, n_plus, sigma_k
from .exceptions import DiscreteResonance, InvalidCFL, Resonant, SearchExhausted
from .spectral import GridFunction, SineSeries, alias_coefficients, dst_forward, dst_inverse

DISCRETE_RESONANCE_REL = 1e-10


class SchemeKind(Enum):
    """Classical scheme and its three dispersion-corrected variants.

    KMOD shifts the wavenumber to (2/h) sin(kh/2), LMOD rescales the
    discrete Laplacian instead, and LFMOD additionally rescales the source
    by (kh/2) cot(kh/2).
    """

    CLASSICAL = "classical"
    KMOD = "kmod"
    LMOD = "lmod"
    LFMOD = "lfmod"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.strip().lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scheme {name!r}; expected one of {names}") from None

    @property
    def corrected(self):
        return self is not SchemeKind.CLASSICAL


def _mu(k, h, scheme=None):
    mu = 0.5 * k * h
    if not mu > 0:
        raise ValueError("k and h must be positive")
    if mu >= 1 and (scheme is None or scheme.corrected):
        raise InvalidCFL(f"kh/2 = {mu!r} >= 1")
    return mu


def discrete_wavenumber_gap(k, h):
    """k^h - k, evaluated without cancellation."""
    mu = _mu(k, h)
    return float(2.0 / h * asinm(mu))


def discrete_wavenumber(k, h):
    """k^h = (2/h) arcsin(kh/2), the root of the classical discrete symbol."""
    return float(k + discrete_wavenumber_gap(k, h))


def shifted_wavenumber(k, h):
    """(2/h) sin(kh/2), the wavenumber used by KMOD; its discrete wavenumber is k."""
    return float(2.0 / h * np.sin(0.5 * k * h))


def scheme_wavenumber_gap(scheme, k, h):
    """Root of the scheme's discrete symbol minus k.

    The corrected schemes place the root at k, so the result is rounding noise.
    """
    if scheme is SchemeKind.CLASSICAL:
        return discrete_wavenumber_gap(k, h)
    mu = _mu(k, h, scheme)
    return float(2.0 / h * (np.arcsin(np.sin(mu)) - mu))


def discrete_symbol(scheme, xi, k, h):
    """Symbol of the discrete operator acting on sin(xi x), source factor included."""
    mu = _mu(k, h, scheme)
    s = np.sin(0.5 * np.asarray(xi, dtype=float) * h) ** 2 * (4.0 / h**2)
    if scheme is SchemeKind.CLASSICAL:
        out = k * k - s
    elif scheme is SchemeKind.KMOD:
        out = shifted_wavenumber(k, h) ** 2 - s
    else:
        out = k * k * (1.0 - s * (h * h / 4.0) / np.sin(mu) ** 2)
        if scheme is SchemeKind.LFMOD:
            out = np.tan(mu) / mu * out
    return out if np.ndim(out) else float(out)


def symbol_gap(scheme, xi, k, h):
    """lambda^h(xi) - lambda(xi), evaluated without cancellation."""
    mu = _mu(k, h, scheme)
    theta = 0.5 * np.asarray(xi, dtype=float) * h
    c = 4.0 / h**2
    base = sq_minus_sinsq(theta)
    if scheme is SchemeKind.CLASSICAL:
        out = c * base
    elif scheme is SchemeKind.KMOD:
        out = c * (base - sq_minus_sinsq(mu))
    else:
        out = c * (base - np.sin(theta) ** 2 * sq_minus_sinsq(mu) / np.sin(mu) ** 2)
        if scheme is SchemeKind.LFMOD:
            lam_l = k * k * (1.0 - np.sin(theta) ** 2 / np.sin(mu) ** 2)
            out = tan_minus_x(mu) / mu * lam_l + out
    return out if np.ndim(out) else float(out)


def source_multiplier(scheme, k, h):
    """Factor applied to nodal source values before solving."""
    if scheme is SchemeKind.LFMOD:
        mu = _mu(k, h, scheme)
        return float(mu / np.tan(mu))
    return 1.0


def _stencil(scheme, k, h):
    # interior row scaled by h^2: s*u[j-1] + (K^2 h^2 - 2s)*u[j] + s*u[j+1]
    if scheme is SchemeKind.CLASSICAL:
        return k * k, 1.0
    if scheme is SchemeKind.KMOD:
        return shifted_wavenumber(k, h) ** 2, 1.0
    mu = _mu(k, h, scheme)
    return k * k, (mu / np.sin(mu)) ** 2


def grid_frequencies(N):
    return np.pi * np.arange(1, N)


def check_discrete_wellposed(scheme, k, N):
    """Raise DiscreteResonance if the discrete symbol nearly vanishes on the grid."""
    lam = discrete_symbol(scheme, grid_frequencies(N), k, 1.0 / N)
    i = int(np.argmin(np.abs(lam)))
    if abs(lam[i]) < DISCRETE_RESONANCE_REL * k * k:
        raise DiscreteResonance(
            f"{scheme.value}: |lambda^h| = {abs(lam[i]):.3e} at mode {i + 1} (k={k!r}, N={N})")
    return lam


@dataclass(frozen=True)
class DiscreteSolution:
    """Nodal solution plus, for homogeneous boundary data, its sine interpolant."""

    N: int
    nodal: GridFunction
    interpolant: Optional[SineSeries]
    scheme: SchemeKind


def solve_tridiagonal(scheme, problem, N):
    """Assemble and solve the (N-1)x(N-1) tridiagonal system by elimination."""
    if N < 4:
        raise ValueError("N must be >= 4")
    k, h = problem.k, 1.0 / N
    check_discrete_wellposed(scheme, k, N)
    K2, s = _stencil(scheme, k, h)
    src = problem.source
    interior = kernels.helmholtz_tridiag(N, s, K2 * h * h, src.modes, src.coeffs,
                                         source_multiplier(scheme, k, h) * h * h,
                                         problem.g0, problem.g1)
    values = np.concatenate(([problem.g0], interior, [problem.g1]))
    nodal = GridFunction(N, values)
    interp = dst_forward(nodal) if problem.homogeneous else None
    return DiscreteSolution(N, nodal, interp, scheme)


def solve_spectral(scheme, problem, N):
    """Solve mode by mode: u^h coefficient = aliased source coefficient / discrete symbol."""
    if not problem.homogeneous:
        raise ValueError("solve_spectral requires g0 = g1 = 0")
    lam = check_discrete_wellposed(scheme, problem.k, N)
    fh = alias_coefficients(problem.source, N)
    coeffs = fh.to_dense(N - 1) / lam
    interp = SineSeries.from_dense(coeffs, prune=0.0)
    return DiscreteSolution(N, dst_inverse(interp, N), interp, scheme)


def _N_of(h):
    N = int(round(1.0 / h))
    if N < 2 or abs(N * h - 1.0) > 1e-12:
        raise ValueError(f"h={h!r} is not the reciprocal of an integer >= 2")
    return N


def wellposedness_margin(k, h):
    """min over grid modes of |k - (2/h) sin(xi h/2)|."""
    return kernels.min_discrete_gap(k, _N_of(h))


def h_k_bound(k):
    """Sufficient mesh size below which the margin stays >= sigma_k/2."""
    sig = sigma_k(k)
    if sig <= 1e-12:
        raise Resonant(f"k={k!r} is a multiple of pi")
    return float(2.0 * np.sqrt(3.0 * sig) / (0.5 * sig + n_plus(k) * np.pi) ** 1.5)


def h_k_star_search(k, N_max):
    """Largest 1/N* such that every N in [N*, N_max] has margin >= sigma_k/2."""
    sig = sigma_k(k)
    if sig <= 1e-12:
        raise Resonant(f"k={k!r} is a multiple of pi")
    target = 0.5 * sig
    n_star = None
    for N in range(N_max, 1, -1):
        if kernels.min_discrete_gap(k, N) < target:
            break
        n_star = N
    if n_star is None:
        raise SearchExhausted(f"margin < sigma_k/2 already at N_max={N_max}")
    return 1.0 / n_star


def admissible_mesh(k, N_hi=None):
    """Smallest N with kh/2 < 1 and margin >= sigma_k/2, searched up to N_hi (default 2k)."""
    target = 0.5 * sigma_k(k)
    N_lo = int(np.floor(k / 2)) + 1
    N_hi = int(np.ceil(2 * k)) if N_hi is None else N_hi
    for N in range(max(N_lo, 2), N_hi + 1):
        if kernels.min_discrete_gap(k, N) >= target:
            return N
    raise SearchExhausted(f"no admissible N in [{N_lo}, {N_hi}] for k={k!r}")
