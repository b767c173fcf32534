"""Cancellation-free evaluation of a few elementary differences.

Every function accepts scalars or numpy arrays and switches to a truncated
Maclaurin series below a threshold where direct subtraction would lose
digits.
"""

from math import comb, factorial

import numpy as np

# arcsin(x) - x = sum_{n>=1} c_n x^(2n+1), terms through x^13
_ASINM = [comb(2 * n, n) / (4**n * (2 * n + 1)) for n in range(1, 7)]
# x - sin(x) = sum_{n>=1} (-1)^(n+1) x^(2n+1) / (2n+1)!
_XMSIN = [(-1) ** (n + 1) / factorial(2 * n + 1) for n in range(1, 13)]
# cos(x) - sin(x)/x = sum_{n>=1} (-1)^n 2n x^(2n) / (2n+1)!
_COSMSINC = [(-1) ** n * 2 * n / factorial(2 * n + 1) for n in range(1, 13)]
# sin(x)/x
_SINC = [(-1) ** n / factorial(2 * n + 1) for n in range(0, 13)]
# tan(x) - x, x^3 .. x^17
_TANM = [1 / 3, 2 / 15, 17 / 315, 62 / 2835, 1382 / 155925, 21844 / 6081075,
         929569 / 638512875, 6404582 / 10854718875]

ASINM_SERIES_BELOW = 1e-2
SERIES_BELOW = 1.0
TANM_SERIES_BELOW = 0.1


def _poly(x2, coeffs):
    # Horner in x^2
    acc = np.zeros_like(x2)
    for c in reversed(coeffs):
        acc = acc * x2 + c
    return acc


def _apply(x, small, series, direct):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    mask = np.abs(x) < small
    if mask.any():
        out[mask] = series(x[mask])
    if (~mask).any():
        out[~mask] = direct(x[~mask])
    return out if out.ndim else float(out)


def asinm(x):
    """arcsin(x) - x."""
    return _apply(x, ASINM_SERIES_BELOW,
                  lambda v: v**3 * _poly(v * v, _ASINM),
                  lambda v: np.arcsin(v) - v)


def x_minus_sin(x):
    """x - sin(x)."""
    return _apply(x, SERIES_BELOW,
                  lambda v: v**3 * _poly(v * v, _XMSIN),
                  lambda v: v - np.sin(v))


def cos_minus_sinc(x):
    """cos(x) - sin(x)/x, with the removable singularity at 0 filled in."""
    return _apply(x, SERIES_BELOW,
                  lambda v: v * v * _poly(v * v, _COSMSINC),
                  lambda v: np.cos(v) - np.sin(v) / v)


def sinc(x):
    """sin(x)/x (unnormalised), equal to 1 at 0."""
    return _apply(x, SERIES_BELOW,
                  lambda v: _poly(v * v, _SINC),
                  lambda v: np.sin(v) / v)


def tan_minus_x(x):
    """tan(x) - x."""
    return _apply(x, TANM_SERIES_BELOW,
                  lambda v: v**3 * _poly(v * v, _TANM),
                  lambda v: np.tan(v) - v)


def sq_minus_sinsq(x):
    """x^2 - sin(x)^2, as (x - sin x)(x + sin x)."""
    x = np.asarray(x, dtype=float)
    out = x_minus_sin(x) * (x + np.sin(x))
    return out if np.ndim(out) else float(out)
