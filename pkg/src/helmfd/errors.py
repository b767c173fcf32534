"""Exact split of the discretisation error for finite sine-series sources.

With u the exact solution and u^h the sine interpolant of the discrete
solution, the error has three parts:

* e2, the exact-solution modes at or above the grid Nyquist mode N,
* E1 = (1/lambda - 1/lambda_h) f on modes below N (operator error),
* E2 = (aliased high source modes) / lambda_h on modes below N.

On modes below N the error is E1 - E2; above, it is e2. All norms come
from Parseval sums, so no quadrature is involved.
"""

from dataclasses import dataclass

import numpy as np

from .exact import (HelmholtzProblem, _check_sine, a1_derivative_profile, a1_norms_from_gap,
                    a1_profile,
                    continuous_symbol, solve_exact)
from .exceptions import DegenerateExact
from .schemes import (SchemeKind, check_discrete_wellposed, discrete_symbol, scheme_wavenumber_gap,
                      solve_tridiagonal, symbol_gap)
from .spectral import (GridFunction, SineSeries, alias_coefficients, dst_forward, sample, seminorm,
                       split_low_high)

PARTS = ("e2", "E1", "E2", "total")
NORMS = {"L2": 0, "H1": 1}
DEGENERATE_BELOW = 1e-300


@dataclass(frozen=True)
class ErrorBreakdown:
    """Error parts as sine series plus their L2 norms and H1 semi-norms.

    ``norms`` and ``relative`` are keyed by (part, "L2" | "H1"); relative
    values divide by ||u|| or |u|_1 and are nan when u vanishes.
    """

    e2: SineSeries
    E1: SineSeries
    E2: SineSeries
    total: SineSeries
    exact: SineSeries
    norms: dict
    relative: dict


def _low_symbols(scheme, k, N, modes):
    h = 1.0 / N
    xi = np.pi * modes
    return continuous_symbol(xi, k), discrete_symbol(scheme, xi, k, h), symbol_gap(scheme, xi, k, h)


def decompose(scheme, problem, N):
    """ErrorBreakdown of the scheme on the N-interval grid."""
    if not problem.homogeneous:
        raise ValueError("decompose requires g0 = g1 = 0")
    k = problem.k
    check_discrete_wellposed(scheme, k, N)
    u = solve_exact(problem)
    f_low, f_high = split_low_high(problem.source, N)
    _, e2 = split_low_high(u, N)

    lam, lam_h, gap = _low_symbols(scheme, k, N, f_low.modes)
    # 1/lambda - 1/lambda_h = (lambda_h - lambda)/(lambda lambda_h)
    E1 = SineSeries(f_low.modes, f_low.coeffs * gap / (lam * lam_h))

    aliased = alias_coefficients(f_high, N)
    nz = aliased.coeffs != 0.0
    a_modes = aliased.modes[nz]
    a_lam_h = discrete_symbol(scheme, np.pi * a_modes, k, 1.0 / N)
    E2 = SineSeries(a_modes, aliased.coeffs[nz] / a_lam_h)

    total = (E1 - E2) + e2
    norms = {}
    for part, series in zip(PARTS, (e2, E1, E2, total)):
        for name, p in NORMS.items():
            norms[(part, name)] = seminorm(series, p)
    u_norm = {name: seminorm(u, p) for name, p in NORMS.items()}
    relative = {key: (val / u_norm[key[1]] if u_norm[key[1]] > 0 else float("nan"))
                for key, val in norms.items()}
    return ErrorBreakdown(e2, E1, E2, total, u, norms, relative)


def total_error(scheme, problem, N):
    """(abs_L2, abs_H1, rel_L2, rel_H1) of u - u^h.

    A zero source gives zero error, reported as zero relative error too.
    """
    b = decompose(scheme, problem, N)
    l2, h1 = b.norms[("total", "L2")], b.norms[("total", "H1")]
    if not problem.source:
        return 0.0, 0.0, 0.0, 0.0
    ul2, uh1 = seminorm(b.exact, 0), seminorm(b.exact, 1)
    if ul2 < DEGENERATE_BELOW or uh1 < DEGENERATE_BELOW:
        raise DegenerateExact("exact solution has zero norm")
    return l2, h1, l2 / ul2, h1 / uh1


def _gauss_panels(k, d, n_panels=None, order=16):
    n_panels = n_panels or max(64, int(np.ceil(4 * (abs(k) + abs(d)))))
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wx = (half[:, None] * w[None, :]).ravel()
    return x, wx


def zero_source_quadrature(k, d, g0, g1):
    """(L2, H1) of g0*A0 + g1*A1 by composite Gauss-Legendre quadrature."""
    x, w = _gauss_panels(k, d)
    e = g0 * a1_profile(k, d, 1.0 - x) + g1 * a1_profile(k, d, x)
    de = -g0 * a1_derivative_profile(k, d, 1.0 - x) + g1 * a1_derivative_profile(k, d, x)
    return float(np.sqrt(np.dot(w, e * e))), float(np.sqrt(np.dot(w, de * de)))


def zero_source_error_norms(scheme, k, h, g0, g1):
    """(L2, H1) of u - u^h for f = 0 and boundary values g0, g1.

    u^h is the scheme's discrete solution extended by its own plane waves,
    so the error is g0*A0 + g1*A1 built with the scheme's discrete
    wavenumber. Closed forms apply when one boundary value is zero.
    """
    _check_sine(k)
    d = scheme_wavenumber_gap(scheme, k, h)
    _check_sine(k + d, "sin k^h")
    if g0 == 0.0 and g1 == 0.0:
        return 0.0, 0.0
    if g0 == 0.0 or g1 == 0.0:
        l2, h1 = a1_norms_from_gap(k, d)
        g = abs(g0) + abs(g1)
        return g * l2, g * h1
    return zero_source_quadrature(k, d, g0, g1)


def fine_reference_errors(scheme, problem, N, N_ref=None):
    """(L2, H1) of u^h against a discrete solution on a much finer grid.

    Cross-check path for the Parseval error: u^h is evaluated on the fine
    grid and the difference is measured through its fine-grid sine
    interpolant. N_ref defaults to N times a power of two with N_ref >= 8 k^2.
    """
    if N_ref is None:
        N_ref = N * 2 ** max(0, int(np.ceil(np.log2(8 * problem.k**2 / N))))
    if N_ref % N:
        raise ValueError("N_ref must be a multiple of N")
    coarse = solve_tridiagonal(scheme, problem, N)
    ref = solve_tridiagonal(scheme, problem, N_ref)
    diff = sample(coarse.interpolant, N_ref).values - ref.nodal.values
    e = dst_forward(GridFunction(N_ref, diff))
    return seminorm(e, 0), seminorm(e, 1)
