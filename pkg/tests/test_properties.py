import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helmfd.bounds import BoundResult, check_operator_bounds, check_zero_source
from helmfd.cli import ConvergenceReport, fit_orders
from helmfd.errors import decompose, zero_source_error_norms
from helmfd.exact import HelmholtzProblem, sigma_k
from helmfd.schemes import (SchemeKind, discrete_wavenumber_gap, h_k_bound, solve_spectral,
                            solve_tridiagonal, wellposedness_margin)
from helmfd.spectral import SineSeries, alias_coefficients, dst_forward, sample
from helmfd.symbols import argmax_scan, candidates, symbol_arrays
from helmfd.exceptions import HelmfdError

schemes = st.sampled_from(list(SchemeKind))
series = st.dictionaries(st.integers(1, 300), st.floats(-5, 5, allow_nan=False), max_size=8)
grid_N = st.integers(4, 256)


def _nonresonant(k):
    return sigma_k(k) > 1e-3


@given(series)
def test_series_invariants(d):
    s = SineSeries.from_dict(d)
    assert np.all(s.modes >= 1) and np.all(s.coeffs != 0)
    assert np.all(np.diff(s.modes) > 0)


@given(series, st.integers(2, 64))
def test_dst_of_samples_is_alias_series(d, N):
    s = SineSeries.from_dict(d)
    g = sample(s, N)
    assert g.values.shape == (N + 1,)
    scale = 1 + np.abs(s.coeffs).sum()
    np.testing.assert_allclose(dst_forward(g).to_dense(N - 1), alias_coefficients(s, N).to_dense(N - 1),
                               atol=1e-12 * scale)


@settings(max_examples=60, deadline=None)
@given(schemes, st.floats(3, 150), grid_N, series)
def test_error_composition(scheme, k, N, d):
    s = SineSeries.from_dict(d)
    assume(_nonresonant(k) and k / N < 1.9 and s)
    try:
        b = decompose(scheme, HelmholtzProblem(k, s), N)
    except HelmfdError:
        assume(False)
    n = int(max(s.modes.max(), N)) + 1
    low = (b.E1 - b.E2).to_dense(n)
    total = b.total.to_dense(n)
    exact = b.exact.to_dense(n)
    tol = 1e-12 * (1 + np.abs(total).max())
    np.testing.assert_allclose(total[:N - 1], low[:N - 1], atol=tol)
    np.testing.assert_allclose(total[N - 1:], exact[N - 1:], atol=tol)
    for name in ("L2", "H1"):
        parts = sum(b.norms[(p, name)] for p in ("e2", "E1", "E2"))
        assert b.norms[("total", name)] <= parts * (1 + 1e-12) + 1e-12


@settings(max_examples=60, deadline=None)
@given(schemes, st.floats(3, 200), st.integers(8, 1024), series)
def test_solver_equivalence_and_interpolant(scheme, k, N, d):
    assume(_nonresonant(k) and k / N < 1.9 and d)
    p = HelmholtzProblem(k, SineSeries.from_dict(d))
    try:
        a = solve_tridiagonal(scheme, p, N)
    except HelmfdError:
        assume(False)
    b = solve_spectral(scheme, p, N)
    ref = max(np.abs(b.nodal.values).max(), 1e-300)
    assert np.abs(a.nodal.values - b.nodal.values).max() / ref < 1e-11
    assert a.interpolant.modes.size == 0 or a.interpolant.modes.max() <= N - 1
    np.testing.assert_allclose(sample(a.interpolant, N).values, a.nodal.values, atol=1e-12 * ref)


@given(schemes, st.floats(3, 100), grid_N)
def test_symbol_errors_nonnegative_and_linked(scheme, k, N):
    assume(k / N < 1.9)
    arr = symbol_arrays(scheme, np.pi * np.arange(1, N), k, 1 / N)
    ok = ~arr["resonant"]
    for key in ("psi", "psi_e", "psi_rel"):
        assert np.all(arr[key][ok] >= 0)
    fin = ok & np.isfinite(arr["psi"]) & (arr["psi_e"] > 0)
    np.testing.assert_allclose(arr["psi"][fin], arr["xi"][fin] * arr["psi_e"][fin], rtol=1e-12)


@given(st.floats(1e-3, 500), st.floats(1e-5, 0.5))
def test_wavenumber_gap_bracket(k, h):
    assume(0 < k * h / 2 < 1 and k**3 * h**2 > 1e-12)
    d = discrete_wavenumber_gap(k, h)
    assert k**3 * h**2 / 24 <= d <= (np.pi - 2) / 8 * k**3 * h**2 * (1 + 1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(2, 60))
def test_margin_above_half_sigma_below_h_k(k):
    assume(_nonresonant(k))
    N = int(np.ceil(1 / h_k_bound(k))) + 1
    assume(N < 20_000)
    assert wellposedness_margin(k, 1 / N) >= sigma_k(k) / 2


def _hyp_case(k, N):
    assume(_nonresonant(k) and k * 0.5 / N < 0.74 and N >= 8)
    try:
        return candidates(k, 1 / N)
    except HelmfdError:
        assume(False)


@settings(max_examples=80, deadline=None)
@given(st.floats(6.5, 120), st.integers(8, 600))
def test_candidate_invariants_and_argmax(k, N):
    cs = _hyp_case(k, N)
    assert cs.k_minus < k < cs.k_plus and cs.kh_minus < cs.kh < cs.kh_plus
    assert cs.k_plus - cs.k_minus == pytest.approx(np.pi)
    for which in ("psi", "psi_e", "psi_rel"):
        res = argmax_scan(SchemeKind.CLASSICAL, which, k, 1 / N)
        assert res.candidate_ok or res.skipped


@settings(max_examples=60, deadline=None)
@given(st.floats(6.5, 120), st.integers(8, 600))
def test_random_bounds_hold(k, N):
    _hyp_case(k, N)
    results = check_zero_source(k, 1 / N) + check_operator_bounds(k, 1 / N, 0.5 * sigma_k(k))
    assert not [r.lemma_id for r in results if r.status == "fail"]


@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10), st.booleans())
def test_bound_result_semantics(lo, val, hi, ok):
    r = BoundResult("x", {}, lo, val, hi, ok)
    slack = 1e-13 * max(abs(lo), abs(hi), 1)
    assert r.passed == (ok and lo - slack < val < hi + slack)


@given(st.floats(3, 80), st.integers(16, 200), st.floats(-2, 2))
def test_zero_source_reflection(k, N, g):
    assume(_nonresonant(k) and k / N < 1.5 and g != 0)
    try:
        a = zero_source_error_norms(SchemeKind.CLASSICAL, k, 1 / N, 0.0, g)
    except HelmfdError:
        assume(False)
    b = zero_source_error_norms(SchemeKind.CLASSICAL, k, 1 / N, g, 0.0)
    assert a == pytest.approx(b, rel=1e-14)


@given(st.floats(0.1, 10), st.lists(st.floats(5, 500), min_size=3, max_size=5, unique=True))
def test_fit_orders_exact_power(C, ks):
    rows = tuple((k, N, C * k**3 / N**2) for k in ks for N in (64, 128, 256, 512))
    b, a = fit_orders(ConvergenceReport("classical", "x", rows))
    assert b == pytest.approx(2.0, abs=1e-10) and a == pytest.approx(3.0, abs=1e-10)
