import numpy as np
import pytest
from scipy.integrate import trapezoid

from helmfd.spectral import (GridFunction, SineSeries, alias_coefficients, dst_forward, dst_inverse,
                             parse_source, sample, seminorm, split_low_high)

S = SineSeries.from_dict


def test_series_drops_zero_coefficients_and_sorts():
    s = SineSeries(np.array([5, 2, 9]), np.array([1.0, 0.0, -2.0]))
    assert s.to_dict() == {5: 1.0, 9: -2.0}


@pytest.mark.parametrize("modes", [[0], [-3], [2, 2]])
def test_series_rejects_bad_modes(modes):
    with pytest.raises(ValueError):
        SineSeries(np.array(modes), np.ones(len(modes)))


def test_grid_function_length_checked():
    with pytest.raises(ValueError):
        GridFunction(4, np.zeros(4))


def test_sample_single_mode():
    g = sample(S({1: 1.0}), 4)
    expected = [0, np.sin(np.pi / 4), 1, np.sin(3 * np.pi / 4), 0]
    np.testing.assert_allclose(g.values, expected, atol=1e-15)


def test_sample_above_nyquist_matches_folded_mode():
    np.testing.assert_allclose(sample(S({9: 1.0}), 8).values, sample(S({7: -1.0}), 8).values,
                               atol=1e-15)


def test_sample_matches_dense_evaluation():
    s = S({10: 0.3, 20: -0.7})
    x = np.linspace(0, 1, 10_001)
    dense = 0.3 * np.sin(10 * np.pi * x) - 0.7 * np.sin(20 * np.pi * x)
    nodes = np.round(np.arange(17) / 16 * 10_000).astype(int)
    assert np.max(np.abs(sample(s, 16).values - dense[nodes])) < 1e-14


def test_dst_roundtrip_single_mode():
    assert dst_forward(sample(S({3: 2.5}), 16)).to_dict() == pytest.approx({3: 2.5}, abs=1e-13)


def test_dst_of_zeros_is_empty():
    assert len(dst_forward(GridFunction(8, np.zeros(9)))) == 0


def test_dst_recovers_aliased_mode():
    assert dst_forward(sample(S({9: 1.0}), 8)).to_dict() == pytest.approx({7: -1.0}, abs=1e-13)


@pytest.mark.parametrize("N", [2, 3, 7, 16, 33])
def test_dst_methods_agree(N):
    rng = np.random.default_rng(N)
    v = np.concatenate([[0], rng.standard_normal(N - 1), [0]])
    g = GridFunction(N, v)
    fast = dst_forward(g).to_dense(N - 1)
    direct = dst_forward(g, method="direct").to_dense(N - 1)
    np.testing.assert_allclose(fast, direct, atol=1e-13)
    np.testing.assert_allclose(dst_inverse(dst_forward(g), N).values, v, atol=1e-13)


def test_alias_low_mode_unchanged():
    assert alias_coefficients(S({1: 1.0}), 8).to_dict() == {1: 1.0}


def test_alias_reflected_mode_changes_sign():
    assert alias_coefficients(S({15: 1.0}), 8).to_dict() == pytest.approx({1: -1.0})


def test_alias_matches_dst_of_samples():
    s = S({10: 0.3, 20: -0.7, 40: 0.5})
    np.testing.assert_allclose(alias_coefficients(s, 16).to_dense(15),
                               dst_forward(sample(s, 16)).to_dense(15), atol=1e-12)


def test_alias_drops_modes_on_multiples_of_N():
    assert len(alias_coefficients(S({8: 1.0, 16: 2.0}), 8)) == 0


@pytest.mark.parametrize("src,low,high", [
    ({1: 1, 20: 1}, {1: 1}, {20: 1}),
    ({7: 1}, {7: 1}, {}),
    ({8: 1}, {}, {8: 1}),
])
def test_split_low_high(src, low, high):
    lo, hi = split_low_high(S(src), 8)
    assert lo.to_dict() == low and hi.to_dict() == high


def test_seminorm_closed_forms():
    assert seminorm(S({1: 1.0}), 0) == pytest.approx(1 / np.sqrt(2), rel=1e-15)
    assert seminorm(S({1: 1.0}), 1) == pytest.approx(np.pi / np.sqrt(2), rel=1e-15)


def test_seminorm_second_derivative_quadrature():
    s = S({10: 0.3, 20: -0.7})
    x = np.linspace(0, 1, 100_001)
    d2 = s.evaluate_derivative(x, order=2)
    assert seminorm(s, 2) == pytest.approx(np.sqrt(trapezoid(d2**2, x)), rel=1e-8)


def test_parse_source():
    assert parse_source("").to_dict() == {}
    assert parse_source("10:0.5, 3:-1e-2").to_dict() == {3: -0.01, 10: 0.5}
    assert parse_source("2:1,2:3").to_dict() == {2: 4.0}


@pytest.mark.parametrize("text", ["10", "a:1", "1:x", "0:1", "1:1,,2:3"])
def test_parse_source_errors_name_the_field(text):
    with pytest.raises(ValueError, match="field"):
        parse_source(text)
