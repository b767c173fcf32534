import json

import numpy as np
import pytest

from helmfd.bounds import (LEMMA_IDS, BoundCase, BoundReport, BoundResult, BoundSweepConfig,
                           check_error_theorems, check_operator_bounds, check_sampling_errors,
                           check_zero_source, run_all)
from helmfd.exact import sigma_k
from helmfd.schemes import SchemeKind, discrete_symbol
from helmfd.spectral import SineSeries

S = SineSeries.from_dict
INF = float("inf")


def _by_id(results):
    return {r.lemma_id: r for r in results}


def _assert_no_failures(results):
    bad = [(r.lemma_id, r.lower, r.value, r.upper) for r in results if r.status == "fail"]
    assert not bad


def test_result_pass_semantics():
    assert BoundResult("x", {}, 0.0, 0.5, 1.0, True).status == "pass"
    assert BoundResult("x", {}, 0.0, 1.0 + 1e-14, 1.0, True).passed
    assert BoundResult("x", {}, 0.0, 1.1, 1.0, True).status == "fail"
    assert BoundResult("x", {}, -INF, 3.0, INF, True).passed
    assert BoundResult("x", {}, 0.0, 0.5, 1.0, False).status == "skipped"


def test_zero_source_all_pass():
    res = check_zero_source(10.0, 1 / 128, 0.5)
    assert res and all(r.status == "pass" for r in res)


def test_zero_source_near_threshold():
    k, c = 10.0, 0.5
    threshold = 8 * c * sigma_k(k) / (np.pi - 2)
    N = 23
    assert 0.9 * threshold < k**3 / N**2 < threshold
    res = _by_id(check_zero_source(k, 1 / N, c))
    assert res["kkh.sin"].status == "pass"
    _assert_no_failures(res.values())


def test_zero_source_equality():
    res = _by_id(check_zero_source(10.0, 1 / 128))
    eq = res["thm_f0_L2.equality"]
    assert eq.status == "pass" and eq.value == pytest.approx(eq.lower, rel=1e-12)


def test_sampling_zero_for_low_source():
    res = check_sampling_errors(20.0, 1 / 32, S({1: 1.0, 3: 0.5}), 1)
    for r in res:
        if r.lemma_id in ("downerr", "downerrL2", "lemaliasH1", "lemaliasL2"):
            assert r.value == 0.0 and r.status == "pass"


def test_alias_bound_single_high_mode():
    k, N = 20.0, 32
    h = 1 / N
    res = _by_id(check_sampling_errors(k, h, S({N + 2: 1.0}), 1))
    # the single alias lands on mode N - 2 with coefficient -1
    xi = (N - 2) * np.pi
    exact = xi / np.sqrt(2) / abs(discrete_symbol(SchemeKind.CLASSICAL, xi, k, h))
    assert res["lemaliasH1"].value == pytest.approx(exact, rel=1e-12)
    assert res["lemaliasH1"].status == "pass" and res["lemaliasL2"].status == "pass"
    # relative forms divide by ||f_low|| and need p >= 2
    assert res["lemaliasrel.L2"].status == "skipped"
    rel = _by_id(check_sampling_errors(k, h, S({2: 0.5, N + 2: 1.0}), 2))
    for key in ("lemaliasrel.L2", "lemaliasrel.H1", "lemdownrel.L2", "lemdownrel.H1"):
        assert rel[key].status == "pass"


def test_operator_bounds_reference_case():
    res = _by_id(check_operator_bounds(10.0, 1 / 64))
    assert res["maxL2rel.xi_max"].status == "pass"
    assert res["lemevan.k_minus"].status == "pass"
    _assert_no_failures(res.values())


@pytest.mark.parametrize("m", [20, 40, 80])
def test_operator_bounds_sweep(m):
    k = m * np.pi + 1
    N = int(4 * k)
    _assert_no_failures(check_operator_bounds(k, 1 / N, 0.5 * sigma_k(k)))


def test_error_theorems_sharpness_and_equality():
    k, N = 10 * np.pi + 1, 256
    f = S({n: 2**-0.5 for n in (10, 20, 40, 80)})
    res = _by_id(check_error_theorems(k, 1 / N, f, 2, 0.5 * sigma_k(k)))
    for key in ("thm_abs.sharp", "thm_rel.equality_L2", "thm_rel.equality_H1"):
        assert res[key].status == "pass"
    _assert_no_failures(res.values())


def test_empty_config():
    rep = run_all(BoundSweepConfig())
    assert rep.results == () and rep.all_pass


def test_resonant_case_is_skipped():
    rep = run_all(BoundSweepConfig((BoundCase(3 * np.pi, 64),)))
    assert rep.all_pass and rep.skipped and not rep.failures


def test_default_sweep_all_pass():
    rep = run_all(BoundSweepConfig.default())
    assert rep.all_pass
    assert {r.lemma_id for r in rep.passed} == set(LEMMA_IDS)
    assert rep.summary().endswith("all_pass=true")


def test_report_serialisation():
    rep = run_all(BoundSweepConfig.sweep([10.0], [64]))
    lines = rep.to_csv().splitlines()
    assert lines[0] == "lemma_id,k,h,lower,value,upper,status"
    assert len(lines) == len(rep.results) + 1
    data = json.loads(rep.to_json())
    assert data["all_pass"] is True and len(data["results"]) == len(rep.results)
    assert run_all(BoundSweepConfig.sweep([10.0], [64])).to_csv() == rep.to_csv()
