"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.
"""

import sys
import time

import numpy as np
import pytest

from helmfd.bounds import LEMMA_IDS, BoundSweepConfig, run_all
from helmfd.cli import (ConvergenceReport, converge_reports, unit_sigma_wavenumbers, fit_orders,
                        h_refine_cells, kh_fixed_cells, kh_refine_cells)
from helmfd.errors import zero_source_error_norms, zero_source_quadrature
from helmfd.exact import HelmholtzProblem, a1_norms, sigma_k, zero_source_exact
from helmfd.exceptions import CandidateViolation, HelmfdError, HypothesisViolated
from helmfd.schemes import (SchemeKind, admissible_mesh, check_discrete_wellposed,
                            discrete_wavenumber_gap, h_k_bound, h_k_star_search, solve_spectral,
                            solve_tridiagonal, wellposedness_margin)
from helmfd.spectral import SineSeries
from helmfd.symbols import CANDIDATE_LEMMA, argmax_scan, check_hypotheses, shape_probe, symbol_arrays

C, KM, LM, LF = SchemeKind
FOUR_MODE = SineSeries.from_dict({m: 2**-0.5 for m in (10, 20, 40, 80)})


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        with capsys.disabled():
            print("\n" + line)
        return line
    return emit


# 1 ------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    ks = [m * np.pi + 1 for m in (10, 20, 40, 80)]
    (rep,) = converge_reports([C], ks, FOUR_MODE)[1]
    curves = rep.per_k()
    slopes = {k: s for k, (s, _) in rep.h_slopes(finest=4).items()}
    slope_ok = all(1.9 <= s <= 2.1 for s in slopes.values())
    ratios = []
    for k1, k2 in zip(ks, ks[1:]):
        a, b = dict(curves[k1]), dict(curves[k2])
        ratios.append([b[N] / a[N] for N in sorted(set(a) & set(b))])
    ratio_ok = all(5 <= r <= 12 for rs in ratios for r in rs)
    cross = []
    for k1, k2 in zip(ks, ks[2:]):
        a, b = dict(curves[k1]), dict(curves[k2])
        cross += [b[8 * N] / a[N] for N in a if 8 * N in b]
    cross_ok = bool(cross) and all(abs(c - 1) <= 0.3 for c in cross)
    dt = time.perf_counter() - t0
    ok = slope_ok and ratio_ok and cross_ok and dt < 60
    detail = ("slopes " + ", ".join(f"{s:.3f}" for s in slopes.values())
              + "; matched-h ratios " + " | ".join(" ".join(f"{r:.2f}" for r in rs) for rs in ratios)
              + f"; cross pairs {min(cross):.3f}..{max(cross):.3f}; {dt:.2f}s")
    return ok, detail


def test_criterion_1_pollution_order(report):
    ok, detail = criterion_1()
    report(1, ok, detail)
    assert ok, detail


# 2 ------------------------------------------------------------------

def criterion_2():
    t0 = time.perf_counter()
    config = BoundSweepConfig.default()
    rep = run_all(config)
    dt = time.perf_counter() - t0
    eligible = 0
    for case in config.cases:
        try:
            check_hypotheses(case.k, 1 / case.N, "lem3ptmax", 0.5 * sigma_k(case.k))
            eligible += 1
        except HypothesisViolated:
            pass
    covered = {r.lemma_id for r in rep.passed}
    ok = eligible >= 16 and not rep.failures and covered == set(LEMMA_IDS) and dt < 10
    detail = (f"{eligible} pairs, {rep.summary()}, {len(covered)}/{len(LEMMA_IDS)} ids passed "
              f"somewhere, {dt:.2f}s")
    return ok, detail


def test_criterion_2_bound_suite(report):
    ok, detail = criterion_2()
    report(2, ok, detail)
    assert ok, detail


# 3 ------------------------------------------------------------------

def _random_cases(rng, lemma, n):
    out = []
    while len(out) < n:
        k = rng.uniform(2 * np.pi + 0.2, 250)
        N = int(rng.integers(int(k / 1.5) + 1, int(40 * k)))
        try:
            check_hypotheses(k, 1 / N, lemma)
        except (HypothesisViolated, HelmfdError):
            continue
        out.append((k, N))
    return out


def criterion_3():
    rng = np.random.default_rng(20261015)
    violations, counts = 0, {}
    for which, lemma in CANDIDATE_LEMMA.items():
        cases = _random_cases(rng, lemma, 100)
        for k, N in cases:
            try:
                res = argmax_scan(C, which, k, 1 / N)
                violations += not res.candidate_ok
            except CandidateViolation:
                violations += 1
        counts[which] = len(cases)
    ok = violations == 0
    return ok, f"{violations} violations over {counts}"


def test_criterion_3_candidate_maximisers(report):
    ok, detail = criterion_3()
    report(3, ok, detail)
    assert ok, detail


# 4 ------------------------------------------------------------------

def criterion_4():
    rng = np.random.default_rng(4)
    worst, done = 0.0, 0
    while done < 200:
        N = int(rng.integers(4, 4097))
        k = rng.uniform(1.0, min(1.9 * N, 600))
        nmodes = int(rng.integers(1, 6))
        modes = rng.choice(np.arange(1, 3 * N), size=nmodes, replace=False)
        src = SineSeries(modes, rng.standard_normal(nmodes))
        scheme = list(SchemeKind)[int(rng.integers(4))]
        try:
            p = HelmholtzProblem(k, src)
            check_discrete_wellposed(scheme, k, N)
        except HelmfdError:
            continue
        a = solve_tridiagonal(scheme, p, N).nodal.values
        b = solve_spectral(scheme, p, N).nodal.values
        scale = np.max(np.abs(b))
        if scale == 0:
            continue
        worst = max(worst, np.max(np.abs(a - b)) / scale)
        done += 1
    ok = worst < 1e-11
    return ok, f"max nodal relative difference {worst:.2e} over {done} instances"


def test_criterion_4_solver_equivalence(report):
    ok, detail = criterion_4()
    report(4, ok, detail)
    assert ok, detail


# 5 ------------------------------------------------------------------

def criterion_5():
    grid = [(k, N) for k in (5.0, 10.0, 23.0, 10 * np.pi + 1, 64.5) for N in (40, 64, 128, 257)]
    grid = [(k, N) for k, N in grid if k / N < 1.9]
    worst_nodal, worst_closed = 0.0, 0.0
    used = 0
    for k, N in grid:
        try:
            for s in (KM, LM):
                check_discrete_wellposed(s, k, N)
        except HelmfdError:
            continue
        used += 1
        for g0, g1 in ((0.0, 1.0), (1.0, 0.0), (0.7, -1.3)):
            for s in (KM, LM):
                sol = solve_tridiagonal(s, HelmholtzProblem(k, g0=g0, g1=g1), N)
                err = np.max(np.abs(sol.nodal.values - zero_source_exact(k, g0, g1, sol.nodal.x)))
                worst_nodal = max(worst_nodal, err / (abs(g0) + abs(g1)))
        d = discrete_wavenumber_gap(k, 1 / N)
        closed = zero_source_error_norms(C, k, 1 / N, 0.0, 1.0)
        quad = zero_source_quadrature(k, d, 0.0, 1.0)
        worst_closed = max(worst_closed, *(abs(a - b) / b for a, b in zip(closed, quad)))
    ok = used >= 20 and worst_nodal <= 1e-10 and worst_closed <= 1e-8
    return ok, (f"{used} (k,h) points, corrected nodal error {worst_nodal:.2e}, "
                f"closed form vs quadrature {worst_closed:.2e}")


def test_criterion_5_zero_source(report):
    ok, detail = criterion_5()
    report(5, ok, detail)
    assert ok, detail


# 6 ------------------------------------------------------------------

def _max_report(scheme, which, cells):
    rows = []
    for k, N in cells:
        arr = symbol_arrays(scheme, np.pi * np.arange(1, N), k, 1 / N)
        rows.append((k, N, float(np.max(arr[which][~arr["resonant"]]))))
    return ConvergenceReport(scheme.value, which, tuple(rows))


def criterion_6():
    cells = h_refine_cells()
    vals = [v for _, _, v in _max_report(C, "psi_e", cells).rows]
    halving = [a / b for a, b in zip(vals, vals[1:])]
    ok_h = all(3.5 <= r <= 4.5 for r in halving)

    targets = {C: 3.0, KM: 2.0, LM: 2.0, LF: 1.5}
    kh_exp = {s: fit_orders(_max_report(s, "psi", kh_refine_cells()), h_exponent=2.0, stage=0)[1]
              for s in targets}
    ok_kh = all(abs(kh_exp[s] - t) <= 0.2 for s, t in targets.items())

    fixed = kh_fixed_cells()
    rel_k = fit_orders(_max_report(C, "psi_rel", fixed), h_exponent=2.0, stage=0)[1]
    rel_h = fit_orders(_max_report(LM, "psi_rel", fixed))[0]
    ok_fix = abs(rel_k - 1) <= 0.2 and abs(rel_h - 2) <= 0.2
    ok = ok_h and ok_kh and ok_fix
    detail = ("h-refine ratios " + " ".join(f"{r:.3f}" for r in halving)
              + "; kh-refine k-exponents " + ", ".join(f"{s.value} {e:.3f}" for s, e in kh_exp.items())
              + f"; kh-fixed classical psi_rel k-exponent {rel_k:.3f}, lmod psi_rel h-exponent {rel_h:.3f}")
    return ok, detail


def test_criterion_6_symbol_scaling(report):
    ok, detail = criterion_6()
    report(6, ok, detail)
    assert ok, detail


# 7 ------------------------------------------------------------------

def criterion_7():
    mus = np.round(np.arange(0.05, 0.951, 0.05), 2)
    bad = [(w, float(mu)) for w in ("phi", "phi_e", "phi_rel") for mu in mus
           if not shape_probe(w, float(mu), samples=100_000).passed]
    return not bad, f"{len(bad)} violations over {3 * len(mus)} probes {bad or ''}".strip()


def test_criterion_7_shape_probes(report):
    ok, detail = criterion_7()
    report(7, ok, detail)
    assert ok, detail


# 8 ------------------------------------------------------------------

def criterion_8():
    ks = unit_sigma_wavenumbers()
    dominated, ratios = 0, []
    for k in ks:
        hk = h_k_bound(k)
        N_max = max(64, 4 * int(np.ceil(1 / hk)))
        dominated += h_k_star_search(k, N_max) >= hk
        N = admissible_mesh(k)
        assert wellposedness_margin(k, 1 / N) >= sigma_k(k) / 2
        ratios.append(N / k)
    med = float(np.median(ratios))
    ok = dominated == len(ks) and max(ratios) <= 1.1 and 0.5 <= med <= 0.6
    return ok, (f"h_k* >= h_k at {dominated}/{len(ks)} k; admissible N/k in "
                f"[{min(ratios):.2f}, {max(ratios):.2f}], median {med:.3f}")


def test_criterion_8_wellposedness(report):
    ok, detail = criterion_8()
    report(8, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for n, fn in enumerate((criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                            criterion_6, criterion_7, criterion_8), start=1):
        ok, detail = fn()
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        status |= not ok
    sys.exit(status)
