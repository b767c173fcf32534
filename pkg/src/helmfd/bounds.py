"""Certify the proven two-sided inequalities against exactly computed values.

Each checker returns a list of BoundResult, one per bracket. A result is
"skipped" when the inputs fall outside the bracket's hypotheses or guard,
"pass" when lower < value < upper up to a tiny relative slack, and "fail"
otherwise. Equalities are encoded as a narrow bracket around the expected
value. The closed set of identifiers is LEMMA_IDS.
"""

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import decompose, zero_source_quadrature
from .exact import (HelmholtzProblem, a1_norms, exact_norms_zero_source, s_functions, sigma_k)
from .exceptions import HelmfdError, HypothesisViolated
from .schemes import SchemeKind, discrete_wavenumber, discrete_wavenumber_gap, grid_frequencies, \
    h_k_bound, wellposedness_margin
from .spectral import SineSeries, seminorm, split_low_high
from .symbols import CANDIDATE_NAMES, candidates, check_hypotheses, symbol_arrays, xi_e_min

SLACK = 1e-13
EQUALITY_RTOL = 1e-12
# threshold on k in the relative-error results
K_REL = 4 * np.pi / (np.pi - np.sqrt(16 - np.pi**2))
# constant C in the small-k^3 h^2 regime of the psi(k_-) bracket
ORDER_C = 1.0

ZERO_SOURCE_IDS = (
    "sink", "kkh", "kkh.sigma", "kkh.sin", "S1bounds", "S2bounds", "S1pbounds", "S2pbounds",
    "thm_f0_L2", "thm_f0_L2.equality", "thm_f0_L2.relative",
    "thm_f0_H1", "thm_f0_H1.equality", "thm_f0_H1.relative",
)
SAMPLING_IDS = (
    "downerr", "downerrL2", "lemaliasH1", "lemaliasL2",
    "lemdownrel.L2", "lemdownrel.H1", "lemaliasrel.L2", "lemaliasrel.H1",
)
_CAND = ("k_minus", "k_plus", "kh_minus", "kh_plus", "xi_max")
OPERATOR_IDS = (
    ("3ptnonzero.margin", "3ptnonzero.symbol")
    + tuple(f"lem3ptmax.{c}" for c in _CAND) + ("lem3ptmax.argmax", "remorder")
    + tuple(f"lemevan.{c}" for c in _CAND) + ("lemevan.xi_e", "lemevan.argmax")
    + ("maxL2rel.kh_minus", "maxL2rel.kh_plus", "maxL2rel.xi_max", "maxL2rel.argmax")
)
THEOREM_IDS = (
    "thm_abs.H1", "thm_abs.L2", "thm_abs.E1_H1", "thm_abs.E1_L2", "thm_abs.sharp",
    "thm_rel.L2", "thm_rel.H1", "thm_rel.E1_L2", "thm_rel.E1_H1",
    "thm_rel.equality_L2", "thm_rel.equality_H1", "thm_rel.order",
)
LEMMA_IDS = ZERO_SOURCE_IDS + SAMPLING_IDS + OPERATOR_IDS + THEOREM_IDS


@dataclass(frozen=True)
class BoundResult:
    """One bracket lower < value < upper; infinite sides mean one-sided."""

    lemma_id: str
    params: dict
    lower: float
    value: float
    upper: float
    hypotheses_ok: bool
    note: str = ""

    @property
    def passed(self):
        if not self.hypotheses_ok:
            return False
        finite = [abs(b) for b in (self.lower, self.upper) if np.isfinite(b)]
        slack = SLACK * max(finite + [1.0])
        return bool(self.lower - slack < self.value < self.upper + slack)

    @property
    def status(self):
        if not self.hypotheses_ok:
            return "skipped"
        return "pass" if self.passed else "fail"

    def sort_key(self):
        return (self.lemma_id, tuple(sorted(self.params.items())))

    def record(self):
        return {"lemma_id": self.lemma_id, "k": self.params.get("k"), "h": self.params.get("h"),
                "lower": self.lower, "value": self.value, "upper": self.upper,
                "status": self.status}


@dataclass(frozen=True)
class BoundReport:
    results: tuple = ()

    @property
    def all_pass(self):
        return all(r.status != "fail" for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if r.status == "fail"]

    @property
    def skipped(self):
        return [r for r in self.results if r.status == "skipped"]

    @property
    def passed(self):
        return [r for r in self.results if r.status == "pass"]

    def summary(self):
        return (f"bounds: {len(self.passed)} pass, {len(self.failures)} fail, "
                f"{len(self.skipped)} skipped; all_pass={str(self.all_pass).lower()}")

    def to_csv(self):
        lines = ["lemma_id,k,h,lower,value,upper,status"]
        for r in self.results:
            rec = r.record()
            lines.append(",".join(str(rec[c]) if c in ("lemma_id", "status") else repr(float(rec[c]))
                                  for c in ("lemma_id", "k", "h", "lower", "value", "upper",
                                            "status")))
        return "\n".join(lines) + "\n"

    def to_json(self):
        recs = [r.record() for r in self.results]
        for rec in recs:
            for key in ("lower", "value", "upper"):
                v = rec[key]
                rec[key] = v if np.isfinite(v) else ("inf" if v > 0 else ("-inf" if v < 0 else "nan"))
        return json.dumps({"all_pass": self.all_pass, "results": recs}, indent=1) + "\n"


class _Collector:
    """Accumulates results for one checker call with shared parameters."""

    def __init__(self, params):
        self.params = dict(params)
        self.out = []
        self.done = set()

    def bracket(self, lemma_id, lower, value, upper, **extra):
        self.out.append(BoundResult(lemma_id, {**self.params, **extra}, float(lower), float(value),
                                    float(upper), True))
        self.done.add(lemma_id)

    def equal(self, lemma_id, expected, value, rtol=EQUALITY_RTOL, **extra):
        tol = rtol * abs(expected)
        self.bracket(lemma_id, expected - tol, value, expected + tol, **extra)

    def skip(self, lemma_id, reason):
        self.out.append(BoundResult(lemma_id, dict(self.params), np.nan, np.nan, np.nan, False,
                                    str(reason)))
        self.done.add(lemma_id)

    def skip_rest(self, ids, reason):
        for lemma_id in ids:
            if lemma_id not in self.done:
                self.skip(lemma_id, reason)
        return self.out


def _first_failure(conds, lemma=None):
    for text, ok in conds:
        if not ok:
            return str(HypothesisViolated(text, lemma))
    return None


def _context(k, h, sigma_tilde, c_mu):
    mu = 0.5 * k * h
    sig = sigma_k(k)
    return {
        "k": float(k), "h": float(h), "N": int(round(1.0 / h)),
        "sigma_k": sig,
        "sigma_tilde": 0.5 * sig if sigma_tilde is None else float(sigma_tilde),
        "sigma_k_h": wellposedness_margin(k, h) if mu < 1 else float("nan"),
        "C_mu": mu if c_mu is None else float(c_mu),
    }


INF = float("inf")


def check_zero_source(k, h, c=0.5):
    """Brackets for the zero-source closed forms and the f = 0 error estimates."""
    col = _Collector({"k": float(k), "h": float(h), "c": float(c), "sigma_k": sigma_k(k)})
    sig = sigma_k(k)
    k3h2 = k**3 * h * h
    reason = _first_failure([
        ("0 < kh/2 < 1", 0 < k * h / 2 < 1),
        ("sigma_k > 0", sig > 0),
        ("k^3 h^2 (pi-2)/(8 sigma_k) < c", sig > 0 and k3h2 * (np.pi - 2) / (8 * sig) < c),
        ("c < 1", c < 1),
    ], "zero-source")
    if reason:
        return col.skip_rest(ZERO_SOURCE_IDS, reason)
    try:
        d = discrete_wavenumber_gap(k, h)
        kh = k + d
        s1, s2, s1t, s2t = s_functions(k, h)
        l2, h1 = a1_norms(k, h)
        q_l2, q_h1 = zero_source_quadrature(k, d, 0.0, 1.0)
        u_l2, u_h1 = exact_norms_zero_source(k, 0.0, 1.0)
    except HelmfdError as exc:
        return col.skip_rest(ZERO_SOURCE_IDS, exc)

    col.bracket("sink", 2 / np.pi * sig, abs(np.sin(k)), INF)
    col.bracket("kkh", k3h2 / 24, d, (np.pi - 2) / 8 * k3h2)
    col.bracket("kkh.sigma", 0.0, d, c * sig)
    col.bracket("kkh.sin", 2 * (1 - c) * sig / np.pi, abs(np.sin(kh)), INF)
    d2 = d * d
    s_up = np.pi**2 / (4 * sig**2) + 1 / 6
    s2_up = (1 / (4 * k**2) + 1 / (4 * k**3)) * d2
    col.bracket("S1bounds", d2 / 8, s1, s_up * d2)
    col.bracket("S2bounds", -INF, abs(s2), s2_up)
    s1t_up = s_up + np.pi * (2 - c) / (4 * sig * (1 - c) * k) + 1 / (2 * k**2)
    col.bracket("S1pbounds", d2 / 8, s1t, s1t_up * d2)
    col.bracket("S2pbounds", -INF, abs(s2t), s2_up)

    pref = np.pi * (np.pi - 2) / (16 * sig * np.sqrt(1 - c))
    low = np.sqrt(1 / 8 - 1 / (4 * k**2) - 1 / (4 * k**3)) / 24
    col.bracket("thm_f0_L2", low * k3h2, l2,
                pref * np.sqrt(s_up + 1 / (4 * k**2) + 1 / (4 * k**3)) * k3h2)
    col.bracket("thm_f0_H1", low * k3h2 * k, h1,
                pref * np.sqrt(np.pi**2 / (2 * sig**2) + 1 / 3
                               + np.pi * (2 - c) / (2 * sig * (1 - c) * k)
                               + 3 / (2 * k**2) + 1 / (2 * k**3)) * k3h2 * k)
    col.equal("thm_f0_L2.equality", l2, q_l2)
    col.equal("thm_f0_H1.equality", h1, q_h1)
    s2k = np.sin(2 * k) / (2 * k)
    col.equal("thm_f0_L2.relative", np.sqrt(2) * abs(np.sin(k)) / np.sqrt(1 - s2k) * l2,
              q_l2 / u_l2)
    col.equal("thm_f0_H1.relative", np.sqrt(2) * abs(np.sin(k)) / np.sqrt(1 + s2k) * h1 / k,
              q_h1 / u_h1)
    return col.out


def _sigma_conditions(ctx):
    return [("sigma_tilde > 0", ctx["sigma_tilde"] > 0),
            ("sigma_k^h >= sigma_tilde", ctx["sigma_k_h"] >= ctx["sigma_tilde"])]


def check_sampling_errors(k, h, f, p, sigma_tilde=None, c_mu=None):
    """Brackets for the downsampling and aliasing errors and their relative forms."""
    N = int(round(1.0 / h))
    col = _Collector({"k": float(k), "h": float(h), "p": int(p)})
    try:
        ctx = _context(k, h, sigma_tilde, c_mu)
        col.params.update(sigma_tilde=ctx["sigma_tilde"], sigma_k_h=ctx["sigma_k_h"],
                          C_mu=ctx["C_mu"])
        b = decompose(SchemeKind.CLASSICAL, HelmholtzProblem(k, f), N)
    except HelmfdError as exc:
        return col.skip_rest(SAMPLING_IDS, exc)
    mu, cm, st = 0.5 * k * h, ctx["C_mu"], ctx["sigma_tilde"]
    f_low, f_high = split_low_high(f, N)
    fh = seminorm(f_high, p)
    fl0, fl1 = seminorm(f_low, 0), seminorm(f_low, 1)
    u0, u1 = seminorm(b.exact, 0), seminorm(b.exact, 1)
    nrm = b.norms
    pi = np.pi

    base = [("kh/2 <= C_mu", mu <= cm), ("C_mu < 1", cm < 1)]
    reason = _first_failure(base, "downerr")
    if reason:
        col.skip("downerr", reason)
        col.skip("downerrL2", reason)
    else:
        den = pi * pi - 4 * cm * cm
        col.bracket("downerr", -INF, nrm[("e2", "H1")], h ** (p + 1) / (den * pi ** (p - 1)) * fh)
        col.bracket("downerrL2", -INF, nrm[("e2", "L2")], h ** (p + 2) / (den * pi**p) * fh)

    reason = _first_failure([("k > pi", k > pi)] + base + _sigma_conditions(ctx), "lemalias")
    if reason:
        col.skip("lemaliasH1", reason)
        col.skip("lemaliasL2", reason)
    else:
        col.bracket("lemaliasH1", -INF, nrm[("E2", "H1")], h**p * fh / (st * pi ** (p - 1)))
        col.bracket("lemaliasL2", -INF, nrm[("E2", "L2")], 2 * h**p * fh / (st * k * pi**p))

    rel = [("k > 18.88", k > K_REL)] + base + _sigma_conditions(ctx) + [("f_low != 0", fl0 > 0)]
    reason = _first_failure(rel + [("p >= 1", p >= 1)], "lemdownrel")
    if reason:
        col.skip("lemdownrel.L2", reason)
        col.skip("lemdownrel.H1", reason)
    else:
        col.bracket("lemdownrel.L2", -INF, nrm[("e2", "L2")] / u0, h**p * fh / (pi**p * fl0))
        col.bracket("lemdownrel.H1", -INF, nrm[("e2", "H1")] / u1,
                    h ** (p - 1) * fh / (pi ** (p - 1) * fl1))
    reason = _first_failure(rel + [("p >= 2", p >= 2)], "lemaliasrel")
    if reason:
        col.skip("lemaliasrel.L2", reason)
        col.skip("lemaliasrel.H1", reason)
    else:
        col.bracket("lemaliasrel.L2", -INF, nrm[("E2", "L2")] / u0,
                    2 * h ** (p - 2) * fh / (st * k * pi ** (p - 2) * fl0))
        col.bracket("lemaliasrel.H1", -INF, nrm[("E2", "H1")] / u1,
                    h ** (p - 2) * fh / (st * pi ** (p - 3) * fl1))
    return col.out


def _rows(k, h, xi):
    a = symbol_arrays(SchemeKind.CLASSICAL, np.array([xi], dtype=float), k, h)
    return {w: float(a[w][0]) for w in ("psi", "psi_e", "psi_rel")}


def _argmax_entry(col, lemma_id, which, k, h, cset):
    N = int(round(1.0 / h))
    vals = symbol_arrays(SchemeKind.CLASSICAL, grid_frequencies(N), k, h)[which]
    members = cset.members(CANDIDATE_NAMES[which])
    best = max(_rows(k, h, xi)[which] for xi in members)
    col.equal(lemma_id, best, float(np.max(vals)))


def check_operator_bounds(k, h, sigma_tilde=None, c_mu=None):
    """Brackets for the symbol errors at the candidate frequencies."""
    col = _Collector({"k": float(k), "h": float(h)})
    try:
        ctx = _context(k, h, sigma_tilde, c_mu)
    except HelmfdError as exc:
        return col.skip_rest(OPERATOR_IDS, exc)
    col.params.update(sigma_tilde=ctx["sigma_tilde"], sigma_k_h=ctx["sigma_k_h"], C_mu=ctx["C_mu"])
    sig, cm, pi = ctx["sigma_k"], ctx["C_mu"], np.pi
    k3h2 = k**3 * h * h

    # well-posedness for h below the sufficient mesh size
    try:
        hk = h_k_bound(k)
        reason = None if h < hk else f"3ptnonzero: guard h < h_k = {hk!r} fails"
    except HelmfdError as exc:
        reason = str(exc)
    if reason:
        col.skip("3ptnonzero.margin", reason)
        col.skip("3ptnonzero.symbol", reason)
    else:
        N = ctx["N"]
        lam_h = np.abs(k * k - (2 / h * np.sin(0.5 * grid_frequencies(N) * h)) ** 2)
        col.bracket("3ptnonzero.margin", sig / 2, ctx["sigma_k_h"], INF)
        col.bracket("3ptnonzero.symbol", max(2 * k - sig / 2, k + 2 / pi) * sig / 2,
                    float(np.min(lam_h)), INF)

    try:
        cset = candidates(k, h, ctx["sigma_tilde"], cm)
    except HelmfdError as exc:
        col.skip_rest([i for i in OPERATOR_IDS if not i.startswith("maxL2rel")], exc)
        cset = None
    if cset is not None:
        _psi_brackets(col, k, h, cm, cset, k3h2)
    try:
        check_hypotheses(k, h, "maxL2rel", ctx["sigma_tilde"], cm)
        cset_rel = candidates(k, h, ctx["sigma_tilde"], cm)
    except HelmfdError as exc:
        return col.skip_rest(OPERATOR_IDS, exc)
    for name, lo_c, up_c in (("kh_minus", 1 / 196, pi**3 / (48 * (2 + pi))),
                             ("kh_plus", 1 / 64, 3 * pi / 32)):
        if not cset_rel.present[name]:
            col.skip(f"maxL2rel.{name}", f"{name} is not a grid frequency below xi_max")
            continue
        xi = getattr(cset_rel, name)
        st = abs(k - 2 / h * np.sin(0.5 * xi * h))
        col.bracket(f"maxL2rel.{name}", lo_c * k * h * h / st, _rows(k, h, xi)["psi_rel"],
                    up_c * k * h * h / st, xi=xi)
    col.bracket("maxL2rel.xi_max", 0.09 * h * h, _rows(k, h, cset_rel.xi_max)["psi_rel"],
                2 / 3 * h * h)
    _argmax_entry(col, "maxL2rel.argmax", "psi_rel", k, h, cset_rel)
    return col.out


def _psi_brackets(col, k, h, cm, cset, k3h2):
    pi = np.pi
    kh = cset.kh
    s_m, s_p = k - cset.k_minus, cset.k_plus - k
    sh_m, sh_p = kh - cset.kh_minus, cset.kh_plus - kh
    root = np.sqrt(1 - cm * cm)
    theta_mu = np.arcsin(cm)
    rows = {name: _rows(k, h, getattr(cset, name)) for name in _CAND}
    k2h2 = k * k * h * h

    col.bracket("lem3ptmax.k_minus", k3h2 / ((240 * s_m + k3h2) * 6 * s_m), rows["k_minus"]["psi"],
                k3h2 / ((24 * s_m + k3h2) * 2 * s_m))
    col.bracket("lemevan.k_minus", k2h2 / ((240 * s_m + k3h2) * 4 * s_m), rows["k_minus"]["psi_e"],
                2 * k2h2 / ((24 * s_m + k3h2) * 3 * s_m))
    if k3h2 < ORDER_C:
        col.bracket("remorder", k3h2 / ((240 * s_m + ORDER_C) * 6 * s_m), rows["k_minus"]["psi"],
                    k3h2 / (48 * s_m * s_m), C=ORDER_C)
    else:
        col.skip("remorder", f"remorder: guard k^3 h^2 < {ORDER_C} fails")

    if cset.crossing and cset.present["k_plus"]:
        kp3 = (k + s_p) ** 3 * h * h
        kp2 = (k + s_p) ** 2 * h * h
        col.bracket("lem3ptmax.k_plus", kp3 / (15 * s_p * (4 * pi + k3h2)), rows["k_plus"]["psi"],
                    2 / 3 * k3h2 / (sh_m * s_p * root))
        col.bracket("lemevan.k_plus", kp2 / (15 * s_p * (4 * pi + k3h2)), rows["k_plus"]["psi_e"],
                    k2h2 / (3 * sh_m * s_p * root))
        a = 1 - pi * pi / 80 * cm * cm
        col.bracket("lem3ptmax.kh_minus", a * kp3 / (12 * pi * (4 * s_p + k3h2)),
                    rows["kh_minus"]["psi"], pi**4 / 384 * k3h2 / (sh_m * s_p * root))
        col.bracket("lemevan.kh_minus", a * kp2 / (3 * pi * (2 + pi) * (4 * s_p + k3h2)),
                    rows["kh_minus"]["psi_e"], pi**4 / 768 * k2h2 / (sh_m * s_p * root))
    else:
        why = "guard: no multiple of pi in (k, k^h)"
        for lemma_id in ("lem3ptmax.k_plus", "lemevan.k_plus", "lem3ptmax.kh_minus",
                         "lemevan.kh_minus"):
            col.skip(lemma_id, why)

    if not cset.present["kh_plus"]:
        col.skip("lem3ptmax.kh_plus", "kh_plus >= xi_max")
        col.skip("lemevan.kh_plus", "kh_plus >= xi_max")
    elif not cm < np.cos(0.5 * sh_p * h):
        col.skip("lem3ptmax.kh_plus", "guard C_mu < cos(sigma_+^h h/2) fails")
        col.skip("lemevan.kh_plus", "guard C_mu < cos(sigma_+^h h/2) fails")
    else:
        a = 1 - (1 + pi) ** 2 / 80 * cm * cm
        cos_t = np.cos(theta_mu + 0.5 * sh_p * h)
        den = sh_p * (24 * sh_p + k3h2) * cos_t
        col.bracket("lem3ptmax.kh_plus", a * (k + sh_p) ** 3 * h * h / (12 * pi * (4 * sh_p + k3h2)),
                    rows["kh_plus"]["psi"], (1 + pi) ** 4 / 16 * k3h2 / den)
        col.bracket("lemevan.kh_plus", a * (k + sh_p) ** 2 * h * h / (12 * pi * (4 * sh_p + k3h2)),
                    rows["kh_plus"]["psi_e"], (1 + pi) ** 4 * k2h2 / (32 * den))

    c_half = np.cos(0.5 * pi * h)
    if cm < c_half:
        den = (c_half**2 - cm * cm) * (9 * pi**2 - 64)
        col.bracket("lem3ptmax.xi_max", h / pi * (9 * pi**2 / 64 - 1), rows["xi_max"]["psi"],
                    4 * (pi**2 - 4) * pi * h / den)
        col.bracket("lemevan.xi_max", (9 * pi**2 - 64) * h * h / (64 * pi**2),
                    rows["xi_max"]["psi_e"], 4 * (pi**2 - 4) * h * h / den)
    else:
        col.skip("lem3ptmax.xi_max", "guard C_mu < cos(pi h/2) fails")
        col.skip("lemevan.xi_max", "guard C_mu < cos(pi h/2) fails")

    _, v_e = xi_e_min(k, h, continuous=True)
    col.bracket("lemevan.xi_e", h * h / 18, v_e, rows["xi_max"]["psi_e"])
    _argmax_entry(col, "lem3ptmax.argmax", "psi", k, h, cset)
    _argmax_entry(col, "lemevan.argmax", "psi_e", k, h, cset)


def check_error_theorems(k, h, f, p, sigma_tilde=None, c_mu=None):
    """Absolute and relative error estimates, with their sharpness cases."""
    N = int(round(1.0 / h))
    col = _Collector({"k": float(k), "h": float(h), "p": int(p)})
    try:
        ctx = _context(k, h, sigma_tilde, c_mu)
        col.params.update(sigma_tilde=ctx["sigma_tilde"], sigma_k_h=ctx["sigma_k_h"],
                          C_mu=ctx["C_mu"])
        problem = HelmholtzProblem(k, f)
        b = decompose(SchemeKind.CLASSICAL, problem, N)
    except HelmfdError as exc:
        return col.skip_rest(THEOREM_IDS, exc)
    pi, mu, cm, st = np.pi, 0.5 * k * h, ctx["C_mu"], ctx["sigma_tilde"]
    f_low, f_high = split_low_high(f, N)
    fh = seminorm(f_high, p)
    fl0, fl1 = seminorm(f_low, 0), seminorm(f_low, 1)
    u_low, _ = split_low_high(b.exact, N)
    u0, u1 = seminorm(b.exact, 0), seminorm(b.exact, 1)
    nrm = b.norms
    sym = symbol_arrays(SchemeKind.CLASSICAL, grid_frequencies(N), k, h)

    reason = _first_failure([
        ("k > 2*pi", k > 2 * pi), ("sigma_k > 0", ctx["sigma_k"] > 0), ("p >= 1", p >= 1),
        ("N >= 4", N >= 4), ("kh/2 <= C_mu", mu <= cm), ("C_mu < cos(pi h/2)", cm < np.cos(pi * h / 2)),
    ] + _sigma_conditions(ctx), "thm_abs")
    if reason:
        for lemma_id in THEOREM_IDS[:5]:
            col.skip(lemma_id, reason)
    else:
        den = pi * pi - 4 * cm * cm
        col.bracket("thm_abs.H1", -INF, nrm[("total", "H1")],
                    (h / den + 1 / st) * pi ** (1 - p) * h**p * fh + nrm[("E1", "H1")])
        col.bracket("thm_abs.L2", -INF, nrm[("total", "L2")],
                    (h * h / den + 2 / (st * k)) * pi ** (-p) * h**p * fh + nrm[("E1", "L2")])
        C, C_e = float(np.max(sym["psi"])), float(np.max(sym["psi_e"]))
        n_e = int(np.ceil(discrete_wavenumber(k, h) / pi))
        f_low_e = SineSeries(f_low.modes[f_low.modes >= n_e], f_low.coeffs[f_low.modes >= n_e])
        col.bracket("thm_abs.E1_H1", h * h / 18 * seminorm(f_low_e, 1), nrm[("E1", "H1")],
                    min(C * fl0, C_e * fl1))
        col.bracket("thm_abs.E1_L2", h * h / 18 * seminorm(f_low_e, 0), nrm[("E1", "L2")],
                    C_e * fl0)
        i = int(np.argmax(sym["psi"]))
        f_star = SineSeries(np.array([i + 1]), np.array([1.0]))
        e1 = decompose(SchemeKind.CLASSICAL, HelmholtzProblem(k, f_star), N).norms[("E1", "H1")]
        col.equal("thm_abs.sharp", float(sym["psi"][i]) * seminorm(f_star, 0), e1,
                  xi=float(sym["xi"][i]))

    reason = _first_failure([
        ("k > 18.88", k > K_REL), ("sigma_k > 0", ctx["sigma_k"] > 0), ("p >= 2", p >= 2),
        ("kh/2 <= C_mu", mu <= cm), ("C_mu <= 3/4", cm <= 0.75), ("f_low != 0", fl0 > 0),
    ] + _sigma_conditions(ctx), "thm_rel")
    if reason:
        for lemma_id in THEOREM_IDS[5:9]:
            col.skip(lemma_id, reason)
    else:
        col.bracket("thm_rel.L2", -INF, nrm[("total", "L2")] / u0,
                    (h * h / pi**p + 2 / (st * k * pi ** (p - 2))) * h ** (p - 2) * fh / fl0
                    + nrm[("E1", "L2")] / u0)
        col.bracket("thm_rel.H1", -INF, nrm[("total", "H1")] / u1,
                    (h / pi ** (p - 1) + 1 / (st * pi ** (p - 2))) * h ** (p - 2) * fh / fl1
                    + nrm[("E1", "H1")] / u1)
        C_rel = float(np.max(sym["psi_rel"]))
        col.bracket("thm_rel.E1_L2", -INF, nrm[("E1", "L2")] / u0, seminorm(u_low, 2) / u0 * C_rel)
        col.bracket("thm_rel.E1_H1", -INF, nrm[("E1", "H1")] / u1, seminorm(u_low, 3) / u1 * C_rel)

    try:
        check_hypotheses(k, h, "maxL2rel", st, cm)
        cset = candidates(k, h, st, cm)
    except HelmfdError as exc:
        return col.skip_rest(THEOREM_IDS, exc)
    options = [getattr(cset, n) for n in ("kh_minus", "kh_plus") if cset.present[n]]
    if not options:
        return col.skip_rest(THEOREM_IDS, "no k_-^h or k_+^h on the grid")
    xi = max(options, key=lambda x: _rows(k, h, x)["psi_rel"])
    n = int(round(xi / pi))
    psi_rel = _rows(k, h, xi)["psi_rel"]
    b2 = decompose(SchemeKind.CLASSICAL,
                   HelmholtzProblem(k, SineSeries(np.array([n]), np.array([2.0]))), N)
    ratio_l2 = b2.norms[("E1", "L2")] / seminorm(b2.exact, 0)
    ratio_h1 = b2.norms[("E1", "H1")] / seminorm(b2.exact, 1)
    col.equal("thm_rel.equality_L2", xi * xi * psi_rel, ratio_l2, xi=xi)
    col.equal("thm_rel.equality_H1", xi * xi * psi_rel, ratio_h1, xi=xi)
    st_h = abs(k - 2 / h * np.sin(0.5 * xi * h))
    lo_c, up_c = ((1 / 196, pi**3 / (48 * (2 + pi))) if xi == cset.kh_minus
                  else (1 / 64, 3 * pi / 32))
    col.bracket("thm_rel.order", xi * xi * lo_c * k * h * h / st_h, ratio_l2,
                xi * xi * up_c * k * h * h / st_h, xi=xi)
    return col.out


FOUR_MODE_SOURCE = SineSeries.from_dict({n: 2**-0.5 for n in (10, 20, 40, 80)})


def default_source(N):
    """Four-mode unit-norm source plus a decaying tail above the grid Nyquist mode."""
    tail = {N + 2: 0.05, 2 * N - 3: 0.02, 3 * N + 1: 0.01}
    return FOUR_MODE_SOURCE + SineSeries.from_dict(tail)


@dataclass(frozen=True)
class BoundCase:
    k: float
    N: int
    c: float = 0.5
    p: int = 2
    source: Optional[SineSeries] = None


@dataclass(frozen=True)
class BoundSweepConfig:
    """Explicit list of cases; ``sweep`` builds the Cartesian product of k and N."""

    cases: tuple = ()
    sigma_tilde_factor: float = 0.5

    @classmethod
    def sweep(cls, ks, Ns, c=0.5, p=2, source: Optional[Callable] = None):
        make = source or default_source
        return cls(tuple(BoundCase(float(k), int(N), c, p, make(int(N))) for k in ks for N in Ns))

    @classmethod
    def default(cls):
        return cls.sweep((7.0, 10.0, 10 * np.pi + 1, 20 * np.pi + 1), (64, 128, 256, 512))


def run_all(config):
    """Run every checker on every case; results sorted by (lemma_id, params)."""
    results = []
    for case in config.cases:
        h = 1.0 / case.N
        f = case.source if case.source is not None else default_source(case.N)
        st = config.sigma_tilde_factor * sigma_k(case.k)
        results += check_zero_source(case.k, h, case.c)
        results += check_sampling_errors(case.k, h, f, case.p, st)
        results += check_operator_bounds(case.k, h, st)
        results += check_error_theorems(case.k, h, f, case.p, st)
    results.sort(key=BoundResult.sort_key)
    return BoundReport(tuple(results))
