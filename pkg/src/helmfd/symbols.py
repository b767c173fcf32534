"""Symbol errors of the schemes and where their maxima sit.

For a frequency xi the three symbol errors are

    psi     = |xi/lambda - xi/lambda_h|
    psi_e   = |1/lambda - 1/lambda_h|
    psi_rel = |(lambda - lambda_h) / (xi^2 lambda_h)|

with lambda = k^2 - xi^2 and lambda_h the discrete symbol. They bound the
H1, L2 and relative operator errors respectively.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from ._numerics import sq_minus_sinsq
from .exact import continuous_symbol, sigma_k
from .exceptions import CandidateViolation, HypothesisViolated, ResonantFrequency
from .schemes import (SchemeKind, discrete_symbol, discrete_wavenumber, grid_frequencies,
                      symbol_gap, wellposedness_margin)

RESONANT_REL = 1e-12
TIE_REL = 1e-12
WHICH = ("psi", "psi_e", "psi_rel")


@dataclass(frozen=True)
class SymbolRow:
    xi: float
    lambda_: float
    lambda_h: float
    psi: float
    psi_e: float
    psi_rel: float
    resonant: bool = False


def symbol_arrays(scheme, xi, k, h):
    """Vectorised symbol errors; entries at resonant frequencies are inf."""
    xi = np.asarray(xi, dtype=float)
    lam = continuous_symbol(xi, k)
    lam_h = discrete_symbol(scheme, xi, k, h)
    gap = np.abs(symbol_gap(scheme, xi, k, h))
    tol = RESONANT_REL * k * k
    resonant = (np.abs(lam) < tol) | (np.abs(lam_h) < tol)
    with np.errstate(divide="ignore", invalid="ignore"):
        psi_e = gap / np.abs(lam * lam_h)
        psi_rel = gap / (xi * xi * np.abs(lam_h))
    psi_e = np.where(resonant, np.inf, psi_e)
    psi_rel = np.where(resonant, np.inf, psi_rel)
    return {"xi": xi, "lambda": lam, "lambda_h": lam_h, "psi": xi * psi_e,
            "psi_e": psi_e, "psi_rel": psi_rel, "resonant": resonant}


def symbol_errors(scheme, xi, k, h):
    """SymbolRow at a single frequency; raises ResonantFrequency near a root."""
    a = symbol_arrays(scheme, np.array([xi], dtype=float), k, h)
    if a["resonant"][0]:
        raise ResonantFrequency(f"symbol vanishes within {RESONANT_REL}*k^2 at xi={xi!r}")
    return SymbolRow(float(xi), float(a["lambda"][0]), float(a["lambda_h"][0]),
                     float(a["psi"][0]), float(a["psi_e"][0]), float(a["psi_rel"][0]))


def symbol_table(scheme, k, h):
    """One row per grid frequency pi..(N-1)pi; resonant rows carry inf and a flag."""
    N = int(round(1.0 / h))
    a = symbol_arrays(scheme, grid_frequencies(N), k, h)
    return [SymbolRow(float(a["xi"][i]), float(a["lambda"][i]), float(a["lambda_h"][i]),
                      float(a["psi"][i]), float(a["psi_e"][i]), float(a["psi_rel"][i]),
                      bool(a["resonant"][i]))
            for i in range(N - 1)]


def _pi_neighbours(x):
    n = np.floor(x / np.pi)
    if x == n * np.pi:
        raise HypothesisViolated(f"{x!r} is a multiple of pi")
    return float(n * np.pi), float((n + 1) * np.pi)


@dataclass(frozen=True)
class CandidateSet:
    """Frequencies at which the classical symbol errors can peak.

    k_minus < k < k_plus and kh_minus < k^h < kh_plus are neighbouring
    multiples of pi; ``present`` records which of them are grid frequencies
    below xi_max. ``crossing`` is True when some multiple of pi lies in
    (k, k^h), i.e. k_plus < k^h.
    """

    k: float
    h: float
    kh: float
    k_minus: float
    k_plus: float
    kh_minus: float
    kh_plus: float
    xi_max: float
    crossing: bool
    present: dict = field(default_factory=dict)

    def members(self, names=("k_minus", "k_plus", "kh_minus", "kh_plus", "xi_max")):
        out = []
        for name in names:
            if self.present.get(name, name == "xi_max"):
                xi = getattr(self, name)
                if xi not in out:
                    out.append(xi)
        return sorted(out)


def check_hypotheses(k, h, lemma="lem3ptmax", sigma_tilde=None, c_mu=None):
    """Raise HypothesisViolated naming the first failing condition, else return None."""
    N = int(round(1.0 / h))
    mu = 0.5 * k * h
    c_mu = mu if c_mu is None else c_mu
    sig = sigma_k(k)
    sig_t = 0.5 * sig if sigma_tilde is None else sigma_tilde
    conds = [("k > 2*pi", k > 2 * np.pi),
             ("N >= 4", N >= 4),
             ("sigma_k > 0", sig > 0),
             ("kh/2 <= C_mu", mu <= c_mu),
             ("C_mu < 1", c_mu < 1)]
    if lemma == "maxL2rel":
        conds += [("C_mu <= 3/4", c_mu <= 0.75), ("h < 1/(2 pi)", h < 1 / (2 * np.pi))]
    conds += [("sigma_tilde > 0", sig_t > 0)]
    for text, ok in conds:
        if not ok:
            raise HypothesisViolated(text, lemma)
    if wellposedness_margin(k, h) < sig_t:
        raise HypothesisViolated("sigma_k^h >= sigma_tilde", lemma)


def candidates(k, h, sigma_tilde=None, c_mu=None):
    """Candidate maximisers for the classical psi and psi_e."""
    check_hypotheses(k, h, "lem3ptmax", sigma_tilde, c_mu)
    N = int(round(1.0 / h))
    xi_max = (N - 1) * np.pi
    kh = discrete_wavenumber(k, h)
    k_minus, k_plus = _pi_neighbours(k)
    kh_minus, kh_plus = _pi_neighbours(kh)
    crossing = k_plus < kh
    on_grid = lambda xi: np.pi <= xi <= xi_max
    present = {"k_minus": on_grid(k_minus), "k_plus": on_grid(k_plus),
               "kh_minus": on_grid(kh_minus), "kh_plus": kh_plus < xi_max and on_grid(kh_plus),
               "xi_max": True}
    return CandidateSet(k, h, kh, k_minus, k_plus, kh_minus, kh_plus, xi_max, crossing, present)


CANDIDATE_NAMES = {
    "psi": ("k_minus", "k_plus", "kh_minus", "kh_plus", "xi_max"),
    "psi_e": ("k_minus", "k_plus", "kh_minus", "kh_plus", "xi_max"),
    "psi_rel": ("kh_minus", "kh_plus", "xi_max"),
}
CANDIDATE_LEMMA = {"psi": "lem3ptmax", "psi_e": "lemevan", "psi_rel": "maxL2rel"}


@dataclass(frozen=True)
class ScanResult:
    xi: float
    value: float
    candidate_ok: Optional[bool] = None
    skipped: Optional[str] = None


def argmax_scan(scheme, which, k, h, sigma_tilde=None, c_mu=None):
    """Full scan over grid frequencies; ties resolve to the smallest xi.

    For the classical scheme, the maximiser is checked against the candidate
    set and CandidateViolation is raised if no candidate attains the maximum.
    When the lemma hypotheses fail the check is skipped and the reason is
    recorded in ``skipped``.
    """
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}")
    N = int(round(1.0 / h))
    a = symbol_arrays(scheme, grid_frequencies(N), k, h)
    vals = a[which]
    i = int(np.argmax(vals))
    xi_star, value = float(a["xi"][i]), float(vals[i])
    if scheme is not SchemeKind.CLASSICAL:
        return ScanResult(xi_star, value)
    lemma = CANDIDATE_LEMMA[which]
    try:
        check_hypotheses(k, h, lemma, sigma_tilde, c_mu)
        cset = candidates(k, h, sigma_tilde, c_mu if lemma != "maxL2rel" else None)
    except HypothesisViolated as exc:
        return ScanResult(xi_star, value, None, str(exc))
    members = cset.members(CANDIDATE_NAMES[which])
    n_idx = np.rint(np.array(members) / np.pi).astype(int) - 1
    best = float(np.max(vals[n_idx]))
    ok = xi_star in members or best >= value * (1 - TIE_REL)
    if not ok:
        raise CandidateViolation(
            f"{which} max at xi={xi_star!r} ({value!r}) exceeds candidates {members} ({best!r})"
            f" for k={k!r}, h={h!r}")
    return ScanResult(xi_star, value, True)


def _psi_e_theta(theta, mu):
    # phi_e(theta) = (theta^2 - sin^2) / ((sin^2 - mu^2)(theta^2 - mu^2)), theta > arcsin(mu)
    s = np.sin(theta)
    return sq_minus_sinsq(theta) / ((s - mu) * (s + mu) * (theta - mu) * (theta + mu))


def xi_e_min(k, h, continuous=False):
    """Minimiser of the classical psi_e to the right of k^h.

    On grid frequencies in (k^h, pi/h) the minimum is found by ternary search
    (psi_e is convex there) and cross-checked against a full scan. With
    ``continuous=True`` the minimiser over the real interval (k^h, pi/h] is
    returned instead.
    """
    if not k > 2 * np.pi:
        raise HypothesisViolated("k > 2*pi", "lemevan")
    N = int(round(1.0 / h))
    mu = 0.5 * k * h
    if mu >= 1:
        raise HypothesisViolated("kh/2 < 1", "lemevan")
    kh = discrete_wavenumber(k, h)
    if continuous:
        t_k = np.arcsin(mu)
        res = minimize_scalar(lambda t: _psi_e_theta(t, mu), bounds=(t_k, np.pi / 2),
                              method="bounded", options={"xatol": 1e-14})
        return float(2 * res.x / h), float(h * h / 4 * res.fun)
    n_lo = int(np.floor(kh / np.pi)) + 1
    if n_lo > N - 1:
        raise HypothesisViolated("a grid frequency above k^h", "lemevan")
    xi = np.pi * np.arange(n_lo, N)
    vals = symbol_arrays(SchemeKind.CLASSICAL, xi, k, h)["psi_e"]
    lo, hi = 0, len(xi) - 1
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        if vals[m1] <= vals[m2]:
            hi = m2
        else:
            lo = m1
    i = lo + int(np.argmin(vals[lo:hi + 1]))
    j = int(np.argmin(vals))
    if vals[i] != vals[j]:
        raise AssertionError(f"ternary search found {vals[i]!r}, full scan {vals[j]!r}")
    return float(xi[j]), float(vals[j])


def _phi(which, theta, mu):
    s = np.sin(theta)
    d = sq_minus_sinsq(theta)
    right = (s - mu) * (s + mu)
    if which == "phi":
        return theta * d / (right * (theta - mu) * (theta + mu))
    if which == "phi_e":
        return d / (right * (theta - mu) * (theta + mu))
    if which == "phi_rel":
        return d / (theta * theta * right)
    raise ValueError(f"unknown function {which!r}")


@dataclass(frozen=True)
class ProbeResult:
    which: str
    mu: float
    samples: int
    passed: bool
    peaks: int
    troughs: int
    trough_theta: Optional[float]


def shape_probe(which, mu, samples=100_000, dead_band=1e-14):
    """Sample phi, phi_e or phi_rel on (arcsin mu, pi/2) and test for interior peaks.

    Successive differences below ``dead_band`` relative to the local value
    count as flat. The probe passes when the sign pattern is nonincreasing
    then nondecreasing, i.e. no interior local maximum.
    """
    if not 0 < mu < 1:
        raise ValueError("mu must lie in (0, 1)")
    if samples < 1000:
        raise ValueError("samples must be >= 1000")
    a, b = np.arcsin(mu), np.pi / 2
    theta = a + (b - a) * np.arange(1, samples + 1) / (samples + 1)
    v = _phi(which, theta, mu)
    dv = np.diff(v)
    scale = np.maximum(np.abs(v[:-1]), np.abs(v[1:]))
    sign = np.where(np.abs(dv) <= dead_band * scale, 0, np.sign(dv)).astype(int)
    sign = sign[sign != 0]
    changes = np.diff(sign)
    peaks = int(np.sum(changes < 0))
    troughs = int(np.sum(changes > 0))
    trough_theta = None
    if troughs:
        trough_theta = float(theta[int(np.argmin(v))])
    return ProbeResult(which, float(mu), int(samples), peaks == 0, peaks, troughs, trough_theta)
