"""Command-line front end: solves, symbol tables, bound reports, convergence and mesh studies."""

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import FOUR_MODE_SOURCE, BoundSweepConfig, run_all
from .errors import total_error, zero_source_error_norms
from .exact import HelmholtzProblem, sigma_k, solve_exact, zero_source_exact
from .exceptions import HelmfdError, HypothesisViolated, InsufficientData
from .schemes import (SchemeKind, admissible_mesh, discrete_wavenumber, h_k_bound, h_k_star_search,
                      solve_tridiagonal, wellposedness_margin)
from .spectral import parse_source
from .symbols import symbol_table

COMMANDS = ("solve", "symbols", "bounds", "converge", "wellposed", "zerosource")
FORMATS = ("csv", "json", "svg")
REFINES = ("h", "kh", "khfix")
PRESETS = ("fig1", "fig2", "fig4", "fig5", "fig6")
SYMBOL_HEADER = "scheme,k,h,xi,lambda,lambda_h,psi,psi_e,psi_rel"
CONVERGE_HEADER = "scheme,k,N,h,abs_l2,abs_h1,rel_l2,rel_h1"
REFINE_QUANTITY = {"h": "psi_e", "kh": "psi", "khfix": "psi_rel"}


class ConfigError(ValueError):
    """Invalid command-line configuration."""


# ---------------------------------------------------------------- presets

def unit_sigma_wavenumbers():
    """k = n pi - 1 for n = 2..64, so that sigma_k = 1."""
    return [n * np.pi - 1.0 for n in range(2, 65)]


def doubling_meshes(k, doublings=5):
    """Powers of two from the first one >= k, doubled ``doublings`` times."""
    n0 = 1 << int(np.ceil(np.log2(k)))
    return [n0 << i for i in range(doublings + 1)]


def h_refine_cells(k=8 * np.pi + 1, N0=128, doublings=4):
    """Fixed k, N doubling."""
    return [(k, N0 << i) for i in range(doublings + 1)]


def kh_refine_cells(m0=8, offset=1.0, N0=52, steps=3, per_k=3):
    """k close to 4^j m0 pi + offset with kh halved per step, plus per-k mesh doublings.

    The constant offset keeps sigma_k fixed along the sequence.
    """
    k0 = m0 * np.pi + offset
    cells = []
    for j in range(steps):
        k = 4**j * m0 * np.pi + offset
        N = int(round(N0 * 2**j * k / k0))
        cells += [(k, N << i) for i in range(per_k)]
    return cells


def kh_fixed_cells(n0=8, frac=1 / 3, N0=52, steps=4, per_k=3):
    """k doubled with N doubled, so kh is fixed, plus per-k mesh doublings.

    k0 is chosen so that its discrete wavenumber sits at (n0 + frac) pi; with
    frac = 1/3 the position between multiples of pi alternates between 1/3
    and 2/3 under doubling, keeping the distance to discrete resonance fixed.
    """
    k0 = 2 * N0 * np.sin((n0 + frac) * np.pi / (2 * N0))
    cells = []
    for j in range(steps):
        cells += [(k0 * 2**j, (N0 << j) << i) for i in range(per_k)]
    return cells


def refine_cells(mode, k, N):
    """Cells for a refinement mode starting from a user-supplied (k, N)."""
    if mode == "h":
        return [(k, N << i) for i in range(5)]
    if mode == "kh":
        return [(k * 4**j, (N * 8**j) << i) for j in range(3) for i in range(3)]
    return [(k * 2**j, (N * 2**j) << i) for j in range(4) for i in range(3)]


# ---------------------------------------------------------------- convergence report

@dataclass(frozen=True)
class ConvergenceReport:
    """Scalar values per (k, N) for one scheme and one quantity."""

    scheme: str
    quantity: str
    rows: tuple = ()  # (k, N, value)

    def per_k(self):
        groups = {}
        for k, N, v in self.rows:
            groups.setdefault(k, []).append((N, v))
        return {k: sorted(g) for k, g in sorted(groups.items())}

    def h_slopes(self, finest=None):
        """Least-squares slope of log value against log h per k on the finest meshes.

        ``finest`` defaults to half the meshes, and at least 3 are used.
        """
        out = {}
        for k, g in self.per_k().items():
            n = len(g)
            m = max(3, int(np.ceil(n / 2))) if finest is None else finest
            if n < m or m < 2:
                raise InsufficientData(f"k={k!r}: {n} meshes, need {m}")
            sub = g[-m:]
            x = np.log([1.0 / N for N, _ in sub])
            y = np.log([v for _, v in sub])
            out[k] = (float(np.polyfit(x, y, 1)[0]), [N for N, _ in sub])
        return out


def fit_orders(report, h_exponent=None, stage=-1, finest=None):
    """(h_exponent, k_exponent) from a report with >= 3 meshes per k and >= 3 k.

    The h exponent is the mean per-k slope. The k exponent regresses
    log(value) - b log(h) on log(k) over the ``stage``-th mesh of each k,
    with b the given ``h_exponent`` or else the fitted one.
    """
    groups = report.per_k()
    if len(groups) < 3 or any(len(g) < 3 for g in groups.values()):
        raise InsufficientData("need >= 3 k values with >= 3 meshes each")
    slopes = report.h_slopes(finest)
    b_fit = float(np.mean([s for s, _ in slopes.values()]))
    b = b_fit if h_exponent is None else h_exponent
    ks = np.array(list(groups))
    pts = [g[stage] for g in groups.values()]
    y = np.log([v for _, v in pts]) - b * np.log([1.0 / N for N, _ in pts])
    a = float(np.polyfit(np.log(ks), y, 1)[0])
    return b_fit, a


# ---------------------------------------------------------------- configuration

@dataclass(frozen=True)
class RunConfig:
    command: str
    schemes: tuple = ()
    k: tuple = ()
    N: tuple = ()
    source: str = ""
    g0: float = 0.0
    g1: float = 0.0
    p: int = 2
    c: float = 0.5
    refine: Optional[str] = None
    preset: Optional[str] = None
    out: Optional[str] = None
    format: str = "csv"
    strict: bool = False
    cells: tuple = field(default=(), compare=False)


PRESET_COMMAND = {"fig1": "wellposed", "fig2": "converge", "fig4": "symbols", "fig5": "symbols",
                  "fig6": "symbols"}
PRESET_REFINE = {"fig4": "h", "fig5": "kh", "fig6": "khfix"}


def build_parser():
    ap = argparse.ArgumentParser(prog="helmfd", description=__doc__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--scheme", action="append", default=[],
                    help="classical, kmod, lmod or lfmod (repeatable)")
    ap.add_argument("--k", action="append", type=float, default=[], help="wavenumber (repeatable)")
    ap.add_argument("--N", action="append", type=int, default=[],
                    help="number of mesh intervals (repeatable)")
    ap.add_argument("--source", default="", help="sine coefficients as 'n:c,n:c'")
    ap.add_argument("--g0", type=float, default=0.0)
    ap.add_argument("--g1", type=float, default=0.0)
    ap.add_argument("--p", type=int, default=2, help="source smoothness index")
    ap.add_argument("--c", type=float, default=0.5, help="constant in the f = 0 hypotheses")
    ap.add_argument("--refine", choices=REFINES)
    ap.add_argument("--preset", choices=PRESETS)
    ap.add_argument("--out", help="output path (default stdout)")
    ap.add_argument("--format", choices=FORMATS, default="csv")
    ap.add_argument("--strict", action="store_true",
                    help="exit 1 on any bound failure or hypothesis violation")
    return ap


def config_from_args(ns):
    """Validate parsed arguments and fill in preset values."""
    command = ns.command
    if ns.preset and PRESET_COMMAND[ns.preset] != command:
        raise ConfigError(f"--preset: {ns.preset} belongs to the '{PRESET_COMMAND[ns.preset]}' command")
    if any(not k > 0 for k in ns.k):
        raise ConfigError("--k: wavenumbers must be positive")
    if any(N < 2 for N in ns.N):
        raise ConfigError("--N: values must be >= 2")
    if ns.p < 0:
        raise ConfigError("--p: must be nonnegative")
    if ns.format == "svg" and command not in ("symbols", "converge"):
        raise ConfigError("--format: svg is available for symbols and converge only")
    if ns.refine and command != "symbols":
        raise ConfigError("--refine applies to the symbols command only")
    try:
        schemes = tuple(SchemeKind.parse(s) for s in ns.scheme)
        parse_source(ns.source)
    except ValueError as exc:
        raise ConfigError(f"--scheme/--source: {exc}") from None

    ks, Ns, refine, cells = tuple(ns.k), tuple(ns.N), ns.refine, ()
    if ns.preset == "fig1":
        ks = ks or tuple(unit_sigma_wavenumbers())
    elif ns.preset == "fig2":
        ks = ks or tuple(m * np.pi + 1 for m in (10, 20, 40, 80))
        schemes = schemes or (SchemeKind.CLASSICAL,)
    elif ns.preset in PRESET_REFINE:
        refine = PRESET_REFINE[ns.preset]
        cells = tuple({"h": h_refine_cells, "kh": kh_refine_cells,
                       "khfix": kh_fixed_cells}[refine]())
    elif refine:
        if len(ks) != 1 or len(Ns) != 1:
            raise ConfigError("--refine needs exactly one --k and one --N (or a preset)")
        cells = tuple(refine_cells(refine, ks[0], Ns[0]))

    if command == "symbols" and not cells:
        if not ks or not Ns:
            raise ConfigError("symbols needs --k and --N, --refine or a preset")
        cells = tuple((k, N) for k in ks for N in Ns)
    if command in ("solve", "zerosource") and (not ks or not Ns):
        raise ConfigError(f"{command} needs --k and --N")
    if command == "converge" and not ks:
        raise ConfigError("converge needs --k or --preset fig2")
    if command == "wellposed" and not ks:
        raise ConfigError("wellposed needs --k or --preset fig1")
    if command == "solve" and not ns.source and ns.g0 == 0.0 and ns.g1 == 0.0:
        raise ConfigError("solve needs --source or nonzero --g0/--g1")
    if command == "solve" and ns.source and (ns.g0 or ns.g1):
        raise ConfigError("--source cannot be combined with nonzero --g0/--g1")
    if command == "zerosource" and ns.g0 == 0.0 and ns.g1 == 0.0:
        g0, g1 = 0.0, 1.0
    else:
        g0, g1 = ns.g0, ns.g1
    if not schemes:
        schemes = tuple(SchemeKind) if command in ("symbols", "zerosource") else (SchemeKind.CLASSICAL,)
    return RunConfig(command, schemes, ks, Ns, ns.source, g0, g1, ns.p, ns.c, refine, ns.preset,
                     ns.out, ns.format, ns.strict, cells)


# ---------------------------------------------------------------- output helpers

def _num(x):
    return repr(float(x))


def _csv(header, rows):
    lines = [header] + [",".join(r if isinstance(r, str) else _num(r) for r in row) for row in rows]
    return "\n".join(lines) + "\n"


def _json_safe(x):
    if isinstance(x, float) and not np.isfinite(x):
        return "nan" if np.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _json(obj):
    def walk(o):
        if isinstance(o, dict):
            return {k: walk(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [walk(v) for v in o]
        if isinstance(o, (np.floating, np.integer)):
            o = o.item()
        return _json_safe(o)
    return json.dumps(walk(obj), indent=1, sort_keys=True) + "\n"


def svg_plot(series, xlabel, ylabel, width=640, height=420):
    """Single-panel log-log polyline plot; ``series`` is a list of (label, xs, ys)."""
    pad = 60
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys) if x > 0 and y > 0 and np.isfinite(y)]
    if not pts:
        raise ValueError("nothing to plot")
    lx = np.log10([p[0] for p in pts])
    ly = np.log10([p[1] for p in pts])
    x0, x1 = float(lx.min()), float(lx.max()) or 1.0
    y0, y1 = float(ly.min()), float(ly.max())
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1

    def px(x):
        return pad + (np.log10(x) - x0) / (x1 - x0) * (width - 2 * pad)

    def py(y):
        return height - pad - (np.log10(y) - y0) / (y1 - y0) * (height - 2 * pad)

    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
               "#7f7f7f"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
           f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" '
           'fill="none" stroke="black"/>',
           f'<text x="{width / 2:.1f}" y="{height - 15}" text-anchor="middle">{xlabel} (log)</text>',
           f'<text x="15" y="{height / 2:.1f}" transform="rotate(-90 15 {height / 2:.1f})" '
           f'text-anchor="middle">{ylabel} (log)</text>',
           f'<text x="{pad}" y="{height - pad + 15}" font-size="10">{10**x0:.3g}</text>',
           f'<text x="{width - pad}" y="{height - pad + 15}" font-size="10" '
           f'text-anchor="end">{10**x1:.3g}</text>',
           f'<text x="{pad - 5}" y="{height - pad}" font-size="10" text-anchor="end">{10**y0:.3g}</text>',
           f'<text x="{pad - 5}" y="{pad + 10}" font-size="10" text-anchor="end">{10**y1:.3g}</text>']
    for i, (label, xs, ys) in enumerate(series):
        color = palette[i % len(palette)]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys)
                          if x > 0 and y > 0 and np.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{color}" points="{coords}"/>')
        out.append(f'<text x="{width - pad + 4}" y="{pad + 14 * (i + 1)}" font-size="10" '
                   f'fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- commands

def _cmd_solve(cfg):
    f = parse_source(cfg.source)
    rows, records = [], []
    for s in cfg.schemes:
        for k in cfg.k:
            for N in cfg.N:
                problem = HelmholtzProblem(k, f, cfg.g0, cfg.g1)
                sol = solve_tridiagonal(s, problem, N)
                x = sol.nodal.x
                u = (solve_exact(problem).evaluate(x) if problem.homogeneous
                     else zero_source_exact(k, cfg.g0, cfg.g1, x))
                for xi, uh, ue in zip(x, sol.nodal.values, u):
                    rows.append((s.value, k, N, xi, uh, ue, uh - ue))
    header = "scheme,k,N,x,u_h,u,error"
    if cfg.format == "json":
        keys = header.split(",")
        return _json({"rows": [dict(zip(keys, r)) for r in rows]}), [], 0
    return _csv(header, [(r[0], r[1], str(r[2]), *r[3:]) for r in rows]), [], 0


def _symbol_reports(cfg):
    rows, reports = [], []
    quantity = REFINE_QUANTITY.get(cfg.refine, "psi_e")
    for s in cfg.schemes:
        maxima = []
        for k, N in cfg.cells:
            table = symbol_table(s, k, 1.0 / N)
            for r in table:
                rows.append((s.value, k, 1.0 / N, r.xi, r.lambda_, r.lambda_h, r.psi, r.psi_e,
                             r.psi_rel))
            maxima.append((k, N, max(getattr(r, quantity) for r in table)))
        reports.append(ConvergenceReport(s.value, quantity, tuple(maxima)))
    return rows, reports


def _fit_lines(reports, h_exponent=None, stage=-1):
    lines, fits = [], []
    for rep in reports:
        groups = rep.per_k()
        if len(groups) == 1:
            g = next(iter(groups.values()))
            ratios = [g[i][1] / g[i + 1][1] for i in range(len(g) - 1)
                      if g[i + 1][0] == 2 * g[i][0]]
            fits.append({"scheme": rep.scheme, "quantity": rep.quantity, "doubling_ratios": ratios})
            lines.append(f"ratio per N doubling {rep.scheme} {rep.quantity}: "
                         + " ".join(f"{r:.3f}" for r in ratios))
            continue
        try:
            b, a = fit_orders(rep, h_exponent=h_exponent, stage=stage)
        except InsufficientData as exc:
            lines.append(f"fit {rep.scheme} {rep.quantity}: {exc}")
            continue
        fits.append({"scheme": rep.scheme, "quantity": rep.quantity, "h_exponent": b,
                     "k_exponent": a})
        lines.append(f"fit {rep.scheme} {rep.quantity}: h_exponent={b:.3f} k_exponent={a:.3f}")
    return lines, fits


def _cmd_symbols(cfg):
    rows, reports = _symbol_reports(cfg)
    # along a kh sequence the k exponent is read off the sequence points
    # themselves (the base mesh of each k) with the nominal order h^2
    if cfg.refine in ("kh", "khfix"):
        lines, fits = _fit_lines(reports, 2.0, stage=0)
    else:
        lines, fits = _fit_lines(reports)
    if cfg.format == "svg":
        series = []
        quantity = REFINE_QUANTITY.get(cfg.refine, "psi_e")
        col = SYMBOL_HEADER.split(",").index(quantity)
        for s in cfg.schemes:
            for k, N in cfg.cells:
                sel = [r for r in rows if r[0] == s.value and r[1] == k and r[2] == 1.0 / N]
                series.append((f"{s.value} k={k:.4g} N={N}", [r[3] for r in sel],
                               [r[col] for r in sel]))
        return svg_plot(series, "xi", quantity), lines, 0
    if cfg.format == "json":
        keys = SYMBOL_HEADER.split(",")
        maxima = [{"scheme": rep.scheme, "quantity": rep.quantity, "k": k, "N": N, "max": v}
                  for rep in reports for k, N, v in rep.rows]
        return _json({"rows": [dict(zip(keys, r)) for r in rows], "maxima": maxima,
                      "fits": fits}), lines, 0
    return _csv(SYMBOL_HEADER, rows), lines, 0


def _cmd_bounds(cfg):
    if cfg.k or cfg.N:
        ks = cfg.k or (7.0, 10.0, 10 * np.pi + 1, 20 * np.pi + 1)
        Ns = cfg.N or (64, 128, 256, 512)
        src = parse_source(cfg.source) if cfg.source else None
        config = BoundSweepConfig.sweep(ks, Ns, cfg.c, cfg.p, (lambda N: src) if src else None)
    else:
        config = BoundSweepConfig.default()
    report = run_all(config)
    body = report.to_json() if cfg.format == "json" else report.to_csv()
    status = 0
    if cfg.strict:
        violated = [r for r in report.skipped if not r.note.startswith("guard")]
        if report.failures or violated:
            status = 1
    return body, [report.summary()], status


def converge_reports(schemes, ks, source, doublings=5):
    """CSV rows and per-scheme H1 ConvergenceReports on power-of-two mesh sequences."""
    rows, reports = [], []
    for s in schemes:
        data = []
        for k in ks:
            problem = HelmholtzProblem(k, source)
            for N in doubling_meshes(k, doublings):
                e = total_error(s, problem, N)
                rows.append((s.value, k, N, 1.0 / N, *e))
                data.append((k, N, e[1]))
        reports.append(ConvergenceReport(s.value, "abs_h1", tuple(data)))
    return rows, reports


def _cmd_converge(cfg):
    source = parse_source(cfg.source) if cfg.source else FOUR_MODE_SOURCE
    rows, reports = converge_reports(cfg.schemes, cfg.k, source)
    lines = []
    for rep in reports:
        for k, (slope, Ns) in rep.h_slopes(finest=4).items():
            lines.append(f"slope {rep.scheme} k={k:.6g}: {slope:.3f} over N={Ns}")
    fit_lines, fits = _fit_lines(reports)
    lines += fit_lines
    if cfg.format == "svg":
        series = [(f"{rep.scheme} k={k:.4g}", [1.0 / N for N, _ in g], [v for _, v in g])
                  for rep in reports for k, g in rep.per_k().items()]
        return svg_plot(series, "h", "|u-u^h|_1"), lines, 0
    if cfg.format == "json":
        keys = CONVERGE_HEADER.split(",")
        return _json({"rows": [dict(zip(keys, r)) for r in rows], "fits": fits}), lines, 0
    return _csv(CONVERGE_HEADER, [(r[0], r[1], str(r[2]), *r[3:]) for r in rows]), lines, 0


def wellposed_row(k, N_max=None):
    """(k, sigma_k, h_k, h_k_star, N_max, N_admissible, margin) for one wavenumber."""
    hk = h_k_bound(k)
    N_max = N_max or max(64, 4 * int(np.ceil(1.0 / hk)))
    h_star = h_k_star_search(k, N_max)
    Na = admissible_mesh(k)
    return (k, sigma_k(k), hk, h_star, N_max, Na, wellposedness_margin(k, 1.0 / Na))


def _cmd_wellposed(cfg):
    N_max = cfg.N[0] if cfg.N else None
    rows = [wellposed_row(k, N_max) for k in cfg.k]
    header = "k,sigma_k,h_k,h_k_star,N_max,N_admissible,margin"
    if cfg.format == "json":
        keys = header.split(",")
        return _json({"rows": [dict(zip(keys, r)) for r in rows]}), [], 0
    return _csv(header, [(r[0], r[1], r[2], r[3], str(r[4]), str(r[5]), r[6]) for r in rows]), [], 0


def _cmd_zerosource(cfg):
    rows = []
    for s in cfg.schemes:
        for k in cfg.k:
            for N in cfg.N:
                h = 1.0 / N
                sol = solve_tridiagonal(s, HelmholtzProblem(k, g0=cfg.g0, g1=cfg.g1), N)
                exact = zero_source_exact(k, cfg.g0, cfg.g1, sol.nodal.x)
                nodal = float(np.max(np.abs(sol.nodal.values - exact)))
                l2, h1 = zero_source_error_norms(s, k, h, cfg.g0, cfg.g1)
                rows.append((s.value, k, str(N), h, discrete_wavenumber(k, h) if k * h < 2 else
                             float("nan"), l2, h1, nodal))
    header = "scheme,k,N,h,k_h,err_l2,err_h1,nodal_max"
    if cfg.format == "json":
        keys = header.split(",")
        return _json({"rows": [dict(zip(keys, r)) for r in rows]}), [], 0
    return _csv(header, rows), [], 0


HANDLERS = {"solve": _cmd_solve, "symbols": _cmd_symbols, "bounds": _cmd_bounds,
            "converge": _cmd_converge, "wellposed": _cmd_wellposed, "zerosource": _cmd_zerosource}


def run(cfg, stdout=None, stderr=None):
    """Execute a validated RunConfig; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        body, lines, status = HANDLERS[cfg.command](cfg)
    except HypothesisViolated as exc:
        print(f"helmfd: {exc}", file=stderr)
        return 1 if cfg.strict else 0
    except (HelmfdError, ValueError) as exc:
        print(f"helmfd: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(body)
    else:
        stdout.write(body)
    for line in lines:
        print(line, file=stderr)
    return status


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"helmfd: error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
