"""Finite-difference solvers and error analysis for the 1D Helmholtz equation u'' + k^2 u = -f."""

from .bounds import BoundReport, BoundResult, BoundSweepConfig, run_all
from .errors import ErrorBreakdown, decompose, total_error, zero_source_error_norms
from .exact import HelmholtzProblem, a1_norms, s_functions, sigma_k, solve_exact, zero_source_exact
from .exceptions import *  # noqa: F401,F403
from .kernels import get_backend
from .schemes import (SchemeKind, admissible_mesh, discrete_symbol, discrete_wavenumber, h_k_bound,
                      h_k_star_search, solve_spectral, solve_tridiagonal, wellposedness_margin)
from .spectral import GridFunction, SineSeries, parse_source
from .symbols import argmax_scan, candidates, shape_probe, symbol_errors, symbol_table, xi_e_min

__version__ = "0.1.0"
