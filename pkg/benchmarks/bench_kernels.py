"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--N 4096] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from helmfd.kernels import get_backend


def cases(N, rng):
    n = N - 1
    lower, upper = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
    diag = 4.0 + rng.uniform(0, 1, n)
    rhs = rng.standard_normal(n)
    modes = np.array([1, 5, 17, N + 3, 3 * N - 2], dtype=np.int64)
    coeffs = rng.standard_normal(modes.size)
    small = rng.standard_normal(min(n, 255))
    return {
        "tridiag_solve": lambda b: b.tridiag_solve(lower, diag, upper, rhs),
        "helmholtz_tridiag": lambda b: b.helmholtz_tridiag(N, 1.0, -2.0 + 1e-3, modes, coeffs,
                                                            1.0, 0.0, 0.0),
        "sine_synthesis": lambda b: b.sine_synthesis(modes, coeffs, N),
        "min_discrete_gap": lambda b: b.min_discrete_gap(100.5, N),
        "dst1_direct(255)": lambda b: b.dst1_direct(small),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = {"python": get_backend("python")}
    try:
        backends["cython"] = get_backend("cython")
    except ImportError:
        print("compiled extension not available; timing the fallback only")
    print(f"{'kernel':<20}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for label, call in cases(args.N, rng).items():
        times = {}
        for name, b in backends.items():
            t = timeit.Timer(lambda: call(b))
            loops, _ = t.autorange()
            times[name] = min(t.repeat(args.repeat, loops)) / loops
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<20}" + "".join(f"{times[n] * 1e6:>12.1f}us" for n in backends)
              + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
