"""Head-to-head timing of the compiled kernel extension against the pure
numpy mirror.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py

Each kernel is timed over enough repeats to get a stable median, and the
two backends are checked for agreement on the same inputs before timing.
"""

import time

import numpy as np

from fourierpos._kernels import HAVE_COMPILED, pure

if HAVE_COMPILED:
    from fourierpos._kernels import _hot
else:
    _hot = None

A = 0.5
COEFFS = np.array([0.718081, -0.064879, -0.0685793, 0.0269736, 0.00119983])
R_BIG = np.linspace(0.0, 12.0, 200_000)
R_GRID = np.arange(1, 141) * 0.025
RNG = np.random.default_rng(0)
MATS = RNG.standard_normal((400, 6, 6))
MATS = (MATS + MATS.transpose(0, 2, 1)) / 2.0


def median_time(fn, repeats=7):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return sorted(best)[len(best) // 2]


def rel_diff(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    finite = np.isfinite(x) & np.isfinite(y)
    if not finite.any():
        return 0.0
    scale = max(np.abs(y[finite]).max(), 1e-300)
    return float(np.abs(x[finite] - y[finite]).max() / scale)


CASES = [
    ("eval_real", lambda m: m.eval_real(A, COEFFS, R_BIG)),
    ("eval_imag", lambda m: m.eval_imag(A, COEFFS, R_BIG)),
    ("toeplitz_scan_eigs n=4", lambda m: m.toeplitz_scan_eigs(A, COEFFS, R_GRID, 4)),
    ("toeplitz_scan_eigs n=8", lambda m: m.toeplitz_scan_eigs(A, COEFFS, R_GRID, 8)),
    ("jacobi_eigvals_batch", lambda m: m.jacobi_eigvals_batch(MATS)),
    ("mu1_integral", lambda m: m.mu1_integral(A, COEFFS, 14.0, 1e-12)[0]),
]


def main():
    if _hot is None:
        print("compiled extension not available; timing pure backend only")
    header = f"{'kernel':<24}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>9}{'max rel diff':>14}"
    print(header)
    print("-" * len(header))
    for name, call in CASES:
        t_pure = median_time(lambda: call(pure)) * 1e3
        if _hot is None:
            print(f"{name:<24}{t_pure:>12.3f}{'-':>15}{'-':>9}{'-':>14}")
            continue
        t_hot = median_time(lambda: call(_hot)) * 1e3
        diff = rel_diff(call(_hot), call(pure))
        print(f"{name:<24}{t_pure:>12.3f}{t_hot:>15.3f}{t_pure / t_hot:>8.1f}x{diff:>14.2e}")


if __name__ == "__main__":
    main()
