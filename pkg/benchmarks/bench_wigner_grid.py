"""Benchmark the phase-space grid kernel: numba JIT vs numpy fallback.

Run:  python benchmarks/bench_wigner_grid.py

The two paths compute the same windowed double sum; this script times
both on the default figure grid for growing coefficient windows and
checks that their outputs agree to roundoff.  Set
CYLWIGNER_DISABLE_NUMBA=1 to confirm the dispatcher falls back.
"""

import time

import numpy as np

from cylwigner._kernels import (
    NUMBA_ENABLED,
    phase_space_sum_grid,
    phase_space_sum_grid_numpy,
)
from cylwigner.states import von_mises_state
from cylwigner.wigner import default_p_axis, default_theta_axis

REPEATS = 3


def time_path(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    thetas = default_theta_axis()
    ps = default_p_axis()
    print(f"grid: {thetas.size} x {ps.size} points, numba available: {NUMBA_ENABLED}")
    print(f"{'window':>8} {'numba [s]':>12} {'numpy [s]':>12} {'speedup':>9} {'max |diff|':>12}")

    for s in (0.5, 2.0, 6.0, 12.0):
        state = von_mises_state(s, 0.3)
        A = np.outer(state.coeffs.conj(), state.coeffs)
        args = (A, state.n_min, state.delta, thetas, ps)

        if NUMBA_ENABLED:
            phase_space_sum_grid(*args)  # warm the JIT outside the timer
            t_numba, out_numba = time_path(phase_space_sum_grid, *args)
        else:
            t_numba, out_numba = float("nan"), None

        t_numpy, out_numpy = time_path(phase_space_sum_grid_numpy, *args)

        if out_numba is not None:
            diff = float(np.max(np.abs(out_numba - out_numpy)))
            speedup = t_numpy / t_numba
            print(f"{A.shape[0]:>8d} {t_numba:>12.4f} {t_numpy:>12.4f} {speedup:>8.1f}x {diff:>12.2e}")
            assert diff < 1e-12, "kernel paths disagree"
        else:
            print(f"{A.shape[0]:>8d} {'-':>12} {t_numpy:>12.4f} {'-':>9} {'-':>12}")


if __name__ == "__main__":
    main()
