"""Timing comparison of the two cyclic-Jacobi eigensolver paths.

Runs the compiled kernel (when numba is importable) and the pure-numpy
fallback on identical random symmetric matrices, excluding compilation
and cache warmup from the timed region, and prints a per-size table with
the speedup ratio. The two paths must agree to 1e-12 on every instance;
the benchmark aborts if they do not.

Usage:
    python benchmarks/bench_eigen.py [--sizes 4,8,16,32,64]
                                     [--repeats 20] [--seed 0]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from hfgdm._kernels import NUMBA_AVAILABLE, jacobi_numpy

if NUMBA_AVAILABLE:
    from hfgdm._kernels import jacobi_numba


def random_symmetric(n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.uniform(-1.0, 1.0, (n, n))
    return (a + a.T) / 2.0


def time_solver(solver, matrices, repeats: int) -> float:
    solver(matrices[0])  # warmup: JIT compile / cache touch
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for a in matrices:
            values, converged = solver(a)
            if not converged:
                raise RuntimeError("solver did not converge")
        best = min(best, time.perf_counter() - start)
    return best / len(matrices)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="4,8,16,32,64")
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--batch", type=int, default=25,
                        help="matrices per size (timed as one block)")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if not NUMBA_AVAILABLE:
        print("numba unavailable (or disabled via HFGDM_NO_NUMBA); "
              "timing the numpy fallback only.\n")

    header = f"{'n':>4}  {'numpy (us)':>12}"
    if NUMBA_AVAILABLE:
        header += f"  {'numba (us)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))

    rng = np.random.default_rng(args.seed)
    for n in sizes:
        matrices = [random_symmetric(n, rng) for _ in range(args.batch)]
        for a in matrices:
            ref, _ = jacobi_numpy(a)
            if NUMBA_AVAILABLE:
                alt, _ = jacobi_numba(a)
                if not np.allclose(np.sort(ref), np.sort(alt), atol=1e-12):
                    raise SystemExit(f"paths disagree on n={n}")
        t_np = time_solver(jacobi_numpy, matrices, args.repeats)
        line = f"{n:>4}  {t_np * 1e6:>12.1f}"
        if NUMBA_AVAILABLE:
            t_nb = time_solver(jacobi_numba, matrices, args.repeats)
            line += f"  {t_nb * 1e6:>12.1f}  {t_np / t_nb:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
