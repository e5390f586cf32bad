"""Timing comparison of the compiled sweep kernel and the numpy fallback.

Runs the two-site update sweep on state vectors and on dense identity
blocks (the materialization workload) for a range of site counts and
prints a table with the speedup of the compiled extension.

    python benchmarks/bench_kernels.py [--nmax 14] [--dense-nmax 12] [--repeats 7]
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ipszeta import ModelSpec, build_local, kernels  # noqa: E402


def best_of(fn, *args, repeats, **kwargs) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args, **kwargs)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nmax", type=int, default=14, help="largest N for vector sweeps")
    parser.add_argument("--dense-nmax", type=int, default=12, help="largest N for dense sweeps")
    parser.add_argument("--repeats", type=int, default=7, help="best-of repeat count")
    args = parser.parse_args()

    if kernels.compiled_sweep is None:
        print("compiled kernel not built; run `python setup.py build_ext --inplace` first")
        return 1

    local = build_local(ModelSpec.qca2(0.7, 1.9)).entries
    rng = np.random.default_rng(7)

    print(f"active backend: {kernels.BACKEND}")
    print()
    print(f"{'workload':<10} {'N':>3} {'dim':>6} {'numpy (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    for n in range(6, args.nmax + 1, 2):
        dim = 2 ** n
        vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        t_np = best_of(kernels.numpy_sweep, vec, local, n, repeats=args.repeats)
        t_cy = best_of(kernels.compiled_sweep, vec, local, n, repeats=args.repeats)
        print(f"{'vector':<10} {n:>3} {dim:>6} {t_np * 1e3:>12.3f} {t_cy * 1e3:>14.3f} "
              f"{t_np / t_cy:>7.2f}x")
    for n in range(6, args.dense_nmax + 1, 2):
        dim = 2 ** n
        eye = np.eye(dim, dtype=np.complex128).reshape(-1)
        repeats = max(2, args.repeats // 2) if n >= 12 else args.repeats
        t_np = best_of(kernels.numpy_sweep, eye, local, n, tail=dim, repeats=repeats)
        t_cy = best_of(kernels.compiled_sweep, eye, local, n, tail=dim, repeats=repeats)
        print(f"{'dense':<10} {n:>3} {dim:>6} {t_np * 1e3:>12.3f} {t_cy * 1e3:>14.3f} "
              f"{t_np / t_cy:>7.2f}x")

    check = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    gap = np.max(np.abs(kernels.numpy_sweep(check, local, 8)
                        - kernels.compiled_sweep(check, local, 8)))
    print(f"\nbackend agreement on a random vector: {gap:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
