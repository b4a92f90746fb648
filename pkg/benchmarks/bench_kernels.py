"""Timing comparison of the jit and pure-numpy kernel backends.

Run directly:  python benchmarks/bench_kernels.py
Force one backend for the whole package with GLEASON_LAB_JIT=0|1.
"""

import time

import numpy as np

from gleason_lab import kernels
from gleason_lab.rng import SplitMix64


def _time(fn, *args, repeats=30):
    fn(*args)  # warm up (includes jit compilation)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_quat_matmul():
    print("quaternion matrix product, (n,n,4) @ (n,n,4)")
    rng = SplitMix64(0xBEEF)
    for n in (4, 8, 16, 32, 64):
        A = rng.gaussian_block(n * n * 4).reshape(n, n, 4)
        B = rng.gaussian_block(n * n * 4).reshape(n, n, 4)
        rows = [("numpy", _time(kernels.quat_matmul_numpy, A, B))]
        if kernels.JIT_ENABLED:
            rows.append(("numba", _time(kernels.quat_matmul_jit, A, B)))
            drift = np.abs(kernels.quat_matmul_jit(A, B) - kernels.quat_matmul_numpy(A, B)).max()
        else:
            drift = 0.0
        timing = "  ".join(f"{name} {best * 1e6:9.1f} us" for name, best in rows)
        print(f"  n={n:3d}  {timing}  max drift {drift:.1e}")


def bench_jacobi():
    print("complex Hermitian Jacobi eigensolver")
    rng = SplitMix64(0xFACE)
    for n in (4, 8, 16, 32, 64):
        raw = rng.gaussian_block(2 * n * n)
        G = raw[: n * n].reshape(n, n) + 1j * raw[n * n :].reshape(n, n)
        H = (G + G.conj().T) / 2
        rows = [("numpy", _time(kernels.jacobi_eigh_numpy, H, repeats=10))]
        if kernels.JIT_ENABLED:
            rows.append(("numba", _time(kernels.jacobi_eigh_jit, H, repeats=10)))
            v1, _ = kernels.jacobi_eigh_jit(H)
            v2, _ = kernels.jacobi_eigh_numpy(H)
            drift = np.abs(np.sort(v1) - np.sort(v2)).max()
        else:
            drift = 0.0
        timing = "  ".join(f"{name} {best * 1e3:9.3f} ms" for name, best in rows)
        print(f"  n={n:3d}  {timing}  spectrum drift {drift:.1e}")


if __name__ == "__main__":
    print(f"active backend: {kernels.active_backend()}")
    bench_quat_matmul()
    print()
    bench_jacobi()
