#!/usr/bin/env python3
"""Benchmark the compiled scan kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py  (run from the repo root after
building the extension in place, or with the package installed).
"""

import math
import time

import numpy as np

from thickness_lab._kernels import fallback

try:
    from thickness_lab._kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeats=5):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads():
    rng = np.random.default_rng(0)

    def spectrum(factors, size):
        exps = np.column_stack([rng.integers(0, m, size=size) for m in factors])
        coeffs = rng.normal(size=size) + 1j * rng.normal(size=size)
        return np.asarray(factors, dtype=np.int64), exps.astype(np.int64), coeffs

    yield "eval_table Z2^12, 24 coeffs", "eval_table", spectrum((2,) * 12, 24)
    yield "eval_table Z4096, 17 coeffs", "eval_table", spectrum((4096,), 17)
    yield "eval_table Z65536, 48 coeffs", "eval_table", spectrum((65536,), 48)
    yield "eval_table Z16^4, 64 coeffs", "eval_table", spectrum((16,) * 4, 64)

    values = rng.normal(size=1 << 16) + 1j * rng.normal(size=1 << 16)
    yield "max_abs 2^16", "max_abs", (values,)
    yield "power_sum p=1.5, 2^16", "power_sum", (values, 1.5)

    pts = np.exp(2j * np.pi * rng.random(64)) * (0.9 + 0.1 * rng.random(64))
    yield "net_scan 64 pts, 8192 grid", "net_scan", (pts, 8192)


def main():
    print(f"compiled kernels present: {_core is not None}")
    header = f"{'workload':34} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn_name, args in _workloads():
        t_py = _time(getattr(fallback, fn_name), *args)
        if _core is not None:
            t_c = _time(getattr(_core, fn_name), *args)
            ref = np.asarray(getattr(fallback, fn_name)(*args))
            got = np.asarray(getattr(_core, fn_name)(*args))
            if ref.shape == got.shape and not np.allclose(ref, got, atol=1e-8):
                raise AssertionError(f"backend mismatch on {name}")
            print(f"{name:34} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.1f}x")
        else:
            print(f"{name:34} {t_py * 1e3:9.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
