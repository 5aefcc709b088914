"""Scan-kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback takes over with identical semantics. THICKNESS_LAB_KERNEL=python
forces the fallback (useful for benchmarking), =compiled requires the
extension and fails loudly if it is missing.

Synthesis is additionally routed by shape: the compiled direct sum wins on
products of several factors (per-axis FFT overhead dominates there), while
a long single cyclic factor with a dense spectrum is faster through the
fallback's FFT. See benchmarks/bench_kernels.py.
"""

import math
import os

from . import fallback as _fallback

_forced = os.environ.get("THICKNESS_LAB_KERNEL", "auto").strip().lower()

if _forced in ("python", "numpy", "fallback"):
    _impl = _fallback
    BACKEND = "numpy"
elif _forced in ("auto", "", "compiled"):
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _fallback
        BACKEND = "numpy"
else:
    raise ValueError(f"unknown THICKNESS_LAB_KERNEL value: {_forced!r}")

max_abs = _impl.max_abs
net_scan = _impl.net_scan


def eval_table(factors, exps, coeffs):
    """Synthesis, routed by shape: the compiled direct sum for sparse spectra
    and products of small factors, the FFT fallback for dense spectra on
    long axes (where N*S work loses to N*log N)."""
    if BACKEND == "compiled":
        factors = tuple(int(m) for m in factors)
        n = math.prod(factors)
        sparse = len(coeffs) <= max(4, n.bit_length())
        if sparse or max(factors) <= 8 or n <= 4096:
            return _impl.eval_table(factors, exps, coeffs)
    return _fallback.eval_table(factors, exps, coeffs)


def power_sum(values, p):
    # libm pow loses to numpy's vectorized power away from the exact cases
    if BACKEND == "compiled" and p in (1.0, 2.0):
        return _impl.power_sum(values, p)
    return _fallback.power_sum(values, p)


__all__ = ["BACKEND", "eval_table", "max_abs", "power_sum", "net_scan"]
