import math

import numpy as np
import pytest

from thickness_lab import _kernels as kernels
from thickness_lab._kernels import fallback

try:
    from thickness_lab._kernels import _core
except ImportError:
    _core = None

needs_compiled = pytest.mark.skipif(_core is None, reason="compiled kernels not built")


def _workload(factors, size, seed):
    rng = np.random.default_rng(seed)
    exps = np.column_stack([rng.integers(0, m, size=size) for m in factors]).astype(np.int64)
    coeffs = rng.normal(size=size) + 1j * rng.normal(size=size)
    return exps, coeffs


def _naive_table(factors, exps, coeffs):
    import itertools

    n = math.prod(factors)
    out = np.zeros(n, dtype=complex)
    for idx, coords in enumerate(itertools.product(*(range(m) for m in factors))):
        acc = 0j
        for a, c in zip(exps, coeffs):
            ang = sum(ai * xi / mi for ai, xi, mi in zip(a, coords, factors))
            acc += c * np.exp(2j * np.pi * ang)
        out[idx] = acc
    return out


@pytest.mark.parametrize("factors", [(6,), (4, 3), (2, 2, 2, 3), (5, 4, 2)])
def test_eval_table_matches_naive(factors):
    exps, coeffs = _workload(factors, 5, seed=1)
    expected = _naive_table(factors, exps, coeffs)
    got = np.asarray(kernels.eval_table(factors, exps, coeffs))
    assert np.allclose(got, expected, atol=1e-9)


@needs_compiled
@pytest.mark.parametrize(
    "factors", [(7,), (4096,), (2,) * 12, (16,) * 3, (4, 3, 5), (9, 9)]
)
def test_backends_agree(factors):
    exps, coeffs = _workload(factors, 23, seed=2)
    a = np.asarray(_core.eval_table(np.asarray(factors, np.int64), exps, coeffs))
    b = np.asarray(fallback.eval_table(factors, exps, coeffs))
    assert np.allclose(a, b, atol=1e-8)
    va, ia = _core.max_abs(a)
    vb, ib = fallback.max_abs(b)
    assert va == pytest.approx(vb, abs=1e-8)
    assert ia == ib
    for p in (0.5, 1.0, 2.0, 4.0):
        assert _core.power_sum(a, p) == pytest.approx(fallback.power_sum(b, p), rel=1e-9)


@needs_compiled
def test_net_scan_agrees():
    rng = np.random.default_rng(3)
    pts = np.exp(2j * np.pi * rng.random(17)) * (0.8 + 0.2 * rng.random(17))
    a = _core.net_scan(pts, 733)
    b = fallback.net_scan(pts, 733)
    assert a == pytest.approx(b, abs=1e-12)


def test_max_abs_first_index_tie():
    values = np.array([1.0 + 0j, -1.0 + 0j, 1.0 + 0j])
    val, idx = kernels.max_abs(values)
    assert val == pytest.approx(1.0)
    assert idx == 0


def test_power_sum_fractional():
    values = np.array([3.0 + 4j, 0j, 1.0 + 0j])
    assert kernels.power_sum(values, 0.5) == pytest.approx(5**0.5 + 1.0)


def test_empty_spectrum():
    out = np.asarray(kernels.eval_table((4, 3), np.zeros((0, 2), np.int64), np.zeros(0, complex)))
    assert out.shape == (12,)
    assert not out.any()
