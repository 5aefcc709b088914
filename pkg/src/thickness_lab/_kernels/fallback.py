"""Numpy implementations of the scan kernels (used when the compiled core is absent)."""

import math

import numpy as np


def eval_table(factors, exps, coeffs):
    """Values of sum_s c_s * chi_{a_s} over the whole group, C-ordered flat.

    The coefficient cube is synthesized with an inverse FFT per axis, which
    matches the direct character sum exactly on the grid.
    """
    factors = tuple(int(m) for m in factors)
    n = math.prod(factors)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.size == 0:
        return np.zeros(n, dtype=np.complex128)
    exps = np.asarray(exps, dtype=np.int64).reshape(coeffs.size, len(factors))
    cube = np.zeros(factors, dtype=np.complex128)
    np.add.at(cube, tuple(exps[:, j] % factors[j] for j in range(len(factors))), coeffs)
    return (np.fft.ifftn(cube) * n).reshape(-1)


def max_abs(values):
    """(max modulus, first flat index attaining it)."""
    mags = np.abs(np.asarray(values))
    idx = int(mags.argmax())
    return float(mags[idx]), idx


def power_sum(values, p):
    """sum |v|^p."""
    return float(np.sum(np.abs(np.asarray(values)) ** p))


def net_scan(points, grid_n):
    """max over a uniform circle grid of the distance to the nearest point."""
    pts = np.asarray(points, dtype=np.complex128)
    if pts.size == 0:
        return 2.0
    ang = 2.0 * np.pi * np.arange(grid_n) / grid_n
    grid = np.exp(1j * ang)
    worst = 0.0
    step = 8192
    for lo in range(0, grid_n, step):
        chunk = grid[lo : lo + step]
        d = np.abs(chunk[:, None] - pts[None, :]).min(axis=1).max()
        worst = max(worst, float(d))
    return worst
