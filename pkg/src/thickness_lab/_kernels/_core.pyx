# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels: direct character-sum synthesis and circle scans.

The direct synthesis walks the group in odometer order (last factor
fastest), keeping per spectrum entry the running product of per-factor
phases; one complex multiply per entry per point, amortized. It shines on
products of many small factors, where an FFT pays per-axis overhead.
"""

from libc.math cimport cos, sin, sqrt, pow, M_PI

import numpy as np


def eval_table(factors, exps, coeffs):
    """Values of sum_s c_s * chi_{a_s} over the whole group, C-ordered flat."""
    cdef long long[::1] ms = np.ascontiguousarray(factors, dtype=np.int64)
    cdef Py_ssize_t k = ms.shape[0]
    coeffs_arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double complex[::1] cc = coeffs_arr
    cdef Py_ssize_t S = cc.shape[0]
    cdef Py_ssize_t N = 1
    cdef Py_ssize_t i, j, s, idx
    for j in range(k):
        N *= ms[j]
    out_arr = np.zeros(N, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    if S == 0 or N == 0:
        return out_arr
    exps_arr = np.ascontiguousarray(np.asarray(exps, dtype=np.int64).reshape(S, k))
    cdef long long[:, ::1] aa = exps_arr
    if k == 1:
        _eval_single_axis(out, cc, aa, ms[0])
        return out_arr

    # axis-major layout: entries for one axis are contiguous over the spectrum
    steps_arr = np.empty(k * S, dtype=np.complex128)
    part_arr = np.empty(k * S, dtype=np.complex128)
    digits_arr = np.zeros(k, dtype=np.int64)
    cdef double complex[::1] st = steps_arr
    cdef double complex[::1] part = part_arr
    cdef long long[::1] digits = digits_arr
    cdef double ang
    cdef double complex acc
    cdef Py_ssize_t last = (k - 1) * S

    for s in range(S):
        for j in range(k):
            ang = 2.0 * M_PI * <double> (aa[s, j] % ms[j]) / <double> ms[j]
            st[j * S + s] = cos(ang) + 1j * sin(ang)
        for j in range(k):
            part[j * S + s] = cc[s]

    acc = 0
    for s in range(S):
        acc += part[last + s]
    out[0] = acc

    for idx in range(1, N):
        j = k - 1
        while digits[j] == ms[j] - 1:
            digits[j] = 0
            j -= 1
        digits[j] += 1
        for s in range(S):
            part[j * S + s] = part[j * S + s] * st[j * S + s]
        for i in range(j + 1, k):
            for s in range(S):
                part[i * S + s] = part[(i - 1) * S + s]
        acc = 0
        for s in range(S):
            acc += part[last + s]
        out[idx] = acc
    return out_arr


cdef void _eval_single_axis(
    double complex[::1] out, double complex[::1] cc, long long[:, ::1] aa, long long m
) noexcept:
    # four independent phase chains per entry to hide multiply latency
    cdef Py_ssize_t S = cc.shape[0]
    cdef Py_ssize_t N = out.shape[0]
    cdef Py_ssize_t s, x
    cdef double ang
    cdef double complex st1, st4, p0, p1, p2, p3
    for s in range(S):
        ang = 2.0 * M_PI * <double> (aa[s, 0] % m) / <double> m
        st1 = cos(ang) + 1j * sin(ang)
        st4 = st1 * st1
        st4 = st4 * st4
        p0 = cc[s]
        p1 = p0 * st1
        p2 = p1 * st1
        p3 = p2 * st1
        x = 0
        while x + 4 <= N:
            out[x] += p0
            out[x + 1] += p1
            out[x + 2] += p2
            out[x + 3] += p3
            p0 = p0 * st4
            p1 = p1 * st4
            p2 = p2 * st4
            p3 = p3 * st4
            x += 4
        while x < N:
            out[x] += p0
            p0 = p0 * st1
            x += 1


def max_abs(values):
    """(max modulus, first flat index attaining it)."""
    cdef const double complex[::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef Py_ssize_t n = v.shape[0]
    cdef double best2 = -1.0, m2, re, im
    cdef Py_ssize_t i, bi = 0
    for i in range(n):
        re = v[i].real
        im = v[i].imag
        m2 = re * re + im * im
        if m2 > best2:
            best2 = m2
            bi = i
    return sqrt(best2) if best2 > 0 else 0.0, bi


def power_sum(values, double p):
    """sum |v|^p."""
    cdef const double complex[::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef Py_ssize_t n = v.shape[0]
    cdef double acc = 0.0, m2, re, im
    cdef double half_p = 0.5 * p
    cdef Py_ssize_t i
    if p == 2.0:
        for i in range(n):
            re = v[i].real
            im = v[i].imag
            acc += re * re + im * im
        return acc
    if p == 1.0:
        for i in range(n):
            re = v[i].real
            im = v[i].imag
            acc += sqrt(re * re + im * im)
        return acc
    for i in range(n):
        re = v[i].real
        im = v[i].imag
        m2 = re * re + im * im
        if m2 > 0.0:
            acc += pow(m2, half_p)
    return acc


def net_scan(points, Py_ssize_t grid_n):
    """max over a uniform circle grid of the distance to the nearest point."""
    cdef const double complex[::1] w = np.ascontiguousarray(points, dtype=np.complex128)
    cdef Py_ssize_t nw = w.shape[0]
    if nw == 0:
        return 2.0
    cdef double worst2 = 0.0, best2, d2, ang, cx, sx, dre, dim
    cdef Py_ssize_t t, i
    for t in range(grid_n):
        ang = 2.0 * M_PI * <double> t / <double> grid_n
        cx = cos(ang)
        sx = sin(ang)
        best2 = 16.0
        for i in range(nw):
            dre = cx - w[i].real
            dim = sx - w[i].imag
            d2 = dre * dre + dim * dim
            if d2 < best2:
                best2 = d2
        if best2 > worst2:
            worst2 = best2
    return sqrt(worst2)
