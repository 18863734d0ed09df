# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels; same contracts as the pure-Python module."""

from libc.math cimport sqrt, ceil, floor
from libc.stdlib cimport malloc, free


cdef void _rec(int i, double rem, int n, int d, double* q, double* c, long* x, long* y,
               long* G, long* t, long* counts, long bound, double slack) nogil:
    cdef double s = c[i]
    cdef int j, a, b
    cdef double r, v, used
    cdef long lo, hi, xi, yi, N, lin, rest, acc
    for j in range(i + 1, n):
        s += q[i * n + j] * (x[j] + c[j])
    if rem < 0:
        rem = 0
    r = sqrt(rem / q[i * n + i]) + 1e-9
    lo = <long>ceil(-s - r)
    hi = <long>floor(-s + r)
    if i == 0:
        lin = 0
        for j in range(1, n):
            lin += G[j] * y[j]
        rest = 0
        for a in range(1, n):
            if y[a] != 0:
                acc = G[a * n + a] * y[a]
                for b in range(a + 1, n):
                    acc += 2 * G[a * n + b] * y[b]
                rest += y[a] * acc
        for xi in range(lo, hi + 1):
            yi = d * xi + t[0]
            N = G[0] * yi * yi + 2 * yi * lin + rest
            if N <= bound:
                counts[N] += 1
        return
    for xi in range(lo, hi + 1):
        v = xi + s
        used = q[i * n + i] * v * v
        if used <= rem + slack:
            x[i] = xi
            y[i] = d * xi + t[i]
            _rec(i - 1, rem - used, n, d, q, c, x, y, G, t, counts, bound, slack)
    x[i] = 0


def shell_counts(gram, shift, denom, bound):
    """Counts of x in Z^n by N = (d x + t)^T G (d x + t), for N = 0..bound."""
    cdef int n = len(gram)
    cdef long B = bound
    cdef int d = denom
    cdef int i, j, k, l
    if n == 0:
        out = [0] * (bound + 1)
        out[0] = 1
        return out
    cdef double* q = <double*>malloc(n * n * sizeof(double))
    cdef double* c = <double*>malloc(n * sizeof(double))
    cdef long* x = <long*>malloc(n * sizeof(long))
    cdef long* y = <long*>malloc(n * sizeof(long))
    cdef long* G = <long*>malloc(n * n * sizeof(long))
    cdef long* t = <long*>malloc(n * sizeof(long))
    cdef long* counts = <long*>malloc((B + 1) * sizeof(long))
    try:
        for i in range(n):
            t[i] = shift[i]
            c[i] = <double>t[i] / d
            x[i] = 0
            y[i] = 0
            for j in range(n):
                G[i * n + j] = gram[i][j]
                q[i * n + j] = <double>G[i * n + j] * d * d
        for i in range(B + 1):
            counts[i] = 0
        for i in range(n):
            for j in range(i + 1, n):
                q[j * n + i] = q[i * n + j]
                q[i * n + j] = q[i * n + j] / q[i * n + i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k * n + l] -= q[k * n + i] * q[i * n + l]
        slack = 1e-7 * (B + 1)
        with nogil:
            _rec(n - 1, <double>B + slack, n, d, q, c, x, y, G, t, counts, B, slack)
        return [counts[i] for i in range(B + 1)]
    finally:
        free(q); free(c); free(x); free(y); free(G); free(t); free(counts)


def eta_power_coeffs(int k, int order):
    """Coefficients of prod_{n>=1} (1 - q^n)^k through q^order (Python ints, no overflow)."""
    out = [0] * (order + 1)
    out[0] = 1
    cdef int n, m, rep, reps = abs(k)
    if k == 0:
        return out
    for n in range(1, order + 1):
        for rep in range(reps):
            if k > 0:
                for m in range(order, n - 1, -1):
                    out[m] -= out[m - n]
            else:
                for m in range(n, order + 1):
                    out[m] += out[m - n]
    return out
