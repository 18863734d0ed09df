"""Pure-Python reference implementations of the numeric kernels."""

from __future__ import annotations

import math


def _ldl(gram, d):
    """Float decomposition Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2 of d^2 * gram."""
    n = len(gram)
    q = [[float(gram[i][j]) * d * d for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def shell_counts(gram, shift, denom, bound):
    """Counts of x in Z^n by N = (d x + t)^T G (d x + t), for N = 0..bound.

    ``gram`` is a positive definite integer matrix, ``shift`` the integer vector t and
    ``denom`` the integer d.  Returns a list of length bound + 1.
    """
    n = len(gram)
    counts = [0] * (bound + 1)
    if n == 0:
        counts[0] = 1
        return counts
    d = int(denom)
    t = [int(v) for v in shift]
    G = [[int(v) for v in row] for row in gram]
    q = _ldl(G, d)
    c = [ti / d for ti in t]
    slack = 1e-7 * (bound + 1)
    x = [0] * n
    y = [0] * n

    def rec(i, rem):
        # center of coordinate i given the coordinates above it
        s = c[i]
        qi = q[i]
        for j in range(i + 1, n):
            s += qi[j] * (x[j] + c[j])
        r = math.sqrt(max(rem, 0.0) / qi[i]) + 1e-9
        lo = math.ceil(-s - r)
        hi = math.floor(-s + r)
        if i == 0:
            G0 = G[0]
            lin = 0
            for j in range(1, n):
                lin += G0[j] * y[j]
            rest = _tail_norm(G, y, n)
            g00 = G0[0]
            for xi in range(lo, hi + 1):
                yi = d * xi + t[0]
                N = g00 * yi * yi + 2 * yi * lin + rest
                if N <= bound:
                    counts[N] += 1
            return
        for xi in range(lo, hi + 1):
            v = xi + s
            used = qi[i] * v * v
            if used <= rem + slack:
                x[i] = xi
                y[i] = d * xi + t[i]
                rec(i - 1, rem - used)
        x[i] = 0

    rec(n - 1, float(bound) + slack)
    return counts


def _tail_norm(G, y, n):
    tot = 0
    for a in range(1, n):
        ga = G[a]
        ya = y[a]
        if ya:
            acc = ga[a] * ya
            for b in range(a + 1, n):
                acc += 2 * ga[b] * y[b]
            tot += ya * acc
    return tot


def eta_power_coeffs(k, order):
    """Coefficients of prod_{n>=1} (1 - q^n)^k through q^order, for any integer k."""
    out = [0] * (order + 1)
    out[0] = 1
    if k == 0:
        return out
    # (1 - q^n)^{|k|} factor by factor; for k < 0 divide by (1 - q^n) repeatedly
    reps = abs(k)
    for n in range(1, order + 1):
        for _ in range(reps):
            if k > 0:
                for m in range(order, n - 1, -1):
                    out[m] -= out[m - n]
            else:
                for m in range(n, order + 1):
                    out[m] += out[m - n]
    return out
