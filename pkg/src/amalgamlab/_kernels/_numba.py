"""Numba-jitted kernel implementations (default backend).

Loop-level twins of `_numpy`; each output element is produced by one
sequential accumulation, so results are deterministic under prange.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def pow_sum_axis0(a, p):
    n0, m = a.shape
    out = np.zeros(m)
    comp = np.zeros(m)
    for i in range(n0):
        for j in range(m):
            y = a[i, j] ** p - comp[j]
            t = out[j] + y
            comp[j] = (t - out[j]) - y
            out[j] = t
    return out


@njit(cache=True)
def max_axis0(a):
    n0, m = a.shape
    out = np.zeros(m)
    for j in range(m):
        best = a[0, j]
        for i in range(1, n0):
            if a[i, j] > best:
                best = a[i, j]
        out[j] = best
    return out


@njit(cache=True)
def ball_mixed_norm_1d(a, h1, p1, w1):
    n = a.shape[0]
    out = np.empty(n)
    inf1 = np.isinf(p1)
    for c in range(n):
        lo = c - w1
        hi = c + w1
        if lo < 0:
            lo = 0
        if hi > n - 1:
            hi = n - 1
        if inf1:
            best = 0.0
            for i in range(lo, hi + 1):
                if a[i] > best:
                    best = a[i]
            out[c] = best
        else:
            s = 0.0
            for i in range(lo, hi + 1):
                s += a[i] ** p1
            out[c] = (h1 * s) ** (1.0 / p1)
    return out


@njit(cache=True, parallel=True)
def ball_mixed_norm_2d(a, h1, h2, p1, p2, halfwidths, w2):
    n1, n2 = a.shape
    out = np.empty((n1, n2))
    inf1 = np.isinf(p1)
    inf2 = np.isinf(p2)
    for c1 in prange(n1):
        for c2 in range(n2):
            acc = 0.0
            for t in range(halfwidths.shape[0]):
                j = c2 + t - w2
                if j < 0 or j >= n2:
                    continue
                w1 = halfwidths[t]
                if w1 < 0:
                    continue
                lo = c1 - w1
                hi = c1 + w1
                if lo < 0:
                    lo = 0
                if hi > n1 - 1:
                    hi = n1 - 1
                if inf1:
                    row = 0.0
                    for i in range(lo, hi + 1):
                        if a[i, j] > row:
                            row = a[i, j]
                else:
                    s = 0.0
                    for i in range(lo, hi + 1):
                        s += a[i, j] ** p1
                    row = (h1 * s) ** (1.0 / p1)
                if inf2:
                    if row > acc:
                        acc = row
                else:
                    acc += row ** p2
            out[c1, c2] = acc if inf2 else (h2 * acc) ** (1.0 / p2)
    return out


@njit(cache=True, parallel=True)
def ball_mixed_norm_3d(a, h1, h2, h3, p1, p2, p3, halfwidths, w2, w3):
    n1, n2, n3 = a.shape
    out = np.empty((n1, n2, n3))
    inf1 = np.isinf(p1)
    inf2 = np.isinf(p2)
    inf3 = np.isinf(p3)
    for c1 in prange(n1):
        for c2 in range(n2):
            for c3 in range(n3):
                acc3 = 0.0
                for u in range(halfwidths.shape[0]):
                    k = c3 + u - w3
                    if k < 0 or k >= n3:
                        continue
                    acc2 = 0.0
                    any_row = False
                    for t in range(halfwidths.shape[1]):
                        j = c2 + t - w2
                        if j < 0 or j >= n2:
                            continue
                        w1 = halfwidths[u, t]
                        if w1 < 0:
                            continue
                        any_row = True
                        lo = c1 - w1
                        hi = c1 + w1
                        if lo < 0:
                            lo = 0
                        if hi > n1 - 1:
                            hi = n1 - 1
                        if inf1:
                            row = 0.0
                            for i in range(lo, hi + 1):
                                if a[i, j, k] > row:
                                    row = a[i, j, k]
                        else:
                            s = 0.0
                            for i in range(lo, hi + 1):
                                s += a[i, j, k] ** p1
                            row = (h1 * s) ** (1.0 / p1)
                        if inf2:
                            if row > acc2:
                                acc2 = row
                        else:
                            acc2 += row ** p2
                    if not any_row:
                        continue
                    plane = acc2 if inf2 else (h2 * acc2) ** (1.0 / p2)
                    if inf3:
                        if plane > acc3:
                            acc3 = plane
                    else:
                        acc3 += plane ** p3
                out[c1, c2, c3] = acc3 if inf3 else (h3 * acc3) ** (1.0 / p3)
    return out


@njit(cache=True, parallel=True)
def riesz_1d(vals, h, gamma):
    n = vals.shape[0]
    out = np.zeros_like(vals)
    hh = 0.5 * h
    inv_g = 1.0 / gamma
    self_mass = 2.0 * hh ** gamma * inv_g
    for c in prange(n):
        acc = vals[c] * self_mass
        for j in range(n):
            if j == c:
                continue
            d = abs(j - c) * h
            acc += vals[j] * (((d + hh) ** gamma - (d - hh) ** gamma) * inv_g)
        out[c] = acc
    return out


@njit(cache=True, parallel=True)
def riesz_2d(vals, h1, h2, gamma, self_mass):
    n1, n2 = vals.shape
    out = np.zeros_like(vals)
    e = 0.5 * (gamma - 2.0)
    vol = h1 * h2
    for c1 in prange(n1):
        for c2 in range(n2):
            acc = vals[c1, c2] * self_mass
            for i in range(n1):
                dx = (i - c1) * h1
                dx2 = dx * dx
                for j in range(n2):
                    if i == c1 and j == c2:
                        continue
                    dy = (j - c2) * h2
                    acc += vals[i, j] * ((dx2 + dy * dy) ** e * vol)
            out[c1, c2] = acc
    return out


@njit(cache=True, parallel=True)
def riesz_3d(vals, h1, h2, h3, gamma, self_mass):
    n1, n2, n3 = vals.shape
    out = np.zeros_like(vals)
    e = 0.5 * (gamma - 3.0)
    vol = h1 * h2 * h3
    for c1 in prange(n1):
        for c2 in range(n2):
            for c3 in range(n3):
                acc = vals[c1, c2, c3] * self_mass
                for i in range(n1):
                    dx2 = ((i - c1) * h1) ** 2
                    for j in range(n2):
                        dy2 = ((j - c2) * h2) ** 2
                        for k in range(n3):
                            if i == c1 and j == c2 and k == c3:
                                continue
                            dz = (k - c3) * h3
                            acc += vals[i, j, k] * (
                                (dx2 + dy2 + dz * dz) ** e * vol
                            )
                out[c1, c2, c3] = acc
    return out
