"""Pure-Python/numpy versions of the routines in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built.
"""
from __future__ import annotations

import math

import numpy as np


def _separated(xy, a0, a1, b0, b1, eps):
    a = xy[a0:a1]
    b = xy[b0:b1]
    e = np.roll(a, -1, axis=0) - a
    L = np.hypot(e[:, 0], e[:, 1])
    # c[i, j] = cross(edge i, b_j - a_i)
    c = e[:, None, 0] * (b[None, :, 1] - a[:, None, 1]) - e[:, None, 1] * (b[None, :, 0] - a[:, None, 0])
    return bool(np.any(np.all(c <= eps * L[:, None], axis=1)))


def overlap_pairs(xy, offsets, pairs, eps):
    out = np.zeros(len(pairs), dtype=bool)
    for k, (p, q) in enumerate(pairs):
        if _separated(xy, offsets[p], offsets[p + 1], offsets[q], offsets[q + 1], eps):
            continue
        if _separated(xy, offsets[q], offsets[q + 1], offsets[p], offsets[p + 1], eps):
            continue
        out[k] = True
    return out


def cover_grid(xy, offsets, x0, y0, pitch, nx, ny, eps):
    grid = np.zeros((ny, nx), dtype=bool)
    for t in range(len(offsets) - 1):
        poly = xy[offsets[t]:offsets[t + 1]]
        minx, miny = poly.min(axis=0)
        maxx, maxy = poly.max(axis=0)
        i0 = max(0, math.ceil((minx - x0) / pitch - 1e-9))
        i1 = min(nx - 1, math.floor((maxx - x0) / pitch + 1e-9))
        j0 = max(0, math.ceil((miny - y0) / pitch - 1e-9))
        j1 = min(ny - 1, math.floor((maxy - y0) / pitch + 1e-9))
        if i1 < i0 or j1 < j0:
            continue
        px = x0 + np.arange(i0, i1 + 1) * pitch
        py = y0 + np.arange(j0, j1 + 1) * pitch
        X, Y = np.meshgrid(px, py)
        inside = np.ones_like(X, dtype=bool)
        e = np.roll(poly, -1, axis=0) - poly
        for (ax, ay), (ex, ey) in zip(poly, e):
            L = math.hypot(ex, ey)
            inside &= ex * (Y - ay) - ey * (X - ax) >= -eps * L
        grid[j0:j1 + 1, i0:i1 + 1] |= inside
    return grid


def _edge_contact(a, b, c, d, eps):
    ex, ey = b[0] - a[0], b[1] - a[1]
    L2 = ex * ex + ey * ey
    L = math.sqrt(L2)
    c1 = ex * (c[1] - a[1]) - ey * (c[0] - a[0])
    c2 = ex * (d[1] - a[1]) - ey * (d[0] - a[0])
    if abs(c1) <= eps * L and abs(c2) <= eps * L:
        t1 = (ex * (c[0] - a[0]) + ey * (c[1] - a[1])) / L2
        t2 = (ex * (d[0] - a[0]) + ey * (d[1] - a[1])) / L2
        lo, hi = min(t1, t2), max(t1, t2)
        tol = eps / L
        if hi <= tol or lo >= 1.0 - tol:
            return False
        if abs(lo) <= tol and abs(hi - 1.0) <= tol:
            return False
        return True
    return False


def _strictly_inside_edge(p, a, b, eps):
    ex, ey = b[0] - a[0], b[1] - a[1]
    L2 = ex * ex + ey * ey
    L = math.sqrt(L2)
    c = ex * (p[1] - a[1]) - ey * (p[0] - a[0])
    if abs(c) > eps * L:
        return False
    t = (ex * (p[0] - a[0]) + ey * (p[1] - a[1])) / L2
    return eps / L < t < 1.0 - eps / L


def edge_to_edge_pairs(xy, offsets, pairs, eps):
    out = np.zeros(len(pairs), dtype=bool)
    pts = xy.tolist()
    for k, (p, q) in enumerate(pairs):
        A = pts[offsets[p]:offsets[p + 1]]
        B = pts[offsets[q]:offsets[q + 1]]
        bad = False
        for i in range(len(A)):
            a, b = A[i], A[(i + 1) % len(A)]
            for j in range(len(B)):
                c, d = B[j], B[(j + 1) % len(B)]
                if (_edge_contact(a, b, c, d, eps) or _strictly_inside_edge(c, a, b, eps)
                        or _strictly_inside_edge(a, c, d, eps)):
                    bad = True
                    break
            if bad:
                break
        out[k] = bad
    return out
