# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the tiling validator.

Polygons arrive packed: ``xy`` is an (N, 2) float64 array of all vertices and
``offsets`` an int64 array with polygon k spanning ``offsets[k]:offsets[k+1]``.
Every polygon is convex and counterclockwise.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, floor, ceil

cnp.import_array()


cdef inline bint _separated(double[:, ::1] xy, long a0, long a1, long b0, long b1, double eps) nogil:
    # does some edge of polygon a separate polygon b (touching allowed)?
    cdef long i, j, nxt
    cdef double ex, ey, L, c
    cdef bint all_out
    for i in range(a0, a1):
        nxt = i + 1 if i + 1 < a1 else a0
        ex = xy[nxt, 0] - xy[i, 0]
        ey = xy[nxt, 1] - xy[i, 1]
        L = sqrt(ex * ex + ey * ey)
        all_out = True
        for j in range(b0, b1):
            c = ex * (xy[j, 1] - xy[i, 1]) - ey * (xy[j, 0] - xy[i, 0])
            if c > eps * L:
                all_out = False
                break
        if all_out:
            return True
    return False


def overlap_pairs(double[:, ::1] xy, long[::1] offsets, long[:, ::1] pairs, double eps):
    """Boolean array: do the interiors of each candidate pair intersect?"""
    cdef Py_ssize_t k, npairs = pairs.shape[0]
    cdef long p, q
    out = np.zeros(npairs, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    with nogil:
        for k in range(npairs):
            p = pairs[k, 0]
            q = pairs[k, 1]
            if _separated(xy, offsets[p], offsets[p + 1], offsets[q], offsets[q + 1], eps):
                continue
            if _separated(xy, offsets[q], offsets[q + 1], offsets[p], offsets[p + 1], eps):
                continue
            res[k] = 1
    return out.astype(bool)


def cover_grid(double[:, ::1] xy, long[::1] offsets, double x0, double y0,
               double pitch, long nx, long ny, double eps):
    """Mark grid points ``(x0 + i*pitch, y0 + j*pitch)`` lying in some closed polygon."""
    grid = np.zeros((ny, nx), dtype=np.uint8)
    cdef unsigned char[:, ::1] g = grid
    cdef Py_ssize_t t, ntiles = offsets.shape[0] - 1
    cdef long a0, a1, v, nxt, i, j, i0, i1, j0, j1
    cdef double minx, maxx, miny, maxy, px, py, ex, ey, L, c
    cdef bint inside
    with nogil:
        for t in range(ntiles):
            a0 = offsets[t]
            a1 = offsets[t + 1]
            minx = xy[a0, 0]; maxx = minx
            miny = xy[a0, 1]; maxy = miny
            for v in range(a0 + 1, a1):
                if xy[v, 0] < minx: minx = xy[v, 0]
                if xy[v, 0] > maxx: maxx = xy[v, 0]
                if xy[v, 1] < miny: miny = xy[v, 1]
                if xy[v, 1] > maxy: maxy = xy[v, 1]
            i0 = <long>ceil((minx - x0) / pitch - 1e-9)
            i1 = <long>floor((maxx - x0) / pitch + 1e-9)
            j0 = <long>ceil((miny - y0) / pitch - 1e-9)
            j1 = <long>floor((maxy - y0) / pitch + 1e-9)
            if i0 < 0: i0 = 0
            if j0 < 0: j0 = 0
            if i1 > nx - 1: i1 = nx - 1
            if j1 > ny - 1: j1 = ny - 1
            for j in range(j0, j1 + 1):
                py = y0 + j * pitch
                for i in range(i0, i1 + 1):
                    if g[j, i]:
                        continue
                    px = x0 + i * pitch
                    inside = True
                    for v in range(a0, a1):
                        nxt = v + 1 if v + 1 < a1 else a0
                        ex = xy[nxt, 0] - xy[v, 0]
                        ey = xy[nxt, 1] - xy[v, 1]
                        L = sqrt(ex * ex + ey * ey)
                        c = ex * (py - xy[v, 1]) - ey * (px - xy[v, 0])
                        if c < -eps * L:
                            inside = False
                            break
                    if inside:
                        g[j, i] = 1
    return grid.astype(bool)


cdef inline int _edge_contact(double ax, double ay, double bx, double by,
                              double cx, double cy, double dx, double dy, double eps) nogil:
    # 0: fine, 1: partial collinear overlap or a vertex inside the other edge
    cdef double ex = bx - ax, ey = by - ay
    cdef double L2 = ex * ex + ey * ey
    cdef double L = sqrt(L2)
    cdef double c1 = ex * (cy - ay) - ey * (cx - ax)
    cdef double c2 = ex * (dy - ay) - ey * (dx - ax)
    cdef double t1, t2, lo, hi, tol
    if fabs(c1) <= eps * L and fabs(c2) <= eps * L:
        t1 = (ex * (cx - ax) + ey * (cy - ay)) / L2
        t2 = (ex * (dx - ax) + ey * (dy - ay)) / L2
        lo = t1 if t1 < t2 else t2
        hi = t2 if t1 < t2 else t1
        tol = eps / L
        if hi <= tol or lo >= 1.0 - tol:
            return 0
        if fabs(lo) <= tol and fabs(hi - 1.0) <= tol:
            return 0
        return 1
    return 0


cdef inline bint _strictly_inside_edge(double px, double py, double ax, double ay,
                                       double bx, double by, double eps) nogil:
    cdef double ex = bx - ax, ey = by - ay
    cdef double L2 = ex * ex + ey * ey
    cdef double L = sqrt(L2)
    cdef double c = ex * (py - ay) - ey * (px - ax)
    cdef double t
    if fabs(c) > eps * L:
        return False
    t = (ex * (px - ax) + ey * (py - ay)) / L2
    return t > eps / L and t < 1.0 - eps / L


def edge_to_edge_pairs(double[:, ::1] xy, long[::1] offsets, long[:, ::1] pairs, double eps):
    """Boolean array: does each pair meet in something other than a shared vertex or full edge?"""
    cdef Py_ssize_t k, npairs = pairs.shape[0]
    cdef long p, q, i, j, ni, nj, a0, a1, b0, b1
    cdef bint bad
    out = np.zeros(npairs, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    with nogil:
        for k in range(npairs):
            p = pairs[k, 0]
            q = pairs[k, 1]
            a0 = offsets[p]; a1 = offsets[p + 1]
            b0 = offsets[q]; b1 = offsets[q + 1]
            bad = False
            for i in range(a0, a1):
                ni = i + 1 if i + 1 < a1 else a0
                for j in range(b0, b1):
                    nj = j + 1 if j + 1 < b1 else b0
                    if _edge_contact(xy[i, 0], xy[i, 1], xy[ni, 0], xy[ni, 1],
                                     xy[j, 0], xy[j, 1], xy[nj, 0], xy[nj, 1], eps):
                        bad = True
                        break
                    if _strictly_inside_edge(xy[j, 0], xy[j, 1], xy[i, 0], xy[i, 1],
                                             xy[ni, 0], xy[ni, 1], eps):
                        bad = True
                        break
                    if _strictly_inside_edge(xy[i, 0], xy[i, 1], xy[j, 0], xy[j, 1],
                                             xy[nj, 0], xy[nj, 1], eps):
                        bad = True
                        break
                if bad:
                    break
            res[k] = bad
    return out.astype(bool)
