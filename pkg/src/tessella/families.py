"""Random members of the tile families, for tests and the acceptance battery.

A polygon is described by its interior angles ``A..`` and edge lengths
``a..`` in label order.  A random start is projected onto the type's
condition manifold (conditions plus angle sum plus closure) with SLSQP,
then rebuilt from the angles and lengths and checked.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.optimize import least_squares, minimize

from .classifier import LETTERS, LabeledPolygon, Relabeling, TileTypeId, matches_type
from .geometry import GeometryError, Polygon, make_polygon

# extra edge conditions that single out the edge-to-edge members of a type
E2E_EXTRA = {
    ("Pentagon", 1): ("a = d",),
    ("Pentagon", 2): ("b = d",),
}


def walk(angles_deg, lengths) -> list[complex]:
    """Vertices A, B, ... from interior angles and edges ``b = AB, c = BC, ...``."""
    n = len(angles_deg)
    z = 0j
    d = 1 + 0j
    pts = [z]
    for i in range(n - 1):
        z += lengths[(i + 1) % n] * d
        pts.append(z)
        d *= complex(math.cos(math.radians(180 - angles_deg[(i + 1) % n])),
                     math.sin(math.radians(180 - angles_deg[(i + 1) % n])))
    return pts


def _closure(x, n):
    ang = x[:n]
    lens = x[n:]
    z = 0j
    heading = 0.0
    for i in range(n):
        z += lens[(i + 1) % n] * complex(math.cos(heading), math.sin(heading))
        heading += math.radians(180 - ang[(i + 1) % n])
    return z


def _system(tt, n, extra_edges=()):
    """Type conditions on ``x = (angles, lengths)`` as ``(fun, jac)``.

    Linear conditions (angle and edge equalities, angle sum, unit mean edge)
    form ``A x = b``; the last two rows are the real and imaginary parts of
    the closure defect.
    """
    from .classifier import _eq
    idx = {LETTERS[i]: i for i in range(n)}
    rows, rhs = [], []
    for c in tt.angle_conds:
        r = np.zeros(2 * n)
        for l, k in c.coeffs:
            r[idx[l]] += k
        rows.append(r)
        rhs.append(c.rhs)
    edge_conds = list(tt.edge_conds)
    for chain in extra_edges:
        edge_conds.extend(_eq(*chain.split("=")))
    for c in edge_conds:
        r = np.zeros(2 * n)
        for l, k in c.coeffs:
            r[n + idx[l.upper()]] += k
        rows.append(r)
        rhs.append(0.0)
    rows.append(np.r_[np.ones(n), np.zeros(n)])
    rhs.append((n - 2) * 180.0)
    rows.append(np.r_[np.zeros(n), np.ones(n)])   # fixes the scale
    rhs.append(float(n))
    A, b = np.array(rows), np.array(rhs)
    turn = math.pi / 180.0

    nxt = (np.arange(n) + 1) % n

    def directions(x):
        # step i runs along edge (i+1) % n with the heading accumulated so far
        heading = np.concatenate([[0.0], np.cumsum(np.radians(180.0 - x[nxt[:-1]]))])
        return np.exp(1j * heading)

    def fun(x):
        z = (directions(x) * x[n + nxt]).sum()
        return np.concatenate([A @ x - b, [z.real, z.imag]])

    def jac(x):
        d = directions(x)
        st = d * x[n + nxt]
        dz = np.zeros(2 * n, dtype=complex)
        dz[n + nxt] = d
        # the angle at vertex (m+1) % n turns every later step
        tail = np.cumsum(st[::-1])[::-1]
        dz[nxt[:-1]] += -1j * turn * tail[1:]
        return np.vstack([A, dz.real, dz.imag])

    return fun, jac


def sample_polygon(t: TileTypeId, rng: np.random.Generator, e2e: bool = False,
                   attempts: int = 200, margin: float = 4.0) -> LabeledPolygon:
    """A random polygon of type ``t``, labeled so the type conditions hold.

    ``e2e`` adds the extra conditions of the edge-to-edge subfamily where a
    type has one.  Angles stay at least ``margin`` degrees away from 0 and
    180 so the result is comfortably strictly convex.
    """
    tt = t.table
    n = tt.sides
    extra = E2E_EXTRA.get((t.kind, t.index), ()) if e2e else ()
    fun, jac = _system(tt, n, extra)
    eq = [{"type": "eq", "fun": fun, "jac": jac}]
    bounds = [(margin, 180 - margin)] * n + [(0.15, 3.0)] * n
    for _ in range(attempts):
        ang0 = rng.uniform(60, 160, n)
        ang0 *= (n - 2) * 180.0 / ang0.sum()
        x0 = np.concatenate([ang0, rng.uniform(0.5, 1.5, n)])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            res = minimize(lambda x: float(np.sum((x - x0) ** 2)), x0, jac=lambda x: 2 * (x - x0),
                           method="SLSQP", constraints=eq, bounds=bounds,
                           options={"ftol": 1e-15, "maxiter": 500})
        x = res.x
        if not res.success:
            # rigid types carry more (consistent) equations than unknowns,
            # which SLSQP refuses; a least-squares solve handles them
            ls = least_squares(fun, x0, jac=jac, method="trf",
                               xtol=1e-15, ftol=1e-15, gtol=1e-15)
            x = ls.x
        if np.max(np.abs(fun(x))) > 1e-9:
            continue
        if min(x[:n]) < margin - 1e-9 or max(x[:n]) > 180 - margin + 1e-9:
            continue
        pts = walk(x[:n], x[n:])
        try:
            poly = make_polygon(pts)
        except GeometryError:
            continue
        lp = _labeled(poly, pts)
        if matches_type(lp, t, 1e-8):
            return lp
    raise RuntimeError(f"could not sample a polygon of type {t}")


def _labeled(poly: Polygon, pts: list[complex]) -> LabeledPolygon:
    """Labeling that puts A on ``pts[0]`` with the walk's orientation."""
    n = len(pts)
    i0 = min(range(n), key=lambda i: abs(complex(poly.vertices[i]) - pts[0]))
    i1 = min(range(n), key=lambda i: abs(complex(poly.vertices[i]) - pts[1]))
    mirrored = (i1 - i0) % n != 1
    return LabeledPolygon(poly, Relabeling(i0, mirrored))


def random_convex(n: int, rng: np.random.Generator, min_angle: float = 8.0) -> Polygon:
    """A random strictly convex n-gon (points on a perturbed circle)."""
    while True:
        gaps = rng.uniform(0.4, 1.0, n)
        th = np.cumsum(gaps) / gaps.sum() * 2 * math.pi
        r = rng.uniform(0.7, 1.3, n)
        pts = [complex(r[i] * math.cos(th[i]), r[i] * math.sin(th[i])) for i in range(n)]
        try:
            p = make_polygon(pts)
        except GeometryError:
            continue
        from .geometry import interior_angles_deg
        angs = interior_angles_deg(p)
        if min(angs) >= min_angle and max(angs) <= 180 - min_angle:
            edges = p.edge_lengths()
            if min(edges) > 0.1 * max(edges):
                return p
