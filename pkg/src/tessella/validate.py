"""Finite-window checks: overlap, coverage, edge-to-edge, monohedrality, periods.

The plane-level definitions only make sense on the whole plane; every check
here works on the tiles of a finite patch and, where coverage matters, on
the tiling's window (or an explicit one).  Geometry is done in floats with
the global tolerance from :mod:`tessella.num`.  Kernels assume convex tiles;
non-convex tiles (the dart, some recomposed regions) are cut into triangles
for the overlap and coverage checks.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from . import kernels, num
from .geometry import Polygon, congruent, make_polygon
from .tiling import Tiling, Window


def pack(polys: list[Polygon]) -> tuple[np.ndarray, np.ndarray]:
    counts = [len(p) for p in polys]
    offsets = np.zeros(len(polys) + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    xy = np.empty((int(offsets[-1]), 2), dtype=np.float64)
    k = 0
    for p in polys:
        for z in p.float_vertices():
            xy[k, 0] = z.real
            xy[k, 1] = z.imag
            k += 1
    return xy, offsets


def candidate_pairs(polys: list[Polygon], pad: float = 1e-7) -> np.ndarray:
    """Index pairs (i < j) whose bounding boxes touch, via a uniform grid."""
    if len(polys) < 2:
        return np.zeros((0, 2), dtype=np.int64)
    xy, offsets = pack(polys)
    lo = np.minimum.reduceat(xy, offsets[:-1], axis=0) - pad
    hi = np.maximum.reduceat(xy, offsets[:-1], axis=0) + pad
    size = float(np.median(np.max(hi - lo, axis=1))) or 1.0
    buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i in range(len(polys)):
        for gx in range(int(math.floor(lo[i, 0] / size)), int(math.floor(hi[i, 0] / size)) + 1):
            for gy in range(int(math.floor(lo[i, 1] / size)), int(math.floor(hi[i, 1] / size)) + 1):
                buckets[(gx, gy)].append(i)
    pairs = set()
    for members in buckets.values():
        for a in range(len(members)):
            i = members[a]
            for b in range(a + 1, len(members)):
                j = members[b]
                if (lo[i, 0] <= hi[j, 0] and lo[j, 0] <= hi[i, 0]
                        and lo[i, 1] <= hi[j, 1] and lo[j, 1] <= hi[i, 1]):
                    pairs.add((i, j) if i < j else (j, i))
    return np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)


def _is_convex(vs: list[complex]) -> bool:
    n = len(vs)
    for i in range(n):
        a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
        if ((b - a).conjugate() * (c - b)).imag <= 0:
            return False
    return True


def _ear_clip(vs: list[complex]) -> list[list[complex]]:
    """Triangles of a simple CCW polygon."""
    def cr(a, b, c):
        return ((b - a).conjugate() * (c - a)).imag

    idx = list(range(len(vs)))
    out = []
    while len(idx) > 3:
        for k in range(len(idx)):
            i, j, m = idx[k - 1], idx[k], idx[(k + 1) % len(idx)]
            a, b, c = vs[i], vs[j], vs[m]
            if cr(a, b, c) <= 1e-14:
                continue
            if any(cr(a, b, vs[q]) >= 0 and cr(b, c, vs[q]) >= 0 and cr(c, a, vs[q]) >= 0
                   for q in idx if q not in (i, j, m)):
                continue
            out.append([a, b, c])
            del idx[k]
            break
        else:
            raise ValueError("polygon is not simple")
    out.append([vs[q] for q in idx])
    return out


def convex_parts(polys: list[Polygon]) -> tuple[list[Polygon], list[int]]:
    """Convex polygons covering each tile exactly, with their owning tile."""
    parts, owner = [], []
    for i, p in enumerate(polys):
        vs = p.float_vertices()
        if _is_convex(vs):
            parts.append(p)
            owner.append(i)
            continue
        for tri in _ear_clip(vs):
            parts.append(make_polygon(tri))
            owner.append(i)
    return parts, owner


def _length_scale(polys: list[Polygon]) -> float:
    return max(max(p.edge_lengths()) for p in polys) if polys else 1.0


def check_no_overlap(t: Tiling) -> list[tuple[int, int]]:
    """All tile pairs whose interiors intersect, sorted."""
    polys, owner = convex_parts(t.polygons)
    pairs = candidate_pairs(polys)
    if not len(pairs):
        return []
    xy, offsets = pack(polys)
    eps = num.EPS * max(1.0, _length_scale(polys)) * 100
    hit = kernels.overlap_pairs(xy, offsets, pairs, eps)
    out = {tuple(sorted((owner[i], owner[j]))) for i, j in pairs[hit] if owner[i] != owner[j]}
    return sorted(out)


def shortest_edge(polys: list[Polygon]) -> float:
    return min(min(p.edge_lengths()) for p in polys)


def check_coverage(t: Tiling, window: Window | None = None, pitch: float | None = None,
                   info: dict | None = None) -> list[tuple[float, float]]:
    """Witness points of uncovered parts of ``window``; empty iff covered.

    Dense sampling on a grid of pitch at most shortest-edge/8; one witness per
    connected uncovered component.  ``info`` (if given) receives the method
    and pitch actually used.
    """
    (x0, y0), (x1, y1) = window or t.window
    polys = t.polygons
    if pitch is None:
        base = shortest_edge(polys) if polys else max(x1 - x0, y1 - y0)
        pitch = base / 8.0
    nx = int(math.floor((x1 - x0) / pitch)) + 1
    ny = int(math.floor((y1 - y0) / pitch)) + 1
    if info is not None:
        info.update({"method": "grid-sampling", "pitch": pitch, "window": [[x0, y0], [x1, y1]]})
    if not polys:
        return [((x0 + x1) / 2, (y0 + y1) / 2)]
    polys, _ = convex_parts(polys)
    # sample cell centres so grid lines never run along tile edges
    gx0 = x0 + ((x1 - x0) - (nx - 1) * pitch) / 2
    gy0 = y0 + ((y1 - y0) - (ny - 1) * pitch) / 2
    xy, offsets = pack(polys)
    eps = num.EPS * max(1.0, _length_scale(polys)) * 100
    covered = kernels.cover_grid(xy, offsets, gx0, gy0, pitch, nx, ny, eps)
    holes = ~covered
    if not holes.any():
        return []
    labels, count = ndimage.label(holes)
    witnesses = []
    for lab in range(1, count + 1):
        js, is_ = np.nonzero(labels == lab)
        k = len(js) // 2
        witnesses.append((gx0 + is_[k] * pitch, gy0 + js[k] * pitch))
    return witnesses


def check_edge_to_edge(t: Tiling) -> list[tuple[int, int]]:
    """Pairs meeting in a partial edge or a vertex in the middle of an edge."""
    polys = t.polygons
    pairs = candidate_pairs(polys)
    if not len(pairs):
        return []
    xy, offsets = pack(polys)
    eps = num.EPS * max(1.0, _length_scale(polys)) * 100
    bad = kernels.edge_to_edge_pairs(xy, offsets, pairs, eps)
    return [tuple(map(int, p)) for p in pairs[bad]]


def prototile_classes(t: Tiling) -> list[list[str]]:
    """Congruence classes (reflections allowed) of the prototiles in use."""
    used = sorted({tile.prototile for tile in t.tiles}) or sorted(t.prototiles)
    classes: list[list[str]] = []
    for name in used:
        poly = t.prototiles[name].polygon
        for cls in classes:
            if congruent(t.prototiles[cls[0]].polygon, poly, allow_reflection=True) is not None:
                cls.append(name)
                break
        else:
            classes.append([name])
    return classes


def check_monohedral(t: Tiling) -> bool:
    return len(prototile_classes(t)) <= 1


# ---------------------------------------------------------------------------
# periodicity

def _tile_keys(polys: list[Polygon], q: float):
    cents = []
    shapes = []
    for p in polys:
        vs = p.float_vertices()
        c = sum(vs) / len(vs)
        cents.append(c)
        shapes.append(tuple(sorted((round((v - c).real / q), round((v - c).imag / q)) for v in vs)))
    return cents, shapes


def _inside(poly_xy: np.ndarray, shift: complex, window: Window, tol: float) -> bool:
    (x0, y0), (x1, y1) = window
    xs = poly_xy[:, 0] + shift.real
    ys = poly_xy[:, 1] + shift.imag
    return bool(xs.min() >= x0 - tol and xs.max() <= x1 + tol and ys.min() >= y0 - tol and ys.max() <= y1 + tol)


class _PeriodChecker:
    """Shared indexes for testing many candidate translations on one patch."""

    def __init__(self, t: Tiling, window: Window | None, min_support: float):
        polys = t.polygons
        self.n = len(polys)
        scale = _length_scale(polys)
        self.q = max(scale, 1.0) * 1e-6
        self.cents, self.shapes = _tile_keys(polys, self.q)
        self.xy, self.offsets = pack(polys)
        if window is None:
            lo = self.xy.min(axis=0)
            hi = self.xy.max(axis=0)
            window = ((float(lo[0]), float(lo[1])), (float(hi[0]), float(hi[1])))
        self.window = window
        self.min_support = min_support
        self.index = defaultdict(list)
        for c, s in zip(self.cents, self.shapes):
            self.index[self._cell(c, 100)].append((c, s))
        # point location buckets, one tile diameter wide
        self.cell = scale
        self.buckets = defaultdict(list)
        for i in range(self.n):
            p = self.xy[self.offsets[i]:self.offsets[i + 1]]
            lo, hi = p.min(axis=0), p.max(axis=0)
            for gx in range(int(math.floor(lo[0] / scale)), int(math.floor(hi[0] / scale)) + 1):
                for gy in range(int(math.floor(lo[1] / scale)), int(math.floor(hi[1] / scale)) + 1):
                    self.buckets[(gx, gy)].append(i)

    def _cell(self, c, f):
        return (round(c.real / (self.q * f)), round(c.imag / (self.q * f)))

    def matches(self, c, s) -> bool:
        kx, ky = self._cell(c, 100)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for c2, s2 in self.index.get((kx + dx, ky + dy), ()):
                    if abs(c2 - c) <= self.q * 10 and s2 == s:
                        return True
        return False

    def covered(self, z: complex) -> bool:
        key = (int(math.floor(z.real / self.cell)), int(math.floor(z.imag / self.cell)))
        for i in self.buckets.get(key, ()):
            p = self.xy[self.offsets[i]:self.offsets[i + 1]]
            e = np.roll(p, -1, axis=0) - p
            c = e[:, 0] * (z.imag - p[:, 1]) - e[:, 1] * (z.real - p[:, 0])
            if np.all(c > -self.q):
                return True
        return False

    def is_period(self, v: complex) -> bool:
        checked = 0
        for i in range(self.n):
            poly = self.xy[self.offsets[i]:self.offsets[i + 1]]
            if not _inside(poly, v, self.window, self.q):
                continue
            c = self.cents[i] + v
            if self.matches(c, self.shapes[i]):
                checked += 1
            elif self.covered(c):
                return False
        return checked >= 2 and checked >= self.min_support * self.n


def is_period(t: Tiling, v: complex, window: Window | None = None, min_support: float = 0.2) -> bool:
    """Does translation by ``v`` carry the patch onto itself where both overlap?"""
    return _PeriodChecker(t, window, min_support).is_period(v)


def detect_periodicity(t: Tiling, window: Window | None = None,
                       min_support: float = 0.2) -> tuple[complex, complex] | None:
    """Two independent translation periods of the patch, Lagrange-reduced, or None.

    A translation passes when every tile whose translate lies inside the
    window (default: the patch's bounding box) and lands on covered ground
    lands exactly on a tile of the same shape and orientation, and at least
    ``min_support`` of all tiles were tested that way.  Candidates are
    differences between tiles congruent by translation to an anchor tile
    near the middle of the patch; all of them are tried, shortest first.
    """
    if len(t.tiles) < 2:
        return None
    pc = _PeriodChecker(t, window, min_support)
    q = pc.q
    (x0, y0), (x1, y1) = pc.window
    mid = complex((x0 + x1) / 2, (y0 + y1) / 2)
    anchors = sorted(range(pc.n), key=lambda i: abs(pc.cents[i] - mid))[:3]
    cands = set()
    for a in anchors:
        for j in range(pc.n):
            if j != a and pc.shapes[j] == pc.shapes[a]:
                d = pc.cents[j] - pc.cents[a]
                cands.add((round(d.real / q) * q, round(d.imag / q) * q))
                cands.add((-round(d.real / q) * q, -round(d.imag / q) * q))
    ordered = sorted((complex(*c) for c in cands), key=lambda z: (round(abs(z), 9), z.real, z.imag))
    periods: list[complex] = []
    for v in ordered:
        if abs(v) <= q:
            continue
        if periods and abs(periods[0].real * v.imag - periods[0].imag * v.real) <= q * abs(v) * 10:
            continue  # parallel to the first period
        if pc.is_period(v):
            periods.append(v)
            if len(periods) == 2:
                return reduce_basis(periods[0], periods[1])
    return None


def reduce_basis(u: complex, v: complex) -> tuple[complex, complex]:
    """Lagrange-Gauss reduction of a 2D lattice basis."""
    if abs(u) > abs(v):
        u, v = v, u
    while True:
        m = round((u.real * v.real + u.imag * v.imag) / (abs(u) ** 2))
        v = v - m * u
        if abs(v) >= abs(u) - 1e-12:
            return u, v
        u, v = v, u


def same_lattice(basis_a, basis_b, tol: float = 1e-6) -> bool:
    return in_lattice(basis_a, basis_b, tol) and in_lattice(basis_b, basis_a, tol)


def in_lattice(vectors, basis, tol: float = 1e-6) -> bool:
    """Are all ``vectors`` integer combinations of ``basis``?"""
    a, b = basis
    det = a.real * b.imag - a.imag * b.real
    if abs(det) < tol:
        return False
    for v in vectors:
        s = (v.real * b.imag - v.imag * b.real) / det
        r = (a.real * v.imag - a.imag * v.real) / det
        if abs(s - round(s)) > tol or abs(r - round(r)) > tol:
            return False
    return True


# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    window: Window
    overlaps: list = field(default_factory=list)
    gaps: list = field(default_factory=list)
    edge_to_edge_violations: list = field(default_factory=list)
    monohedral: bool = True
    prototile_count: int = 1
    periodicity: tuple[complex, complex] | None = None
    coverage_info: dict = field(default_factory=dict)
    tile_count: int = 0

    @property
    def no_overlap(self) -> bool:
        return not self.overlaps

    @property
    def covered(self) -> bool:
        return not self.gaps

    @property
    def edge_to_edge(self) -> bool:
        return not self.edge_to_edge_violations

    @property
    def periodic(self) -> bool:
        return self.periodicity is not None

    def all_pass(self, require_monohedral: bool = True, require_periodic: bool = True) -> bool:
        ok = self.no_overlap and self.covered and self.edge_to_edge
        if require_monohedral:
            ok = ok and self.monohedral
        if require_periodic:
            ok = ok and self.periodic
        return ok

    def to_json(self) -> dict:
        per = None
        if self.periodicity is not None:
            per = [[v.real, v.imag] for v in self.periodicity]
        return {
            "schema_version": 1,
            "window": [list(self.window[0]), list(self.window[1])],
            "tile_count": self.tile_count,
            "overlaps": [list(p) for p in self.overlaps],
            "gaps": [list(g) for g in self.gaps],
            "edge_to_edge_violations": [list(p) for p in self.edge_to_edge_violations],
            "monohedral": self.monohedral,
            "prototile_count": self.prototile_count,
            "periodicity": per,
            "coverage": self.coverage_info,
            "pass": {
                "no_overlap": self.no_overlap,
                "coverage": self.covered,
                "edge_to_edge": self.edge_to_edge,
                "monohedral": self.monohedral,
                "periodic": self.periodic,
            },
        }


def validate(t: Tiling, periodicity: bool = True) -> ValidationReport:
    info: dict = {}
    classes = prototile_classes(t)
    rep = ValidationReport(
        window=t.window,
        overlaps=check_no_overlap(t),
        gaps=check_coverage(t, info=info),
        edge_to_edge_violations=check_edge_to_edge(t),
        monohedral=len(classes) <= 1,
        prototile_count=len(classes),
        coverage_info=info,
        tile_count=len(t.tiles),
    )
    if periodicity:
        rep.periodicity = detect_periodicity(t)
    return rep


def rectangle_in_convex(poly_pts: list[complex], margin: float = 0.0) -> Window:
    """A large axis-aligned rectangle inside a convex region (CCW vertices)."""
    poly = make_polygon(poly_pts)
    vs = poly.float_vertices()
    c = sum(vs) / len(vs)
    edges = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def fits(hw, hh):
        for a, b in edges:
            e = b - a
            L = abs(e)
            for sx in (-1, 1):
                for sy in (-1, 1):
                    p = c + complex(sx * hw, sy * hh)
                    if (e.real * (p - a).imag - e.imag * (p - a).real) / L < margin:
                        return False
        return True

    best = (0.0, 0.0)
    for k in range(1, 40):
        aspect = math.tan(math.pi / 2 * k / 40)
        lo, hi = 0.0, max(abs(v - c) for v in vs)
        for _ in range(50):
            mid = (lo + hi) / 2
            if fits(mid, mid * aspect):
                lo = mid
            else:
                hi = mid
        if lo * lo * aspect > best[0] * best[1]:
            best = (lo, lo * aspect)
    hw, hh = best
    if hw <= 0 or hh <= 0:
        raise ValueError("region too small for a window")
    return ((c.real - hw, c.imag - hh), (c.real + hw, c.imag + hh))
