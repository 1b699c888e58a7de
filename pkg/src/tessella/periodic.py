"""Periodic tilings from fundamental regions.

Triangles and quadrilaterals use the half-turn constructions: two copies
make a parallelogram or a centrally symmetric hexagon, which tiles by
translation.  Hexagon and pentagon types use gluing programs.  A program
says, for every tile class and labeled edge, which class and edge sits on
the other side and whether the endpoints are matched straight or crossed.
Unfolding a program from one tile gives the tiling; the tiles of one class
that share a linear part differ by a translation of the tiling, which
yields the lattice, and one tile per (class, linear part) is a
fundamental region.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .classifier import (LETTERS, QUADRILATERAL, TRIANGLE, LabeledPolygon,
                         TileTypeId, matches_type)
from .geometry import Isometry, Polygon
from .num import EPS
from .tiling import PlacedTile, Prototile, Tiling
from .validate import rectangle_in_convex, reduce_basis


class TypeConditionNotMet(ValueError):
    pass


class UnsupportedType(ValueError):
    pass


class UnfoldError(RuntimeError):
    """A gluing program produced overlapping or inconsistent tiles."""


@dataclass
class FundamentalRegion:
    prototile: Prototile
    tiles: list[PlacedTile]
    v1: complex
    v2: complex
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if abs((self.v1.conjugate() * self.v2).imag) <= EPS * max(1.0, abs(self.v1) * abs(self.v2)):
            raise ValueError("lattice vectors must be nonparallel")

    def polygons(self) -> list[Polygon]:
        return [t.transform.apply_polygon(self.prototile.polygon) for t in self.tiles]


def _proto(p: Polygon, name: str = "P") -> Prototile:
    return Prototile(name, p)


def _half_turn(m: complex) -> Isometry:
    return Isometry(-1 + 0j, 2 * m, False)


def _floats(p: Polygon) -> Polygon:
    return Polygon(tuple(complex(v) for v in p.vertices))


def triangle_fundamental(t: Polygon) -> FundamentalRegion:
    """Two copies of a triangle (one turned about an edge midpoint) as a parallelogram."""
    if len(t) != 3:
        raise TypeConditionNotMet("triangle_fundamental needs a triangle")
    t = _floats(t)
    v0, v1, v2 = t.vertices
    m = (v1 + v2) / 2
    tiles = [PlacedTile("P", Isometry()), PlacedTile("P", _half_turn(m))]
    return FundamentalRegion(_proto(t), tiles, v1 - v0, v2 - v0, {"type": str(TRIANGLE)})


def quadrilateral_fundamental(q: Polygon) -> FundamentalRegion:
    """Two copies of a quadrilateral as a centrally symmetric hexagon.

    The copy is the quadrilateral turned by 180 degrees about the midpoint
    of its edge V2V3.  The union has vertices V0, V1, V2, 2M-V0, 2M-V1, V3
    with opposite edges parallel and equal.  When two of its angles are
    straight the union is a parallelogram and its sides are used instead.
    """
    if len(q) != 4:
        raise TypeConditionNotMet("quadrilateral_fundamental needs a quadrilateral")
    q = _floats(q)
    v0, v1, v2, v3 = q.vertices
    m = (v2 + v3) / 2
    w = [v0, v1, v2, 2 * m - v0, 2 * m - v1, v3]
    tiles = [PlacedTile("P", Isometry()), PlacedTile("P", _half_turn(m))]
    straight = [i for i in range(6) if _straight(w[i - 1], w[i], w[(i + 1) % 6])]
    if len(straight) == 2:
        corners = [w[i] for i in range(6) if i not in straight]
        a, b, c, _ = corners
        u1, u2 = b - a, c - b
    else:
        u1, u2 = w[1] - w[3], w[3] - w[5]
    return FundamentalRegion(_proto(q), tiles, u1, u2,
                             {"type": str(QUADRILATERAL), "hexagon": [(z.real, z.imag) for z in w]})


def _straight(a: complex, b: complex, c: complex) -> bool:
    u, v = b - a, c - b
    return abs((u.conjugate() * v).imag) <= 1e-9 * abs(u) * abs(v) and (u.conjugate() * v).real > 0


# ---------------------------------------------------------------------------
# gluing programs

@dataclass(frozen=True)
class Glue:
    """Edge ``edge`` of class ``cls`` meets edge ``other_edge`` of ``other_cls``.

    ``crossed`` False: the neighbour's edge runs opposite to ours (its first
    endpoint lands on our second), the usual case for a turned copy.  True:
    endpoints are matched in the same order, which makes the neighbour a
    mirror image.
    """

    cls: int
    edge: str
    other_cls: int
    other_edge: str
    crossed: bool = False


@dataclass(frozen=True)
class GluingProgram:
    classes: int
    glues: tuple[Glue, ...]

    def table(self) -> dict[tuple[int, str], tuple[int, str, bool]]:
        out = {}
        for g in self.glues:
            for a, b in (((g.cls, g.edge), (g.other_cls, g.other_edge)),
                         ((g.other_cls, g.other_edge), (g.cls, g.edge))):
                if a in out and out[a] != (*b, g.crossed):
                    raise ValueError(f"edge {a} glued twice")
                out[a] = (*b, g.crossed)
        return out


def _prog(classes: int, text: str) -> GluingProgram:
    """Parse ``"0a-0a 0b-0c 0d-0e*"``; a trailing ``*`` marks a crossed glue."""
    glues = []
    for tok in text.split():
        crossed = tok.endswith("*")
        tok = tok.rstrip("*")
        x, y = tok.split("-")
        glues.append(Glue(int(x[:-1]), x[-1], int(y[:-1]), y[-1], crossed))
    return GluingProgram(classes, tuple(glues))


def glue_isometry(lp: LabeledPolygon, edge: str, other_edge: str, crossed: bool) -> Isometry:
    """Map the prototile onto its neighbour across ``edge`` (prototile frame)."""
    p, q = (complex(z) for z in lp.edge_points(edge))
    s, t = (complex(z) for z in lp.edge_points(other_edge))
    if abs(abs(q - p) - abs(t - s)) > 1e-7 * max(1.0, abs(q - p)):
        raise TypeConditionNotMet(f"edges {edge} and {other_edge} differ in length")
    # images of s, t
    a, b = (p, q) if crossed else (q, p)
    c0 = sum(complex(v) for v in lp.polygon.vertices) / lp.n
    side = _side(p, q, c0)
    for refl in (False, True):
        ss, tt = (s.conjugate(), t.conjugate()) if refl else (s, t)
        rot = (b - a) / (tt - ss)
        rot /= abs(rot)
        g = Isometry(rot, a - rot * ss, refl)
        if _side(p, q, g.apply(c0)) == -side:
            return g
    raise UnfoldError("no isometry places the neighbour across the edge")


def _side(p: complex, q: complex, z: complex) -> int:
    c = ((q - p).conjugate() * (z - p)).imag
    return 1 if c > 0 else -1


@dataclass
class Unfolded:
    lp: LabeledPolygon
    classes: list[int]
    transforms: list[Isometry]
    order: list[int]           # BFS discovery order

    def polygons(self) -> list[Polygon]:
        return [g.apply_polygon(self.lp.polygon) for g in self.transforms]


def _key(z: complex, scale: float) -> tuple[int, int]:
    return (round(z.real / scale * 1e6), round(z.imag / scale * 1e6))


def unfold(lp: LabeledPolygon, prog: GluingProgram, radius: float,
           partial: bool = False) -> Unfolded:
    """Breadth-first unfolding of ``prog`` out to ``radius`` prototile diameters.

    Raises :class:`UnfoldError` when two tiles overlap or a position is
    reached twice with different tiles.  With ``partial`` unglued edges
    are skipped instead of raising.
    """
    table = prog.table()
    n = lp.n
    verts = [complex(v) for v in lp.polygon.vertices]
    diam = max(abs(a - b) for a in verts for b in verts)
    c0 = sum(verts) / n
    glue_g = {}
    for (c, x), (c2, y, crossed) in table.items():
        glue_g[(c, x)] = (c2, glue_isometry(lp, x, y, crossed))
    classes = [0]
    transforms = [Isometry()]
    seen = {_key(c0, diam): 0}
    poly_keys = [_vkey(verts, diam)]
    fpolys = [verts]
    grid: dict[tuple[int, int], list[int]] = {(0, 0): [0]}
    queue = deque([0])
    order = [0]
    limit = radius * diam
    area = abs(sum((verts[i].conjugate() * verts[(i + 1) % n]).imag for i in range(n))) / 2
    cap = 4 * math.pi * (limit + diam) ** 2 / area + 10
    while queue:
        i = queue.popleft()
        c, g = classes[i], transforms[i]
        for x in LETTERS[:n]:
            nb = glue_g.get((c, x.lower()))
            if nb is None:
                if partial:
                    continue
                raise UnfoldError(f"edge {x.lower()} of class {c} is not glued")
            c2, h = nb
            g2 = g @ h
            z = g2.apply(c0)
            if abs(z - c0) > limit:
                continue
            k = _key(z, diam)
            pts = [g2.apply(v) for v in verts]
            vk = _vkey(pts, diam)
            j = seen.get(k)
            if j is not None:
                if poly_keys[j] != vk or classes[j] != c2:
                    raise UnfoldError("inconsistent tile at a revisited position")
                continue
            cell = (math.floor(z.real / diam), math.floor(z.imag / diam))
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    for o in grid.get((cell[0] + dx, cell[1] + dy), ()):
                        if _sat_overlap(fpolys[o], pts, 1e-6 * diam):
                            raise UnfoldError("unfolded tiles overlap")
            idx = len(classes)
            seen[k] = idx
            classes.append(c2)
            transforms.append(g2)
            poly_keys.append(vk)
            fpolys.append(pts)
            grid.setdefault(cell, []).append(idx)
            queue.append(idx)
            order.append(idx)
            if idx > cap:
                raise UnfoldError("too many tiles; the program does not close up")
    return Unfolded(lp, classes, transforms, order)


def _vkey(pts, scale):
    return frozenset(_key(z, scale) for z in pts)


def _separated(a: list, b: list, eps: float) -> bool:
    n = len(a)
    for i in range(n):
        p, e = a[i], a[(i + 1) % n] - a[i]
        L = abs(e)
        if all((e.conjugate() * (z - p)).imag <= eps * L for z in b):
            return True
    return False


def _sat_overlap(a: list, b: list, eps: float) -> bool:
    # both polygons counterclockwise, convex
    return not _separated(_ccw(a), _ccw(b), eps) and not _separated(_ccw(b), _ccw(a), eps)


def _ccw(pts: list) -> list:
    s = sum((pts[i].conjugate() * pts[(i + 1) % len(pts)]).imag for i in range(len(pts)))
    return pts if s > 0 else pts[::-1]


def _lattice(u: Unfolded) -> tuple[complex, complex]:
    groups: dict[tuple, list[complex]] = {}
    for c, g in zip(u.classes, u.transforms):
        k = (c, round(complex(g.rot).real, 6), round(complex(g.rot).imag, 6), g.reflected)
        groups.setdefault(k, []).append(complex(g.trans))
    vecs = []
    for ts in groups.values():
        base = ts[0]
        vecs.extend(t - base for t in ts[1:])
    vecs = [v for v in vecs if abs(v) > 1e-7]
    if not vecs:
        raise UnfoldError("no translations found; enlarge the radius")
    vecs.sort(key=abs)
    v1 = vecs[0]
    v2 = next((v for v in vecs if abs((v1.conjugate() * v).imag) > 1e-6 * abs(v1) * abs(v)), None)
    if v2 is None:
        raise UnfoldError("translations are all parallel; enlarge the radius")
    # every translation must be an integer combination of the reduced pair
    a, b = reduce_basis(v1, v2)
    for v in vecs:
        det = (a.conjugate() * b).imag
        i = (v.real * b.imag - v.imag * b.real) / det
        j = (a.real * v.imag - a.imag * v.real) / det
        if abs(i - round(i)) > 1e-6 or abs(j - round(j)) > 1e-6:
            # a shorter lattice vector exists; fold it in
            a, b = _refine(a, b, v)
    return a, b


def _refine(a: complex, b: complex, v: complex) -> tuple[complex, complex]:
    """Lattice generated by a, b and v (assumed rank 2)."""
    cands = [a, b, v]
    for _ in range(40):
        cands.sort(key=abs)
        changed = False
        for x, y in itertools.combinations(range(len(cands)), 2):
            p, q = cands[x], cands[y]
            if abs((p.conjugate() * q).imag) < 1e-6 * abs(p) * abs(q):
                # parallel: Euclid on the scalar ratio
                r = (q / p).real
                q2 = q - round(r) * p
                if abs(q2) < 1e-7:
                    cands.pop(y)
                else:
                    cands[y] = q2
                changed = True
                break
        if not changed and len(cands) > 2:
            p, q, w = cands[:3]
            det = (p.conjugate() * q).imag
            i = (w.real * q.imag - w.imag * q.real) / det
            j = (p.real * w.imag - p.imag * w.real) / det
            cands[2] = w - math.floor(i + 0.5) * p - math.floor(j + 0.5) * q
            if abs(cands[2]) < 1e-7:
                cands.pop(2)
            changed = True
        if len(cands) == 2:
            return reduce_basis(*cands)
    raise UnfoldError("could not reduce the translation lattice")


def region_from_program(lp: LabeledPolygon, prog: GluingProgram, radius: float = 6.0,
                        meta: dict | None = None) -> FundamentalRegion:
    u = unfold(lp, prog, radius)
    v1, v2 = _lattice(u)
    reps: dict[tuple, int] = {}
    for i in u.order:
        g = u.transforms[i]
        k = (u.classes[i], round(complex(g.rot).real, 6), round(complex(g.rot).imag, 6), g.reflected)
        reps.setdefault(k, i)
    idx = sorted(reps.values(), key=u.order.index)
    tiles = [PlacedTile("P", u.transforms[i]) for i in idx]
    m = dict(meta or {})
    m["program"] = " ".join(f"{g.cls}{g.edge}-{g.other_cls}{g.other_edge}{'*' if g.crossed else ''}"
                            for g in prog.glues)
    m["labeling"] = lp.relabeling.to_json()
    return FundamentalRegion(_proto(_floats(lp.polygon)), tiles, v1, v2, m)


# ---------------------------------------------------------------------------
# frozen programs, found by a backtracking search over gluings and checked
# with the validator on random members of each family

HEXAGON_PROGRAMS: dict[int, GluingProgram] = {
    1: _prog(1, "0a-0d 0b-0b 0c-0c 0e-0e 0f-0f"),
    2: _prog(1, "0a-0d* 0b-0b 0c-0e* 0f-0f"),
    3: _prog(1, "0a-0b 0c-0d 0e-0f"),
}

PENTAGON_PROGRAMS: dict[int, GluingProgram] = {
    1: _prog(1, "0a-0d 0b-0b 0c-0c 0e-0e"),
    2: _prog(1, "0a-0a 0b-0d* 0c-0e*"),
    4: _prog(1, "0a-0a 0b-0c 0d-0e"),
    5: _prog(1, "0a-0b 0c-0c 0d-0e"),
    6: _prog(2, "0a-0a 0b-1c 0c-0c 0d-1a 0e-1d 1b-1b 1e-1e"),
    7: _prog(2, "0a-1a* 0b-0b 0c-1d 0d-0d 0e-1c 1b-1e*"),
    8: _prog(2, "0a-1a* 0b-1c 0c-0c 0d-1b 0e-1d* 1e-1e"),
    9: _prog(2, "0a-1a* 0b-0d* 0c-1b 0e-1d* 1c-1c 1e-1e"),
}


def hexagon_fundamental(h: LabeledPolygon, t: TileTypeId) -> FundamentalRegion:
    if t.kind != "Hexagon":
        raise UnsupportedType(f"{t} is not a hexagon type")
    if h.n != 6 or not matches_type(h, t):
        raise TypeConditionNotMet(f"polygon does not satisfy the conditions of {t}")
    return region_from_program(h, HEXAGON_PROGRAMS[t.index], meta={"type": str(t)})


def pentagon_fundamental_e2e(p: LabeledPolygon, t: TileTypeId) -> FundamentalRegion:
    if t.kind != "Pentagon":
        raise UnsupportedType(f"{t} is not a pentagon type")
    if t.index not in PENTAGON_PROGRAMS:
        raise UnsupportedType(f"{t} has no edge-to-edge periodic layout")
    if p.n != 5 or not matches_type(p, t):
        raise TypeConditionNotMet(f"polygon does not satisfy the conditions of {t}")
    from .families import E2E_EXTRA
    from .classifier import _eq
    edges = p.edges()
    for chain in E2E_EXTRA.get((t.kind, t.index), ()):
        for cond in _eq(*chain.split("=")):
            if abs(cond.residual(edges)) > 1e-7 * max(edges.values()):
                raise TypeConditionNotMet(f"{t} tiles edge to edge only when {chain}")
    return region_from_program(p, PENTAGON_PROGRAMS[t.index], meta={"type": str(t)})


def fundamental_region(p: Polygon, t: TileTypeId) -> FundamentalRegion:
    """Fundamental region of an edge-to-edge periodic tiling by ``p`` as type ``t``.

    Every labeling of ``p`` is tried, so the caller need not know which
    vertex is A.
    """
    from .classifier import relabelings
    if t.kind == "Triangle":
        if len(p) != 3:
            raise TypeConditionNotMet("not a triangle")
        return triangle_fundamental(p)
    if t.kind == "Quadrilateral":
        if len(p) != 4:
            raise TypeConditionNotMet("not a quadrilateral")
        return quadrilateral_fundamental(p)
    if t.kind == "Pentagon" and t.index not in PENTAGON_PROGRAMS:
        raise UnsupportedType(f"{t} has no edge-to-edge periodic layout")
    if len(p) != t.table.sides:
        raise TypeConditionNotMet(f"{t} needs {t.table.sides} sides")
    build = hexagon_fundamental if t.kind == "Hexagon" else pentagon_fundamental_e2e
    last = None
    for rl in relabelings(len(p)):
        try:
            return build(LabeledPolygon(p, rl), t)
        except TypeConditionNotMet as e:
            last = e
    raise last or TypeConditionNotMet(str(t))


# ---------------------------------------------------------------------------
# patches

def generate_patch(r: FundamentalRegion, m: int, n: int) -> Tiling:
    """The m x n block of lattice translates of ``r``.

    The window is the largest axis-aligned rectangle inside the part of the
    plane that the block is guaranteed to cover.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    tiles = []
    for i in range(m):
        for j in range(n):
            shift = i * r.v1 + j * r.v2
            for t in r.tiles:
                g = t.transform
                tiles.append(PlacedTile(t.prototile, Isometry(g.rot, g.trans + shift, g.reflected)))
    polys = r.polygons()
    window = _inner_window(polys, r.v1, r.v2, m, n)
    meta = dict(r.meta)
    meta.update({"lattice": [[r.v1.real, r.v1.imag], [r.v2.real, r.v2.imag]], "m": m, "n": n,
                 "fundamental_region": list(range(len(r.tiles)))})
    return Tiling({r.prototile.name: r.prototile}, tiles, window, meta)


def _inner_window(polys, v1: complex, v2: complex, m: int, n: int):
    det = (v1.conjugate() * v2).imag

    def coords(z):
        return ((z.real * v2.imag - z.imag * v2.real) / det,
                (v1.real * z.imag - v1.imag * z.real) / det)

    pts = [coords(complex(z)) for p in polys for z in p.vertices]
    amin = min(a for a, _ in pts)
    amax = max(a for a, _ in pts)
    bmin = min(b for _, b in pts)
    bmax = max(b for _, b in pts)
    # a point with lattice coordinates (a, b) lies in the translate by
    # (i, j) only if a - amax <= i <= a - amin; all such i are in [0, m)
    # exactly when amax - 1 < a < m + amin
    shrink = 1e-9
    a0, a1 = amax - 1 + shrink, m + amin - shrink
    b0, b1 = bmax - 1 + shrink, n + bmin - shrink
    if a1 - a0 <= 1e-6 or b1 - b0 <= 1e-6:
        # block too small for a guaranteed region: fall back to one tile
        return rectangle_in_convex([(z.real, z.imag) for z in (complex(v) for v in polys[0].vertices)])
    corners = [a0 * v1 + b0 * v2, a1 * v1 + b0 * v2, a1 * v1 + b1 * v2, a0 * v1 + b1 * v2]
    return rectangle_in_convex([(z.real, z.imag) for z in corners])
